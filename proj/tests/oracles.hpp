#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

/// Gauss-Legendre rule by Newton on the standard Legendre recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(std::size_t n) {
  const std::size_t m = n + 1;
  std::vector<double> x(m), w(m);
  for (std::size_t i = 0; i < m; ++i) {
    double z = -std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(m) + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (std::size_t k = 2; k <= m; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2 * kk - 1) * z * p1 - (kk - 1) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1;
      dp = static_cast<double>(m) * (z * p1 - p0) / (z * z - 1);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2 / ((1 - z * z) * dp * dp);
  }
  return {x, w};
}

/// Central finite-difference estimate of the k-th derivative.
inline double fd_derivative(const std::function<double(double)>& f, double x, int k, double h) {
  // Binomial stencil: sum_i (-1)^i C(k,i) f(x + (k/2 - i) h) / h^k.
  double s = 0, c = 1;
  for (int i = 0; i <= k; ++i) {
    s += ((i % 2) ? -c : c) * f(x + (0.5 * k - i) * h);
    c = c * (k - i) / (i + 1);
  }
  return s / std::pow(h, k);
}

/// Max of |f^(k)| over dense samples of (-0.999, 0.999), stencil kept inside (-1, 1).
inline double fd_derivative_sup(const std::function<double(double)>& f, int k, int samples = 2000) {
  double best = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = -0.999 + 1.998 * i / (samples - 1);
    const double h = std::min(0.05, (1 - std::abs(x)) / (0.5 * k + 1));
    const double d = std::abs(fd_derivative(f, x, k, h));
    if (std::isfinite(d)) best = std::max(best, d);
  }
  return best;
}

/// Smooth decaying functions on [0, inf): c0 + sum c_i exp(-b_i t) cos(w_i t).
struct SmoothFunction {
  double c0;
  std::vector<double> c, b, w;
  double operator()(double t) const {
    double s = c0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * std::exp(-b[i] * t) * std::cos(w[i] * t);
    return s;
  }
};

inline SmoothFunction random_smooth(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uc(-1, 1), ub(0.1, 2), uw(0, 3);
  SmoothFunction f{uc(rng), {}, {}, {}};
  for (int i = 0; i < 3; ++i) {
    f.c.push_back(uc(rng));
    f.b.push_back(ub(rng));
    f.w.push_back(uw(rng));
  }
  return f;
}

}  // namespace oracle
