#include "tgspec/gegenbauer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tgspec/errors.hpp"

namespace tgspec {

namespace {

constexpr int kMaxNewtonIterations = 100;
constexpr double kRootTolerance = 1e-14;

}  // namespace

GegenbauerIndex::GegenbauerIndex(double alpha) : alpha_(alpha) {
  if (!(alpha > -0.5) || !std::isfinite(alpha)) {
    throw DomainError("Gegenbauer index must satisfy alpha > -1/2, got " +
                      std::to_string(alpha));
  }
}

void eval_series_into(double alpha, std::size_t n, double x, double* out) {
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = x;
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    out[k + 1] = (2.0 * (kd + alpha) * x * out[k] - kd * out[k - 1]) /
                 (kd + 2.0 * alpha);
  }
}

std::vector<double> eval_series(GegenbauerIndex alpha, std::size_t n,
                                double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("eval_series requires |x| <= 1");
  }
  std::vector<double> out(n + 1);
  eval_series_into(alpha.value(), n, x, out.data());
  return out;
}

ValueAndDerivative eval_with_derivative(double alpha, std::size_t n,
                                        double x) {
  if (n == 0) return {1.0, 0.0};
  double p_prev = 1.0, p = x;
  double d_prev = 0.0, d = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double denom = kd + 2.0 * alpha;
    const double p_next = (2.0 * (kd + alpha) * x * p - kd * p_prev) / denom;
    const double d_next =
        (2.0 * (kd + alpha) * (p + x * d) - kd * d_prev) / denom;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
  }
  return {p, d};
}

double lambda_norm(GegenbauerIndex alpha, std::size_t j) {
  const double a = alpha.value();
  const double lg_half = std::lgamma(a + 0.5);
  if (j == 0) {
    // (j + a) Gamma(j + 2a) = Gamma(2a + 1) / 2 at j = 0.
    return std::exp(2.0 * a * std::numbers::ln2 + 2.0 * lg_half -
                    std::lgamma(2.0 * a + 1.0));
  }
  const double jd = static_cast<double>(j);
  return std::exp((2.0 * a - 1.0) * std::numbers::ln2 + std::lgamma(jd + 1.0) +
                  2.0 * lg_half - std::log(jd + a) -
                  std::lgamma(jd + 2.0 * a));
}

GaussRule gauss_rule(GegenbauerIndex alpha, std::size_t n) {
  const double a = alpha.value();
  const std::size_t m = n + 1;
  GaussRule rule{alpha, n, std::vector<double>(m), std::vector<double>(m),
                 std::vector<double>(m)};
  for (std::size_t k = 0; k <= n; ++k) rule.lambdas[k] = lambda_norm(alpha, k);

  if (n == 0) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = rule.lambdas[0];
    return rule;
  }

  // Newton with Maehly deflation against roots already found, seeded by the
  // Chebyshev zeros (exact for alpha = 0).
  const double pi = std::numbers::pi;
  for (std::size_t j = 0; j < m; ++j) {
    double x = -std::cos((2.0 * static_cast<double>(j) + 1.0) * pi /
                         (2.0 * static_cast<double>(m)));
    bool converged = false;
    for (int it = 0; it < kMaxNewtonIterations; ++it) {
      const auto [p, dp] = eval_with_derivative(a, m, x);
      double deflation = 0.0;
      for (std::size_t k = 0; k < j; ++k) deflation += 1.0 / (x - rule.nodes[k]);
      const double step = p / (dp - p * deflation);
      x -= step;
      if (std::abs(step) <= kRootTolerance * std::max(1.0, std::abs(x))) {
        converged = true;
        break;
      }
    }
    // Undeflated polish.
    for (int it = 0; it < 2; ++it) {
      const auto [p, dp] = eval_with_derivative(a, m, x);
      if (dp != 0.0) x -= p / dp;
    }
    if (!converged || !std::isfinite(x)) {
      throw ConvergenceError("Gegenbauer root " + std::to_string(j) +
                             " of degree " + std::to_string(m) +
                             " did not converge");
    }
    rule.nodes[j] = x;
  }

  std::sort(rule.nodes.begin(), rule.nodes.end());
  for (std::size_t j = 0; j < m / 2; ++j) {
    const double s = 0.5 * (rule.nodes[n - j] - rule.nodes[j]);
    rule.nodes[j] = -s;
    rule.nodes[n - j] = s;
  }
  if (m % 2 == 1) rule.nodes[n / 2] = 0.0;

  std::vector<double> g(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = rule.nodes[j];
    if (!(x > -1.0 && x < 1.0) || (j > 0 && !(x > rule.nodes[j - 1]))) {
      throw ConvergenceError("Gegenbauer roots of degree " + std::to_string(m) +
                             " are not distinct");
    }
    eval_series_into(a, n, x, g.data());
    double s = 0.0;
    for (std::size_t k = 0; k <= n; ++k) s += g[k] * g[k] / rule.lambdas[k];
    rule.weights[j] = 1.0 / s;
  }
  for (std::size_t j = 0; j < m / 2; ++j) {
    const double w = 0.5 * (rule.weights[j] + rule.weights[n - j]);
    rule.weights[j] = w;
    rule.weights[n - j] = w;
  }
  return rule;
}

double christoffel_bound(GegenbauerIndex alpha, std::size_t n) {
  if (n == 0) throw DomainError("christoffel_bound requires n >= 1");
  const double a = alpha.value();
  const double nd = static_cast<double>(n);
  if (a >= 0.0) return std::numbers::pi / (nd + 1.0);
  const double g = std::tgamma(a + 0.5);
  return g * g / (2.0 * std::pow(nd, 1.0 + 2.0 * a));
}

}  // namespace tgspec
