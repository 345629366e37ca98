#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tgspec/errors.hpp"
#include "tgspec/tgbasis.hpp"

using namespace tgspec;

namespace {

const TGMap rg(double L) { return TGMap(TGFamily::Rational, L); }
const TGMap eg(double L) { return TGMap(TGFamily::Exponential, L); }

}  // namespace

TEST_CASE("forward and inverse map examples") {
  CHECK(forward_map(rg(2), 2) == 0.0);
  CHECK(forward_map(eg(1), 0) == -1.0);
  CHECK(forward_map(eg(1), std::log(2.0)) == doctest::Approx(0.0));
  CHECK(inverse_map(rg(3), 0) == 3.0);
  CHECK(inverse_map(eg(1), 0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(inverse_map(rg(5), -1) == 0.0);
  CHECK_THROWS_AS(inverse_map(rg(1), 1.0), DomainError);
  CHECK_THROWS_AS(TGMap(TGFamily::Rational, 0.0), DomainError);
  CHECK(parse_family("eg") == TGFamily::Exponential);
  CHECK(to_string(TGFamily::Rational) == "rg");
  CHECK_THROWS(parse_family("xg"));
}

TEST_CASE("map derivative examples") {
  CHECK(map_derivative(rg(2), 0) == doctest::Approx(1.0));
  CHECK(map_derivative(eg(2), 0) == doctest::Approx(1.0));
  CHECK(map_derivative(rg(1), 1e8) < 1e-15);
}

TEST_CASE("round trip on a log grid") {
  // x is rounded to a double, so t can only be recovered to about
  // eps * |x| / T'(t); relative to t that is the condition number below.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (double L : {0.025, 1.0, 15.0}) {
    for (const TGMap& m : {rg(L), eg(L)}) {
      for (double e = -6; e <= 6; e += 0.25) {
        const double t = std::pow(10.0, e);
        const double x = forward_map(m, t);
        if (x >= 1.0) continue;  // EG saturates in double for t >> L
        const double err = std::abs(inverse_map(m, x) - t) / t;
        const double cond = std::max(1.0, std::abs(x) / (t * map_derivative(m, t)));
        CHECK(err <= 4 * eps * cond + 1e-15);
        if (cond <= 1e5) CHECK(err <= 1e-10);
      }
    }
  }
}

TEST_CASE("tg_eval_series examples") {
  for (double a : {-0.3, 0.5, 2.0}) {
    const double t = 1.7, L = 0.6;
    CHECK(tg_eval_series(rg(L), GegenbauerIndex(a), 1, t)[1] == doctest::Approx((t - L) / (t + L)));
    CHECK(tg_eval_series(eg(L), GegenbauerIndex(a), 1, t)[1] ==
          doctest::Approx(1 - 2 * std::exp(-t / L)));
    const auto z = tg_eval_series(eg(L), GegenbauerIndex(a), 6, 0.0);
    for (std::size_t k = 0; k < z.size(); ++k) CHECK(z[k] == doctest::Approx(k % 2 ? -1.0 : 1.0));
  }
}

TEST_CASE("tg_eval_series is the composition, bitwise") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ut(0.0, 30.0);
  for (int i = 0; i < 50; ++i) {
    const double t = ut(rng);
    for (const TGMap& m : {rg(2.5), eg(2.5)}) {
      const auto a = tg_eval_series(m, GegenbauerIndex(0.3), 12, t);
      const auto b = eval_series(GegenbauerIndex(0.3), 12, forward_map(m, t));
      CHECK(a == b);
    }
  }
}

TEST_CASE("first four TG functions in closed form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(0.05, 8.0), ua(-0.45, 3.0), uL(0.1, 12.0);
  for (int i = 0; i < 20; ++i) {
    const double t = ut(rng), a = ua(rng), L = uL(rng);
    const auto r = tg_eval_series(rg(L), GegenbauerIndex(a), 3, t);
    const auto e = tg_eval_series(eg(L), GegenbauerIndex(a), 3, t);
    const double s = (t - L) / (t + L);
    const double q = 1 - 2 * std::exp(-t / L);
    const double ex = std::exp(t / L);
    CHECK(r[0] == 1.0);
    CHECK(std::abs(r[1] - s) < 1e-11);
    CHECK(std::abs(r[2] - (2 * (1 + a) * s * s - 1) / (1 + 2 * a)) < 1e-11);
    CHECK(std::abs(r[3] - (std::pow(t - L, 3) - 12 * L * t * (t - L) / (1 + 2 * a)) /
                              std::pow(t + L, 3)) < 1e-11);
    CHECK(e[0] == 1.0);
    CHECK(std::abs(e[1] - q) < 1e-11);
    CHECK(std::abs(e[2] - (2 * (1 + a) * q * q - 1) / (1 + 2 * a)) < 1e-11);
    CHECK(std::abs(e[3] - std::exp(-3 * t / L) * (ex - 2) *
                              (8 * (2 + a) * (1 - ex) + (1 + 2 * a) * ex * ex) / (1 + 2 * a)) <
          1e-11);
  }
}

TEST_CASE("singular Sturm-Liouville residual by finite differences") {
  // Residual is measured relative to the size of the individual terms, plus
  // the round-off of the second difference, a few dozen eps |f| / h^2 times its
  // coefficient (each evaluation goes through the map and the recurrence).
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (double a : {-0.3, 0.0, 0.5, 1.5}) {
    for (double L : {0.5, 2.0, 7.0}) {
      for (double t : {0.3, 1.0, 4.0}) {
        const double h = 1e-5 * std::max(1.0, t);
        for (std::size_t n = 0; n <= 4; ++n) {
          auto g1 = [&](double s) { return tg_eval_series(rg(L), GegenbauerIndex(a), n, s)[n]; };
          auto g2 = [&](double s) { return tg_eval_series(eg(L), GegenbauerIndex(a), n, s)[n]; };
          const double nn = static_cast<double>(n);
          {
            const double f = g1(t), d = (g1(t + h) - g1(t - h)) / (2 * h);
            const double dd = (g1(t + h) - 2 * f + g1(t - h)) / (h * h);
            const double c2 = (t + L) * 2 * t * (t + L);
            const double t1 = c2 * dd;
            const double t2 = (t + L) * ((2 * a + 1) * L + (3 - 2 * a) * t) * d;
            const double t3 = 2 * L * nn * (nn + 2 * a) * f;
            const double scale = std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)});
            CHECK(std::abs(t1 + t2 + t3) <= 1e-5 * scale + 64 * eps * std::abs(c2 * f) / (h * h));
          }
          {
            const double f = g2(t), d = (g2(t + h) - g2(t - h)) / (2 * h);
            const double dd = (g2(t + h) - 2 * f + g2(t - h)) / (h * h);
            const double ex = std::exp(t / L);
            const double c2 = L * 2 * L * (ex - 1);
            const double t1 = c2 * dd;
            const double t2 = L * (4 * a + (1 - 2 * a) * ex) * d;
            const double t3 = 2 * nn * (nn + 2 * a) * f;
            const double scale = std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)});
            CHECK(std::abs(t1 + t2 + t3) <= 1e-5 * scale + 64 * eps * std::abs(c2 * f) / (h * h));
          }
        }
      }
    }
  }
}

TEST_CASE("tg_weight examples") {
  for (double a : {-0.3, 0.0, 0.5, 2.0}) {
    CHECK(tg_weight(rg(3), GegenbauerIndex(a), 3) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(tg_weight(eg(3), GegenbauerIndex(a), 3 * std::log(2.0)) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  }
  for (double t : {0.01, 1.0, 40.0}) {
    CHECK(tg_weight(rg(4), GegenbauerIndex(0.5), t) ==
          doctest::Approx(map_derivative(rg(4), t)).epsilon(1e-13));
    CHECK(tg_weight(eg(4), GegenbauerIndex(0.5), t) ==
          doctest::Approx(map_derivative(eg(4), t)).epsilon(1e-13));
  }
}

TEST_CASE("build_grid examples") {
  const TGGrid g = build_grid(eg(1), GegenbauerIndex(0.0), 1);
  const double r = 1 / std::sqrt(2.0);
  CHECK(g.t_nodes[0] == doctest::Approx(std::log(2 / (1 + r))).epsilon(1e-14));
  CHECK(g.t_nodes[1] == doctest::Approx(std::log(2 / (1 - r))).epsilon(1e-14));

  for (const TGMap& m : {rg(10), eg(0.025)}) {
    const TGGrid h = build_grid(m, GegenbauerIndex(0.5), 4);
    CHECK(h.weights() == gauss_rule(GegenbauerIndex(0.5), 4).weights);
    for (std::size_t j = 0; j < h.size(); ++j) {
      CHECK(h.P[j] > 0);
      if (j > 0) CHECK(h.t_nodes[j] > h.t_nodes[j - 1]);
    }
  }

  // EG nodes near x = 1 stay finite and ordered at large n.
  const TGGrid big = build_grid(eg(0.025), GegenbauerIndex(0.0), 200);
  for (std::size_t j = 1; j < big.size(); ++j) CHECK(big.t_nodes[j] > big.t_nodes[j - 1]);
  CHECK(std::isfinite(big.t_nodes.back()));
}

TEST_CASE("discrete orthogonality") {
  for (double a : {-0.4, 0.0, 0.5, 2.0}) {
    for (std::size_t n = 1; n <= 12; ++n) {
      for (const TGMap& m : {rg(1.5), eg(1.5)}) {
        const TGGrid g = build_grid(m, GegenbauerIndex(a), n);
        std::vector<std::vector<double>> vals;
        for (double t : g.t_nodes) vals.push_back(tg_eval_series(m, GegenbauerIndex(a), n, t));
        for (std::size_t p = 0; p <= n; ++p) {
          for (std::size_t k = 0; k <= n && p + k <= 2 * n + 1; ++k) {
            double s = 0;
            for (std::size_t j = 0; j < g.size(); ++j) s += vals[j][p] * vals[j][k] * g.weights()[j];
            const double lam = lambda_norm(GegenbauerIndex(a), k);
            if (p == k) {
              CHECK(std::abs(s - lam) <= 1e-9 * lam);
            } else {
              CHECK(std::abs(s) <= 1e-9 * lam);
            }
          }
        }
      }
    }
  }
}
