#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tgspec/interpolation.hpp"

using namespace tgspec;

namespace {

std::vector<double> sample(const TGGrid& g, const std::function<double(double)>& f) {
  std::vector<double> s;
  for (double t : g.t_nodes) s.push_back(f(t));
  return s;
}

}  // namespace

TEST_CASE("forward_transform examples") {
  for (auto fam : {TGFamily::Rational, TGFamily::Exponential}) {
    const TGGrid g = build_grid(TGMap(fam, 2.0), GegenbauerIndex(0.3), 9);
    const auto one = forward_transform(g, sample(g, [](double) { return 1.0; }));
    CHECK(one.coeffs[0] == doctest::Approx(1.0).epsilon(1e-13));
    for (std::size_t k = 1; k < one.coeffs.size(); ++k) CHECK(std::abs(one.coeffs[k]) < 1e-13);

    auto basis = [&](double t) { return tg_eval_series(g.map, g.rule.alpha, 2, t); };
    const auto e2 = forward_transform(g, sample(g, [&](double t) { return basis(t)[2]; }));
    for (std::size_t k = 0; k < e2.coeffs.size(); ++k) CHECK(std::abs(e2.coeffs[k] - (k == 2)) < 1e-10);

    const auto lin = forward_transform(g, sample(g, [&](double t) { return basis(t)[0] + 2 * basis(t)[1]; }));
    CHECK(lin.coeffs[0] == doctest::Approx(1.0));
    CHECK(lin.coeffs[1] == doctest::Approx(2.0));
    for (std::size_t k = 2; k < lin.coeffs.size(); ++k) CHECK(std::abs(lin.coeffs[k]) < 1e-12);
  }
}

TEST_CASE("evaluate_interpolant examples") {
  const TGGrid g = build_grid(TGMap(TGFamily::Exponential, 3.0), GegenbauerIndex(0.5), 6);
  TGInterpolant e0{g, std::vector<double>(7, 0.0)};
  e0.coeffs[0] = 1;
  CHECK(evaluate_interpolant(e0, 12.3) == 1.0);
  TGInterpolant e1{g, std::vector<double>(7, 0.0)};
  e1.coeffs[1] = 1;
  CHECK(std::abs(evaluate_interpolant(e1, 3.0 * std::log(2.0))) < 1e-15);
}

TEST_CASE("node reproduction and transform round trip") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uc(-1, 1);
  for (auto fam : {TGFamily::Rational, TGFamily::Exponential}) {
    for (double a : {-0.45, 0.0, 0.5, 2.0}) {
      for (std::size_t n : {1u, 8u, 25u, 40u}) {
        const TGGrid g = build_grid(TGMap(fam, 1.7), GegenbauerIndex(a), n);
        const auto f = oracle::random_smooth(rng);
        const auto s = sample(g, f);
        const auto it = forward_transform(g, s);
        const auto back = evaluate_at_nodes(it);
        for (std::size_t j = 0; j < s.size(); ++j) {
          CHECK(std::abs(back[j] - s[j]) <= 1e-10 * std::max(1.0, std::abs(s[j])));
          CHECK(std::abs(evaluate_interpolant(it, g.t_nodes[j]) - s[j]) <= 1e-10 * std::max(1.0, std::abs(s[j])));
        }

        std::vector<double> c(n + 1);
        for (double& v : c) v = uc(rng);
        TGInterpolant known{g, c};
        const auto rec = forward_transform(g, evaluate_at_nodes(known));
        const double tol = a < 0 ? 1e-6 : 1e-10;
        for (std::size_t k = 0; k <= n; ++k) CHECK(std::abs(rec.coeffs[k] - c[k]) <= tol);
      }
    }
  }
}

TEST_CASE("stability_report examples") {
  const TGGrid g = build_grid(TGMap(TGFamily::Rational, 1.0), GegenbauerIndex(0.7), 12);
  const auto c = stability_report(g, std::vector<double>(13, -2.5));
  CHECK(c.discrete_L2w_norm == doctest::Approx(2.5 * std::sqrt(lambda_norm(GegenbauerIndex(0.7), 0))));
  const auto z = stability_report(g, std::vector<double>(13, 0.0));
  CHECK(z.discrete_L2w_norm == 0.0);
  CHECK(z.sup_norm == 0.0);
  CHECK(z.within_bound);

  std::mt19937_64 rng(9);
  const TGGrid g0 = build_grid(TGMap(TGFamily::Exponential, 1.0), GegenbauerIndex(0.0), 30);
  for (int i = 0; i < 20; ++i) {
    const auto r = stability_report(g0, sample(g0, oracle::random_smooth(rng)));
    CHECK(r.ratio <= std::sqrt(std::numbers::pi) * 1.01);
  }
}

TEST_CASE("stability within bound for nonnegative alpha") {
  std::mt19937_64 rng(13);
  for (std::size_t n : {20u, 50u, 100u}) {
    const TGGrid g = build_grid(TGMap(TGFamily::Exponential, 2.0), GegenbauerIndex(0.5), n);
    for (int i = 0; i < 100; ++i) CHECK(stability_report(g, sample(g, oracle::random_smooth(rng))).within_bound);
  }
}

TEST_CASE("Parseval at grid level") {
  std::mt19937_64 rng(17);
  for (double a : {-0.3, 0.0, 0.5, 2.0}) {
    const TGGrid g = build_grid(TGMap(TGFamily::Rational, 3.0), GegenbauerIndex(a), 24);
    const auto s = sample(g, oracle::random_smooth(rng));
    const auto it = forward_transform(g, s);
    double lhs = 0;
    for (std::size_t k = 0; k < it.coeffs.size(); ++k) lhs += it.coeffs[k] * it.coeffs[k] * lambda_norm(g.rule.alpha, k);
    const double rhs = std::pow(stability_report(g, s).discrete_L2w_norm, 2);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * rhs);
  }
}
