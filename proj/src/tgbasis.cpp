#include "tgspec/tgbasis.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "tgspec/errors.hpp"

namespace tgspec {

std::string_view to_string(TGFamily family) {
  return family == TGFamily::Rational ? "rg" : "eg";
}

TGFamily parse_family(std::string_view text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(c)));
  if (lower == "rg" || lower == "rational") return TGFamily::Rational;
  if (lower == "eg" || lower == "exponential") return TGFamily::Exponential;
  throw DomainError("unknown TG family '" + std::string(text) + "'");
}

TGMap::TGMap(TGFamily family, double L) : family_(family), L_(L) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw DomainError("mapping scale L must be positive and finite");
  }
}

double forward_map(const TGMap& map, double t) {
  const double L = map.L();
  if (map.family() == TGFamily::Rational) return (t - L) / (t + L);
  return 1.0 - 2.0 * std::exp(-t / L);
}

double inverse_map(const TGMap& map, double x) {
  if (!(x >= -1.0 && x < 1.0)) {
    throw DomainError("inverse_map requires -1 <= x < 1");
  }
  const double L = map.L();
  if (map.family() == TGFamily::Rational) return L * (1.0 + x) / (1.0 - x);
  // L ln(2 / (1 - x)); 1 - x is exact for x >= 0.5, log1p keeps x near -1.
  if (x >= 0.5) return L * (std::numbers::ln2 - std::log(1.0 - x));
  return -L * std::log1p(-0.5 * (1.0 + x));
}

double map_derivative(const TGMap& map, double t) {
  const double L = map.L();
  if (map.family() == TGFamily::Rational) return 2.0 * L / ((t + L) * (t + L));
  return 2.0 * std::exp(-t / L) / L;
}

void tg_eval_series_into(const TGMap& map, double alpha, std::size_t n,
                         double t, double* out) {
  eval_series_into(alpha, n, forward_map(map, t), out);
}

std::vector<double> tg_eval_series(const TGMap& map, GegenbauerIndex alpha,
                                   std::size_t n, double t) {
  std::vector<double> out(n + 1);
  tg_eval_series_into(map, alpha.value(), n, t, out.data());
  return out;
}

double log_tg_weight(const TGMap& map, GegenbauerIndex alpha, double t) {
  const double a = alpha.value();
  const double L = map.L();
  if (map.family() == TGFamily::Rational) {
    return a * std::log(4.0) + (a + 0.5) * std::log(L) +
           (a - 0.5) * std::log(t) - (2.0 * a + 1.0) * std::log(t + L);
  }
  // 1 - (1 - 2e)^2 = 4e(1 - e) with e = exp(-t/L).
  const double s = t / L;
  const double log_bracket =
      std::log(4.0) - s + std::log(-std::expm1(-s));
  return std::log(2.0 / L) - s + (a - 0.5) * log_bracket;
}

double tg_weight(const TGMap& map, GegenbauerIndex alpha, double t) {
  if (!(t >= 0.0)) throw DomainError("tg_weight requires t >= 0");
  if (t == 0.0) {
    const double a = alpha.value();
    if (a < 0.5) throw DomainError("TG weight is singular at t = 0 for alpha < 1/2");
    if (a > 0.5) return 0.0;
    return map_derivative(map, 0.0);
  }
  return std::exp(log_tg_weight(map, alpha, t));
}

TGGrid build_grid(const TGMap& map, GegenbauerIndex alpha, std::size_t n) {
  GaussRule rule = gauss_rule(alpha, n);
  const std::size_t m = rule.size();
  TGGrid grid{map, std::move(rule), std::vector<double>(m),
              std::vector<double>(m), std::vector<double>(m),
              std::vector<double>(m)};
  for (std::size_t j = 0; j < m; ++j) {
    const double t = inverse_map(map, grid.rule.nodes[j]);
    const double log_w = log_tg_weight(map, alpha, t);
    const double log_varpi = std::log(grid.rule.weights[j]);
    grid.t_nodes[j] = t;
    grid.E[j] = std::exp(-t);
    grid.W[j] = std::exp(log_varpi - log_w);
    grid.P[j] = std::exp(log_varpi - t - log_w);
  }
  return grid;
}

}  // namespace tgspec
