#include "tgspec/quadrature.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "tgspec/errors.hpp"

namespace tgspec {

namespace {

double checked(const ScalarFunction& f, double t, std::size_t node) {
  const double v = f(t);
  if (!std::isfinite(v)) {
    throw EvaluationError("integrand is not finite at t = " + std::to_string(t) +
                          " (node " + std::to_string(node) + ")");
  }
  return v;
}

}  // namespace

double integrate_weighted(const TGGrid& grid, const ScalarFunction& f) {
  double sum = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    sum += grid.rule.weights[j] * checked(f, grid.t_nodes[j], j);
  }
  return sum;
}

double integrate_to_node(const TGGrid& grid, const ScalarFunction& f,
                         std::size_t j) {
  if (j >= grid.size()) throw DomainError("node index out of range");
  const double tj = grid.t_nodes[j];
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    sum += grid.P[k] * checked(f, tj * grid.E[k], j);
  }
  return tj * sum;
}

std::vector<double> integrate_to_all_nodes(const TGGrid& grid,
                                           const ScalarFunction& f) {
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    out[j] = integrate_to_node(grid, f, j);
  }
  return out;
}

double truncation_prefactor(std::size_t n, double alpha) {
  const double nd = static_cast<double>(n);
  const double log_value =
      std::log(std::numbers::pi) -
      (4.0 * nd + 2.0 * alpha + 1.0) * std::numbers::ln2 +
      std::log(nd + alpha + 1.0) + std::lgamma(nd + 2.0 * alpha + 1.0) -
      std::lgamma(2.0 * nd + 3.0) - 2.0 * std::lgamma(nd + alpha + 2.0);
  return std::exp(log_value);
}

double truncation_bound(const TGGrid& grid, std::size_t j, double deriv_bound) {
  if (j >= grid.size()) throw DomainError("node index out of range");
  if (!(deriv_bound >= 0.0)) {
    throw DomainError("derivative bound must be non-negative");
  }
  if (deriv_bound == 0.0) return 0.0;
  return truncation_prefactor(grid.n(), grid.alpha()) * grid.t_nodes[j] *
         deriv_bound;
}

std::string_view to_string(BenchmarkIntegral id) {
  switch (id) {
    case BenchmarkIntegral::I1: return "I1";
    case BenchmarkIntegral::I2: return "I2";
    case BenchmarkIntegral::I3: return "I3";
  }
  return "?";
}

BenchmarkIntegral parse_integral(std::string_view text) {
  std::string upper;
  for (char c : text) upper.push_back(static_cast<char>(std::toupper(c)));
  if (upper == "I1") return BenchmarkIntegral::I1;
  if (upper == "I2") return BenchmarkIntegral::I2;
  if (upper == "I3") return BenchmarkIntegral::I3;
  throw DomainError("unknown integral id '" + std::string(text) + "'");
}

double benchmark_integrand(BenchmarkIntegral id, double t) {
  switch (id) {
    case BenchmarkIntegral::I1: return std::exp(-t);
    case BenchmarkIntegral::I2: return 1.0 / (t * t + 1.0);
    case BenchmarkIntegral::I3: return std::atan(t);
  }
  return 0.0;
}

double benchmark_antiderivative(BenchmarkIntegral id, double t) {
  switch (id) {
    case BenchmarkIntegral::I1: return -std::expm1(-t);
    case BenchmarkIntegral::I2: return std::atan(t);
    case BenchmarkIntegral::I3: return t * std::atan(t) - 0.5 * std::log1p(t * t);
  }
  return 0.0;
}

QuadratureSweepRow benchmark_error(BenchmarkIntegral id, TGFamily family,
                                   double alpha, double L, std::size_t n) {
  const TGGrid grid = build_grid(TGMap(family, L), GegenbauerIndex(alpha), n);
  const auto approx = integrate_to_all_nodes(
      grid, [id](double t) { return benchmark_integrand(id, t); });
  double max_err = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double err =
        std::abs(approx[j] - benchmark_antiderivative(id, grid.t_nodes[j]));
    max_err = std::isnan(err) ? err : std::max(max_err, err);
    if (std::isnan(max_err)) break;
  }
  const double log_err =
      std::isnan(max_err) ? max_err
                          : std::log10(std::max(max_err, std::pow(10.0, kLogErrorFloor)));
  return {id, family, alpha, L, n, max_err, log_err};
}

}  // namespace tgspec
