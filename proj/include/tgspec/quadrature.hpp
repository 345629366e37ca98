#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "tgspec/tgbasis.hpp"

namespace tgspec {

using ScalarFunction = std::function<double(double)>;

/// Gauss sum  sum_j weights_j f(t_j)  approximating the weighted integral
/// of f against the TG weight over [0, inf).
double integrate_weighted(const TGGrid& grid, const ScalarFunction& f);

/// Approximates the integral of f over [0, t_j] via t = t_j exp(-z):
///   t_j * sum_k P_k f(t_j E_k).
double integrate_to_node(const TGGrid& grid, const ScalarFunction& f,
                         std::size_t j);

/// integrate_to_node for every node; f is called once per abscissa
/// t_j E_k (row j = target node, column k = quadrature node).
std::vector<double> integrate_to_all_nodes(const TGGrid& grid,
                                           const ScalarFunction& f);

/// Truncation error bound of integrate_to_node at node j, given a bound on
/// the (2n+2)-th derivative of the mapped auxiliary integrand.
double truncation_bound(const TGGrid& grid, std::size_t j, double deriv_bound);

/// The constant factor of truncation_bound (everything except t_j and the
/// derivative bound), computed in log space.
double truncation_prefactor(std::size_t n, double alpha);

enum class BenchmarkIntegral { I1, I2, I3 };

std::string_view to_string(BenchmarkIntegral id);
BenchmarkIntegral parse_integral(std::string_view text);

/// Integrand and its antiderivative vanishing at 0.
double benchmark_integrand(BenchmarkIntegral id, double t);
double benchmark_antiderivative(BenchmarkIntegral id, double t);

inline constexpr double kLogErrorFloor = -17.0;

struct QuadratureSweepRow {
  BenchmarkIntegral integral_id;
  TGFamily family;
  double alpha;
  double L;
  std::size_t n;
  double max_abs_error;
  double max_log_error;
};

/// Max absolute error of integrate_to_all_nodes against the closed form over
/// all nodes; the log error is floored at kLogErrorFloor.
QuadratureSweepRow benchmark_error(BenchmarkIntegral id, TGFamily family,
                                   double alpha, double L, std::size_t n);

}  // namespace tgspec
