#pragma once

// Gegenbauer polynomials on [-1, 1], normalized so that G_n(1) = 1.
//
// With this normalization the three-term recurrence reads
//
//   (n + 2a) G_{n+1}(x) = 2 (n + a) x G_n(x) - n G_{n-1}(x),
//
// and the polynomials are orthogonal under w(x) = (1 - x^2)^(a - 1/2) with
// squared norms lambda_n. The index a must exceed -1/2.

#include <cstddef>
#include <vector>

namespace tgspec {

/// Gegenbauer index, validated on construction (alpha > -1/2).
class GegenbauerIndex {
 public:
  explicit GegenbauerIndex(double alpha);

  double value() const noexcept { return alpha_; }
  operator double() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// Gauss rule with n+1 points for the Gegenbauer weight.
///
/// Nodes are the zeros of G_{n+1}, ascending. `lambdas[k]` holds the squared
/// norm of G_k for k = 0..n.
struct GaussRule {
  GegenbauerIndex alpha;
  std::size_t n;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> lambdas;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// [G_0(x), ..., G_n(x)] by the three-term recurrence. Requires |x| <= 1.
std::vector<double> eval_series(GegenbauerIndex alpha, std::size_t n, double x);

/// Same recurrence without the |x| <= 1 precondition. Used by the mapped
/// bases, whose images always lie in [-1, 1) but may carry rounding.
void eval_series_into(double alpha, std::size_t n, double x, double* out);

/// Value and first derivative of G_n at x.
struct ValueAndDerivative {
  double value;
  double derivative;
};
ValueAndDerivative eval_with_derivative(double alpha, std::size_t n, double x);

/// Squared norm lambda_j of G_j under the Gegenbauer weight.
double lambda_norm(GegenbauerIndex alpha, std::size_t j);

/// Gauss rule for G_{n+1}; throws ConvergenceError if Newton refinement fails.
GaussRule gauss_rule(GegenbauerIndex alpha, std::size_t n);

/// Upper bound for the Christoffel numbers of an (n+1)-point rule:
/// pi/(n+1) for alpha >= 0, Gamma(alpha+1/2)^2 / (2 n^(1+2 alpha)) otherwise.
double christoffel_bound(GegenbauerIndex alpha, std::size_t n);

}  // namespace tgspec
