#pragma once

#include <span>
#include <vector>

#include "tgspec/tgbasis.hpp"

namespace tgspec {

/// Degree-n TG interpolant through the grid nodes.
struct TGInterpolant {
  TGGrid grid;
  std::vector<double> coeffs;
};

/// Discrete TG transform of nodal samples (one per grid node).
TGInterpolant forward_transform(const TGGrid& grid,
                                std::span<const double> samples);

double evaluate_interpolant(const TGInterpolant& interp, double t);

/// Coefficients at the grid nodes: sum_k coeffs[k] G_k(t_j).
std::vector<double> evaluate_at_nodes(const TGInterpolant& interp);

struct StabilityReport {
  double discrete_L2w_norm;  ///< sqrt(sum_j u_j^2 weights_j)
  double sup_norm;           ///< max_j |u_j|
  double ratio;              ///< discrete_L2w_norm / sup_norm (0 if sup is 0)
  double bound;              ///< sqrt(pi) or Gamma(a+1/2) n^(-1/2-a) / sqrt(2)
  bool within_bound;
};

/// Compares the weighted L2 norm of the interpolant with the sup-norm bound.
/// `within_bound` allows 1% slack on the bound.
StabilityReport stability_report(const TGGrid& grid,
                                 std::span<const double> samples);

}  // namespace tgspec
