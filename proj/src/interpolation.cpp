#include "tgspec/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tgspec/errors.hpp"

namespace tgspec {

namespace {

void require_size(const TGGrid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) {
    throw DimensionError("expected one sample per grid node");
  }
}

}  // namespace

TGInterpolant forward_transform(const TGGrid& grid,
                                std::span<const double> samples) {
  require_size(grid, samples);
  const std::size_t n = grid.n();
  std::vector<double> num(n + 1, 0.0), den(n + 1, 0.0), g(n + 1);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    tg_eval_series_into(grid.map, grid.alpha(), n, grid.t_nodes[j], g.data());
    const double w = grid.rule.weights[j];
    for (std::size_t k = 0; k <= n; ++k) {
      num[k] += samples[j] * g[k] * w;
      den[k] += g[k] * g[k] * w;
    }
  }
  TGInterpolant interp{grid, std::vector<double>(n + 1)};
  for (std::size_t k = 0; k <= n; ++k) interp.coeffs[k] = num[k] / den[k];
  return interp;
}

double evaluate_interpolant(const TGInterpolant& interp, double t) {
  if (!(t >= 0.0)) throw DomainError("interpolant is defined for t >= 0");
  const std::size_t deg = interp.coeffs.size() - 1;
  std::vector<double> g(deg + 1);
  tg_eval_series_into(interp.grid.map, interp.grid.alpha(), deg, t, g.data());
  double s = 0.0;
  for (std::size_t k = 0; k <= deg; ++k) s += interp.coeffs[k] * g[k];
  return s;
}

std::vector<double> evaluate_at_nodes(const TGInterpolant& interp) {
  std::vector<double> out(interp.grid.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = evaluate_interpolant(interp, interp.grid.t_nodes[j]);
  }
  return out;
}

StabilityReport stability_report(const TGGrid& grid,
                                 std::span<const double> samples) {
  require_size(grid, samples);
  double sq = 0.0, sup = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    sq += samples[j] * samples[j] * grid.rule.weights[j];
    sup = std::max(sup, std::abs(samples[j]));
  }
  StabilityReport r{};
  r.discrete_L2w_norm = std::sqrt(sq);
  r.sup_norm = sup;
  r.ratio = sup > 0.0 ? r.discrete_L2w_norm / sup : 0.0;
  const double a = grid.alpha();
  if (a >= 0.0) {
    r.bound = std::sqrt(std::numbers::pi);
  } else {
    const double n = static_cast<double>(std::max<std::size_t>(grid.n(), 1));
    r.bound = std::tgamma(a + 0.5) * std::pow(n, -0.5 - a) / std::numbers::sqrt2;
  }
  r.within_bound = r.discrete_L2w_norm <= r.bound * sup * 1.01;
  return r;
}

}  // namespace tgspec
