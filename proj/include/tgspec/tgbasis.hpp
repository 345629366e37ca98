#pragma once

// Transformed Gegenbauer (TG) functions on [0, inf).
//
// Two maps carry [0, inf) onto [-1, 1):
//   rational    (RG): T(t) = (t - L) / (t + L)
//   exponential (EG): T(t) = 1 - 2 exp(-t / L)
// and the TG basis is G_n(T(t)). The weight w(t) = w_a(T(t)) T'(t) makes the
// basis orthogonal on [0, inf) with the same norms lambda_n as on [-1, 1].

#include <cstddef>
#include <string_view>
#include <vector>

#include "tgspec/gegenbauer.hpp"

namespace tgspec {

enum class TGFamily { Rational = 1, Exponential = 2 };

std::string_view to_string(TGFamily family);
/// Accepts "rg"/"eg" (case-insensitive); throws DomainError otherwise.
TGFamily parse_family(std::string_view text);

/// Map between [0, inf) and [-1, 1) with scaling parameter L > 0.
class TGMap {
 public:
  TGMap(TGFamily family, double L);

  TGFamily family() const noexcept { return family_; }
  double L() const noexcept { return L_; }

 private:
  TGFamily family_;
  double L_;
};

double forward_map(const TGMap& map, double t);
/// Throws DomainError at x = 1 (image of +inf) or outside [-1, 1).
double inverse_map(const TGMap& map, double x);
double map_derivative(const TGMap& map, double t);

/// [G_0(T(t)), ..., G_n(T(t))].
std::vector<double> tg_eval_series(const TGMap& map, GegenbauerIndex alpha,
                                   std::size_t n, double t);
void tg_eval_series_into(const TGMap& map, double alpha, std::size_t n,
                         double t, double* out);

/// log of the TG weight; finite wherever t > 0.
double log_tg_weight(const TGMap& map, GegenbauerIndex alpha, double t);
/// TG weight w(t). May underflow to 0 for large t; throws DomainError at
/// t = 0 when alpha < 1/2.
double tg_weight(const TGMap& map, GegenbauerIndex alpha, double t);

/// Gauss rule mapped onto [0, inf).
///
/// `P` is the integration vector used for integrals over [0, t_j]:
/// P_k = weights_k exp(-t_k) / w(t_k). `W` holds weights_k / w(t_k), the
/// Gauss weights for plain integrals over [0, inf).
struct TGGrid {
  TGMap map;
  GaussRule rule;
  std::vector<double> t_nodes;
  std::vector<double> E;
  std::vector<double> P;
  std::vector<double> W;

  std::size_t n() const noexcept { return rule.n; }
  std::size_t size() const noexcept { return t_nodes.size(); }
  double alpha() const noexcept { return rule.alpha.value(); }
  const std::vector<double>& weights() const noexcept { return rule.weights; }
};

TGGrid build_grid(const TGMap& map, GegenbauerIndex alpha, std::size_t n);

}  // namespace tgspec
