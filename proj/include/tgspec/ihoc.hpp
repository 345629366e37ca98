#pragma once

// Infinite-horizon linear-quadratic regulation with output feedback,
//
//   x' = A x + B u,   y = C x,   D^T x = 0,   u = -K y,
//   J  = 1/2 * integral over [0, inf) of (x^T Q x + u^T R u),
//
// transcribed on a TG grid into an equality-constrained convex QP.
//
// The dynamics are collocated in integral form,
//   x(t_j) = A * int_0^{t_j} x + B * int_0^{t_j} u + x(0),
// with every inner integral replaced by the node quadrature
// t_j * sum_k P_k v(E_k t_j). The auxiliary abscissae eta = E (x) t are
// stored flat: eta[k * (n+1) + j] = E_k * t_j.
//
// Two transcriptions are provided:
//   * modal ("is"): unknowns are TG coefficients a (n_x x (L_x+1)) and
//     b (n_u x (L_u+1)), stacked state-major then control-major;
//   * nodal ("ips"): unknowns are values on the t grid and the eta grid for
//     every variable, tied together by interpolation rows.

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>

#include "tgspec/tgbasis.hpp"

namespace tgspec {

struct IHOCProblem {
  Eigen::MatrixXd A, B, C, D, Q, R;
  Eigen::VectorXd x0;

  Eigen::Index nx() const { return A.rows(); }
  Eigen::Index nu() const { return B.cols(); }
  Eigen::Index ny() const { return C.rows(); }
  Eigen::Index c1() const { return D.cols(); }

  /// Throws DimensionError on inconsistent shapes and DomainError if Q or R
  /// is not symmetric positive semi-definite.
  void validate() const;
};

enum class BenchmarkProblem { DCS, F16 };

BenchmarkProblem parse_benchmark(std::string_view text);
IHOCProblem make_benchmark_problem(BenchmarkProblem id);

enum class Method { IS, IPS };
std::string_view to_string(Method method);
Method parse_method(std::string_view text);

/// How x(0) enters the dynamics rows.
enum class InitialConditionMode {
  /// x(0) is the modal/interpolated value at t = 0, plus n_x rows pinning it
  /// to x0.
  ExplicitConstraint,
  /// x0 is data on the right-hand side of every dynamics row.
  DynamicsData,
};

/// TG basis values needed by the modal transcription.
struct ISAssembly {
  TGGrid grid;
  std::size_t L_x = 0;
  std::size_t L_u = 0;
  Eigen::MatrixXd G_at_t;      ///< (n+1) x (L_x+1)
  Eigen::MatrixXd G_u_at_t;    ///< (n+1) x (L_u+1)
  Eigen::MatrixXd G_at_eta_x;  ///< (n+1)^2 x (L_x+1), row k*(n+1)+j
  Eigen::MatrixXd G_at_eta_u;  ///< (n+1)^2 x (L_u+1)
  Eigen::VectorXd eta;         ///< (n+1)^2 abscissae E_k t_j

  /// Node-quadrature operators: row j maps coefficients to
  /// t_j * sum_k P_k G(E_k t_j).
  Eigen::MatrixXd integral_x() const;
  Eigen::MatrixXd integral_u() const;
};

ISAssembly make_is_assembly(const TGGrid& grid, std::size_t L_x,
                            std::size_t L_u);

struct QPLayout {
  Method method = Method::IS;
  InitialConditionMode ic_mode = InitialConditionMode::ExplicitConstraint;
  Eigen::Index nx = 0, nu = 0, c1 = 0;
  std::size_t n = 0;
  std::size_t L_x = 0, L_u = 0;  ///< modal only
  Eigen::Index dynamics_rows = 0;
  Eigen::Index d_rows = 0;
  Eigen::Index initial_rows = 0;
  Eigen::Index consistency_rows = 0;  ///< nodal only
};

/// minimize 1/2 z^T H z  subject to  Aeq z = beq.
struct QPSystem {
  Eigen::MatrixXd H;
  Eigen::MatrixXd Aeq;
  Eigen::VectorXd beq;
  QPLayout layout;

  Eigen::Index variables() const { return H.rows(); }
  Eigen::Index constraints() const { return Aeq.rows(); }
};

QPSystem assemble_is(const IHOCProblem& problem, const ISAssembly& assembly,
                     InitialConditionMode ic_mode =
                         InitialConditionMode::ExplicitConstraint);

/// Convenience overload building the assembly for (L_x, L_u).
QPSystem assemble_is(const IHOCProblem& problem, const TGGrid& grid,
                     std::size_t L_x, std::size_t L_u,
                     InitialConditionMode ic_mode =
                         InitialConditionMode::ExplicitConstraint);

/// Largest n accepted by assemble_ips (the dense system is O(n^4)).
inline constexpr std::size_t kMaxIpsDegree = 60;

QPSystem assemble_ips(const IHOCProblem& problem, const TGGrid& grid,
                      InitialConditionMode ic_mode =
                          InitialConditionMode::ExplicitConstraint);

struct KKTSolution {
  Eigen::VectorXd solution;
  Eigen::VectorXd multipliers;
  double kkt_residual = 0.0;
  double constraint_residual = 0.0;  ///< ||Aeq z - beq||_inf
  bool regularized = false;
};

/// Tolerance the KKT residual of a successful solve is expected to meet.
inline constexpr double kKktTolerance = 1e-6;

KKTSolution solve_kkt(const QPSystem& qp);

struct FeedbackGain {
  Eigen::MatrixXd K;  ///< n_u x n_y
  double residual = 0.0;  ///< ||K Y^T + U^T||_max
};

/// Least-squares solution of K Y^T = -U^T. Throws RankDeficientOutputs if Y
/// has numerical rank below n_y.
FeedbackGain feedback_gain(const Eigen::MatrixXd& Y_star,
                           const Eigen::MatrixXd& U_star);

struct SolveReport {
  explicit SolveReport(TGGrid g) : grid(std::move(g)) {}

  TGGrid grid;
  Method method = Method::IS;
  Eigen::MatrixXd coeffs_a;  ///< n_x x (L_x+1)
  Eigen::MatrixXd coeffs_b;  ///< n_u x (L_u+1)
  Eigen::MatrixXd X, U, Y;   ///< values at the t nodes, one row per node
  double J_n = 0.0;
  Eigen::MatrixXd K_star;  ///< empty when the outputs are rank-deficient
  double gain_residual = 0.0;
  Eigen::VectorXd feasibility;  ///< per-node max dynamics residual
  double kkt_residual = 0.0;
  double kkt_tolerance = kKktTolerance;
  double constraint_residual = 0.0;
  double d_constraint_max = 0.0;
};

/// Builds the report from modal coefficients laid out as in assemble_is.
SolveReport recover(const IHOCProblem& problem, const ISAssembly& assembly,
                    const Eigen::VectorXd& coefficients,
                    InitialConditionMode ic_mode =
                        InitialConditionMode::ExplicitConstraint);

struct SolveOptions {
  Method method = Method::IS;
  std::optional<std::size_t> L_x;  ///< default n+1 (n for the nodal method)
  std::optional<std::size_t> L_u;
  InitialConditionMode ic_mode = InitialConditionMode::ExplicitConstraint;
};

/// Assemble, solve and recover in one call.
SolveReport solve_problem(const IHOCProblem& problem, const TGGrid& grid,
                          const SolveOptions& options = {});

struct Trajectory {
  Eigen::VectorXd t;
  Eigen::MatrixXd X, U, Y;  ///< one row per sample
};

/// Evaluates the modal expansions at m equally spaced times in [0, t_n].
Trajectory sample_trajectory(const SolveReport& report,
                             const IHOCProblem& problem, std::size_t m);

enum class ScalingRegime { Stretching, Contracting };
ScalingRegime parse_regime(std::string_view text);

struct ParameterAdvice {
  double alpha;      ///< suggested index
  double alpha_min;  ///< open admissible range for alpha
  double alpha_max;
  double L_min;      ///< open interval for L
  double L_max;
};

/// Meshes with n above this count as large for the contracting regime.
inline constexpr std::size_t kLargeMeshThreshold = 40;

ParameterAdvice advise_parameters(TGFamily family, ScalingRegime regime,
                                  std::size_t n);

}  // namespace tgspec
