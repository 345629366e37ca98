#include <string>
#include <algorithm>
#include <cmath>
#include <limits>

#include "tgspec/errors.hpp"
#include "tgspec/ihoc.hpp"
#include "tgspec/interpolation.hpp"

namespace tgspec {

FeedbackGain feedback_gain(const Eigen::MatrixXd& Y_star,
                           const Eigen::MatrixXd& U_star) {
  if (Y_star.rows() != U_star.rows()) {
    throw DimensionError("Y* and U* must have one row per node");
  }
  if (Y_star.rows() < Y_star.cols()) {
    throw RankDeficientOutputs("fewer nodes than outputs");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Y_star, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > cutoff ? 1 : 0;
  if (rank < Y_star.cols() || sv.size() == 0 || sv(0) == 0.0) {
    throw RankDeficientOutputs("output samples have numerical rank " +
                               std::to_string(rank) + " < n_y = " +
                               std::to_string(Y_star.cols()));
  }
  svd.setThreshold(1e-10);
  FeedbackGain out;
  out.K = -svd.solve(U_star).transpose();
  out.residual = (out.K * Y_star.transpose() + U_star.transpose()).cwiseAbs().maxCoeff();
  return out;
}

SolveReport recover(const IHOCProblem& problem, const ISAssembly& as,
                    const Eigen::VectorXd& coefficients,
                    InitialConditionMode ic_mode) {
  const Eigen::Index nx = problem.nx(), nu = problem.nu();
  const auto mx = static_cast<Eigen::Index>(as.L_x + 1);
  const auto mu = static_cast<Eigen::Index>(as.L_u + 1);
  if (coefficients.size() != nx * mx + nu * mu) {
    throw DimensionError("coefficient vector does not match the modal layout");
  }
  const auto N = static_cast<Eigen::Index>(as.grid.size());

  SolveReport rep(as.grid);
  rep.method = Method::IS;
  rep.coeffs_a = Eigen::Map<const Eigen::MatrixXd>(coefficients.data(), mx, nx).transpose();
  rep.coeffs_b =
      Eigen::Map<const Eigen::MatrixXd>(coefficients.data() + nx * mx, mu, nu).transpose();

  rep.X = as.G_at_t * rep.coeffs_a.transpose();
  rep.U = as.G_u_at_t * rep.coeffs_b.transpose();
  rep.Y = rep.X * problem.C.transpose();

  double J = 0.0;
  for (Eigen::Index j = 0; j < N; ++j) {
    const auto x = rep.X.row(j).transpose();
    const auto u = rep.U.row(j).transpose();
    J += as.grid.W[j] * (x.dot(problem.Q * x) + u.dot(problem.R * u));
  }
  rep.J_n = 0.5 * J;

  // Per-node max over states of the collocated integral-dynamics residual.
  Eigen::RowVectorXd x_start(nx);
  if (ic_mode == InitialConditionMode::ExplicitConstraint) {
    Eigen::VectorXd s(mx);
    for (Eigen::Index k = 0; k < mx; ++k) s(k) = (k % 2 == 0) ? 1.0 : -1.0;
    x_start = (rep.coeffs_a * s).transpose();
  } else {
    x_start = problem.x0.transpose();
  }
  const Eigen::MatrixXd int_x = as.integral_x() * rep.coeffs_a.transpose();
  const Eigen::MatrixXd int_u = as.integral_u() * rep.coeffs_b.transpose();
  const Eigen::MatrixXd rhs = int_x * problem.A.transpose() +
                              int_u * problem.B.transpose() +
                              Eigen::VectorXd::Ones(N) * x_start;
  rep.feasibility = (rhs - rep.X).cwiseAbs().rowwise().maxCoeff();

  rep.d_constraint_max =
      problem.c1() > 0 ? (rep.X * problem.D).cwiseAbs().maxCoeff() : 0.0;

  // Identically zero (or otherwise rank-deficient) outputs leave the gain
  // undetermined; the report carries an empty K_star in that case.
  try {
    const FeedbackGain gain = feedback_gain(rep.Y, rep.U);
    rep.K_star = gain.K;
    rep.gain_residual = gain.residual;
  } catch (const RankDeficientOutputs&) {
    rep.K_star.resize(0, 0);
    rep.gain_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

SolveReport solve_problem(const IHOCProblem& problem, const TGGrid& grid,
                          const SolveOptions& options) {
  problem.validate();
  if (options.method == Method::IS) {
    const std::size_t Lx = options.L_x.value_or(grid.n() + 1);
    const std::size_t Lu = options.L_u.value_or(grid.n() + 1);
    const ISAssembly as = make_is_assembly(grid, Lx, Lu);
    const QPSystem qp = assemble_is(problem, as, options.ic_mode);
    const KKTSolution sol = solve_kkt(qp);
    SolveReport rep = recover(problem, as, sol.solution, options.ic_mode);
    rep.kkt_residual = sol.kkt_residual;
    rep.constraint_residual = sol.constraint_residual;
    return rep;
  }

  const QPSystem qp = assemble_ips(problem, grid, options.ic_mode);
  const KKTSolution sol = solve_kkt(qp);
  // Convert the t-node values to degree-n modal coefficients and reuse the
  // modal recovery; the eta values equal the interpolant by construction.
  const Eigen::Index nx = problem.nx(), nu = problem.nu();
  const auto N = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index block = N * (N + 1);
  Eigen::VectorXd coeffs((nx + nu) * N);
  std::vector<double> samples(static_cast<std::size_t>(N));
  for (Eigen::Index v = 0; v < nx + nu; ++v) {
    for (Eigen::Index j = 0; j < N; ++j) samples[j] = sol.solution(v * block + j);
    const TGInterpolant interp = forward_transform(grid, samples);
    for (Eigen::Index k = 0; k < N; ++k) coeffs(v * N + k) = interp.coeffs[k];
  }
  const ISAssembly as = make_is_assembly(grid, grid.n(), grid.n());
  SolveReport rep = recover(problem, as, coeffs, options.ic_mode);
  rep.method = Method::IPS;
  // Objective evaluated on the nodal unknowns themselves.
  rep.J_n = 0.5 * sol.solution.dot(qp.H * sol.solution);
  rep.kkt_residual = sol.kkt_residual;
  rep.constraint_residual = sol.constraint_residual;
  return rep;
}

Trajectory sample_trajectory(const SolveReport& report,
                             const IHOCProblem& problem, std::size_t m) {
  if (m < 2) throw DomainError("trajectory sampling needs at least 2 points");
  const TGGrid& grid = report.grid;
  const double t_end = grid.t_nodes.back();
  const auto rows = static_cast<Eigen::Index>(m);
  const auto mx = report.coeffs_a.cols();
  const auto mu = report.coeffs_b.cols();

  Trajectory tr;
  tr.t.resize(rows);
  tr.X.resize(rows, problem.nx());
  tr.U.resize(rows, problem.nu());
  Eigen::VectorXd gx(mx), gu(mu);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double t = (i == rows - 1)
                         ? t_end
                         : t_end * static_cast<double>(i) / static_cast<double>(rows - 1);
    tr.t(i) = t;
    tg_eval_series_into(grid.map, grid.alpha(), static_cast<std::size_t>(mx - 1), t, gx.data());
    tg_eval_series_into(grid.map, grid.alpha(), static_cast<std::size_t>(mu - 1), t, gu.data());
    tr.X.row(i) = (report.coeffs_a * gx).transpose();
    tr.U.row(i) = (report.coeffs_b * gu).transpose();
  }
  tr.Y = tr.X * problem.C.transpose();
  return tr;
}

}  // namespace tgspec
