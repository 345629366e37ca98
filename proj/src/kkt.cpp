#include <algorithm>
#include <cmath>
#include <string>

#include "tgspec/errors.hpp"
#include "tgspec/ihoc.hpp"

namespace tgspec {

// Null-space solve of the KKT conditions
//
//   [H  Aeq^T] [z ]   [ 0 ]
//   [Aeq  0  ] [mu] = [beq]
//
// Constraint rows are equilibrated, then a column-pivoted QR of Aeq^T splits
// R^d into range(Aeq^T) and its complement N. The particular solution
// z_p lies in the range, and the reduced system N^T H N y = -N^T H z_p
// is symmetric positive semi-definite.
KKTSolution solve_kkt(const QPSystem& qp) {
  const Eigen::Index d = qp.variables();
  const Eigen::Index m = qp.constraints();
  if (qp.H.cols() != d || qp.Aeq.cols() != d || qp.beq.size() != m) {
    throw DimensionError("QP blocks have inconsistent sizes");
  }
  const double beq_scale = std::max(1.0, m > 0 ? qp.beq.cwiseAbs().maxCoeff() : 0.0);
  const double feasibility_tol = 1e-6 * beq_scale;

  Eigen::VectorXd row_scale(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double s = qp.Aeq.row(i).cwiseAbs().maxCoeff();
    if (s == 0.0) {
      if (std::abs(qp.beq(i)) > feasibility_tol) {
        throw InfeasibleConstraints("constraint row " + std::to_string(i) +
                                    " is empty but has a non-zero target");
      }
      row_scale(i) = 0.0;
    } else {
      row_scale(i) = 1.0 / s;
    }
  }
  const Eigen::MatrixXd As = row_scale.asDiagonal() * qp.Aeq;
  const Eigen::VectorXd bs = row_scale.cwiseProduct(qp.beq);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As.transpose());
  qr.setThreshold(1e-13);
  const Eigen::Index rank = m > 0 ? qr.rank() : 0;
  const Eigen::MatrixXd Q = qr.householderQ();
  const auto Q1 = Q.leftCols(rank);
  const auto Nsp = Q.rightCols(d - rank);
  const auto R11 = qr.matrixR().topLeftCorner(rank, rank).template triangularView<Eigen::Upper>();
  const Eigen::VectorXd b_perm = qr.colsPermutation().transpose() * bs;

  KKTSolution out;
  Eigen::VectorXd y1 = b_perm.head(rank);
  R11.transpose().solveInPlace(y1);
  Eigen::VectorXd z = Q1 * y1;

  const double particular_residual =
      m > 0 ? (qp.Aeq * z - qp.beq).cwiseAbs().maxCoeff() : 0.0;
  if (!(particular_residual <= feasibility_tol)) {
    throw InfeasibleConstraints("equality constraints are inconsistent (residual " +
                                std::to_string(particular_residual) + ")");
  }

  if (d > rank) {
    const Eigen::MatrixXd HN = qp.H * Nsp;
    Eigen::MatrixXd reduced = Nsp.transpose() * HN;
    reduced = 0.5 * (reduced + reduced.transpose()).eval();
    const Eigen::VectorXd rhs = -(HN.transpose() * z);

    Eigen::LDLT<Eigen::MatrixXd> ldlt(reduced);
    const auto diag = ldlt.vectorD().cwiseAbs();
    const bool deficient = ldlt.info() != Eigen::Success ||
                           diag.minCoeff() <= 1e-14 * std::max(diag.maxCoeff(), 1e-300);
    Eigen::VectorXd y;
    if (!deficient) {
      y = ldlt.solve(rhs);
    } else {
      const double h_max = qp.H.size() > 0 ? qp.H.cwiseAbs().maxCoeff() : 0.0;
      const double eps = 1e-10 * std::max(1.0, h_max);
      reduced.diagonal().array() += eps;
      ldlt.compute(reduced);
      out.regularized = true;
      if (ldlt.info() != Eigen::Success) {
        throw SingularSystem("regularized reduced Hessian factorization failed");
      }
      y = ldlt.solve(rhs);
    }
    if (!y.allFinite()) throw SingularSystem("reduced Hessian solve produced non-finite values");
    z += Nsp * y;
  }

  // Multipliers from H z + Aeq^T mu = 0 restricted to the independent rows.
  const Eigen::VectorXd Hz = qp.H * z;
  Eigen::VectorXd mu_perm = Eigen::VectorXd::Zero(m);
  if (rank > 0) {
    Eigen::VectorXd head = -(Q1.transpose() * Hz);
    R11.solveInPlace(head);
    mu_perm.head(rank) = head;
  }
  const Eigen::VectorXd mu_scaled = qr.colsPermutation() * mu_perm;
  out.multipliers = row_scale.cwiseProduct(mu_scaled);
  out.solution = std::move(z);

  const Eigen::VectorXd stationarity = Hz + qp.Aeq.transpose() * out.multipliers;
  out.constraint_residual =
      m > 0 ? (qp.Aeq * out.solution - qp.beq).cwiseAbs().maxCoeff() : 0.0;
  const double stat_norm = d > 0 ? stationarity.cwiseAbs().maxCoeff() : 0.0;
  out.kkt_residual = std::max(stat_norm, out.constraint_residual) / beq_scale;
  if (!std::isfinite(out.kkt_residual)) {
    throw SingularSystem("KKT residual is not finite");
  }
  return out;
}

}  // namespace tgspec
