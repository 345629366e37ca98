#include <string>

#include "tgspec/errors.hpp"
#include "tgspec/ihoc.hpp"

namespace tgspec {

namespace {

Eigen::MatrixXd basis_matrix(const TGGrid& grid, const double* times,
                             Eigen::Index count, std::size_t degree) {
  // Row-major scratch so each row is filled by one recurrence sweep.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> G(
      count, static_cast<Eigen::Index>(degree + 1));
  for (Eigen::Index r = 0; r < count; ++r) {
    tg_eval_series_into(grid.map, grid.alpha(), degree, times[r],
                        G.row(r).data());
  }
  return G;
}

Eigen::MatrixXd node_integral(const ISAssembly& as, const Eigen::MatrixXd& G_eta) {
  const auto N = static_cast<Eigen::Index>(as.grid.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(N, G_eta.cols());
  for (Eigen::Index k = 0; k < N; ++k) {
    out.noalias() += as.grid.P[k] * G_eta.middleRows(k * N, N);
  }
  for (Eigen::Index j = 0; j < N; ++j) out.row(j) *= as.grid.t_nodes[j];
  return out;
}

Eigen::VectorXd signs(std::size_t degree) {
  Eigen::VectorXd s(static_cast<Eigen::Index>(degree + 1));
  for (Eigen::Index k = 0; k < s.size(); ++k) s(k) = (k % 2 == 0) ? 1.0 : -1.0;
  return s;
}

void check_problem(const IHOCProblem& problem) { problem.validate(); }

}  // namespace

Eigen::MatrixXd ISAssembly::integral_x() const { return node_integral(*this, G_at_eta_x); }
Eigen::MatrixXd ISAssembly::integral_u() const { return node_integral(*this, G_at_eta_u); }

ISAssembly make_is_assembly(const TGGrid& grid, std::size_t L_x,
                            std::size_t L_u) {
  const auto N = static_cast<Eigen::Index>(grid.size());
  ISAssembly as{grid, L_x, L_u, {}, {}, {}, {}, Eigen::VectorXd(N * N)};
  for (Eigen::Index k = 0; k < N; ++k) {
    for (Eigen::Index j = 0; j < N; ++j) {
      as.eta(k * N + j) = grid.E[k] * grid.t_nodes[j];
    }
  }
  as.G_at_t = basis_matrix(grid, grid.t_nodes.data(), N, L_x);
  as.G_u_at_t = basis_matrix(grid, grid.t_nodes.data(), N, L_u);
  as.G_at_eta_x = basis_matrix(grid, as.eta.data(), N * N, L_x);
  as.G_at_eta_u = basis_matrix(grid, as.eta.data(), N * N, L_u);
  return as;
}

QPSystem assemble_is(const IHOCProblem& problem, const TGGrid& grid,
                     std::size_t L_x, std::size_t L_u,
                     InitialConditionMode ic_mode) {
  return assemble_is(problem, make_is_assembly(grid, L_x, L_u), ic_mode);
}

QPSystem assemble_is(const IHOCProblem& problem, const ISAssembly& as,
                     InitialConditionMode ic_mode) {
  check_problem(problem);
  const Eigen::Index nx = problem.nx(), nu = problem.nu(), c1 = problem.c1();
  const auto N = static_cast<Eigen::Index>(as.grid.size());
  const auto mx = static_cast<Eigen::Index>(as.L_x + 1);
  const auto mu = static_cast<Eigen::Index>(as.L_u + 1);
  const Eigen::Index da = nx * mx;
  const Eigen::Index d = da + nu * mu;
  const bool explicit_ic = ic_mode == InitialConditionMode::ExplicitConstraint;

  QPSystem qp;
  qp.layout = {Method::IS, ic_mode, nx, nu, c1, as.grid.n(), as.L_x, as.L_u,
               N * nx, N * c1, explicit_ic ? nx : 0, 0};
  const Eigen::Index m =
      qp.layout.dynamics_rows + qp.layout.d_rows + qp.layout.initial_rows;

  // Objective: 1/2 sum_j W_j (x_j^T Q x_j + u_j^T R u_j) with x_j = a G(t_j).
  const Eigen::Map<const Eigen::VectorXd> W(as.grid.W.data(), N);
  const Eigen::MatrixXd Mx = as.G_at_t.transpose() * W.asDiagonal() * as.G_at_t;
  const Eigen::MatrixXd Mu = as.G_u_at_t.transpose() * W.asDiagonal() * as.G_u_at_t;
  qp.H = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index r = 0; r < nx; ++r)
    for (Eigen::Index s = 0; s < nx; ++s)
      if (problem.Q(r, s) != 0.0) qp.H.block(r * mx, s * mx, mx, mx) = problem.Q(r, s) * Mx;
  for (Eigen::Index r = 0; r < nu; ++r)
    for (Eigen::Index s = 0; s < nu; ++s)
      if (problem.R(r, s) != 0.0)
        qp.H.block(da + r * mu, da + s * mu, mu, mu) = problem.R(r, s) * Mu;
  qp.H = 0.5 * (qp.H + qp.H.transpose()).eval();

  qp.Aeq = Eigen::MatrixXd::Zero(m, d);
  qp.beq = Eigen::VectorXd::Zero(m);
  const Eigen::MatrixXd Ix = as.integral_x();
  const Eigen::MatrixXd Iu = as.integral_u();
  const Eigen::RowVectorXd at_zero = signs(as.L_x).transpose();

  for (Eigen::Index r = 0; r < nx; ++r) {
    for (Eigen::Index j = 0; j < N; ++j) {
      const Eigen::Index row = r * N + j;
      auto own = qp.Aeq.block(row, r * mx, 1, mx);
      own += as.G_at_t.row(j);
      if (explicit_ic) own -= at_zero;
      for (Eigen::Index s = 0; s < nx; ++s) {
        if (problem.A(r, s) != 0.0)
          qp.Aeq.block(row, s * mx, 1, mx) -= problem.A(r, s) * Ix.row(j);
      }
      for (Eigen::Index s = 0; s < nu; ++s) {
        if (problem.B(r, s) != 0.0)
          qp.Aeq.block(row, da + s * mu, 1, mu) -= problem.B(r, s) * Iu.row(j);
      }
      if (!explicit_ic) qp.beq(row) = problem.x0(r);
    }
  }

  const Eigen::Index d_offset = qp.layout.dynamics_rows;
  for (Eigen::Index c = 0; c < c1; ++c) {
    for (Eigen::Index j = 0; j < N; ++j) {
      for (Eigen::Index s = 0; s < nx; ++s) {
        if (problem.D(s, c) != 0.0)
          qp.Aeq.block(d_offset + c * N + j, s * mx, 1, mx) += problem.D(s, c) * as.G_at_t.row(j);
      }
    }
  }

  if (explicit_ic) {
    const Eigen::Index ic_offset = d_offset + qp.layout.d_rows;
    for (Eigen::Index r = 0; r < nx; ++r) {
      qp.Aeq.block(ic_offset + r, r * mx, 1, mx) = at_zero;
      qp.beq(ic_offset + r) = problem.x0(r);
    }
  }
  return qp;
}

QPSystem assemble_ips(const IHOCProblem& problem, const TGGrid& grid,
                      InitialConditionMode ic_mode) {
  check_problem(problem);
  if (grid.n() > kMaxIpsDegree) {
    throw SizingError("nodal transcription is limited to n <= " +
                      std::to_string(kMaxIpsDegree) + " (dense O(n^4) system)");
  }
  const Eigen::Index nx = problem.nx(), nu = problem.nu(), c1 = problem.c1();
  const auto N = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index block = N * (N + 1);  // t values then eta values
  const Eigen::Index nv = nx + nu;
  const Eigen::Index d = nv * block;
  const bool explicit_ic = ic_mode == InitialConditionMode::ExplicitConstraint;

  QPSystem qp;
  qp.layout = {Method::IPS, ic_mode, nx, nu, c1, grid.n(), grid.n(), grid.n(),
               N * nx, N * c1, explicit_ic ? nx : 0, nv * N * N};
  const Eigen::Index m = qp.layout.dynamics_rows + qp.layout.d_rows +
                         qp.layout.initial_rows + qp.layout.consistency_rows;

  auto t_index = [&](Eigen::Index var, Eigen::Index j) { return var * block + j; };
  auto eta_index = [&](Eigen::Index var, Eigen::Index q) { return var * block + N + q; };

  // Interpolation through the t nodes: value at tau = sum_j samples_j ell_j(tau)
  // with ell_j(tau) = sum_k G_k(tau) G_k(t_j) weights_j / ||G_k||_n^2.
  const ISAssembly as = make_is_assembly(grid, grid.n(), grid.n());
  const Eigen::Map<const Eigen::VectorXd> varpi(grid.rule.weights.data(), N);
  Eigen::VectorXd sq_norms(N);
  for (Eigen::Index k = 0; k < N; ++k) {
    sq_norms(k) = (as.G_at_t.col(k).array().square() * varpi.array()).sum();
  }
  // transform(k, j) = G_k(t_j) varpi_j / ||G_k||^2
  const Eigen::MatrixXd transform =
      sq_norms.cwiseInverse().asDiagonal() * as.G_at_t.transpose() * varpi.asDiagonal();
  const Eigen::MatrixXd lagrange_eta = as.G_at_eta_x * transform;  // N^2 x N
  const Eigen::RowVectorXd lagrange_zero = signs(grid.n()).transpose() * transform;

  const Eigen::Map<const Eigen::VectorXd> W(grid.W.data(), N);
  qp.H = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index r = 0; r < nx; ++r)
    for (Eigen::Index s = 0; s < nx; ++s)
      for (Eigen::Index j = 0; j < N; ++j)
        qp.H(t_index(r, j), t_index(s, j)) += problem.Q(r, s) * W(j);
  for (Eigen::Index r = 0; r < nu; ++r)
    for (Eigen::Index s = 0; s < nu; ++s)
      for (Eigen::Index j = 0; j < N; ++j)
        qp.H(t_index(nx + r, j), t_index(nx + s, j)) += problem.R(r, s) * W(j);
  qp.H = 0.5 * (qp.H + qp.H.transpose()).eval();

  qp.Aeq = Eigen::MatrixXd::Zero(m, d);
  qp.beq = Eigen::VectorXd::Zero(m);

  for (Eigen::Index r = 0; r < nx; ++r) {
    for (Eigen::Index j = 0; j < N; ++j) {
      const Eigen::Index row = r * N + j;
      const double tj = grid.t_nodes[j];
      qp.Aeq(row, t_index(r, j)) += 1.0;
      if (explicit_ic) {
        for (Eigen::Index l = 0; l < N; ++l) qp.Aeq(row, t_index(r, l)) -= lagrange_zero(l);
      } else {
        qp.beq(row) = problem.x0(r);
      }
      for (Eigen::Index k = 0; k < N; ++k) {
        const double c = tj * grid.P[k];
        const Eigen::Index q = k * N + j;
        for (Eigen::Index s = 0; s < nx; ++s)
          if (problem.A(r, s) != 0.0) qp.Aeq(row, eta_index(s, q)) -= c * problem.A(r, s);
        for (Eigen::Index s = 0; s < nu; ++s)
          if (problem.B(r, s) != 0.0) qp.Aeq(row, eta_index(nx + s, q)) -= c * problem.B(r, s);
      }
    }
  }

  Eigen::Index offset = qp.layout.dynamics_rows;
  for (Eigen::Index c = 0; c < c1; ++c)
    for (Eigen::Index j = 0; j < N; ++j)
      for (Eigen::Index s = 0; s < nx; ++s)
        qp.Aeq(offset + c * N + j, t_index(s, j)) += problem.D(s, c);
  offset += qp.layout.d_rows;

  if (explicit_ic) {
    for (Eigen::Index r = 0; r < nx; ++r) {
      for (Eigen::Index l = 0; l < N; ++l) qp.Aeq(offset + r, t_index(r, l)) = lagrange_zero(l);
      qp.beq(offset + r) = problem.x0(r);
    }
    offset += nx;
  }

  for (Eigen::Index v = 0; v < nv; ++v) {
    for (Eigen::Index q = 0; q < N * N; ++q) {
      const Eigen::Index row = offset + v * N * N + q;
      qp.Aeq(row, eta_index(v, q)) = 1.0;
      for (Eigen::Index l = 0; l < N; ++l) qp.Aeq(row, t_index(v, l)) -= lagrange_eta(q, l);
    }
  }
  return qp;
}

}  // namespace tgspec
