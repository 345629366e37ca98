#include <algorithm>
#include <limits>
#include <cctype>
#include <string>

#include "tgspec/errors.hpp"
#include "tgspec/ihoc.hpp"

namespace tgspec {

namespace {

std::string lowercase(std::string_view text) {
  std::string out;
  for (char c : text) out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

void check_spd(const Eigen::MatrixXd& M, const char* name) {
  if (M.size() == 0) return;
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError(std::string(name) + " must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw DomainError(std::string(name) + " must be positive semi-definite");
  }
}

// DCS model linearized at a nominal point: chamber pressure plus four nozzle
// throat areas, four servo commands, pressure output.
IHOCProblem divert_control_system() {
  IHOCProblem p;
  p.A = Eigen::MatrixXd::Zero(5, 5);
  p.A.row(0) << -964.8, -33985.7, -33985.7, -33985.7, -33985.7;
  for (int i = 1; i < 5; ++i) p.A(i, i) = -400.0;
  p.B = Eigen::MatrixXd::Zero(5, 4);
  for (int i = 0; i < 4; ++i) p.B(i + 1, i) = 400.0;
  p.C = Eigen::MatrixXd::Zero(1, 5);
  p.C(0, 0) = 1.0;
  p.D.resize(5, 1);
  p.D << 0, 1, 1, 1, 1;
  p.Q = Eigen::MatrixXd::Identity(5, 5);
  p.R = Eigen::MatrixXd::Identity(4, 4);
  p.x0.resize(5);
  p.x0 << 200, 10, -10, 5, -5;
  return p;
}

// F-16 lateral dynamics with aileron/rudder actuators and yaw washout state.
IHOCProblem f16_lateral() {
  IHOCProblem p;
  p.A.resize(7, 7);
  p.A << -0.3220, 0.0640, 0.0364, -0.9917, 0.0003, 0.0008, 0,
         0, 0, 1, 0.0037, 0, 0, 0,
         -30.6492, 0, -3.6784, 0.6646, -0.7333, 0.1315, 0,
         8.5396, 0, -0.0254, -0.4764, -0.0319, -0.0620, 0,
         0, 0, 0, 0, -20.2, 0, 0,
         0, 0, 0, 0, 0, -20.2, 0,
         0, 0, 0, 57.2958, 0, 0, -1;
  p.B = Eigen::MatrixXd::Zero(7, 2);
  p.B(4, 0) = 20.2;
  p.B(5, 1) = 20.2;
  p.C.resize(4, 7);
  p.C << 0, 0, 0, 57.2958, 0, 0, -1,
         0, 0, 57.2958, 0, 0, 0, 0,
         57.2958, 0, 0, 0, 0, 0, 0,
         0, 57.2958, 0, 0, 0, 0, 0;
  p.D.resize(7, 1);
  p.D << 0, 0, 0, 0, 12, -1, 0;
  p.Q = Eigen::VectorXd((Eigen::VectorXd(7) << 50, 100, 100, 50, 0, 0, 1).finished())
            .asDiagonal();
  p.R = 0.1 * Eigen::MatrixXd::Identity(2, 2);
  p.x0 = Eigen::VectorXd::Zero(7);
  p.x0(0) = 0.5;
  return p;
}

}  // namespace

void IHOCProblem::validate() const {
  const Eigen::Index n = A.rows();
  if (n == 0 || A.cols() != n) throw DimensionError("A must be square and non-empty");
  if (B.rows() != n || B.cols() == 0) throw DimensionError("B must have n_x rows");
  if (C.cols() != n || C.rows() == 0) throw DimensionError("C must have n_x columns");
  if (D.size() != 0 && D.rows() != n) throw DimensionError("D must have n_x rows");
  if (Q.rows() != n || Q.cols() != n) throw DimensionError("Q must be n_x x n_x");
  if (R.rows() != B.cols() || R.cols() != B.cols()) {
    throw DimensionError("R must be n_u x n_u");
  }
  if (x0.size() != n) throw DimensionError("x0 must have n_x entries");
  check_spd(Q, "Q");
  check_spd(R, "R");
}

BenchmarkProblem parse_benchmark(std::string_view text) {
  const std::string s = lowercase(text);
  if (s == "dcs") return BenchmarkProblem::DCS;
  if (s == "f16" || s == "f-16") return BenchmarkProblem::F16;
  throw DomainError("unknown benchmark problem '" + std::string(text) + "'");
}

IHOCProblem make_benchmark_problem(BenchmarkProblem id) {
  switch (id) {
    case BenchmarkProblem::DCS: return divert_control_system();
    case BenchmarkProblem::F16: return f16_lateral();
  }
  throw DomainError("unknown benchmark problem");
}

std::string_view to_string(Method method) {
  return method == Method::IS ? "is" : "ips";
}

Method parse_method(std::string_view text) {
  const std::string s = lowercase(text);
  if (s == "is") return Method::IS;
  if (s == "ips") return Method::IPS;
  throw DomainError("unknown method '" + std::string(text) + "'");
}

ScalingRegime parse_regime(std::string_view text) {
  const std::string s = lowercase(text);
  if (s == "stretching") return ScalingRegime::Stretching;
  if (s == "contracting") return ScalingRegime::Contracting;
  throw DomainError("unknown regime '" + std::string(text) + "'");
}

ParameterAdvice advise_parameters(TGFamily family, ScalingRegime regime,
                                  std::size_t n) {
  const double inf = std::numeric_limits<double>::infinity();
  if (regime == ScalingRegime::Stretching) {
    if (family == TGFamily::Rational) return {0.5, 0.5, 0.5, 15.0, 25.0};
    return {0.5, 0.5, 0.5, 10.0, 20.0};
  }
  if (n > kLargeMeshThreshold) return {0.0, 0.0, 0.0, 0.0, 1.0};
  return {-0.2, -0.5, inf, 0.0, 1.0};
}

}  // namespace tgspec
