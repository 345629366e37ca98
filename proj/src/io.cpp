#include "tgspec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

namespace tgspec {

namespace {

using nlohmann::json;

Eigen::MatrixXd matrix_field(const json& doc, const char* name, bool required) {
  if (!doc.contains(name)) {
    if (required) throw ParseError(std::string("missing field '") + name + "'");
    return {};
  }
  const json& rows = doc.at(name);
  if (!rows.is_array() || rows.empty()) {
    throw ParseError(std::string("field '") + name + "' must be a non-empty array of rows");
  }
  const std::size_t cols = rows.front().is_array() ? rows.front().size() : 0;
  if (cols == 0) throw ParseError(std::string("field '") + name + "' has an empty row");
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) {
      throw ParseError(std::string("field '") + name + "' is ragged");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!rows[i][j].is_number()) {
        throw ParseError(std::string("field '") + name + "' has a non-numeric entry");
      }
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
    }
  }
  return M;
}

json matrix_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

IHOCProblem parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid problem document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("problem document must be an object");

  IHOCProblem p;
  p.A = matrix_field(doc, "A", true);
  p.B = matrix_field(doc, "B", true);
  p.C = matrix_field(doc, "C", true);
  p.D = matrix_field(doc, "D", false);
  if (p.D.size() == 0) p.D.resize(p.A.rows(), 0);
  p.Q = matrix_field(doc, "Q", true);
  p.R = matrix_field(doc, "R", true);
  if (!doc.contains("x0") || !doc["x0"].is_array()) throw ParseError("missing field 'x0'");
  const json& x0 = doc["x0"];
  p.x0.resize(static_cast<Eigen::Index>(x0.size()));
  for (std::size_t i = 0; i < x0.size(); ++i) {
    if (!x0[i].is_number()) throw ParseError("field 'x0' has a non-numeric entry");
    p.x0(static_cast<Eigen::Index>(i)) = x0[i].get<double>();
  }
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid problem: ") + e.what());
  }
  return p;
}

IHOCProblem read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string problem_to_json(const IHOCProblem& problem) {
  json doc;
  doc["A"] = matrix_json(problem.A);
  doc["B"] = matrix_json(problem.B);
  doc["C"] = matrix_json(problem.C);
  if (problem.c1() > 0) doc["D"] = matrix_json(problem.D);
  doc["Q"] = matrix_json(problem.Q);
  doc["R"] = matrix_json(problem.R);
  doc["x0"] = json::array();
  for (Eigen::Index i = 0; i < problem.x0.size(); ++i) doc["x0"].push_back(problem.x0(i));
  return doc.dump(2) + "\n";
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s(buf);
  if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t";
  for (Eigen::Index i = 0; i < tr.X.cols(); ++i) os << ",x" << i + 1;
  for (Eigen::Index i = 0; i < tr.U.cols(); ++i) os << ",u" << i + 1;
  for (Eigen::Index i = 0; i < tr.Y.cols(); ++i) os << ",y" << i + 1;
  os << '\n';
  for (Eigen::Index r = 0; r < tr.t.size(); ++r) {
    os << format_double(tr.t(r));
    for (Eigen::Index i = 0; i < tr.X.cols(); ++i) os << ',' << format_double(tr.X(r, i));
    for (Eigen::Index i = 0; i < tr.U.cols(); ++i) os << ',' << format_double(tr.U(r, i));
    for (Eigen::Index i = 0; i < tr.Y.cols(); ++i) os << ',' << format_double(tr.Y(r, i));
    os << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<QuadratureSweepRow>& rows) {
  os << "integral,family,alpha,L,n,max_abs_error,max_log_error\n";
  for (const auto& r : rows) {
    os << to_string(r.integral_id) << ',' << to_string(r.family) << ','
       << format_double(r.alpha) << ',' << format_double(r.L) << ',' << r.n << ','
       << format_double(r.max_abs_error) << ',' << format_double(r.max_log_error) << '\n';
  }
}

}  // namespace tgspec
