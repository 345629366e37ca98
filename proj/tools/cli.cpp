#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "tgspec/errors.hpp"
#include "tgspec/ihoc.hpp"
#include "tgspec/io.hpp"
#include "tgspec/quadrature.hpp"

namespace tgspec::cli {

namespace fs = std::filesystem;

namespace {

/// Bad command-line or file input; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return parts;
}

double to_real(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InputError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw InputError("not a number: '" + s + "'");
  return v;
}

std::size_t to_size(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError("not a non-negative integer: '" + s + "'");
  }
  return static_cast<std::size_t>(std::stoull(s));
}

struct SolveConfig {
  std::string problem;
  std::string family = "eg";
  std::string alpha;
  std::string schedule;
  double L = 1.0;
  std::string n;
  std::string method = "is";
  std::string x0;
  std::string ic = "constraint";
  std::size_t samples = 100;
  std::string out_dir;
};

struct SweepConfig {
  std::string integrals = "I1,I2,I3";
  std::string families = "rg,eg";
  std::string alphas;
  std::string Ls;
  std::string ns;
  std::string out_dir;
};

struct AdviseConfig {
  std::string family;
  std::string regime;
  std::size_t n = 0;
};

struct ExportConfig {
  std::string problem;
  std::string out;
};

IHOCProblem load_problem(const std::string& spec) {
  if (spec == "dcs" || spec == "f16") {
    return make_benchmark_problem(parse_benchmark(spec));
  }
  try {
    return read_problem_file(spec);
  } catch (const ParseError& e) {
    throw InputError(e.what());
  }
}

std::string format_matrix_rows(const Eigen::MatrixXd& M, int decimals) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    os << " ";
    for (Eigen::Index j = 0; j < M.cols(); ++j) os << ' ' << format_fixed(M(i, j), decimals);
    os << '\n';
  }
  return os.str();
}

std::string scientific(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

int cmd_solve(const SolveConfig& cfg, std::ostream& out) {
  // Everything that can fail on input is checked before touching out_dir.
  IHOCProblem problem = load_problem(cfg.problem);
  if (!cfg.x0.empty()) {
    const auto values = parse_real_list(cfg.x0);
    if (static_cast<Eigen::Index>(values.size()) != problem.nx()) {
      throw InputError("--x0 must have n_x = " + std::to_string(problem.nx()) + " entries");
    }
    problem.x0 = Eigen::Map<const Eigen::VectorXd>(values.data(), problem.nx());
  }
  const TGFamily family = parse_family(cfg.family);
  const Method method = parse_method(cfg.method);
  InitialConditionMode ic_mode;
  if (cfg.ic == "constraint") {
    ic_mode = InitialConditionMode::ExplicitConstraint;
  } else if (cfg.ic == "data") {
    ic_mode = InitialConditionMode::DynamicsData;
  } else {
    throw InputError("--ic must be 'constraint' or 'data'");
  }

  std::vector<std::pair<std::size_t, double>> runs;
  if (!cfg.schedule.empty()) {
    if (!cfg.alpha.empty()) throw InputError("use either --alpha or --alpha-schedule");
    runs = parse_schedule(cfg.schedule);
  } else {
    if (cfg.alpha.empty()) throw InputError("--alpha or --alpha-schedule is required");
    if (cfg.n.empty()) throw InputError("--n is required with --alpha");
    const double alpha = to_real(cfg.alpha);
    for (std::size_t n : parse_size_list(cfg.n)) runs.emplace_back(n, alpha);
  }
  for (const auto& [n, alpha] : runs) {
    if (n == 0) throw InputError("n must be positive");
    GegenbauerIndex{alpha};
  }
  if (cfg.samples < 2) throw InputError("--samples must be at least 2");
  const TGMap map(family, cfg.L);

  struct Run {
    std::size_t n;
    double alpha;
    SolveReport report;
    double seconds;
  };
  std::vector<Run> done;
  for (const auto& [n, alpha] : runs) {
    const auto start = std::chrono::steady_clock::now();
    std::string stage = "grid construction";
    try {
      const TGGrid grid = build_grid(map, GegenbauerIndex(alpha), n);
      stage = "transcription and solve";
      SolveReport rep = solve_problem(problem, grid, {method, std::nullopt, std::nullopt, ic_mode});
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      done.push_back({n, alpha, std::move(rep), secs});
    } catch (const std::exception& e) {
      throw std::runtime_error(stage + " failed at n=" + std::to_string(n) + ": " + e.what());
    }
  }

  fs::create_directories(cfg.out_dir);
  const Run& last = done.back();
  {
    std::ofstream csv(fs::path(cfg.out_dir) / "trajectory.csv");
    write_trajectory_csv(csv, sample_trajectory(last.report, problem, cfg.samples));
  }
  {
    std::ofstream rep(fs::path(cfg.out_dir) / "report.txt");
    const SolveReport& r = last.report;
    rep << "method: " << to_string(method) << '\n'
        << "family: " << to_string(family) << '\n'
        << "alpha: " << format_double(last.alpha) << '\n'
        << "L: " << format_double(cfg.L) << '\n'
        << "n: " << last.n << '\n'
        << "L_x: " << r.coeffs_a.cols() - 1 << '\n'
        << "L_u: " << r.coeffs_b.cols() - 1 << '\n'
        << "J_n: " << format_fixed(r.J_n, 6) << '\n'
        << (r.K_star.size() == 0
                ? std::string("K_star: undetermined (outputs rank-deficient)\n")
                : "K_star (" + std::to_string(r.K_star.rows()) + "x" +
                      std::to_string(r.K_star.cols()) + ", row-major):\n" +
                      format_matrix_rows(r.K_star, 6))
        << "max_feasibility_error: " << scientific(r.feasibility.maxCoeff()) << '\n'
        << "d_constraint_max: " << scientific(r.d_constraint_max) << '\n'
        << "kkt_residual: " << scientific(r.kkt_residual) << '\n'
        << "wall_time_s: " << format_fixed(last.seconds, 3) << '\n';
  }
  if (done.size() > 1) {
    std::ofstream csv(fs::path(cfg.out_dir) / "schedule.csv");
    csv << "n,alpha,J_n,max_feasibility_error,d_constraint_max,kkt_residual\n";
    for (const Run& r : done) {
      csv << r.n << ',' << format_double(r.alpha) << ',' << format_double(r.report.J_n) << ','
          << format_double(r.report.feasibility.maxCoeff()) << ','
          << format_double(r.report.d_constraint_max) << ','
          << format_double(r.report.kkt_residual) << '\n';
    }
  }
  for (const Run& r : done) {
    out << "n=" << r.n << " alpha=" << format_double(r.alpha)
        << " J_n=" << format_fixed(r.report.J_n, 6) << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const SweepConfig& cfg, std::ostream& out) {
  std::vector<BenchmarkIntegral> integrals;
  for (const auto& s : split(cfg.integrals, ',')) {
    if (!s.empty()) integrals.push_back(parse_integral(s));
  }
  std::vector<TGFamily> families;
  for (const auto& s : split(cfg.families, ',')) {
    if (!s.empty()) families.push_back(parse_family(s));
  }
  const auto alphas = cfg.alphas.empty() ? std::vector<double>{} : parse_real_list(cfg.alphas);
  const auto Ls = cfg.Ls.empty() ? std::vector<double>{} : parse_real_list(cfg.Ls);
  const auto ns = cfg.ns.empty() ? std::vector<std::size_t>{} : parse_size_list(cfg.ns);
  if (integrals.empty() || families.empty() || alphas.empty() || Ls.empty() || ns.empty()) {
    throw InputError("every sweep grid must be non-empty");
  }
  for (double a : alphas) GegenbauerIndex{a};
  for (double L : Ls) TGMap(TGFamily::Rational, L);
  for (std::size_t n : ns) {
    if (n == 0) throw InputError("sweep n values must be positive");
  }

  struct Task {
    BenchmarkIntegral id;
    TGFamily family;
    double alpha, L;
    std::size_t n;
  };
  std::vector<Task> tasks;
  for (auto id : integrals)
    for (auto fam : families)
      for (double a : alphas)
        for (double L : Ls)
          for (std::size_t n : ns) tasks.push_back({id, fam, a, L, n});

  // Rows land in their grid slot, so output order is independent of scheduling.
  std::vector<QuadratureSweepRow> rows(tasks.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), tasks.size()));
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < tasks.size(); i += workers) {
            const Task& t = tasks[i];
            rows[i] = benchmark_error(t.id, t.family, t.alpha, t.L, t.n);
          }
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  fs::create_directories(cfg.out_dir);
  std::ofstream csv(fs::path(cfg.out_dir) / "sweep.csv");
  write_sweep_csv(csv, rows);
  out << "wrote " << rows.size() << " rows\n";
  return kExitOk;
}

int cmd_advise(const AdviseConfig& cfg, std::ostream& out) {
  if (cfg.n == 0) throw InputError("--n must be positive");
  const ParameterAdvice a =
      advise_parameters(parse_family(cfg.family), parse_regime(cfg.regime), cfg.n);
  out << "alpha=" << format_double(a.alpha) << " L_min=" << format_double(a.L_min)
      << " L_max=" << format_double(a.L_max);
  if (a.alpha_min != a.alpha_max) {
    out << " alpha_min=" << format_double(a.alpha_min)
        << " alpha_max=" << format_double(a.alpha_max);
  }
  out << '\n';
  return kExitOk;
}

int cmd_export(const ExportConfig& cfg, std::ostream& out) {
  const IHOCProblem p = make_benchmark_problem(parse_benchmark(cfg.problem));
  if (cfg.out.empty()) {
    out << problem_to_json(p);
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw InputError("cannot write " + cfg.out);
    f << problem_to_json(p);
  }
  return kExitOk;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) {
    if (s.empty()) throw InputError("empty entry in list '" + text + "'");
    out.push_back(to_real(s));
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& s : split(text, ',')) {
    const auto parts = split(s, ':');
    if (parts.size() == 1) {
      out.push_back(to_size(parts[0]));
    } else if (parts.size() == 2 || parts.size() == 3) {
      const std::size_t lo = to_size(parts[0]);
      const std::size_t step = parts.size() == 3 ? to_size(parts[1]) : 1;
      const std::size_t hi = to_size(parts.back());
      if (step == 0 || hi < lo) throw InputError("bad range '" + s + "'");
      for (std::size_t v = lo; v <= hi; v += step) out.push_back(v);
    } else {
      throw InputError("bad list entry '" + s + "'");
    }
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

std::vector<std::pair<std::size_t, double>> parse_schedule(const std::string& text) {
  std::vector<std::pair<std::size_t, double>> out;
  for (const auto& entry : split(text, ',')) {
    const auto colon = entry.rfind(':');
    if (colon == std::string::npos) throw InputError("schedule entry '" + entry + "' lacks ':'");
    const std::string ns = entry.substr(0, colon);
    const double alpha = to_real(entry.substr(colon + 1));
    const auto dots = ns.find("..");
    if (dots == std::string::npos) {
      out.emplace_back(to_size(ns), alpha);
    } else {
      const std::size_t lo = to_size(ns.substr(0, dots));
      std::string rest = ns.substr(dots + 2);
      std::size_t step = 10;
      if (const auto slash = rest.find('/'); slash != std::string::npos) {
        step = to_size(rest.substr(slash + 1));
        rest = rest.substr(0, slash);
      }
      const std::size_t hi = to_size(rest);
      if (step == 0 || hi < lo) throw InputError("bad schedule range '" + entry + "'");
      for (std::size_t n = lo; n <= hi; n += step) out.emplace_back(n, alpha);
    }
  }
  if (out.empty()) throw InputError("empty schedule");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].first <= out[i - 1].first) {
      throw InputError("schedule n values must be strictly increasing");
    }
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transformed Gegenbauer spectral collocation for infinite-horizon LQ regulation",
               "tgspec"};
  app.require_subcommand(1);

  SolveConfig solve;
  auto* sub_solve = app.add_subcommand("solve", "Transcribe and solve a regulation problem");
  sub_solve->add_option("--problem", solve.problem, "Problem file or builtin id (dcs, f16)")->required();
  sub_solve->add_option("--family", solve.family, "rg or eg")->capture_default_str();
  sub_solve->add_option("--alpha", solve.alpha, "Gegenbauer index");
  sub_solve->add_option("--alpha-schedule", solve.schedule, "n:alpha pairs, e.g. 10:-0.4,50..120:0");
  sub_solve->add_option("--L", solve.L, "Mapping scale")->capture_default_str();
  sub_solve->add_option("--n", solve.n, "Mesh size or list");
  sub_solve->add_option("--method", solve.method, "is or ips")->capture_default_str();
  sub_solve->add_option("--x0", solve.x0, "Override initial state (comma list)");
  sub_solve->add_option("--ic", solve.ic, "constraint or data")->capture_default_str();
  sub_solve->add_option("--samples", solve.samples, "Trajectory rows")->capture_default_str();
  sub_solve->add_option("--out", solve.out_dir, "Output directory")->required();

  SweepConfig sweep;
  auto* sub_sweep = app.add_subcommand("sweep", "Quadrature error sweep");
  sub_sweep->add_option("--integrals", sweep.integrals, "I1,I2,I3")->capture_default_str();
  sub_sweep->add_option("--family,--families", sweep.families, "rg,eg")->capture_default_str();
  sub_sweep->add_option("--alphas", sweep.alphas, "Gegenbauer indices")->required();
  sub_sweep->add_option("--Ls", sweep.Ls, "Mapping scales")->required();
  sub_sweep->add_option("--ns", sweep.ns, "Mesh sizes, e.g. 2:20")->required();
  sub_sweep->add_option("--out", sweep.out_dir, "Output directory")->required();

  AdviseConfig advise;
  auto* sub_advise = app.add_subcommand("advise", "Suggest (alpha, L) for a mapping regime");
  sub_advise->add_option("--family", advise.family, "rg or eg")->required();
  sub_advise->add_option("--regime", advise.regime, "stretching or contracting")->required();
  sub_advise->add_option("--n", advise.n, "Mesh size")->required();

  ExportConfig exp;
  auto* sub_export = app.add_subcommand("export", "Write a builtin problem as a problem file");
  sub_export->add_option("--problem", exp.problem, "dcs or f16")->required();
  sub_export->add_option("--out", exp.out, "Output file (stdout if omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (sub_solve->parsed()) return cmd_solve(solve, out);
    if (sub_sweep->parsed()) return cmd_sweep(sweep, out);
    if (sub_advise->parsed()) return cmd_advise(advise, out);
    if (sub_export->parsed()) return cmd_export(exp, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolverError;
  }
  return kExitInputError;
}

}  // namespace tgspec::cli
