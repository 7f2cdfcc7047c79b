// Command line front end over the C API: gen, solve, bench, bound.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sylv/sylv.h"

namespace fs = std::filesystem;

namespace {

struct CliError : std::runtime_error {
  int exit_code;
  CliError(const std::string& msg, int code) : std::runtime_error(msg), exit_code(code) {}
};

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSkipped = 3;

void check(sylv_status s, const std::string& what) {
  if (s == SYLV_OK) return;
  const int code = s == SYLV_ERR_DATA_NOT_PRESENT ? kExitSkipped : kExitFailure;
  throw CliError(what + ": " + sylv_status_string(s) + ": " + sylv_last_error(), code);
}

struct ProblemDeleter {
  void operator()(sylv_problem* p) const { sylv_problem_free(p); }
};
struct ResultDeleter {
  void operator()(sylv_result* r) const { sylv_result_free(r); }
};
struct BenchDeleter {
  void operator()(sylv_bench* b) const { sylv_bench_free(b); }
};
using ProblemPtr = std::unique_ptr<sylv_problem, ProblemDeleter>;
using ResultPtr = std::unique_ptr<sylv_result, ResultDeleter>;
using BenchPtr = std::unique_ptr<sylv_bench, BenchDeleter>;

std::string take_string(char* s) {
  std::string out(s ? s : "");
  sylv_string_free(s);
  return out;
}

struct ProblemArgs {
  int example = 1;
  std::size_t n = 0;  // 0 selects the example default
  double r = 0.01;
  double t = 1.0;
  std::string sherman3 = "data/sherman3.mtx";
  std::string prefix;
};

struct SolverArgs {
  double outer_tol = 1e-8;
  double inner_tol = 0.01;
  std::size_t inner_max_iters = 1000;
  std::size_t max_outer = 5000;
  double alpha = 0.0;
  std::size_t restart = 10;

  sylv_options to_c() const {
    sylv_options o;
    sylv_options_init(&o);
    o.outer_tol = outer_tol;
    o.inner_tol = inner_tol;
    o.inner_max_iters = inner_max_iters;
    o.max_outer = max_outer;
    o.alpha = alpha;
    o.restart = restart;
    return o;
  }
};

std::size_t default_size(int example) { return example == 2 ? 256 : 32; }

std::string problem_paths(const std::string& prefix, char which) {
  return prefix + "_" + which + ".mtx";
}

ProblemPtr make_example(const ProblemArgs& a, std::size_t n) {
  sylv_problem* p = nullptr;
  switch (a.example) {
    case 1: check(sylv_problem_example1(n, a.r, &p), "example 1"); break;
    case 2: check(sylv_problem_example2(n, a.r, a.t, &p), "example 2"); break;
    case 3: check(sylv_problem_example3(a.sherman3.c_str(), &p), "example 3"); break;
    default: throw CliError("--example must be 1, 2 or 3", kExitUsage);
  }
  return ProblemPtr(p);
}

ProblemPtr make_problem(const ProblemArgs& a) {
  if (!a.prefix.empty()) {
    sylv_problem* p = nullptr;
    check(sylv_problem_load(problem_paths(a.prefix, 'A').c_str(),
                            problem_paths(a.prefix, 'B').c_str(),
                            problem_paths(a.prefix, 'C').c_str(), &p),
          "load " + a.prefix);
    return ProblemPtr(p);
  }
  return make_example(a, a.n ? a.n : default_size(a.example));
}

sylv_method method_from(const std::string& name) {
  sylv_method m;
  check(sylv_method_from_name(name.c_str(), &m), "method");
  return m;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void add_problem_flags(CLI::App* cmd, ProblemArgs& a, bool with_prefix) {
  cmd->add_option("--example", a.example, "Built-in example (1, 2 or 3)")
      ->check(CLI::IsMember({1, 2, 3}));
  cmd->add_option("--n", a.n, "Order of A and B for examples 1 and 2");
  cmd->add_option("--r", a.r, "Example parameter r");
  cmd->add_option("--t", a.t, "Example 2 parameter t");
  cmd->add_option("--sherman3", a.sherman3, "Path to the SHERMAN3 Matrix Market file");
  if (with_prefix) {
    cmd->add_option("--problem", a.prefix,
                    "Load PREFIX_A.mtx, PREFIX_B.mtx and PREFIX_C.mtx instead of an example");
  }
}

void add_solver_flags(CLI::App* cmd, SolverArgs& s) {
  cmd->add_option("--outer-tol", s.outer_tol, "Relative residual stopping threshold");
  cmd->add_option("--inner-tol", s.inner_tol, "Inner solver relative tolerance");
  cmd->add_option("--inner-max-iters", s.inner_max_iters, "Inner iteration cap");
  cmd->add_option("--max-outer", s.max_outer, "Outer iteration cap");
  cmd->add_option("--alpha", s.alpha, "HSS shift (<= 0 picks the default estimate)");
  cmd->add_option("--restart", s.restart, "GMRES restart length");
}

// Fills options the user did not pass on the command line from a JSON object
// keyed by long flag names ("outer-tol" or "outer_tol").
void apply_config(CLI::App* cmd, const nlohmann::json& cfg) {
  if (!cfg.is_object()) throw CliError("config file must hold a JSON object", kExitUsage);
  std::map<std::string, CLI::Option*> by_name;
  for (CLI::Option* opt : cmd->get_options()) {
    for (const std::string& ln : opt->get_lnames()) by_name[ln] = opt;
  }
  for (const auto& [key, value] : cfg.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    const auto it = by_name.find(name);
    if (it == by_name.end() || name == "config" || name == "help") {
      throw CliError("unknown config key '" + key + "'", kExitUsage);
    }
    CLI::Option* opt = it->second;
    if (opt->count() > 0) continue;
    auto as_text = [](const nlohmann::json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + as_text(v);
      opt->add_result(joined);
    } else {
      opt->add_result(as_text(value));
    }
    opt->run_callback();
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CliError("cannot write " + path, kExitFailure);
  out << text;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* termination_name(sylv_termination t) {
  switch (t) {
    case SYLV_TERM_CONVERGED: return "converged";
    case SYLV_TERM_MAX_ITERATIONS: return "max-iterations";
    case SYLV_TERM_DIVERGED: return "diverged";
    case SYLV_TERM_BREAKDOWN: return "breakdown";
    case SYLV_TERM_STAGNATION: return "stagnation";
  }
  return "unknown";
}

int run_gen(const ProblemArgs& a, const std::string& out_prefix) {
  ProblemPtr p = make_problem(a);
  const std::string pa = problem_paths(out_prefix, 'A');
  const std::string pb = problem_paths(out_prefix, 'B');
  const std::string pc = problem_paths(out_prefix, 'C');
  check(sylv_problem_save(p.get(), pa.c_str(), pb.c_str(), pc.c_str()), "save");
  std::size_t n = 0, m = 0;
  sylv_problem_dims(p.get(), &n, &m);
  std::cout << "wrote " << pa << ", " << pb << ", " << pc << " (n=" << n << ", m=" << m << ")\n";
  return 0;
}

int run_solve(const ProblemArgs& a, const SolverArgs& s, const std::string& method_name,
              const std::string& history_path, const std::string& solution_path) {
  ProblemPtr p = make_problem(a);
  const sylv_method method = method_from(method_name);
  const sylv_options opts = s.to_c();
  sylv_result* raw = nullptr;
  check(sylv_solve(p.get(), method, &opts, &raw), "solve");
  ResultPtr r(raw);

  sylv_result_info info;
  check(sylv_result_get_info(r.get(), &info), "result");
  std::cout << "method=" << sylv_method_name(method) << " outer=" << info.outer_iters
            << " total=" << (info.has_total_inner_iters ? std::to_string(info.total_inner_iters) : "-")
            << " seconds=" << fmt_double(info.wall_seconds)
            << " converged=" << (info.converged ? "true" : "false")
            << " reason=" << termination_name(info.termination)
            << " final_residual=" << fmt_double(info.final_residual) << "\n";

  if (!history_path.empty()) {
    std::vector<double> h(info.history_length);
    check(sylv_result_history(r.get(), h.data(), h.size()), "history");
    std::ostringstream csv;
    csv.precision(17);
    csv << "method,outer_step,relative_residual\n";
    for (std::size_t k = 0; k < h.size(); ++k) {
      csv << sylv_method_name(method) << "," << k << "," << h[k] << "\n";
    }
    write_text(history_path, csv.str());
  }
  if (!solution_path.empty()) {
    check(sylv_result_write_solution(r.get(), solution_path.c_str()), "write solution");
  }
  return info.converged ? 0 : kExitFailure;
}

// Reference figures for the nested splitting CG method, which is not implemented here.
void add_reference_rows(sylv_bench* b, int example, std::size_t n) {
  constexpr double kNone = std::numeric_limits<double>::quiet_NaN();
  if (example == 1) {
    static const std::map<std::size_t, std::pair<long, long>> rows = {
        {32, {4, 62}}, {64, {5, 152}}, {128, {6, 384}}, {256, {7, 899}}, {512, {11, 3025}}};
    if (const auto it = rows.find(n); it != rows.end()) {
      check(sylv_bench_add_reference(b, "nscg", it->second.first, it->second.second, kNone),
            "reference");
    }
  } else if (example == 2) {
    check(sylv_bench_add_reference(b, "nscg", 8, -1, 0.0070), "reference");
  } else if (example == 3) {
    check(sylv_bench_add_reference(b, "nscg", 64, -1, 2.61e-4), "reference");
  }
}

int run_bench_case(const ProblemArgs& a, const SolverArgs& s, std::size_t n,
                   const std::vector<sylv_method>& methods, const fs::path& out_dir,
                   bool theory) {
  const std::string name =
      "example" + std::to_string(a.example) + (a.example == 3 ? "" : "_n" + std::to_string(n));
  ProblemPtr p;
  try {
    p = make_example(a, n);
  } catch (const CliError& e) {
    if (e.exit_code != kExitSkipped) throw;
    std::cout << name << ": skipped: data not present (" << a.sherman3 << ")\n";
    return 0;
  }

  sylv_bench* raw = nullptr;
  check(sylv_bench_create(p.get(), name.c_str(), &raw), "bench");
  BenchPtr b(raw);
  for (sylv_method m : methods) check(sylv_bench_add_method(b.get(), m), "bench method");
  const sylv_options opts = s.to_c();
  check(sylv_bench_set_options(b.get(), &opts), "bench options");
  check(sylv_bench_set_solution_ones(b.get(), 1), "bench");
  check(sylv_bench_set_theory(b.get(), theory ? 1 : 0), "bench");
  check(sylv_bench_add_metadata(b.get(), "example", std::to_string(a.example).c_str()), "meta");
  if (a.example != 3) {
    check(sylv_bench_add_metadata(b.get(), "r", fmt_double(a.r).c_str()), "meta");
  }
  if (a.example == 2) {
    check(sylv_bench_add_metadata(b.get(), "t", fmt_double(a.t).c_str()), "meta");
  }
  add_reference_rows(b.get(), a.example, n);
  check(sylv_bench_run(b.get()), "bench run");

  fs::create_directories(out_dir);
  const fs::path base = out_dir / name;
  check(sylv_bench_write(b.get(), SYLV_REPORT_CSV, (base.string() + ".csv").c_str()), "csv");
  check(sylv_bench_write(b.get(), SYLV_REPORT_JSON, (base.string() + ".json").c_str()), "json");
  check(sylv_bench_write(b.get(), SYLV_REPORT_HISTORY_CSV,
                         (base.string() + "_history.csv").c_str()),
        "history");
  char* csv = nullptr;
  check(sylv_bench_render(b.get(), SYLV_REPORT_CSV, &csv), "render");
  std::cout << "# " << name << "\n" << take_string(csv);
  return 0;
}

int run_bench(const ProblemArgs& a, const SolverArgs& s, const std::string& sizes,
              const std::string& methods_list, const std::string& out_dir, bool theory) {
  std::vector<sylv_method> methods;
  for (const std::string& m : split_list(methods_list)) methods.push_back(method_from(m));

  std::vector<std::size_t> ns;
  if (a.example == 3) {
    ns.push_back(0);
  } else if (sizes.empty()) {
    ns.push_back(a.n ? a.n : default_size(a.example));
  } else {
    for (const std::string& item : split_list(sizes)) {
      try {
        std::size_t pos = 0;
        const unsigned long v = std::stoul(item, &pos);
        if (pos != item.size() || v < 2) throw std::invalid_argument(item);
        ns.push_back(v);
      } catch (const std::exception&) {
        throw CliError("invalid size '" + item + "' in --sizes", kExitUsage);
      }
    }
  }
  for (std::size_t n : ns) run_bench_case(a, s, n, methods, out_dir, theory);
  return 0;
}

int run_bound(const ProblemArgs& a) {
  ProblemPtr p = make_problem(a);
  char* json = nullptr;
  check(sylv_bound_json(p.get(), &json), "bound");
  std::cout << take_string(json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative solvers for the Sylvester equation AX + XB = C"};
  app.set_version_flag("--version", std::string(sylv_version()));
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with flag values; flags take precedence")
      ->check(CLI::ExistingFile);

  ProblemArgs gen_p, solve_p, bench_p, bound_p;
  SolverArgs solve_s, bench_s;

  CLI::App* gen = app.add_subcommand("gen", "Write a generated problem as Matrix Market files");
  add_problem_flags(gen, gen_p, false);
  std::string gen_out = "problem";
  gen->add_option("--out", gen_out, "Output prefix (writes PREFIX_A/_B/_C.mtx)");

  CLI::App* solve = app.add_subcommand("solve", "Run one method on one problem");
  add_problem_flags(solve, solve_p, true);
  add_solver_flags(solve, solve_s);
  std::string method = "msi", history, solution;
  solve->add_option("--method", method, "msi, hss, gmres or bicgstab");
  solve->add_option("--history", history, "Write the residual history CSV here");
  solve->add_option("--solution", solution, "Write X as a Matrix Market array here");

  CLI::App* bench = app.add_subcommand("bench", "Compare methods on a built-in example");
  add_problem_flags(bench, bench_p, false);
  add_solver_flags(bench, bench_s);
  std::string sizes, methods = "msi,hss,gmres,bicgstab", out_dir = "bench_out";
  bool no_theory = false;
  bench->add_option("--sizes", sizes, "Comma-separated orders, e.g. 32,64,128");
  bench->add_option("--methods", methods, "Comma-separated method list");
  bench->add_option("--out", out_dir, "Directory for CSV, JSON and history reports");
  bench->add_flag("--no-theory", no_theory, "Skip the convergence certificate");

  CLI::App* bound = app.add_subcommand("bound", "Print the HS + Jacobi convergence certificate");
  add_problem_flags(bound, bound_p, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      nlohmann::json cfg;
      try {
        in >> cfg;
      } catch (const nlohmann::json::exception& e) {
        throw CliError(config_path + ": " + e.what(), kExitUsage);
      }
      apply_config(active, cfg);
    }
    if (active == gen) return run_gen(gen_p, gen_out);
    if (active == solve) return run_solve(solve_p, solve_s, method, history, solution);
    if (active == bench) return run_bench(bench_p, bench_s, sizes, methods, out_dir, !no_theory);
    return run_bound(bound_p);
  } catch (const CliError& e) {
    std::cerr << "sylv: " << e.what() << "\n";
    return e.exit_code;
  } catch (const CLI::Error& e) {
    std::cerr << "sylv: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "sylv: " << e.what() << "\n";
    return kExitFailure;
  }
}
