#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sylv/la.hpp"
#include "sylv/solve_report.hpp"
#include "sylv/theory.hpp"

namespace sylv {

enum class Method { Msi, Hss, Gmres, Bicgstab };

const char* to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name);
/// Parses a comma-separated list such as "msi,gmres". Throws InvalidArgument
/// on an unknown name.
std::vector<Method> parse_method_list(std::string_view list);

/// Knobs shared by all methods; each solver reads the ones it understands.
struct SolverOptions {
  double outer_tol = 1e-8;
  double inner_tol = 0.01;
  std::size_t inner_max_iters = 1000;
  std::size_t max_outer = 5000;
  /// HSS shift; <= 0 selects the default estimate.
  double alpha = 0.0;
  std::size_t restart = 10;
};

SolveResult run_method(Method method, const SylvesterProblem& p, const SolverOptions& opts);

/// Externally reported figures for a method this library does not implement.
struct ReferenceRow {
  std::string method;
  std::optional<std::size_t> outer;
  std::optional<std::size_t> total;
  std::optional<double> residual;
};

struct BenchCase {
  std::string name;
  SylvesterProblem problem;
  std::vector<Method> methods;
  SolverOptions options{};
  std::map<Method, SolverOptions> overrides;
  /// Generated problems have X = ones, which enables forward-error columns.
  bool solution_is_ones = false;
  /// Attempt the HS + Jacobi convergence certificate.
  bool with_theory = true;
  std::vector<ReferenceRow> reference;
  std::map<std::string, std::string> metadata;
};

struct MethodRun {
  Method method = Method::Msi;
  SolverOptions options{};
  /// Empty when the solver threw; `error` then holds the message.
  std::optional<SolveReport> report;
  std::optional<double> forward_error;
  std::string error;
};

struct BenchReport {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  SolverOptions options{};
  std::vector<MethodRun> runs;
  std::optional<BoundReport> theory;
  std::string theory_note;
  std::vector<ReferenceRow> reference;
  std::map<std::string, std::string> metadata;
  std::string version;
};

/// Runs every method of the case in turn. A method that throws or diverges is
/// recorded in its MethodRun; the run as a whole never aborts.
BenchReport run_bench(const BenchCase& c);

enum class ReportFormat { Csv, Json, HistoryCsv };

std::string render_report(const BenchReport& r, ReportFormat format);
/// Throws Io when the path cannot be written.
void emit_report(const BenchReport& r, ReportFormat format, const std::filesystem::path& path);

/// The "(outer, total, seconds)" cell. Undefined parts are "-", a Krylov
/// breakdown is "(†, -, -)".
struct TripletCell {
  std::optional<std::size_t> outer;
  std::optional<std::size_t> total;
  std::optional<double> seconds;
  bool breakdown = false;

  bool operator==(const TripletCell&) const = default;
};

TripletCell triplet_of(const MethodRun& run);
std::string format_triplet(const TripletCell& t);
TripletCell parse_triplet(std::string_view text);

/// Library version plus the git revision it was built from.
const char* version_stamp() noexcept;

}  // namespace sylv
