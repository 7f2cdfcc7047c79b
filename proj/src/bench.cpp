#include <algorithm>
#include <cctype>
#include "sylv/bench.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sylv/baselines.hpp"
#include "sylv/error.hpp"
#include "sylv/msi.hpp"
#include "sylv/spectral.hpp"

#ifndef SYLV_VERSION_STAMP
#define SYLV_VERSION_STAMP "unknown"
#endif

namespace sylv {

using nlohmann::json;

namespace {

constexpr std::string_view kDagger = "\xE2\x80\xA0";  // U+2020
constexpr std::size_t kTheoryLimit = kDenseEigenLimit;

std::string shortest(double v) {
  if (std::isnan(v)) return "NaN";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

json options_json(const SolverOptions& o) {
  return json{{"outer_tol", o.outer_tol},   {"inner_tol", o.inner_tol},
              {"inner_max_iters", o.inner_max_iters}, {"max_outer", o.max_outer},
              {"alpha", o.alpha},           {"restart", o.restart}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json history_json(const std::vector<double>& h) {
  json arr = json::array();
  for (double v : h) arr.push_back(std::isfinite(v) ? json(v) : json(nullptr));
  return arr;
}

std::string reason_of(const MethodRun& run) {
  if (!run.report) return run.error;
  if (run.report->termination == Termination::Breakdown) return "breakdown";
  return to_string(run.report->termination);
}

std::string render_csv(const BenchReport& r) {
  std::ostringstream out;
  out << "method,triplet,outer,total,seconds,converged,reason,final_residual,forward_error\n";
  for (const MethodRun& run : r.runs) {
    const TripletCell t = triplet_of(run);
    out << to_string(run.method) << ',' << csv_field(format_triplet(t)) << ','
        << (t.outer ? std::to_string(*t.outer) : "-") << ','
        << (t.total ? std::to_string(*t.total) : "-") << ','
        << (t.seconds ? shortest(*t.seconds) : "-") << ','
        << (run.report ? (run.report->converged ? "true" : "false") : "false") << ','
        << csv_field(reason_of(run)) << ','
        << (run.report && !run.report->residual_history.empty()
                ? shortest(run.report->final_residual())
                : "-")
        << ',' << (run.forward_error ? shortest(*run.forward_error) : "-") << '\n';
  }
  for (const ReferenceRow& ref : r.reference) {
    const TripletCell t{ref.outer, ref.total, std::nullopt, false};
    out << csv_field(ref.method + " (reference)") << ',' << csv_field(format_triplet(t)) << ','
        << (t.outer ? std::to_string(*t.outer) : "-") << ','
        << (t.total ? std::to_string(*t.total) : "-") << ",-,-,"
        << "reference value; method not implemented" << ','
        << (ref.residual ? shortest(*ref.residual) : "-") << ",-\n";
  }
  return out.str();
}

std::string render_history(const BenchReport& r) {
  std::ostringstream out;
  out << "method,outer_step,relative_residual\n";
  for (const MethodRun& run : r.runs) {
    if (!run.report) continue;
    const auto& h = run.report->residual_history;
    for (std::size_t k = 0; k < h.size(); ++k)
      out << to_string(run.method) << ',' << k << ',' << shortest(h[k]) << '\n';
  }
  return out.str();
}

std::string render_json(const BenchReport& r) {
  json methods = json::array();
  for (const MethodRun& run : r.runs) {
    json j{{"method", to_string(run.method)},
           {"options", options_json(run.options)},
           {"triplet", format_triplet(triplet_of(run))},
           {"forward_error", optional_json(run.forward_error)}};
    if (run.report) {
      const SolveReport& rep = *run.report;
      j["outer_iters"] = rep.outer_iters;
      j["total_inner_iters"] = optional_json(rep.total_inner_iters);
      j["wall_seconds"] = rep.wall_seconds;
      j["converged"] = rep.converged;
      j["termination"] = to_string(rep.termination);
      j["residual_history"] = history_json(rep.residual_history);
      if (!rep.step_history.empty()) j["step_history"] = history_json(rep.step_history);
      j["detail"] = rep.detail;
      j["error"] = nullptr;
    } else {
      j["converged"] = false;
      j["error"] = run.error;
    }
    methods.push_back(std::move(j));
  }
  json reference = json::array();
  for (const ReferenceRow& ref : r.reference) {
    reference.push_back({{"method", ref.method},
                         {"outer", optional_json(ref.outer)},
                         {"total", optional_json(ref.total)},
                         {"residual", optional_json(ref.residual)},
                         {"note", "reference value; method not implemented"}});
  }
  json doc{{"name", r.name},
           {"metadata",
            {{"n", r.n}, {"m", r.m}, {"options", options_json(r.options)},
             {"version", r.version}, {"extra", r.metadata}}},
           {"methods", std::move(methods)},
           {"reference", std::move(reference)}};
  if (r.theory) {
    doc["theory"] = {{"theta", r.theory->theta},
                     {"varrho", r.theory->varrho},
                     {"product", r.theory->product},
                     {"predicts_convergence", r.theory->predicts_convergence},
                     {"validity", kBoundValidity}};
  } else {
    doc["theory"] = nullptr;
  }
  if (!r.theory_note.empty()) doc["theory_note"] = r.theory_note;
  return doc.dump(2) + "\n";
}

}  // namespace

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Msi: return "msi";
    case Method::Hss: return "hss";
    case Method::Gmres: return "gmres";
    case Method::Bicgstab: return "bicgstab";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (Method m : {Method::Msi, Method::Hss, Method::Gmres, Method::Bicgstab})
    if (lower == to_string(m)) return m;
  return std::nullopt;
}

std::vector<Method> parse_method_list(std::string_view list) {
  std::vector<Method> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto comma = list.find(',', pos);
    const std::string item = trim(list.substr(pos, comma == std::string_view::npos ? list.npos : comma - pos));
    if (!item.empty()) {
      const auto m = parse_method(item);
      if (!m) throw Error(ErrorCode::InvalidArgument, "unknown method '" + item + "'");
      out.push_back(*m);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

SolveResult run_method(Method method, const SylvesterProblem& p, const SolverOptions& o) {
  switch (method) {
    case Method::Msi: {
      MsiConfig cfg;
      cfg.outer_tol = o.outer_tol;
      cfg.inner = {o.inner_tol, o.inner_max_iters};
      cfg.max_outer = o.max_outer;
      return msi_solve_hs_jacobi(p, cfg);
    }
    case Method::Hss: {
      HssConfig cfg;
      cfg.alpha = o.alpha;
      cfg.inner = {o.inner_tol, o.inner_max_iters};
      cfg.max_outer = o.max_outer;
      cfg.outer_tol = o.outer_tol;
      return hss_solve(p, cfg);
    }
    case Method::Gmres:
      return gmres_kron_solve(p, KrylovConfig{o.outer_tol, o.restart, o.max_outer});
    case Method::Bicgstab:
      return bicgstab_kron_solve(p, KrylovConfig{o.outer_tol, o.restart, o.max_outer});
  }
  throw Error(ErrorCode::InvalidArgument, "run_method: unknown method");
}

BenchReport run_bench(const BenchCase& c) {
  BenchReport r;
  r.name = c.name;
  r.n = c.problem.n();
  r.m = c.problem.m();
  r.options = c.options;
  r.reference = c.reference;
  r.metadata = c.metadata;
  r.version = version_stamp();

  for (Method method : c.methods) {
    MethodRun run;
    run.method = method;
    const auto o = c.overrides.find(method);
    run.options = o != c.overrides.end() ? o->second : c.options;
    try {
      SolveResult res = run_method(method, c.problem, run.options);
      if (c.solution_is_ones && res.x.all_finite()) {
        DenseMatrix err = res.x;
        err -= DenseMatrix::ones(r.n, r.m);
        run.forward_error = frobenius_norm(err) / std::sqrt(static_cast<double>(r.n * r.m));
      }
      run.report = std::move(res.report);
    } catch (const std::exception& e) {
      run.error = e.what();
    }
    r.runs.push_back(std::move(run));
  }

  if (c.with_theory) {
    if (r.n > kTheoryLimit || r.m > kTheoryLimit) {
      r.theory_note = "skipped: dimensions beyond the dense eigensolver limit";
    } else {
      try {
        r.theory = msi_bound_check(hs_split(c.problem.a()), hs_split(c.problem.b()),
                                   jacobi_split(c.problem.a()), jacobi_split(c.problem.b()));
      } catch (const std::exception& e) {
        r.theory_note = std::string("unavailable: ") + e.what();
      }
    }
  }
  return r;
}

std::string render_report(const BenchReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return render_csv(r);
    case ReportFormat::Json: return render_json(r);
    case ReportFormat::HistoryCsv: return render_history(r);
  }
  return {};
}

void emit_report(const BenchReport& r, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << render_report(r, format);
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

TripletCell triplet_of(const MethodRun& run) {
  TripletCell t;
  if (!run.report) return t;
  const SolveReport& rep = *run.report;
  if (rep.termination == Termination::Breakdown) {
    t.breakdown = true;
    return t;
  }
  t.outer = rep.outer_iters;
  t.total = rep.total_inner_iters;
  t.seconds = rep.wall_seconds;
  return t;
}

std::string format_triplet(const TripletCell& t) {
  if (t.breakdown) return "(" + std::string(kDagger) + ", -, -)";
  return "(" + (t.outer ? std::to_string(*t.outer) : std::string("-")) + ", " +
         (t.total ? std::to_string(*t.total) : std::string("-")) + ", " +
         (t.seconds ? shortest(*t.seconds) : std::string("-")) + ")";
}

TripletCell parse_triplet(std::string_view text) {
  const std::string s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw Error(ErrorCode::Parse, "parse_triplet: expected '(a, b, c)', got '" + s + "'");
  }
  std::vector<std::string> parts;
  std::string_view body(s.data() + 1, s.size() - 2);
  std::size_t pos = 0;
  while (true) {
    const auto comma = body.find(',', pos);
    parts.push_back(trim(body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (parts.size() != 3) throw Error(ErrorCode::Parse, "parse_triplet: expected three cells");

  TripletCell t;
  if (parts[0] == kDagger) {
    t.breakdown = true;
    return t;
  }
  auto count = [&](const std::string& p) -> std::optional<std::size_t> {
    if (p == "-") return std::nullopt;
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    if (ec != std::errc() || ptr != p.data() + p.size())
      throw Error(ErrorCode::Parse, "parse_triplet: bad count '" + p + "'");
    return v;
  };
  t.outer = count(parts[0]);
  t.total = count(parts[1]);
  if (parts[2] != "-") {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), v);
    if (ec != std::errc() || ptr != parts[2].data() + parts[2].size())
      throw Error(ErrorCode::Parse, "parse_triplet: bad seconds '" + parts[2] + "'");
    t.seconds = v;
  }
  return t;
}

const char* version_stamp() noexcept { return SYLV_VERSION_STAMP; }

}  // namespace sylv
