#include "commands.hpp"

#include <chrono>

#include "lauricella/errors.hpp"
#include "lauricella/neumann.hpp"
#include "table.hpp"

namespace lauricella::cli {

namespace {

std::vector<std::string> numbered(const std::string& stem, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(stem + "_" + std::to_string(i));
  return out;
}

void append(std::vector<std::string>& a, const std::vector<std::string>& b) { a.insert(a.end(), b.begin(), b.end()); }
void append(std::vector<Cell>& a, const std::vector<double>& b) { a.insert(a.end(), b.begin(), b.end()); }

Format format_of(const RunConfig& cfg, Format fallback) { return cfg.format.value_or(fallback); }

int eval_fa(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.fa.x.empty(), ErrorCode::PreconditionViolation, "fa.x: no argument vectors given");
  const LauricellaFA fa(cfg.fa.params, cfg.eval);
  Table t;
  t.columns = numbered("x", cfg.fa.params.dimension());
  append(t.columns, {"value", "terms", "method"});
  for (const auto& x : cfg.fa.x) {
    const SeriesResult r = fa(x);
    std::vector<Cell> row;
    append(row, x);
    row.push_back(r.value);
    row.push_back(static_cast<double>(r.terms_used));
    row.push_back(std::string(to_string(r.method)));
    t.add(std::move(row));
  }
  write_table(out, t, format_of(cfg, Format::Csv));
  return 0;
}

int eval_kernel(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.kernel.x.empty(), ErrorCode::PreconditionViolation, "kernel.x: no points given");
  const FundamentalSolution fs(cfg.domain, cfg.eval);
  const auto m = static_cast<std::size_t>(cfg.domain.m);
  Table t;
  t.columns = numbered("x", m);
  append(t.columns, numbered("xi", m));
  t.columns.push_back("q");
  append(t.columns, numbered("dq_dxi", m));
  for (std::size_t i = 0; i < cfg.kernel.x.size(); ++i) {
    const auto& x = cfg.kernel.x[i];
    const auto& xi = cfg.kernel.xi[i];
    std::vector<Cell> row;
    append(row, x);
    append(row, xi);
    row.push_back(fs(x, xi));
    append(row, fs.grad_xi(x, xi));
    t.add(std::move(row));
  }
  write_table(out, t, format_of(cfg, Format::Csv));
  return 0;
}

int solve(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  require(!cfg.points.empty(), ErrorCode::PreconditionViolation, "points: no evaluation points given");
  const NeumannProblem problem(cfg.domain, build_data(cfg), cfg.quadrature, cfg.eval);
  const SolutionField field = problem.solve(cfg.points, cfg.jobs);
  const auto m = static_cast<std::size_t>(cfg.domain.m);
  const auto n = static_cast<std::size_t>(cfg.domain.n);
  Table t;
  t.columns = numbered("xi", m);
  append(t.columns, {"u", "err_est"});
  append(t.columns, numbered("I", n));
  if (cfg.profile) {
    append(t.columns, numbered("nodes", n));
    t.columns.push_back("seconds");
  }
  for (std::size_t p = 0; p < field.points.size(); ++p) {
    std::vector<Cell> row;
    append(row, field.points[p]);
    row.push_back(field.values[p]);
    row.push_back(field.errors[p]);
    append(row, field.contributions[p]);
    if (cfg.profile) {
      for (std::size_t j = 0; j < n; ++j) row.push_back(static_cast<double>(field.nodes[p][j]));
      row.push_back(field.seconds[p]);
    }
    t.add(std::move(row));
    if (field.failures[p]) log << "point " << p + 1 << ": " << field.failures[p]->message << "\n";
  }
  write_table(out, t, format_of(cfg, Format::Csv));
  return field.failed() == 0 ? 0 : 2;
}

int flux(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  require(!cfg.points.empty(), ErrorCode::PreconditionViolation, "points: no evaluation points given");
  const NeumannProblem problem(cfg.domain, build_data(cfg), cfg.quadrature, cfg.eval);
  const auto m = static_cast<std::size_t>(cfg.domain.m);
  Table t;
  t.columns = numbered("xi", m);
  append(t.columns, {"flux", "err_est"});
  if (cfg.profile) append(t.columns, {"nodes", "seconds"});
  int status = 0;
  for (std::size_t p = 0; p < cfg.points.size(); ++p) {
    std::vector<Cell> row;
    append(row, cfg.points[p]);
    const auto start = std::chrono::steady_clock::now();
    FaceIntegral f{std::nan(""), std::nan(""), 0};
    try {
      f = problem.weighted_flux(cfg.points[p], cfg.flux_face);
    } catch (const Error& e) {
      if (is_input_error(e.code())) throw;
      log << "point " << p + 1 << ": " << e.what() << "\n";
      status = 2;
    }
    row.push_back(f.value);
    row.push_back(f.error);
    if (cfg.profile) {
      row.push_back(static_cast<double>(f.nodes));
      row.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    t.add(std::move(row));
  }
  write_table(out, t, format_of(cfg, Format::Csv));
  return status;
}

int verify(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto reports = run_suite(cfg.verify.suite, cfg.verify.seed, cfg.jobs, cfg.verify.tolerances);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed;
  if (format_of(cfg, Format::Json) == Format::Json) {
    for (const auto& r : reports) out << report_json_line(r, cfg.verify.seed, cfg.verify.runtime) << "\n";
  } else {
    Table t;
    t.columns = {"check", "observed", "expected", "tolerance", "passed", "seed", "note"};
    if (cfg.verify.runtime) t.columns.push_back("runtime");
    for (const auto& r : reports) {
      std::vector<Cell> row{r.name, r.observed, r.expected, r.tolerance, std::string(r.passed ? "true" : "false"),
                            static_cast<double>(cfg.verify.seed), r.note};
      if (cfg.verify.runtime) row.push_back(r.runtime);
      t.add(std::move(row));
    }
    write_csv(out, t);
  }
  log << summary_table(reports);
  return ok ? 0 : 2;
}

int lemma1(const RunConfig& cfg, std::ostream& out) {
  const auto& l = cfg.lemma1;
  const CheckReport r = check_lemma1_limit(l.a, l.b, l.c, l.z0, l.eps, l.tolerance, l.z_slope);
  Table t;
  t.columns = {"numeric", "closed_form", "abs_diff", "tolerance", "passed"};
  t.add({r.observed, r.expected, std::abs(r.observed - r.expected), r.tolerance, std::string(r.passed ? "true" : "false")});
  write_table(out, t, format_of(cfg, Format::Csv));
  return r.passed ? 0 : 2;
}

int lemma2(const RunConfig& cfg, std::ostream& out) {
  const auto& l = cfg.lemma2;
  const CheckReport r = check_lemma2_numeric(l.params, l.method, l.budget, l.tolerance, cfg.verify.seed);
  Table t;
  t.columns = {"closed_form", "numeric", "abs_diff", "method", "tolerance", "passed"};
  t.add({r.expected, r.observed, std::abs(r.observed - r.expected),
         std::string(l.method == Lemma2Method::Nested ? "nested" : "qmc"), r.tolerance,
         std::string(r.passed ? "true" : "false")});
  write_table(out, t, format_of(cfg, Format::Csv));
  return r.passed ? 0 : 2;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const std::string& c = cfg.command;
  if (c == "eval-fa") return eval_fa(cfg, out);
  if (c == "eval-kernel") return eval_kernel(cfg, out);
  if (c == "solve") return solve(cfg, out, log);
  if (c == "flux") return flux(cfg, out, log);
  if (c == "verify") return verify(cfg, out, log);
  if (c == "lemma1") return lemma1(cfg, out);
  if (c == "lemma2") return lemma2(cfg, out);
  throw ConfigError("command", "unknown command '" + c + "'");
}

}  // namespace lauricella::cli
