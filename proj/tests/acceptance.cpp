// Acceptance gate: one PASS/FAIL line per criterion. A criterion passes only
// when its checks pass within its wall-time limit.
//
//   acceptance [--cli path/to/lauricella] [criterion ...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "lauricella/gamma.hpp"
#include "lauricella/hyperfun.hpp"
#include "lauricella/neumann.hpp"
#include "lauricella/verify.hpp"

using namespace lauricella;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

EvalOptions only(MethodPreference m) {
  EvalOptions o;
  o.method = m;
  return o;
}

FAParams random_params(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> ua(0.2, 2.0), ub(0.1, 1.5), ugap(0.2, 1.5);
  FAParams p;
  p.a = ua(rng);
  for (std::size_t i = 0; i < n; ++i) {
    p.b.push_back(ub(rng));
    p.c.push_back(p.b.back() + ugap(rng));
  }
  return p;
}

std::vector<double> random_point(std::mt19937_64& rng, std::size_t n, double radius, bool negative_only) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  double total = 0.0;
  for (auto& v : x) {
    v = u(rng) + 0.05;
    total += v;
  }
  const double scale = radius * (0.1 + 0.9 * u(rng)) / total;
  for (auto& v : x) {
    v *= scale;
    if (negative_only || u(rng) < 0.5) v = -v;
  }
  return x;
}

// Collapses a list of reports: all must pass; the detail names the failures.
Outcome from_reports(const std::vector<CheckReport>& reports) {
  Outcome o{true, std::to_string(reports.size()) + " checks"};
  for (const auto& r : reports) {
    if (r.passed) continue;
    if (o.passed) o.detail += ", failed:";
    o.passed = false;
    o.detail += " " + r.name + " (observed " + fmt(r.observed) + ", expected " + fmt(r.expected) + ")";
  }
  return o;
}

Outcome fa_correctness() {
  double worst_2f1 = 0.0;
  const double a = 0.7, b = 0.45, c = 1.35;
  for (int i = 0; i < 50; ++i) {
    const double x[1] = {-0.9 + 1.8 * (i + 0.5) / 50.0};
    const double fa = lauricella_fa({a, {b}, {c}}, x, only(MethodPreference::Series)).value;
    const double f21 = gauss_2f1(a, b, c, x[0]).value;
    worst_2f1 = std::max(worst_2f1, std::abs(fa - f21) / std::abs(f21));
  }
  double worst_int = 0.0;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const FAParams p = random_params(rng, n);
    const auto x = random_point(rng, n, 0.9, true);
    const double s = lauricella_fa(p, x, only(MethodPreference::Series)).value;
    const double q = lauricella_fa(p, x, only(MethodPreference::IntegralRepresentation)).value;
    worst_int = std::max(worst_int, std::abs(s - q) / std::abs(s));
  }
  return {worst_2f1 <= 1e-12 && worst_int <= 1e-8,
          "2F1 reduction max rel err " + fmt(worst_2f1) + " (50 points), series vs integral " + fmt(worst_int) +
              " (100 vectors)"};
}

Outcome identities() {
  constexpr int cases = 250;
  std::mt19937_64 rng(7);
  double dup = 0.0, dbl = 0.0, diff = 0.0, adj = 0.0;

  std::uniform_real_distribution<double> ua(0.05, 20.0);
  const double log_sqrt_pi = 0.5 * std::log(std::numbers::pi);
  for (int i = 0; i < cases; ++i) {
    const double a = ua(rng);
    const double lhs = ln_gamma(2 * a).log_abs;
    const double rhs = (2 * a - 1) * std::log(2.0) - log_sqrt_pi + ln_gamma(a).log_abs + ln_gamma(a + 0.5).log_abs;
    dup = std::max(dup, std::abs(std::expm1(rhs - lhs)));
  }

  std::uniform_real_distribution<double> up(-5.0, 5.0);
  for (int i = 0; i < cases; ++i) {
    const double a = up(rng);
    const auto m = static_cast<std::uint32_t>(1 + i % 20);
    const double lhs = pochhammer(a, 2 * m);
    const double rhs = pochhammer(a, m) * pochhammer(a + m, m);
    dbl = std::max(dbl, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300));
  }

  const double h = 1e-5;
  for (int i = 0; i < cases; ++i) {
    const std::size_t n = 1 + i % 4;
    const FAParams p = random_params(rng, n);
    const auto x = random_point(rng, n, 0.8, false);
    const std::size_t k = i % n;
    const double analytic = fa_partial(p, x, k);
    auto xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const double fd = (lauricella_fa(p, xp).value - lauricella_fa(p, xm).value) / (2 * h);
    diff = std::max(diff, std::abs(analytic - fd) / std::abs(analytic));
  }

  for (int i = 0; i < cases; ++i) {
    const std::size_t n = 1 + i % 4;
    const FAParams p = random_params(rng, n);
    const auto x = random_point(rng, n, 0.8, false);
    adj = std::max(adj, fa_adjacent_residual(p, x));
  }

  return {dup <= 1e-10 && dbl <= 1e-12 && diff <= 1e-6 && adj <= 1e-10,
          std::to_string(cases) + " cases each: duplication " + fmt(dup) + ", doubling " + fmt(dbl) +
              ", differentiation " + fmt(diff) + ", adjacent " + fmt(adj)};
}

Outcome lemma2() {
  const double anchor1 = lemma2_closed_form({{1}, {2}, {1}, 1.0, 0.0});
  const double anchor2 = lemma2_closed_form({{1, 1}, {2, 2}, {1, 1}, 2.0, 0.0});
  const double anchor_err =
      std::max(std::abs(anchor1 - std::numbers::pi / 2), std::abs(anchor2 - std::numbers::pi / 4));

  const std::uint64_t budget = 50'000'000;
  std::vector<CheckReport> r;
  r.push_back(check_lemma2_numeric({{1}, {2}, {1}, 1.0, 0.0}, Lemma2Method::Nested, budget, 1e-6));
  r.push_back(check_lemma2_numeric({{1.5}, {2}, {2}, 1.5, 0.25}, Lemma2Method::Nested, budget, 1e-6));
  r.push_back(check_lemma2_numeric({{1, 1}, {2, 2}, {1, 1}, 2.0, 0.0}, Lemma2Method::Nested, budget, 1e-6));
  r.push_back(check_lemma2_numeric({{1, 1.5}, {2, 1}, {1, 2}, 2.5, 0.3}, Lemma2Method::Nested, budget, 1e-6));
  r.push_back(check_lemma2_numeric({{1, 1, 1}, {2, 2, 2}, {1, 1, 1}, 3.0, 0.0}, Lemma2Method::QMC, 4'000'000, 1e-3));
  r.push_back(
      check_lemma2_numeric({{1, 1, 2}, {2, 2, 2}, {1, 0.5, 1}, 3.0, 0.5}, Lemma2Method::QMC, 4'000'000, 1e-3, 42));
  Outcome o = from_reports(r);
  double worst_nested = 0.0, worst_qmc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double& worst = i < 4 ? worst_nested : worst_qmc;
    worst = std::max(worst, std::abs(r[i].observed - r[i].expected));
  }
  o.passed = o.passed && anchor_err <= 1e-14;
  o.detail += "; anchors off by " + fmt(anchor_err) + ", nested max diff " + fmt(worst_nested) + ", QMC max diff " +
              fmt(worst_qmc);
  return o;
}

Outcome lemma1() {
  struct Set {
    double a;
    std::vector<double> b, c, z0, slope;
  };
  const std::vector<Set> sets{
      {2.0, {0.5}, {1.0}, {1.0}, {}},
      {1.5, {0.3}, {2.0}, {0.5}, {}},
      {3.0, {1.2}, {2.5}, {2.0}, {}},
      {3.0, {1.2}, {2.5}, {2.0}, {1.0}},
      {2.5, {0.5, 0.7}, {1.2, 1.5}, {1.0, 2.0}, {}},
      {2.5, {0.5, 0.7}, {1.2, 1.5}, {1.0, 2.0}, {1.0, 1.0}},
      {3.0, {1.0, 0.5}, {2.0, 3.0}, {0.5, 1.5}, {}},
      {3.0, {1.0, 0.5}, {2.0, 3.0}, {0.5, 1.5}, {1.0, -0.5}},
      {1.8, {0.4, 0.4}, {0.9, 2.0}, {3.0, 0.25}, {2.0, 1.0}},
      {2.5, {0.3, 0.4, 0.5}, {1.0, 1.5, 2.0}, {1.0, 1.0, 1.0}, {}},
      {2.5, {0.3, 0.4, 0.5}, {1.0, 1.5, 2.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}},
  };
  const std::vector<double> eps{1e-4, 1e-5, 1e-6};
  std::vector<CheckReport> r;
  double worst = 0.0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& s = sets[i];
    r.push_back(check_lemma1_limit(s.a, s.b, s.c, s.z0, eps, 1e-3, s.slope));
    r.back().name = "set " + std::to_string(i + 1);
    worst = std::max(worst, std::abs(r.back().observed - r.back().expected) / std::abs(r.back().expected));
  }
  Outcome o = from_reports(r);
  o.detail += ", max rel diff " + fmt(worst);
  return o;
}

Outcome fundamental() {
  auto r = check_fundamental_solution(DomainSpec{3, 1, {0.25}}, 20, 42);
  auto r4 = check_fundamental_solution(DomainSpec{4, 2, {0.25, 0.3}}, 20, 42);
  r.insert(r.end(), r4.begin(), r4.end());
  Outcome o = from_reports(r);
  for (const auto& c : r)
    if (c.name.ends_with("/order")) o.detail += ", " + c.name + " " + fmt(c.observed);
  return o;
}

Outcome neumann_bump() {
  const auto r = check_neumann_end_to_end("bump31");
  Outcome o = from_reports(r);
  for (const auto& c : r) o.detail += ", " + c.name.substr(c.name.rfind('/') + 1) + " " + fmt(c.observed);
  return o;
}

// The drop of xi_l^(2 alpha_l) dI_k/dxi_l between xi_l = 0.1 and 0.0125.
Outcome off_face() {
  const DomainSpec spec{4, 2, {0.25, 0.3}};
  QuadratureSpec quad;
  quad.base_order = 4;
  quad.target_rel_tol = 1e-3;
  const std::vector<double> path{0.1, 0.05, 0.025, 0.0125};
  struct Case {
    std::string name;
    BoundaryDatum datum;
    Point base;
    std::size_t l, k;
  };
  const std::vector<Case> cases{
      {"bound-matching on face 1", BoundaryDatum::bound_matching(0, spec, 1.0, 0.5), {0.3, 0.0, 0.2, -0.1}, 1, 0},
      {"compact bump on face 2",
       BoundaryDatum::compact_bump(1, 1.0, {0.5, 0.2, -0.1}, 0.4).with_fitted_bound(spec, 0.5),
       {0.0, 0.3, 0.2, -0.1},
       0,
       1},
  };
  Outcome o{true, ""};
  for (const auto& c : cases) {
    const auto seq = off_face_flux_limit(c.datum, c.base, path, c.l, c.k, spec, quad);
    const double drop = std::abs(seq.front() / seq.back());
    o.passed = o.passed && drop >= 1e3;
    if (!o.detail.empty()) o.detail += ", ";
    o.detail += c.name + " drops " + fmt(drop) + "x (need 1000x)";
  }
  return o;
}

Outcome energy() {
  const CheckReport r = check_energy_identity("bump31", 8.0);
  return {r.passed, "relative mismatch " + fmt(r.observed) + " (tol " + fmt(r.tolerance) + ")" +
                        (r.note.empty() ? "" : "; " + r.note)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI binary given (--cli)"};
  const auto dir = std::filesystem::temp_directory_path() / ("lauricella_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    const auto file = dir / ("run" + std::to_string(run) + ".jsonl");
    const std::string cmd =
        "\"" + cli + "\" verify --suite default --seed 42 -o \"" + file.string() + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (status != 0) {
      std::filesystem::remove_all(dir);
      return {false, "run " + std::to_string(run + 1) + " exited with status " + std::to_string(status)};
    }
    outputs.push_back(slurp(file));
  }
  std::filesystem::remove_all(dir);
  const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
  return {same, std::to_string(outputs[0].size()) + " bytes per report, " + (same ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string cli;
  std::vector<int> selected;
  app.add_option("--cli", cli, "Path to the lauricella executable (criterion 9)");
  app.add_option("criteria", selected, "Criteria to run (default: all)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  struct Criterion {
    const char* title;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"F_A correctness", 10, fa_correctness},
      {"identity batteries", 30, identities},
      {"octant integral closed form", 60, lemma2},
      {"boundary limit closed form", 60, lemma1},
      {"fundamental solution", 120, fundamental},
      {"Neumann end to end, m=3", 600, neumann_bump},
      {"off-face flux vanishing, m=4", 300, off_face},
      {"energy identity, R=8", 600, energy},
      {"determinism of verify", 600, [&] { return determinism(cli); }},
  };

  bool all = true;
  for (int id : selected) {
    const auto& c = criteria[static_cast<std::size_t>(id - 1)];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit;
    const bool ok = o.passed && in_time;
    all = all && ok;
    std::printf("criterion %d %s: %s  %s  [%.1f s of %.0f s%s]\n", id, c.title, ok ? "PASS" : "FAIL", o.detail.c_str(),
                seconds, c.limit, in_time ? "" : ", over limit");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
