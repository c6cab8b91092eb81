#include "lauricella/verify.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "json.hpp"
#include "lauricella/errors.hpp"
#include "lauricella/halton.hpp"

namespace lauricella {

namespace {

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

double log1p_exp(double v) { return v > 0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v)); }

// ln of prod x_k^(p_k - 1) / (S^t (1 + S)^s), S = sum (r_k x_k)^q_k, from ln x.
double lemma2_log_integrand(const Lemma2Params& p, std::span<const double> log_x) {
  double top = -std::numeric_limits<double>::infinity();
  std::vector<double> terms(log_x.size());
  for (std::size_t k = 0; k < log_x.size(); ++k) {
    terms[k] = p.q[k] * (std::log(p.r[k]) + log_x[k]);
    top = std::max(top, terms[k]);
  }
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  const double log_s = top + std::log(acc);
  double out = -p.t * log_s - p.s * log1p_exp(log_s);
  for (std::size_t k = 0; k < log_x.size(); ++k) out += (p.p[k] - 1.0) * log_x[k];
  return out;
}

double nested_integral(const Lemma2Params& p, std::uint64_t budget) {
  boost::math::quadrature::tanh_sinh<double> ts;
  std::uint64_t calls = 0;
  const std::size_t n = p.dimension();
  std::vector<double> log_x(n);
  std::vector<double> log_jac(n);
  // u in (0, 1), x = u / (1 - u); uc is the signed distance to the nearer end.
  auto set_axis = [&](std::size_t k, double u, double uc) {
    const double lu = uc < 0 ? std::log(-uc) : std::log(u);
    const double l1u = uc > 0 ? std::log(uc) : std::log1p(-u);
    log_x[k] = lu - l1u;
    log_jac[k] = -2.0 * l1u;
  };
  auto leaf = [&]() {
    if (++calls > budget) throw Error(ErrorCode::BudgetExhausted, "check_lemma2_numeric: evaluation budget exhausted");
    double l = lemma2_log_integrand(p, log_x);
    for (double j : log_jac) l += j;
    return std::exp(l);
  };
  // The inner integral is the outer integrand, so it must be more accurate
  // than the outer target or the outer refinement never settles.
  const double tol = 1e-11;
  const double inner_tol = 1e-13;
  const double outer_tol = 1e-9;
  if (n == 1) {
    return ts.integrate([&](double u, double uc) {
      set_axis(0, u, uc);
      return leaf();
    }, 0.0, 1.0, tol);
  }
  return ts.integrate([&](double u0, double uc0) {
    boost::math::quadrature::tanh_sinh<double> inner;
    const double l0 = [&] { set_axis(0, u0, uc0); return log_x[0]; }();
    const double j0 = log_jac[0];
    return inner.integrate([&](double u1, double uc1) {
      log_x[0] = l0;
      log_jac[0] = j0;
      set_axis(1, u1, uc1);
      return leaf();
    }, 0.0, 1.0, inner_tol);
  }, 0.0, 1.0, outer_tol);
}

double qmc_integral(const Lemma2Params& p, std::uint64_t points, std::uint64_t seed) {
  const std::size_t n = p.dimension();
  const Halton halton(n);
  std::mt19937_64 rng(seed);
  std::vector<double> shift(n);
  for (double& s : shift) s = uniform(rng);
  // x_k = (u/(1-u))^(1/p_k) / r_k turns x^(p-1) dx into du / (p r^p (1-u)^2).
  double log_const = 0.0;
  for (std::size_t k = 0; k < n; ++k) log_const -= std::log(p.p[k]) + p.p[k] * std::log(p.r[k]);
  std::vector<double> u(n), log_x(n);
  // The x^(p-1) factors are absorbed by the map, so the integrand is taken with p = 1.
  Lemma2Params unit = p;
  std::fill(unit.p.begin(), unit.p.end(), 1.0);
  double sum = 0.0;
  for (std::uint64_t i = 0; i < points; ++i) {
    halton.point(i, u.data());
    double l = log_const;
    for (std::size_t k = 0; k < n; ++k) {
      double v = u[k] + shift[k];
      if (v >= 1.0) v -= 1.0;
      if (v <= 0.0) v = 0x1p-60;
      const double l1u = std::log1p(-v);
      const double ly = std::log(v) - l1u;
      log_x[k] = ly / p.p[k] - std::log(p.r[k]);
      l -= 2.0 * l1u;
    }
    l += lemma2_log_integrand(unit, log_x);
    sum += std::exp(l);
  }
  return sum / static_cast<double>(points);
}

double richardson(double coarse, double fine, double ratio, double order) {
  return fine + (fine - coarse) / (std::pow(ratio, order) - 1.0);
}

struct Task {
  std::string label;
  std::function<std::vector<CheckReport>()> run;
};

std::vector<CheckReport> single(CheckReport r) { return {std::move(r)}; }

}  // namespace

CheckReport make_report(std::string name, double observed, double expected, double tolerance, std::string note) {
  CheckReport r;
  r.name = std::move(name);
  r.observed = observed;
  r.expected = expected;
  r.tolerance = tolerance;
  r.passed = std::abs(observed - expected) <= tolerance * std::max(1.0, std::abs(expected));
  r.note = std::move(note);
  return r;
}

CheckReport failed_report(std::string name, double tolerance, const std::exception& error) {
  CheckReport r = make_report(std::move(name), std::numeric_limits<double>::quiet_NaN(), 0.0, tolerance, error.what());
  r.passed = false;
  return r;
}

Tolerances Tolerances::defaults() {
  Tolerances t;
  t.values_ = {
      {"lemma2.nested", 1e-6},
      {"lemma2.qmc", 1e-3},
      {"lemma2.qmc_fine", 1e-4},
      {"lemma1", 1e-3},
      {"fundamental.symmetry", 1e-12},
      {"fundamental.residual", 1e-4},
      {"fundamental.order", 0.5},
      {"fundamental.normal", 1e-2},
      {"fundamental.normal_decay", 0.5},
      {"neumann.flux", 0.02},
      {"neumann.off_face", 0.1},
      {"neumann.decay", 0.1},
      {"neumann.residual", 1e-3},
      {"energy", 0.05},
  };
  return t;
}

double Tolerances::get(const std::string& key) const {
  auto it = values_.find(key);
  require(it != values_.end(), ErrorCode::PreconditionViolation, "Tolerances: unknown key '" + key + "'");
  return it->second;
}

void Tolerances::set(const std::string& key, double value) {
  require(values_.count(key) == 1, ErrorCode::PreconditionViolation, "Tolerances: unknown key '" + key + "'");
  require(value >= 0.0, ErrorCode::PreconditionViolation, "Tolerances: '" + key + "' must be non-negative");
  values_[key] = value;
}

CheckReport check_lemma2_numeric(const Lemma2Params& params, Lemma2Method method, std::uint64_t budget,
                                 double tolerance, std::uint64_t seed) {
  params.validate();
  const std::size_t n = params.dimension();
  const double expected = lemma2_closed_form(params);
  if (method == Lemma2Method::Nested) {
    require(n <= 2, ErrorCode::PreconditionViolation, "check_lemma2_numeric: Nested supports n <= 2");
    return make_report("lemma2", nested_integral(params, budget), expected, tolerance, "nested tanh-sinh");
  }
  require(n <= 4, ErrorCode::PreconditionViolation, "check_lemma2_numeric: QMC supports n <= 4");
  require(budget > 0, ErrorCode::PreconditionViolation, "check_lemma2_numeric: QMC needs at least one point");
  return make_report("lemma2", qmc_integral(params, budget, seed), expected, tolerance,
                     "halton points " + std::to_string(budget));
}

CheckReport check_lemma1_limit(double a, const std::vector<double>& b, const std::vector<double>& c,
                               const std::vector<double>& z0, const std::vector<double>& eps_sequence,
                               double tolerance, const std::vector<double>& z_slope) {
  const std::size_t n = b.size();
  require(c.size() == n && z0.size() == n, ErrorCode::PreconditionViolation,
          "check_lemma1_limit: b, c and z0 must have equal length");
  require(z_slope.empty() || z_slope.size() == n, ErrorCode::PreconditionViolation,
          "check_lemma1_limit: z_slope must be empty or of length n");
  require(!eps_sequence.empty(), ErrorCode::PreconditionViolation, "check_lemma1_limit: empty eps sequence");
  for (std::size_t i = 0; i < eps_sequence.size(); ++i)
    require(eps_sequence[i] > 0.0 && (i == 0 || eps_sequence[i] < eps_sequence[i - 1]),
            ErrorCode::PreconditionViolation, "check_lemma1_limit: eps must be positive and decreasing");
  double bsum = 0.0;
  for (double v : b) bsum += v;
  require(a > bsum, ErrorCode::PreconditionViolation, "check_lemma1_limit: needs a > sum b");

  const double expected = lemma1_closed_form(a, b, c, z0);
  const LauricellaFA fa(FAParams{a, b, c});
  std::vector<double> values;
  std::vector<double> x(n);
  for (double eps : eps_sequence) {
    for (std::size_t k = 0; k < n; ++k) {
      const double z = z0[k] + (z_slope.empty() ? 0.0 : z_slope[k] * eps);
      x[k] = 1.0 - z / eps;
    }
    values.push_back(std::pow(eps, -bsum) * fa(x).value);
  }
  const double order = std::min(1.0, a - bsum);
  double observed = values.back();
  if (values.size() >= 2) {
    const std::size_t i = values.size() - 1;
    observed = richardson(values[i - 1], values[i], eps_sequence[i - 1] / eps_sequence[i], order);
  }
  return make_report("lemma1", observed, expected, tolerance,
                     "richardson order " + fmt(order) + ", last G " + fmt(values.back()));
}

std::vector<CheckReport> check_fundamental_solution(const DomainSpec& spec, int samples, std::uint64_t seed,
                                                    const Tolerances& tol) {
  spec.validate();
  require(samples >= 1, ErrorCode::PreconditionViolation, "check_fundamental_solution: samples must be >= 1");
  const auto m = static_cast<std::size_t>(spec.m);
  const auto n = static_cast<std::size_t>(spec.n);
  const std::string prefix = "fundamental/m" + std::to_string(spec.m) + "n" + std::to_string(spec.n) + "/";
  const FundamentalSolution fs(spec);
  std::mt19937_64 rng(seed);

  Point pole(m);
  for (std::size_t i = 0; i < m; ++i) pole[i] = i < n ? 0.6 + 0.2 * static_cast<double>(i) : 0.3 - 0.2 * static_cast<double>(i - n);
  auto random_point = [&](const Point& avoid) {
    Point x(m);
    while (true) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        x[i] = i < n ? 0.3 + 1.2 * uniform(rng) : -1.0 + 2.0 * uniform(rng);
        d2 += (x[i] - avoid[i]) * (x[i] - avoid[i]);
      }
      if (d2 >= 0.16) return x;
    }
  };
  const ScalarField field = [&](std::span<const double> x) { return fs(x, pole); };

  std::vector<CheckReport> out;
  double worst = 0.0, coarse = 0.0, fine = 0.0, sym = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Point x = random_point(pole);
    const StencilResidual r = pde_residual_terms(field, x, spec, 1e-3);
    worst = std::max(worst, std::abs(r.residual) / r.scale);
    coarse += std::abs(pde_residual(field, x, spec, 0.02));
    fine += std::abs(pde_residual(field, x, spec, 0.01));
    const Point y = random_point(x);
    const double qxy = fs(x, y);
    sym = std::max(sym, std::abs(qxy - fs(y, x)) / std::abs(qxy));
  }
  out.push_back(make_report(prefix + "residual", worst, 0.0, tol.get("fundamental.residual"),
                            "max |E_h q| / scale at h = 1e-3"));
  out.push_back(make_report(prefix + "order", coarse / fine, 4.0, tol.get("fundamental.order") / 4.0,
                            "summed residual ratio h = 0.02 vs 0.01"));
  out.push_back(make_report(prefix + "symmetry", sym, 0.0, tol.get("fundamental.symmetry")));

  // |dq/dx_k| / |grad_x q| by central differences as x_k -> 0.
  double last = 0.0, step = 0.0;
  std::string seq;
  for (std::size_t k = 0; k < n; ++k) {
    Point x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = i < n ? 1.2 + 0.1 * static_cast<double>(i) : -0.4;
    double prev = -1.0;
    for (double xk : {1e-1, 1e-2, 1e-3}) {
      x[k] = xk;
      double norm2 = 0.0, dk = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double h = i == k ? xk / 4 : 1e-4;
        Point up = x, down = x;
        up[i] += h;
        down[i] -= h;
        const double d = (fs(up, pole) - fs(down, pole)) / (2 * h);
        norm2 += d * d;
        if (i == k) dk = d;
      }
      const double ratio = std::abs(dk) / std::sqrt(norm2);
      if (prev >= 0.0) step = std::max(step, ratio / prev);
      prev = ratio;
      seq += (seq.empty() ? "" : " ") + fmt(ratio);
    }
    last = std::max(last, prev);
  }
  out.push_back(make_report(prefix + "normal_derivative", last, 0.0, tol.get("fundamental.normal"),
                            "ratios " + seq));
  out.push_back(make_report(prefix + "normal_decay", step, 0.0, tol.get("fundamental.normal_decay"),
                            "largest ratio between successive x_k"));
  return out;
}

std::vector<std::string> suite_names() { return {"default", "extended", "full"}; }

std::vector<CheckReport> run_suite(const std::string& suite, std::uint64_t seed, unsigned jobs, const Tolerances& tol) {
  require(suite == "default" || suite == "extended" || suite == "full", ErrorCode::PreconditionViolation,
          "run_suite: unknown suite '" + suite + "'");
  std::vector<Task> tasks;
  auto add_single = [&](std::string name, double t, std::function<CheckReport()> f) {
    tasks.push_back({name, [name, t, f] {
                       try {
                         CheckReport r = f();
                         r.name = name;
                         return single(std::move(r));
                       } catch (const std::exception& e) {
                         return single(failed_report(name, t, e));
                       }
                     }});
  };

  if (suite != "extended") {
    const double tn = tol.get("lemma2.nested");
    const std::uint64_t nested_budget = 50'000'000;
    auto l2 = [&](std::string name, Lemma2Params p, Lemma2Method method, std::uint64_t budget, double t) {
      add_single("lemma2/" + name, t, [p, method, budget, t, seed] { return check_lemma2_numeric(p, method, budget, t, seed); });
    };
    l2("nested/n1_half_pi", {{1}, {2}, {1}, 1.0, 0.0}, Lemma2Method::Nested, nested_budget, tn);
    l2("nested/n1_shifted", {{1.5}, {2}, {2}, 1.5, 0.25}, Lemma2Method::Nested, nested_budget, tn);
    l2("nested/n2_quarter_pi", {{1, 1}, {2, 2}, {1, 1}, 2.0, 0.0}, Lemma2Method::Nested, nested_budget, tn);
    l2("nested/n2_shifted", {{1, 1.5}, {2, 1}, {1, 2}, 2.5, 0.3}, Lemma2Method::Nested, nested_budget, tn);
    l2("qmc/n1_shifted", {{1.5}, {2}, {2}, 1.5, 0.25}, Lemma2Method::QMC, 10'000'000, tol.get("lemma2.qmc_fine"));
    l2("qmc/n3", {{1, 1, 1}, {2, 2, 2}, {1, 1, 1}, 3.0, 0.0}, Lemma2Method::QMC, 4'000'000, tol.get("lemma2.qmc"));
    l2("qmc/n3_shifted", {{1, 1, 2}, {2, 2, 2}, {1, 0.5, 1}, 3.0, 0.5}, Lemma2Method::QMC, 4'000'000,
       tol.get("lemma2.qmc"));

    const double t1 = tol.get("lemma1");
    const std::vector<double> eps{1e-4, 1e-5, 1e-6};
    struct L1 {
      std::string name;
      double a;
      std::vector<double> b, c, z0, slope;
    };
    const std::vector<L1> battery{
        {"n1_half", 2.0, {0.5}, {1.0}, {1.0}, {}},
        {"n1_zero_b", 2.0, {0.0}, {1.0}, {1.0}, {}},
        {"n1_a", 1.5, {0.3}, {2.0}, {0.5}, {}},
        {"n1_b", 3.0, {1.2}, {2.5}, {2.0}, {}},
        {"n1_moving", 3.0, {1.2}, {2.5}, {2.0}, {1.0}},
        {"n2_a", 2.5, {0.5, 0.7}, {1.2, 1.5}, {1.0, 2.0}, {}},
        {"n2_a_moving", 2.5, {0.5, 0.7}, {1.2, 1.5}, {1.0, 2.0}, {1.0, 1.0}},
        {"n2_b", 3.0, {1.0, 0.5}, {2.0, 3.0}, {0.5, 1.5}, {}},
        {"n2_b_moving", 3.0, {1.0, 0.5}, {2.0, 3.0}, {0.5, 1.5}, {1.0, -0.5}},
        {"n2_c_moving", 1.8, {0.4, 0.4}, {0.9, 2.0}, {3.0, 0.25}, {2.0, 1.0}},
        {"n3_a", 2.5, {0.3, 0.4, 0.5}, {1.0, 1.5, 2.0}, {1.0, 1.0, 1.0}, {}},
        {"n3_a_moving", 2.5, {0.3, 0.4, 0.5}, {1.0, 1.5, 2.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}},
    };
    for (const auto& s : battery)
      add_single("lemma1/" + s.name, t1, [s, eps, t1] { return check_lemma1_limit(s.a, s.b, s.c, s.z0, eps, t1, s.slope); });

    for (const DomainSpec& spec : {DomainSpec{3, 1, {0.25}}, DomainSpec{4, 2, {0.25, 0.3}}}) {
      tasks.push_back({"fundamental", [spec, seed, tol] {
                         const std::string name = "fundamental/m" + std::to_string(spec.m) + "n" + std::to_string(spec.n);
                         try {
                           return check_fundamental_solution(spec, 20, seed, tol);
                         } catch (const std::exception& e) {
                           return single(failed_report(name, 0.0, e));
                         }
                       }});
    }
    for (const std::string& scenario : neumann_scenarios())
      tasks.push_back({"neumann", [scenario, tol] { return check_neumann_end_to_end(scenario, tol); }});
  }
  if (suite != "default") {
    const double te = tol.get("energy");
    for (const std::string& scenario : energy_scenarios())
      add_single("energy/" + scenario, te, [scenario, tol] { return check_energy_identity(scenario, 8.0, tol); });
  }

  std::vector<std::vector<CheckReport>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      results[i] = tasks[i].run();
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      // Shared by the sub-checks of one task.
      for (auto& r : results[i])
        if (r.runtime == 0.0) r.runtime = seconds / static_cast<double>(results[i].size());
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<CheckReport> all;
  for (auto& r : results)
    for (auto& c : r) all.push_back(std::move(c));
  std::stable_sort(all.begin(), all.end(), [](const CheckReport& x, const CheckReport& y) { return x.name < y.name; });
  return all;
}

std::string report_json_line(const CheckReport& report, std::uint64_t seed, bool with_runtime) {
  nlohmann::ordered_json j;
  j["check"] = report.name;
  auto number = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  j["observed"] = number(report.observed);
  j["expected"] = number(report.expected);
  j["tolerance"] = number(report.tolerance);
  j["passed"] = report.passed;
  j["seed"] = seed;
  if (with_runtime) j["runtime"] = report.runtime;
  if (!report.note.empty()) j["note"] = report.note;
  return j.dump();
}

std::string summary_table(const std::vector<CheckReport>& reports) {
  std::size_t width = 5;
  for (const auto& r : reports) width = std::max(width, r.name.size());
  std::ostringstream os;
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  os << pad("check", width) << "  " << pad("observed", 24) << "  " << pad("expected", 24) << "  "
     << pad("tolerance", 10) << "  result\n";
  std::size_t passed = 0;
  for (const auto& r : reports) {
    os << pad(r.name, width) << "  " << pad(fmt(r.observed), 24) << "  " << pad(fmt(r.expected), 24) << "  "
       << pad(fmt(r.tolerance), 10) << "  " << (r.passed ? "PASS" : "FAIL") << "\n";
    passed += r.passed ? 1 : 0;
  }
  os << passed << "/" << reports.size() << " checks passed\n";
  return os.str();
}

}  // namespace lauricella
