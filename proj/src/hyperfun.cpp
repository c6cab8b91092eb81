#include "lauricella/hyperfun.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "lauricella/errors.hpp"

namespace lauricella {

namespace {

// Axes with |x_i| at or below this use a single Gauss-Jacobi panel.
constexpr double kSinglePanelArg = 2.0;
// Binomial rows overflow a double beyond n = 1029.
constexpr std::size_t kMaxSeriesDegree = 1000;

double abs_sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

bool all_nonpositive(std::span<const double> x) {
  for (double v : x)
    if (v > 0.0) return false;
  return true;
}

// Shell-stopping rule shared by both series: two consecutive shells below
// rel_tol relative to the running sum.
class ShellMonitor {
 public:
  explicit ShellMonitor(double rel_tol) : rel_tol_(rel_tol) {}

  bool done(double shell, double sum) {
    if (std::abs(shell) <= rel_tol_ * std::abs(sum)) {
      ++quiet_;
    } else {
      quiet_ = 0;
    }
    return quiet_ >= 2;
  }

 private:
  double rel_tol_;
  int quiet_ = 0;
};

}  // namespace

std::string_view to_string(EvalMethod method) {
  return method == EvalMethod::Series ? "series" : "integral";
}

void FAParams::validate() const {
  require(!b.empty(), ErrorCode::PreconditionViolation, "FAParams: n must be >= 1");
  require(b.size() == c.size(), ErrorCode::PreconditionViolation, "FAParams: length(b) != length(c)");
  require(std::isfinite(a), ErrorCode::PreconditionViolation, "FAParams: a is not finite");
  for (std::size_t i = 0; i < c.size(); ++i) {
    require(std::isfinite(b[i]) && std::isfinite(c[i]), ErrorCode::PreconditionViolation,
            "FAParams: non-finite b or c");
    require(!is_nonpositive_integer(c[i]), ErrorCode::ParameterPole,
            "FAParams: c[" + std::to_string(i) + "] is zero or a negative integer");
  }
}

FAParams FAParams::shifted(std::size_t k) const {
  require(k < b.size(), ErrorCode::PreconditionViolation, "FAParams::shifted: index out of range");
  FAParams out = *this;
  out.a += 1.0;
  out.b[k] += 1.0;
  out.c[k] += 1.0;
  return out;
}

FAParams FAParams::raised() const {
  FAParams out = *this;
  out.a += 1.0;
  return out;
}

void EvalOptions::validate() const {
  require(rel_tol > 0.0, ErrorCode::PreconditionViolation, "EvalOptions: rel_tol must be > 0");
  require(max_total_degree >= 1 && max_total_degree <= kMaxSeriesDegree, ErrorCode::PreconditionViolation,
          "EvalOptions: max_total_degree must lie in [1, 1000]");
  require(quadrature_order >= 2, ErrorCode::PreconditionViolation, "EvalOptions: quadrature_order must be >= 2");
  require(series_radius > 0.0 && series_radius <= 1.0, ErrorCode::PreconditionViolation,
          "EvalOptions: series_radius must lie in (0, 1]");
}

SeriesResult gauss_2f1(double a, double b, double c, double x, const EvalOptions& opts) {
  opts.validate();
  require(!is_nonpositive_integer(c), ErrorCode::ParameterPole, "gauss_2f1: c is zero or a negative integer");
  require(std::isfinite(x), ErrorCode::PreconditionViolation, "gauss_2f1: non-finite argument");
  require(x < 1.0, ErrorCode::OutsideDomain, "gauss_2f1: x must be < 1");

  if (x <= -1.0) {
    // Euler integral in whichever numerator parameter admits it.
    double num = a, bb = b;
    if (!(bb > 0.0 && c > bb)) std::swap(num, bb);
    require(bb > 0.0 && c > bb, ErrorCode::OutsideDomain,
            "gauss_2f1: x <= -1 needs 0 < b < c or 0 < a < c for the integral representation");
    const double arg[1] = {x};
    LauricellaFA f({num, {bb}, {c}}, opts);
    return f.integral(arg);
  }

  SeriesResult out;
  double term = 1.0;
  double sum = 1.0;
  ShellMonitor monitor(opts.rel_tol);
  for (std::size_t k = 0; k < opts.max_total_degree; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += term;
    if (monitor.done(term, sum)) {
      out.converged = true;
      out.terms_used = k + 2;
      break;
    }
  }
  if (!out.converged) out.terms_used = opts.max_total_degree + 1;
  out.value = sum;
  out.method = EvalMethod::Series;
  require(out.converged, ErrorCode::NonConvergence,
          "gauss_2f1: series did not reach rel_tol within max_total_degree terms");
  return out;
}

LauricellaFA::LauricellaFA(FAParams params, EvalOptions opts) : params_(std::move(params)), opts_(opts) {
  params_.validate();
  opts_.validate();

  integral_ok_ = true;
  for (std::size_t i = 0; i < params_.dimension(); ++i) {
    const double b = params_.b[i];
    const double c = params_.c[i];
    if (b != 0.0 && !(b > 0.0 && c - b > 0.0)) integral_ok_ = false;
  }
  if (!integral_ok_) return;

  const std::size_t q = opts_.quadrature_order;
  legendre_ = gauss_legendre_unit(q);
  axes_.reserve(params_.dimension());
  for (std::size_t i = 0; i < params_.dimension(); ++i) {
    const double b = params_.b[i];
    const double c = params_.c[i];
    AxisRules r;
    if (b == 0.0) {
      axes_.push_back(std::move(r));
      continue;
    }
    r.both = gauss_jacobi_unit(q, b - 1.0, c - b - 1.0);
    r.left = gauss_jacobi_unit(q, b - 1.0, 0.0);
    r.right = gauss_jacobi_unit(q, c - b - 1.0, 0.0);
    r.log_norm = ln_gamma(c).log_abs - ln_gamma(b).log_abs - ln_gamma(c - b).log_abs;
    axes_.push_back(std::move(r));
  }
}

std::vector<double> LauricellaFA::drop_trivial(std::span<const double> x) const {
  require(x.size() == params_.dimension(), ErrorCode::PreconditionViolation,
          "lauricella_fa: argument length does not match n");
  // (0)_k = 0 for k >= 1, so a slot with b_i = 0 never contributes.
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i)
    if (params_.b[i] == 0.0) y[i] = 0.0;
  return y;
}

SeriesResult LauricellaFA::operator()(std::span<const double> x_in) const {
  const std::vector<double> xv = drop_trivial(x_in);
  const std::span<const double> x(xv);
  const double total = abs_sum(x);
  const bool integral_eligible = integral_ok_ && all_nonpositive(x);

  SeriesResult out;
  switch (opts_.method) {
    case MethodPreference::Series:
      out = series(x);
      break;
    case MethodPreference::IntegralRepresentation:
      out = integral(x);
      break;
    case MethodPreference::Auto:
      if (integral_eligible && total >= opts_.series_radius) {
        out = integral(x);
      } else if (total < 1.0) {
        out = series(x);
      } else {
        throw Error(ErrorCode::OutsideDomain,
                    "lauricella_fa: sum |x_i| >= 1 and the integral representation does not apply "
                    "(needs every x_i <= 0 and 0 < b_i < c_i)");
      }
      break;
  }
  require(out.converged, ErrorCode::NonConvergence,
          "lauricella_fa: series did not reach rel_tol within max_total_degree shells");
  return out;
}

SeriesResult LauricellaFA::series(std::span<const double> x_in) const {
  const std::vector<double> xv = drop_trivial(x_in);
  const std::span<const double> x(xv);
  require(abs_sum(x) < 1.0, ErrorCode::OutsideDomain, "lauricella_fa: series needs sum |x_i| < 1");

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) active.push_back(i);

  SeriesResult out;
  out.method = EvalMethod::Series;
  if (active.empty()) {
    out.value = 1.0;
    out.terms_used = 1;
    out.converged = true;
    return out;
  }

  const std::size_t n = active.size();
  const std::size_t kmax = opts_.max_total_degree;
  // h[i][k] = (b_i)_k / (c_i)_k * x_i^k ; q[i][K] = sum over the first i+1
  // variables of multinomial(K; k) prod h. The shell value is
  // (a)_K / K! * q[n-1][K].
  std::vector<std::vector<double>> h(n), q(n);
  for (std::size_t i = 0; i < n; ++i) {
    h[i].reserve(kmax + 1);
    q[i].reserve(kmax + 1);
    h[i].push_back(1.0);
    q[i].push_back(1.0);
  }
  std::vector<double> binom;
  binom.reserve(kmax + 1);

  double pochhammer_ratio = 1.0;  // (a)_K / K!
  double sum = 1.0;
  ShellMonitor monitor(opts_.rel_tol);
  const double a = params_.a;

  for (std::size_t K = 1; K <= kmax; ++K) {
    pochhammer_ratio *= (a + K - 1.0) / static_cast<double>(K);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t idx = active[i];
      const double b = params_.b[idx], c = params_.c[idx];
      h[i].push_back(h[i][K - 1] * (b + K - 1.0) / (c + K - 1.0) * x[idx]);
    }
    if (n > 1) {
      binom.assign(K + 1, 1.0);
      for (std::size_t j = 1; j <= K / 2; ++j) {
        binom[j] = binom[j - 1] * static_cast<double>(K - j + 1) / static_cast<double>(j);
        binom[K - j] = binom[j];
      }
    }
    q[0].push_back(h[0][K]);
    for (std::size_t i = 1; i < n; ++i) {
      double acc = 0.0;
      const auto& prev = q[i - 1];
      const auto& hi = h[i];
      for (std::size_t j = 0; j <= K; ++j) acc += binom[j] * prev[j] * hi[K - j];
      q[i].push_back(acc);
    }
    const double shell = pochhammer_ratio * q[n - 1][K];
    sum += shell;
    out.terms_used = K + 1;
    if (monitor.done(shell, sum)) {
      out.converged = true;
      break;
    }
  }
  out.value = sum;
  return out;
}

void LauricellaFA::build_axis_rule(std::size_t axis, double y, std::vector<double>& t,
                                   std::vector<double>& w) const {
  const AxisRules& r = axes_[axis];
  const double b = params_.b[axis];
  const double c = params_.c[axis];
  const double norm = std::exp(r.log_norm);
  t.clear();
  w.clear();

  if (y <= kSinglePanelArg) {
    t = r.both.nodes;
    w = r.both.weights;
    for (double& wi : w) wi *= norm;
    return;
  }

  std::vector<double> cuts{0.0};
  for (double p = 1.0 / y; p < 0.5; p *= 4.0) cuts.push_back(p);
  cuts.push_back(0.5);
  cuts.push_back(1.0);

  const std::size_t panels = cuts.size() - 1;
  for (std::size_t pi = 0; pi < panels; ++pi) {
    const double lo = cuts[pi], hi = cuts[pi + 1];
    const double width = hi - lo;
    if (pi == 0) {
      // t = width * u; t^(b-1) dt = width^b u^(b-1) du
      const double scale = norm * std::pow(width, b);
      for (std::size_t j = 0; j < r.left.size(); ++j) {
        const double tj = width * r.left.nodes[j];
        t.push_back(tj);
        w.push_back(scale * r.left.weights[j] * std::pow(1.0 - tj, c - b - 1.0));
      }
    } else if (pi + 1 == panels) {
      // t = 1 - width * v; (1-t)^(c-b-1) dt = width^(c-b) v^(c-b-1) dv
      const double scale = norm * std::pow(width, c - b);
      for (std::size_t j = 0; j < r.right.size(); ++j) {
        const double tj = 1.0 - width * r.right.nodes[j];
        t.push_back(tj);
        w.push_back(scale * r.right.weights[j] * std::pow(tj, b - 1.0));
      }
    } else {
      for (std::size_t j = 0; j < legendre_.size(); ++j) {
        const double tj = lo + width * legendre_.nodes[j];
        t.push_back(tj);
        w.push_back(norm * width * legendre_.weights[j] * std::pow(tj, b - 1.0) *
                    std::pow(1.0 - tj, c - b - 1.0));
      }
    }
  }
}

SeriesResult LauricellaFA::integral(std::span<const double> x_in) const {
  const std::vector<double> xv = drop_trivial(x_in);
  const std::span<const double> x(xv);
  require(integral_ok_, ErrorCode::OutsideDomain,
          "lauricella_fa: integral representation needs 0 < b_i < c_i for every i");
  require(all_nonpositive(x), ErrorCode::OutsideDomain, "lauricella_fa: integral representation needs x_i <= 0");

  SeriesResult out;
  out.method = EvalMethod::IntegralRepresentation;
  out.converged = true;

  // Per active axis: offsets y_i t_ij and weights.
  std::vector<std::vector<double>> shift, weight;
  std::vector<double> t, w;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    const double y = -x[i];
    build_axis_rule(i, y, t, w);
    for (double& tj : t) tj *= y;
    shift.push_back(t);
    weight.push_back(w);
  }
  if (shift.empty()) {
    out.value = 1.0;
    out.terms_used = 1;
    return out;
  }

  const double a = params_.a;
  const std::size_t n = shift.size();
  std::size_t evaluations = 0;
  // Depth-first tensor-product sum; the innermost axis is a plain loop.
  std::function<double(std::size_t, double)> sum_axis = [&](std::size_t axis, double base) -> double {
    const auto& s = shift[axis];
    const auto& wt = weight[axis];
    double acc = 0.0;
    if (axis + 1 == n) {
      for (std::size_t j = 0; j < s.size(); ++j) acc += wt[j] * std::exp(-a * std::log1p(base + s[j]));
      evaluations += s.size();
    } else {
      for (std::size_t j = 0; j < s.size(); ++j) acc += wt[j] * sum_axis(axis + 1, base + s[j]);
    }
    return acc;
  };
  out.value = sum_axis(0, 0.0);
  out.terms_used = evaluations;
  return out;
}

SeriesResult lauricella_fa(const FAParams& params, std::span<const double> x, const EvalOptions& opts) {
  return LauricellaFA(params, opts)(x);
}

double fa_partial(const FAParams& params, std::span<const double> x, std::size_t k, const EvalOptions& opts) {
  params.validate();
  require(k < params.dimension(), ErrorCode::PreconditionViolation, "fa_partial: index out of range");
  const double factor = params.a * params.b[k] / params.c[k];
  if (factor == 0.0) return 0.0;
  return factor * lauricella_fa(params.shifted(k), x, opts).value;
}

double fa_adjacent_residual(const FAParams& params, std::span<const double> x, const EvalOptions& opts) {
  params.validate();
  require(x.size() == params.dimension(), ErrorCode::PreconditionViolation,
          "fa_adjacent_residual: argument length does not match n");
  double lhs = 0.0;
  for (std::size_t k = 0; k < params.dimension(); ++k) {
    if (x[k] == 0.0 || params.b[k] == 0.0) continue;
    lhs += params.b[k] / params.c[k] * x[k] * lauricella_fa(params.shifted(k), x, opts).value;
  }
  const double upper = lauricella_fa(params.raised(), x, opts).value;
  const double base = lauricella_fa(params, x, opts).value;
  const double rhs = upper - base;
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace lauricella
