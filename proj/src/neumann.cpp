#include "lauricella/neumann.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace lauricella {

namespace {

constexpr std::size_t kMaxDim = 16;

FAParams face_params(const DomainSpec& spec, std::size_t face, double a, std::optional<std::size_t> shift) {
  FAParams p;
  p.a = a;
  for (std::size_t i = 0; i < static_cast<std::size_t>(spec.n); ++i) {
    if (i == face) continue;
    const double s = shift && *shift == i ? 1.0 : 0.0;
    p.b.push_back(spec.alpha[i] + s);
    p.c.push_back(2 * spec.alpha[i] + s);
  }
  return p;
}

}  // namespace

std::size_t SolutionField::failed() const {
  std::size_t n = 0;
  for (const auto& f : failures) n += f.has_value();
  return n;
}

FaceKernel::FaceKernel(const DomainSpec& spec, std::size_t face, const EvalOptions& opts)
    : face_(face), m_(static_cast<std::size_t>(spec.m)), n_(static_cast<std::size_t>(spec.n)) {
  require(spec.m <= static_cast<int>(kMaxDim), ErrorCode::PreconditionViolation, "FaceKernel: m is limited to 16");
  const KernelConstants k = kernel_constants(spec);
  beta_ = k.beta;
  log_gamma_ = k.log_gamma;
  raised_shift_.resize(n_);
  if (n_ == 1) return;
  base_.emplace(face_params(spec, face, beta_, std::nullopt), opts);
  raised_.emplace(face_params(spec, face, beta_ + 1.0, std::nullopt), opts);
  for (std::size_t l = 0; l < n_; ++l)
    if (l != face) raised_shift_[l].emplace(face_params(spec, face, beta_ + 1.0, l), opts);
}

double FaceKernel::fa(const std::optional<LauricellaFA>& f, std::span<const double> phi) const {
  return f ? (*f)(phi).value : 1.0;
}

void FaceKernel::evaluate(std::span<const double> x, std::span<const double> xi, std::span<const int> components,
                          std::span<double> out) const {
  double r2 = 0.0;
  for (std::size_t i = 0; i < m_; ++i) r2 += (x[i] - xi[i]) * (x[i] - xi[i]);
  std::array<double, kMaxDim> phi_buf{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i == face_) continue;
    const double prod = x[i] * xi[i];
    phi_buf[k++] = prod == 0.0 ? 0.0 : -4.0 * prod / r2;
  }
  const std::span<const double> phi(phi_buf.data(), k);
  const double log_r2 = std::log(r2);

  double raised = std::numeric_limits<double>::quiet_NaN();
  double grad_pref = 0.0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const int comp = components[c];
    if (comp < 0) {
      out[c] = std::exp(log_gamma_ - beta_ * log_r2) * fa(base_, phi);
      continue;
    }
    if (std::isnan(raised)) {
      raised = fa(raised_, phi);
      grad_pref = 2 * beta_ * std::exp(log_gamma_ - (beta_ + 1.0) * log_r2);
    }
    const auto l = static_cast<std::size_t>(comp);
    double bracket = (x[l] - xi[l]) * raised;
    if (l < n_ && l != face_ && x[l] != 0.0) bracket -= x[l] * fa(raised_shift_[l], phi);
    out[c] = grad_pref * bracket;
  }
}

NeumannProblem::NeumannProblem(DomainSpec spec, std::vector<BoundaryDatum> data, QuadratureSpec quad,
                               EvalOptions opts)
    : spec_(std::move(spec)), quad_(quad), opts_(opts) {
  spec_.validate();
  quad_.validate();
  opts_.validate();
  const auto n = static_cast<std::size_t>(spec_.n);
  for (std::size_t j = 0; j < n; ++j) data_.push_back(BoundaryDatum::zero(j));
  std::vector<bool> seen(n, false);
  for (auto& d : data) {
    require(d.face() < n, ErrorCode::PreconditionViolation,
            "boundary data: face index " + std::to_string(d.face() + 1) + " exceeds n = " + std::to_string(n));
    require(!seen[d.face()], ErrorCode::PreconditionViolation,
            "boundary data: two data for face " + std::to_string(d.face() + 1));
    seen[d.face()] = true;
    d.certify(spec_);
    data_[d.face()] = std::move(d);
  }
  for (std::size_t j = 0; j < n; ++j) kernels_.emplace_back(spec_, j, opts_);
}

void NeumannProblem::check_point(std::span<const double> xi, bool allow_face) const {
  require(xi.size() == static_cast<std::size_t>(spec_.m), ErrorCode::PreconditionViolation,
          "neumann: point must have m coordinates");
  for (std::size_t i = 0; i < static_cast<std::size_t>(spec_.n); ++i) {
    require(std::isfinite(xi[i]) && (xi[i] > 0.0 || (allow_face && xi[i] == 0.0)), ErrorCode::OutsideDomain,
            "neumann: point must be interior (xi_" + std::to_string(i + 1) + " > 0)");
  }
}

std::vector<double> NeumannProblem::integrate_level(const FaceQuadrature& rule, int level, std::span<const double> xi,
                                                    std::span<const int> comps,
                                                    std::vector<double>* abs_sums) const {
  const std::size_t j = rule.face();
  const BoundaryDatum& nu = data_[j];
  const FaceKernel& kernel = kernels_[j];
  std::vector<double> sums(comps.size(), 0.0), vals(comps.size());
  if (abs_sums) abs_sums->assign(comps.size(), 0.0);
  rule.for_each(level, [&](std::span<const double> x, std::span<const double> x_face, double w) {
    const double v = nu(x_face);
    if (v == 0.0) return;
    kernel.evaluate(x, xi, comps, vals);
    const double f = -v * w;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const double t = f * vals[c];
      sums[c] += t;
      if (abs_sums) (*abs_sums)[c] += std::abs(t);
    }
  });
  return sums;
}

std::vector<FaceIntegral> NeumannProblem::integrate(std::size_t j, std::span<const double> xi,
                                                    std::span<const int> comps) const {
  std::vector<FaceIntegral> out(comps.size());
  if (data_[j].is_zero()) return out;
  const FaceQuadrature rule(spec_, j, data_[j], xi, quad_);
  const int finest = rule.levels() - 1;
  const auto coarse = integrate_level(rule, finest - 1, xi, comps, nullptr);
  std::vector<double> abs_sums;
  const auto fine = integrate_level(rule, finest, xi, comps, &abs_sums);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    out[c].value = fine[c];
    out[c].error = std::abs(fine[c] - coarse[c]);
    out[c].nodes = rule.node_count(finest);
    if (!(out[c].error <= quad_.target_rel_tol * abs_sums[c])) {
      std::ostringstream msg;
      msg.precision(3);
      msg << "face " << j + 1 << (comps[c] < 0 ? " value" : " derivative " + std::to_string(comps[c] + 1))
          << ": refinement difference " << out[c].error << " exceeds " << quad_.target_rel_tol << " x "
          << abs_sums[c];
      throw Error(ErrorCode::QuadratureNotConverged, msg.str());
    }
  }
  return out;
}

FaceIntegral NeumannProblem::face_integral(std::size_t j, std::span<const double> xi) const {
  require(j < data_.size(), ErrorCode::PreconditionViolation, "face_integral: face index out of range");
  check_point(xi, true);
  const int comp = -1;
  return integrate(j, xi, std::span<const int>(&comp, 1)).front();
}

FaceIntegral NeumannProblem::face_derivative(std::size_t j, std::size_t l, std::span<const double> xi) const {
  require(j < data_.size() && l < static_cast<std::size_t>(spec_.m), ErrorCode::PreconditionViolation,
          "face_derivative: index out of range");
  check_point(xi, false);
  const int comp = static_cast<int>(l);
  return integrate(j, xi, std::span<const int>(&comp, 1)).front();
}

NeumannProblem::PointValue NeumannProblem::evaluate(std::span<const double> xi) const {
  check_point(xi, true);
  PointValue pv;
  const int comp = -1;
  for (std::size_t j = 0; j < data_.size(); ++j) {
    const FaceIntegral f = integrate(j, xi, std::span<const int>(&comp, 1)).front();
    pv.u += f.value;
    pv.error += f.error;
    pv.contributions.push_back(f.value);
    pv.nodes.push_back(f.nodes);
  }
  return pv;
}

std::vector<FaceIntegral> NeumannProblem::gradient(std::span<const double> xi) const {
  check_point(xi, false);
  std::vector<int> comps;
  for (int l = 0; l < spec_.m; ++l) comps.push_back(l);
  std::vector<FaceIntegral> total(comps.size());
  for (std::size_t j = 0; j < data_.size(); ++j) {
    const auto part = integrate(j, xi, comps);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      total[c].value += part[c].value;
      total[c].error += part[c].error;
      total[c].nodes += part[c].nodes;
    }
  }
  return total;
}

FaceIntegral NeumannProblem::weighted_flux(std::span<const double> xi, std::size_t k) const {
  require(k < static_cast<std::size_t>(spec_.n), ErrorCode::PreconditionViolation,
          "weighted_flux: k must index a singular coordinate");
  check_point(xi, false);
  const int comp = static_cast<int>(k);
  FaceIntegral total;
  for (std::size_t j = 0; j < data_.size(); ++j) {
    const FaceIntegral f = integrate(j, xi, std::span<const int>(&comp, 1)).front();
    total.value += f.value;
    total.error += f.error;
    total.nodes += f.nodes;
  }
  const double w = std::pow(xi[k], 2 * spec_.alpha[k]);
  total.value *= w;
  total.error *= w;
  return total;
}

NeumannProblem::Frozen NeumannProblem::frozen(std::span<const double> anchor, int level) const {
  check_point(anchor, true);
  require(level >= -1 && level <= quad_.refinement_levels, ErrorCode::PreconditionViolation,
          "NeumannProblem::frozen: level out of range");
  Frozen fz;
  fz.owner_ = this;
  fz.level_ = level;
  for (std::size_t j = 0; j < data_.size(); ++j) {
    if (data_[j].is_zero())
      fz.rules_.emplace_back(std::nullopt);
    else
      fz.rules_.emplace_back(std::in_place, spec_, j, data_[j], anchor, quad_);
  }
  return fz;
}

double NeumannProblem::Frozen::u(std::span<const double> xi) const {
  owner_->check_point(xi, true);
  const int comp = -1;
  double total = 0.0;
  for (const auto& rule : rules_)
    if (rule) total += owner_->integrate_level(*rule, level_ < 0 ? rule->levels() - 1 : level_, xi, std::span<const int>(&comp, 1), nullptr)[0];
  return total;
}

std::vector<double> NeumannProblem::Frozen::gradient(std::span<const double> xi) const {
  owner_->check_point(xi, false);
  std::vector<int> comps;
  for (int l = 0; l < owner_->spec_.m; ++l) comps.push_back(l);
  std::vector<double> total(comps.size(), 0.0);
  for (const auto& rule : rules_) {
    if (!rule) continue;
    const auto part = owner_->integrate_level(*rule, level_ < 0 ? rule->levels() - 1 : level_, xi, comps, nullptr);
    for (std::size_t c = 0; c < comps.size(); ++c) total[c] += part[c];
  }
  return total;
}

SolutionField NeumannProblem::solve(const std::vector<Point>& points, unsigned jobs) const {
  const std::size_t count = points.size();
  const std::size_t faces = data_.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SolutionField field;
  field.points = points;
  field.values.assign(count, nan);
  field.contributions.assign(count, std::vector<double>(faces, nan));
  field.errors.assign(count, nan);
  field.failures.assign(count, std::nullopt);
  field.nodes.assign(count, std::vector<std::size_t>(faces, 0));
  field.seconds.assign(count, 0.0);

  auto work = [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    try {
      check_point(points[i], false);
      const PointValue pv = evaluate(points[i]);
      field.values[i] = pv.u;
      field.errors[i] = pv.error;
      field.contributions[i] = pv.contributions;
      field.nodes[i] = pv.nodes;
    } catch (const Error& e) {
      field.failures[i] = PointFailure{e.code(), e.what()};
    } catch (const std::exception& e) {
      field.failures[i] = PointFailure{ErrorCode::NonConvergence, e.what()};
    }
    field.seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return field;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) work(i);
    });
  for (auto& th : pool) th.join();
  return field;
}

FaceIntegral face_integral_Ij(std::size_t j, const BoundaryDatum& datum, std::span<const double> xi,
                              const DomainSpec& spec, const QuadratureSpec& quad) {
  require(datum.face() == j, ErrorCode::PreconditionViolation, "face_integral_Ij: datum lives on another face");
  const NeumannProblem problem(spec, {datum}, quad);
  return problem.face_integral(j, xi);
}

SolutionField solve_u(const std::vector<BoundaryDatum>& data, const std::vector<Point>& points, const DomainSpec& spec,
                      const QuadratureSpec& quad, unsigned jobs) {
  const NeumannProblem problem(spec, data, quad);
  return problem.solve(points, jobs);
}

FaceIntegral weighted_flux(const std::vector<BoundaryDatum>& data, std::span<const double> xi, std::size_t k,
                           const DomainSpec& spec, const QuadratureSpec& quad) {
  const NeumannProblem problem(spec, data, quad);
  return problem.weighted_flux(xi, k);
}

std::vector<double> off_face_flux_limit(const BoundaryDatum& datum, std::span<const double> base,
                                        std::span<const double> path, std::size_t l, std::size_t k,
                                        const DomainSpec& spec, const QuadratureSpec& quad) {
  require(l != k && l < static_cast<std::size_t>(spec.n) && k < static_cast<std::size_t>(spec.n),
          ErrorCode::PreconditionViolation, "off_face_flux_limit: need l != k, both singular coordinates");
  require(datum.face() == k, ErrorCode::PreconditionViolation, "off_face_flux_limit: datum must live on face k");
  const NeumannProblem problem(spec, {datum}, quad);
  std::vector<double> out;
  Point xi(base.begin(), base.end());
  for (double s : path) {
    xi.at(l) = s;
    out.push_back(std::pow(s, 2 * spec.alpha[l]) * problem.face_derivative(k, l, xi).value);
  }
  return out;
}

}  // namespace lauricella
