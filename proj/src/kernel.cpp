#include "lauricella/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lauricella/errors.hpp"

namespace lauricella {

namespace {

FAParams kernel_params(const DomainSpec& spec, double a) {
  FAParams p;
  p.a = a;
  for (double al : spec.alpha) {
    p.b.push_back(al);
    p.c.push_back(2 * al);
  }
  return p;
}

FAParams drop_slot(FAParams p, std::size_t k) {
  p.b.erase(p.b.begin() + static_cast<std::ptrdiff_t>(k));
  p.c.erase(p.c.begin() + static_cast<std::ptrdiff_t>(k));
  return p;
}

double beta_of(const DomainSpec& spec) { return (spec.m - 2) / 2.0 + spec.alpha_sum(); }

}  // namespace

void DomainSpec::validate() const {
  require(m > 2, ErrorCode::PreconditionViolation, "DomainSpec: m must be > 2");
  require(n >= 1 && n <= m, ErrorCode::PreconditionViolation, "DomainSpec: n must satisfy 1 <= n <= m");
  require(alpha.size() == static_cast<std::size_t>(n), ErrorCode::PreconditionViolation,
          "DomainSpec: alpha must have n entries");
  for (std::size_t j = 0; j < alpha.size(); ++j)
    require(alpha[j] > 0.0 && 2 * alpha[j] < 1.0, ErrorCode::PreconditionViolation,
            "DomainSpec: alpha[" + std::to_string(j) + "] must satisfy 0 < 2 alpha < 1");
}

double DomainSpec::alpha_sum() const {
  double s = 0.0;
  for (double a : alpha) s += a;
  return s;
}

double KernelConstants::gamma() const { return std::exp(log_gamma); }

KernelConstants kernel_constants(const DomainSpec& spec) {
  spec.validate();
  KernelConstants k;
  k.beta = beta_of(spec);
  k.log_gamma = (2 * k.beta - spec.m) * std::numbers::ln2 + ln_gamma(k.beta).log_abs -
                0.5 * spec.m * std::log(std::numbers::pi);
  for (double a : spec.alpha) k.log_gamma += ln_gamma(a).log_abs - ln_gamma(2 * a).log_abs;
  return k;
}

FundamentalSolution::FundamentalSolution(DomainSpec spec, EvalOptions opts)
    : spec_((spec.validate(), std::move(spec))),
      opts_(opts),
      constants_(kernel_constants(spec_)),
      base_(kernel_params(spec_, constants_.beta), opts_),
      raised_(kernel_params(spec_, constants_.beta + 1.0), opts_) {
  const FAParams raised_params = kernel_params(spec_, constants_.beta + 1.0);
  for (std::size_t i = 0; i < spec_.alpha.size(); ++i) {
    FAParams p = raised_params;
    p.b[i] += 1.0;
    p.c[i] += 1.0;
    raised_shift_.emplace_back(std::move(p), opts_);
  }
  if (spec_.n > 1) {
    const FAParams base_params = kernel_params(spec_, constants_.beta);
    for (std::size_t k = 0; k < spec_.alpha.size(); ++k) face_base_.emplace_back(drop_slot(base_params, k), opts_);
  }
}

double FundamentalSolution::squared_distance(std::span<const double> x, std::span<const double> xi) const {
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r2 += (x[i] - xi[i]) * (x[i] - xi[i]);
  return r2;
}

void FundamentalSolution::check_points(std::span<const double> x, std::span<const double> xi) const {
  const auto m = static_cast<std::size_t>(spec_.m);
  require(x.size() == m && xi.size() == m, ErrorCode::PreconditionViolation, "kernel: points must have m coordinates");
  double nx = 0.0, nxi = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < static_cast<std::size_t>(spec_.n))
      require(x[i] >= 0.0 && xi[i] >= 0.0, ErrorCode::OutsideDomain,
              "kernel: points must lie in the closed hyperoctant");
    nx += x[i] * x[i];
    nxi += xi[i] * xi[i];
  }
  const double r = std::sqrt(squared_distance(x, xi));
  require(r >= 1e-12 * (1.0 + std::sqrt(nx) + std::sqrt(nxi)), ErrorCode::CoincidentPoints,
          "kernel: x and xi coincide");
}

std::vector<double> FundamentalSolution::arguments(std::span<const double> x, std::span<const double> xi,
                                                   double r2) const {
  std::vector<double> sigma(static_cast<std::size_t>(spec_.n));
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const double prod = x[i] * xi[i];
    sigma[i] = prod == 0.0 ? 0.0 : -4.0 * prod / r2;
  }
  return sigma;
}

double FundamentalSolution::operator()(std::span<const double> x, std::span<const double> xi) const {
  check_points(x, xi);
  const double r2 = squared_distance(x, xi);
  const auto sigma = arguments(x, xi, r2);
  return std::exp(constants_.log_gamma - constants_.beta * std::log(r2)) * base_(sigma).value;
}

double FundamentalSolution::on_face(std::size_t k, std::span<const double> x_face, std::span<const double> xi) const {
  require(k < static_cast<std::size_t>(spec_.n), ErrorCode::PreconditionViolation, "q_face: face index out of range");
  check_points(x_face, xi);
  require(x_face[k] == 0.0, ErrorCode::PreconditionViolation, "q_face: point is not on the face x_k = 0");
  // r_k^2 = r^2 with x_k = 0, which is just r^2 at this point.
  const double rk2 = squared_distance(x_face, xi);
  const double prefactor = std::exp(constants_.log_gamma - constants_.beta * std::log(rk2));
  if (spec_.n == 1) return prefactor;
  std::vector<double> phi;
  for (std::size_t i = 0; i < static_cast<std::size_t>(spec_.n); ++i) {
    if (i == k) continue;
    const double prod = x_face[i] * xi[i];
    phi.push_back(prod == 0.0 ? 0.0 : -4.0 * prod / rk2);
  }
  return prefactor * face_base_[k](phi).value;
}

FundamentalSolution::GradientPieces FundamentalSolution::gradient_pieces(std::span<const double> x,
                                                                         std::span<const double> xi) const {
  check_points(x, xi);
  const double r2 = squared_distance(x, xi);
  const auto sigma = arguments(x, xi, r2);
  GradientPieces g;
  g.prefactor = 2 * constants_.beta * std::exp(constants_.log_gamma - (constants_.beta + 1.0) * std::log(r2));
  g.raised = raised_(sigma).value;
  return g;
}

double FundamentalSolution::raised_shifted(std::size_t i, std::span<const double> x,
                                           std::span<const double> xi) const {
  const double r2 = squared_distance(x, xi);
  return raised_shift_.at(i)(arguments(x, xi, r2)).value;
}

std::vector<double> FundamentalSolution::grad_xi(std::span<const double> x, std::span<const double> xi) const {
  const GradientPieces g = gradient_pieces(x, xi);
  const auto m = static_cast<std::size_t>(spec_.m);
  const auto n = static_cast<std::size_t>(spec_.n);
  std::vector<double> grad(m);
  for (std::size_t i = 0; i < m; ++i) {
    double bracket = (x[i] - xi[i]) * g.raised;
    if (i < n && x[i] != 0.0) bracket -= x[i] * raised_shifted(i, x, xi);
    grad[i] = g.prefactor * bracket;
  }
  return grad;
}

double q(std::span<const double> x, std::span<const double> xi, const DomainSpec& spec, const EvalOptions& opts) {
  return FundamentalSolution(spec, opts)(x, xi);
}

double q_face(std::size_t k, std::span<const double> x_face, std::span<const double> xi, const DomainSpec& spec,
              const EvalOptions& opts) {
  return FundamentalSolution(spec, opts).on_face(k, x_face, xi);
}

std::vector<double> grad_xi_q(std::span<const double> x, std::span<const double> xi, const DomainSpec& spec,
                              const EvalOptions& opts) {
  return FundamentalSolution(spec, opts).grad_xi(x, xi);
}

StencilResidual pde_residual_terms(const ScalarField& field, std::span<const double> p, const DomainSpec& spec,
                                   double h) {
  spec.validate();
  const auto m = static_cast<std::size_t>(spec.m);
  require(p.size() == m, ErrorCode::PreconditionViolation, "pde_residual: point must have m coordinates");
  require(h > 0.0, ErrorCode::PreconditionViolation, "pde_residual: step must be positive");
  for (std::size_t j = 0; j < static_cast<std::size_t>(spec.n); ++j)
    require(p[j] > 2 * h, ErrorCode::StencilOutOfDomain, "pde_residual: stencil crosses the face x_j = 0");

  std::vector<double> work(p.begin(), p.end());
  const double center = field(work);
  StencilResidual out;
  for (std::size_t i = 0; i < m; ++i) {
    work[i] = p[i] + h;
    const double up = field(work);
    work[i] = p[i] - h;
    const double down = field(work);
    work[i] = p[i];
    const double second = (up - 2 * center + down) / (h * h);
    out.residual += second;
    out.scale += std::abs(second);
    if (i < static_cast<std::size_t>(spec.n)) {
      const double first = 2 * spec.alpha[i] / p[i] * (up - down) / (2 * h);
      out.residual += first;
      out.scale += std::abs(first);
    }
  }
  return out;
}

double pde_residual(const ScalarField& field, std::span<const double> p, const DomainSpec& spec, double h) {
  return pde_residual_terms(field, p, spec, h).residual;
}

}  // namespace lauricella
