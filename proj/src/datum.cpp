#include "lauricella/datum.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "lauricella/errors.hpp"

namespace lauricella {

namespace {

constexpr double kCertifyRadius = 1e3;
constexpr double kGaussianCut = 8.5;  // exp(-8.5^2/2) ~ 2e-16

double dist2(std::span<const double> x, const std::vector<double>& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - (i < c.size() ? c[i] : 0.0);
    s += d * d;
  }
  return s;
}

bool is_half_axis(const DomainSpec& spec, std::size_t face, std::size_t a) {
  const std::size_t g = a < face ? a : a + 1;
  return g < static_cast<std::size_t>(spec.n);
}

// Sample points for the certificate: rays through the origin along the
// coordinate axes, the diagonals and a fixed set of pseudo-random directions,
// all restricted to the closed face (half axes non-negative).
std::vector<std::vector<double>> certificate_samples(const DomainSpec& spec, std::size_t face) {
  const std::size_t d = static_cast<std::size_t>(spec.m) - 1;
  std::vector<std::vector<double>> dirs;
  for (std::size_t a = 0; a < d; ++a) {
    std::vector<double> e(d, 0.0);
    e[a] = 1.0;
    dirs.push_back(e);
    if (!is_half_axis(spec, face, a)) {
      e[a] = -1.0;
      dirs.push_back(e);
    }
  }
  std::vector<double> diag(d, 1.0 / std::sqrt(static_cast<double>(d)));
  dirs.push_back(diag);
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 48; ++i) {
    std::vector<double> v(d);
    double len = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      v[a] = normal(rng);
      if (is_half_axis(spec, face, a)) v[a] = std::abs(v[a]);
      len += v[a] * v[a];
    }
    len = std::sqrt(len);
    for (double& x : v) x /= len;
    dirs.push_back(v);
  }

  std::vector<double> radii{0.0};
  const int steps = 240;
  for (int i = 0; i <= steps; ++i) radii.push_back(1e-3 * std::pow(kCertifyRadius / 1e-3, double(i) / steps));

  std::vector<std::vector<double>> pts;
  for (const auto& dir : dirs)
    for (double r : radii) {
      std::vector<double> p(d);
      for (std::size_t a = 0; a < d; ++a) p[a] = r * dir[a];
      pts.push_back(std::move(p));
    }
  return pts;
}

double envelope(const DomainSpec& spec, std::size_t face, double eps, std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  const double p = 1.0 - 2.0 * spec.alpha[face] + eps;
  return std::pow(1.0 + s, -0.5 * p);
}

double interpolate(const TabulatedGrid& g, std::span<const double> x) {
  const std::size_t d = g.axes.size();
  std::vector<std::size_t> lo(d);
  std::vector<double> frac(d);
  for (std::size_t a = 0; a < d; ++a) {
    const auto& ax = g.axes[a];
    if (x[a] < ax.front() || x[a] > ax.back()) return 0.0;
    auto it = std::upper_bound(ax.begin(), ax.end(), x[a]);
    std::size_t i = static_cast<std::size_t>(it - ax.begin());
    i = std::min(std::max<std::size_t>(i, 1), ax.size() - 1) - 1;
    lo[a] = i;
    frac[a] = (x[a] - ax[i]) / (ax[i + 1] - ax[i]);
  }
  double acc = 0.0;
  for (std::size_t corner = 0; corner < (std::size_t{1} << d); ++corner) {
    double w = 1.0;
    std::size_t flat = 0;
    for (std::size_t a = 0; a < d; ++a) {
      const bool up = (corner >> a) & 1U;
      w *= up ? frac[a] : 1.0 - frac[a];
      flat = flat * g.axes[a].size() + lo[a] + (up ? 1 : 0);
    }
    if (w != 0.0) acc += w * g.values[flat];
  }
  return acc;
}

}  // namespace

std::string_view to_string(DatumFamily family) {
  switch (family) {
    case DatumFamily::Zero: return "zero";
    case DatumFamily::Algebraic: return "algebraic";
    case DatumFamily::Gaussian: return "gaussian";
    case DatumFamily::CompactBump: return "compact_bump";
    case DatumFamily::Tabulated: return "tabulated";
    case DatumFamily::Custom: return "custom";
  }
  return "unknown";
}

BoundaryDatum BoundaryDatum::zero(std::size_t face) {
  BoundaryDatum d;
  d.face_ = face;
  return d;
}

BoundaryDatum BoundaryDatum::algebraic(std::size_t face, double amplitude, double exponent,
                                       std::vector<double> center) {
  require(exponent > 0.0, ErrorCode::PreconditionViolation, "algebraic datum: exponent must be positive");
  BoundaryDatum d;
  d.face_ = face;
  d.family_ = DatumFamily::Algebraic;
  d.amplitude_ = amplitude;
  d.exponent_ = exponent;
  d.center_ = std::move(center);
  d.bound_c_ = std::abs(amplitude);
  return d;
}

BoundaryDatum BoundaryDatum::bound_matching(std::size_t face, const DomainSpec& spec, double amplitude, double eps) {
  spec.validate();
  require(face < static_cast<std::size_t>(spec.n), ErrorCode::PreconditionViolation,
          "bound_matching datum: face index out of range");
  require(eps > 0.0, ErrorCode::PreconditionViolation, "bound_matching datum: eps must be positive");
  BoundaryDatum d = algebraic(face, amplitude, 1.0 - 2.0 * spec.alpha[face] + eps,
                              std::vector<double>(static_cast<std::size_t>(spec.m) - 1, 0.0));
  d.bound_c_ = std::abs(amplitude);
  d.bound_eps_ = eps;
  return d;
}

BoundaryDatum BoundaryDatum::gaussian(std::size_t face, double amplitude, std::vector<double> center, double width) {
  require(width > 0.0, ErrorCode::PreconditionViolation, "gaussian datum: width must be positive");
  BoundaryDatum d;
  d.face_ = face;
  d.family_ = DatumFamily::Gaussian;
  d.amplitude_ = amplitude;
  d.center_ = std::move(center);
  d.width_ = width;
  return d;
}

BoundaryDatum BoundaryDatum::compact_bump(std::size_t face, double amplitude, std::vector<double> center,
                                          double radius) {
  require(radius > 0.0, ErrorCode::PreconditionViolation, "compact bump datum: radius must be positive");
  BoundaryDatum d;
  d.face_ = face;
  d.family_ = DatumFamily::CompactBump;
  d.amplitude_ = amplitude;
  d.center_ = std::move(center);
  d.width_ = radius;
  return d;
}

BoundaryDatum BoundaryDatum::tabulated(std::size_t face, TabulatedGrid grid, double bound_c, double bound_eps) {
  std::size_t total = 1;
  for (const auto& ax : grid.axes) {
    require(ax.size() >= 2, ErrorCode::PreconditionViolation, "tabulated datum: every axis needs >= 2 points");
    require(std::is_sorted(ax.begin(), ax.end()) && std::adjacent_find(ax.begin(), ax.end()) == ax.end(),
            ErrorCode::PreconditionViolation, "tabulated datum: axis coordinates must be strictly increasing");
    total *= ax.size();
  }
  require(!grid.axes.empty() && grid.values.size() == total, ErrorCode::PreconditionViolation,
          "tabulated datum: value count does not match the grid");
  BoundaryDatum d;
  d.face_ = face;
  d.family_ = DatumFamily::Tabulated;
  d.amplitude_ = 1.0;
  d.grid_ = std::move(grid);
  return d.with_bound(bound_c, bound_eps);
}

BoundaryDatum BoundaryDatum::custom(std::size_t face, CustomShape shape, double bound_c, double bound_eps) {
  require(static_cast<bool>(shape.value), ErrorCode::PreconditionViolation, "custom datum: missing function");
  require(!shape.support.empty() || shape.decay > 0.0, ErrorCode::PreconditionViolation,
          "custom datum: unbounded support needs a positive decay rate");
  BoundaryDatum d;
  d.face_ = face;
  d.family_ = DatumFamily::Custom;
  d.amplitude_ = 1.0;
  d.custom_ = std::move(shape);
  return d.with_bound(bound_c, bound_eps);
}

BoundaryDatum BoundaryDatum::with_bound(double c, double eps) const {
  require(c > 0.0 && eps > 0.0, ErrorCode::PreconditionViolation, "datum bound: c and eps must be positive");
  BoundaryDatum d = *this;
  d.bound_c_ = c;
  d.bound_eps_ = eps;
  return d;
}

double BoundaryDatum::operator()(std::span<const double> x) const {
  switch (family_) {
    case DatumFamily::Zero:
      return 0.0;
    case DatumFamily::Algebraic:
      return amplitude_ * std::pow(1.0 + dist2(x, center_), -0.5 * exponent_);
    case DatumFamily::Gaussian: {
      const double t = dist2(x, center_) / (width_ * width_);
      return t > kGaussianCut * kGaussianCut ? 0.0 : amplitude_ * std::exp(-0.5 * t);
    }
    case DatumFamily::CompactBump: {
      const double t = dist2(x, center_) / (width_ * width_);
      return t >= 1.0 ? 0.0 : amplitude_ * std::exp(1.0 - 1.0 / (1.0 - t));
    }
    case DatumFamily::Tabulated:
      return interpolate(grid_, x);
    case DatumFamily::Custom:
      return custom_.value(x);
  }
  return 0.0;
}

double BoundaryDatum::envelope_ratio_max(const DomainSpec& spec) const {
  double worst = 0.0;
  auto visit = [&](std::span<const double> p) {
    worst = std::max(worst, std::abs((*this)(p)) / envelope(spec, face_, bound_eps_, p));
  };
  for (const auto& p : certificate_samples(spec, face_)) visit(p);
  for (const Focus& f : foci()) visit(f.center);
  return worst;
}

BoundaryDatum BoundaryDatum::with_fitted_bound(const DomainSpec& spec, double eps) const {
  BoundaryDatum d = with_bound(1.0, eps);
  const double worst = d.envelope_ratio_max(spec);
  d.bound_c_ = worst > 0.0 ? 1.01 * worst : 1.0;
  return d;
}

void BoundaryDatum::certify(const DomainSpec& spec) const {
  spec.validate();
  require(face_ < static_cast<std::size_t>(spec.n), ErrorCode::PreconditionViolation,
          "datum: face index " + std::to_string(face_ + 1) + " exceeds n");
  const std::size_t d = static_cast<std::size_t>(spec.m) - 1;
  if (!center_.empty() || family_ == DatumFamily::Algebraic || family_ == DatumFamily::Gaussian ||
      family_ == DatumFamily::CompactBump)
    require(center_.size() == d, ErrorCode::PreconditionViolation,
            "datum: center must have m-1 = " + std::to_string(d) + " coordinates");
  if (family_ == DatumFamily::Tabulated)
    require(grid_.axes.size() == d, ErrorCode::PreconditionViolation, "tabulated datum: grid must have m-1 axes");
  if (family_ == DatumFamily::Custom && !custom_.support.empty())
    require(custom_.support.size() == d, ErrorCode::PreconditionViolation,
            "custom datum: support must have m-1 intervals");
  if (is_zero()) return;
  const double worst = envelope_ratio_max(spec);
  require(worst <= bound_c_ * (1.0 + 1e-12), ErrorCode::UncertifiedDatum,
          "datum on face " + std::to_string(face_ + 1) + " exceeds its bound: max |nu|/envelope = " +
              std::to_string(worst) + " > c = " + std::to_string(bound_c_));
}

std::vector<Focus> BoundaryDatum::foci() const {
  switch (family_) {
    case DatumFamily::Zero:
      return {};
    case DatumFamily::Algebraic:
      return {Focus{center_, 1.0}};
    case DatumFamily::Gaussian:
      return {Focus{center_, width_}};
    case DatumFamily::CompactBump:
      return {Focus{center_, 0.5 * width_}};
    case DatumFamily::Tabulated: {
      Focus f;
      double scale = 0.0;
      for (const auto& ax : grid_.axes) {
        f.center.push_back(0.5 * (ax.front() + ax.back()));
        scale = std::max(scale, 0.5 * (ax.back() - ax.front()));
      }
      f.scale = scale;
      return {f};
    }
    case DatumFamily::Custom:
      return custom_.foci;
  }
  return {};
}

std::optional<std::vector<std::pair<double, double>>> BoundaryDatum::support() const {
  std::vector<std::pair<double, double>> box;
  switch (family_) {
    case DatumFamily::Gaussian:
    case DatumFamily::CompactBump: {
      const double half = family_ == DatumFamily::Gaussian ? kGaussianCut * width_ : width_;
      for (double c : center_) box.emplace_back(c - half, c + half);
      return box;
    }
    case DatumFamily::Tabulated:
      for (const auto& ax : grid_.axes) box.emplace_back(ax.front(), ax.back());
      return box;
    case DatumFamily::Custom:
      if (custom_.support.empty()) return std::nullopt;
      return custom_.support;
    default:
      return std::nullopt;
  }
}

std::vector<std::vector<double>> BoundaryDatum::axis_breaks() const {
  if (family_ == DatumFamily::Tabulated) return grid_.axes;
  return {};
}

double BoundaryDatum::decay_exponent(const DomainSpec& spec) const {
  switch (family_) {
    case DatumFamily::Algebraic:
      return exponent_;
    case DatumFamily::Custom:
      return custom_.decay;
    default:
      return 1.0 - 2.0 * spec.alpha[face_] + bound_eps_;
  }
}

}  // namespace lauricella
