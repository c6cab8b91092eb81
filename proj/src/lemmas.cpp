#include <cmath>
#include <string>

#include "lauricella/errors.hpp"
#include "lauricella/hyperfun.hpp"

namespace lauricella {

double lemma1_closed_form(double a, std::span<const double> b, std::span<const double> c,
                          std::span<const double> z0) {
  const std::size_t n = b.size();
  require(n >= 1 && c.size() == n && z0.size() == n, ErrorCode::PreconditionViolation,
          "lemma1_closed_form: b, c and z0 must have equal length >= 1");
  double bsum = 0.0;
  for (double v : b) bsum += v;
  require(a > bsum, ErrorCode::PreconditionViolation, "lemma1_closed_form: requires a > sum b_k");

  double log_mag = 0.0;
  int sign = 1;
  auto accumulate = [&](const LogGamma& g, int power) {
    log_mag += power * g.log_abs;
    sign *= g.sign;
  };
  accumulate(ln_gamma(a - bsum), 1);
  accumulate(ln_gamma(a), -1);
  for (std::size_t k = 0; k < n; ++k) {
    require(c[k] > b[k], ErrorCode::PreconditionViolation,
            "lemma1_closed_form: requires c_k > b_k (k = " + std::to_string(k + 1) + ")");
    require(!is_nonpositive_integer(c[k]), ErrorCode::ParameterPole, "lemma1_closed_form: c_k is a pole");
    require(z0[k] != 0.0, ErrorCode::PreconditionViolation, "lemma1_closed_form: z0_k must be nonzero");
    accumulate(ln_gamma(c[k]), 1);
    accumulate(ln_gamma(c[k] - b[k]), -1);
    if (z0[k] > 0.0) {
      log_mag -= b[k] * std::log(z0[k]);
    } else {
      require(b[k] == std::round(b[k]), ErrorCode::PreconditionViolation,
              "lemma1_closed_form: negative z0_k needs an integer b_k");
      log_mag -= b[k] * std::log(-z0[k]);
      if (static_cast<long long>(std::round(b[k])) % 2 != 0) sign = -sign;
    }
  }
  return sign * std::exp(log_mag);
}

double Lemma2Params::effective_exponent() const {
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += p[k] / q[k];
  return sum - t;
}

void Lemma2Params::validate() const {
  require(!p.empty() && q.size() == p.size() && r.size() == p.size(), ErrorCode::PreconditionViolation,
          "Lemma2Params: p, q, r must have equal length >= 1");
  for (std::size_t k = 0; k < p.size(); ++k)
    require(p[k] > 0.0 && q[k] > 0.0 && r[k] > 0.0, ErrorCode::PreconditionViolation,
            "Lemma2Params: p_k, q_k, r_k must be positive");
  require(s > 0.0, ErrorCode::PreconditionViolation, "Lemma2Params: s must be positive");
  const double e = effective_exponent();
  require(e > 0.0 && e < s, ErrorCode::PreconditionViolation,
          "Lemma2Params: requires 0 < sum p_k/q_k - t < s");
}

double lemma2_closed_form(const Lemma2Params& params) {
  params.validate();
  double ratio_sum = 0.0;
  double log_value = 0.0;
  for (std::size_t k = 0; k < params.dimension(); ++k) {
    const double ratio = params.p[k] / params.q[k];
    ratio_sum += ratio;
    log_value += ln_gamma(ratio).log_abs;
    log_value -= std::log(params.q[k]) + params.p[k] * std::log(params.r[k]);
  }
  log_value += ln_gamma(ratio_sum - params.t).log_abs;
  log_value += ln_gamma(params.s + params.t - ratio_sum).log_abs;
  log_value -= ln_gamma(ratio_sum).log_abs;
  log_value -= ln_gamma(params.s).log_abs;
  return std::exp(log_value);
}

}  // namespace lauricella
