#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lauricella/gamma.hpp"
#include "lauricella/gauss_jacobi.hpp"

namespace lauricella {

/// Parameter triple (a; b_1..b_n; c_1..c_n) of the Lauricella function F_A^(n).
struct FAParams {
  double a = 0.0;
  std::vector<double> b;
  std::vector<double> c;

  std::size_t dimension() const { return b.size(); }

  /// Checks length(b) == length(c) >= 1 and that no c_i is a pole.
  void validate() const;

  /// Parameters (a+1; b + e_k; c + e_k).
  FAParams shifted(std::size_t k) const;
  /// Parameters (a+1; b; c).
  FAParams raised() const;
};

enum class EvalMethod { Series, IntegralRepresentation };

/// Which evaluation path lauricella_fa may take. `Auto` picks the series
/// inside the small simplex and the Euler integral otherwise.
enum class MethodPreference { Auto, Series, IntegralRepresentation };

struct EvalOptions {
  double rel_tol = 1e-15;
  std::size_t max_total_degree = 1000;
  std::size_t quadrature_order = 20;
  MethodPreference method = MethodPreference::Auto;
  /// Under Auto, all-nonpositive arguments with sum |x_i| at or above this
  /// switch to the integral representation.
  double series_radius = 0.5;

  void validate() const;
};

struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  bool converged = false;
  EvalMethod method = EvalMethod::Series;
};

std::string_view to_string(EvalMethod method);

/// Gauss 2F1(a, b; c; x) by its power series for |x| < 1. For x <= -1 the
/// value is obtained from the n = 1 Euler integral when 0 < b < c (or 0 < a < c).
SeriesResult gauss_2f1(double a, double b, double c, double x, const EvalOptions& opts = {});

/// Reusable evaluator of F_A^(n) for one parameter set.
///
/// The series is summed shell by shell in the total degree |k|: the shell sum
/// is the degree-K coefficient of a product of per-variable exponential
/// generating functions, so each shell costs O(nK). The Euler integral
///
///   prod_i Gamma(c_i)/(Gamma(b_i)Gamma(c_i-b_i)) *
///     int_[0,1]^n prod_i t_i^(b_i-1)(1-t_i)^(c_i-b_i-1) (1 - sum_i x_i t_i)^(-a) dt
///
/// is used for arguments x_i <= 0 and needs 0 < b_i < c_i. Every axis gets a
/// composite Gauss-Jacobi/Legendre rule graded geometrically toward t_i = 0
/// at the scale 1/|x_i|, so large negative arguments stay cheap.
///
/// Slots with x_i == 0 are dropped exactly, which gives the zero-slot
/// reduction F_A^(n)(..., 0, ...) = F_A^(n-1) for free. Slots with b_i == 0
/// are dropped the same way, whatever x_i is.
class LauricellaFA {
 public:
  LauricellaFA(FAParams params, EvalOptions opts = {});

  SeriesResult operator()(std::span<const double> x) const;
  SeriesResult series(std::span<const double> x) const;
  SeriesResult integral(std::span<const double> x) const;

  const FAParams& params() const { return params_; }
  const EvalOptions& options() const { return opts_; }
  bool integral_admissible() const { return integral_ok_; }

 private:
  struct AxisRules {
    QuadratureRule both;   // weight u^(b-1)(1-u)^(c-b-1) over [0,1]
    QuadratureRule left;   // weight u^(b-1)
    QuadratureRule right;  // weight v^(c-b-1), v = 1 - t
    double log_norm = 0.0; // ln[Gamma(c)/(Gamma(b)Gamma(c-b))]
  };

  std::vector<double> drop_trivial(std::span<const double> x) const;
  void build_axis_rule(std::size_t axis, double y, std::vector<double>& t, std::vector<double>& w) const;

  FAParams params_;
  EvalOptions opts_;
  bool integral_ok_ = false;
  QuadratureRule legendre_;
  std::vector<AxisRules> axes_;
};

SeriesResult lauricella_fa(const FAParams& params, std::span<const double> x, const EvalOptions& opts = {});

/// dF_A/dx_k via the differentiation formula: (a b_k / c_k) F_A(a+1, b_k; c_k; x).
double fa_partial(const FAParams& params, std::span<const double> x, std::size_t k, const EvalOptions& opts = {});

/// Relative residual of the contiguous relation
///   sum_k (b_k/c_k) x_k F_A(a+1, b_k; c_k; x) = F_A(a+1, b; c; x) - F_A(a, b; c; x),
/// i.e. |LHS - RHS| / max(1, |RHS|).
double fa_adjacent_residual(const FAParams& params, std::span<const double> x, const EvalOptions& opts = {});

/// Limit of eps^(-sum b) F_A(a, b; c; 1 - z_k(eps)/eps) as eps -> 0, with z0 = z(0):
///   Gamma(a - sum b)/Gamma(a) * prod_k Gamma(c_k) / (z0_k^b_k Gamma(c_k - b_k)).
double lemma1_closed_form(double a, std::span<const double> b, std::span<const double> c,
                          std::span<const double> z0);

/// Parameters of the octant integral
///   int_(0,inf)^n prod x_k^(p_k-1) dx / ( [sum (r_k x_k)^q_k]^t [1 + sum (r_k x_k)^q_k]^s ).
struct Lemma2Params {
  std::vector<double> p;
  std::vector<double> q;
  std::vector<double> r;
  double s = 1.0;
  double t = 0.0;

  std::size_t dimension() const { return p.size(); }
  /// sum p_k/q_k - t; must lie in (0, s).
  double effective_exponent() const;
  void validate() const;
};

/// Closed-form value of the Lemma2Params integral. The scale factors enter as
/// prod r_k^p_k, which is what the substitution y_k = r_k x_k produces.
double lemma2_closed_form(const Lemma2Params& params);

}  // namespace lauricella
