#pragma once

#include <cstdint>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include "lauricella/hyperfun.hpp"
#include "lauricella/kernel.hpp"

namespace lauricella {

/// One numerical check. passed <=> |observed - expected| <= tolerance * max(1, |expected|).
struct CheckReport {
  std::string name;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double runtime = 0.0;  ///< seconds
  std::string note;
};

CheckReport make_report(std::string name, double observed, double expected, double tolerance, std::string note = {});
/// Report for a check that threw; observed is NaN and the note holds the error.
CheckReport failed_report(std::string name, double tolerance, const std::exception& error);

/// Named tolerances of a suite. Every check reads its tolerance from here, so
/// a manifest file can tighten or loosen them without recompiling.
class Tolerances {
 public:
  static Tolerances defaults();

  double get(const std::string& key) const;
  void set(const std::string& key, double value);
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

enum class Lemma2Method { Nested, QMC };

/// Integrates the octant integral of Lemma2Params numerically and compares it
/// with lemma2_closed_form. Nested (n <= 2) runs tanh-sinh on every axis after
/// x = u / (1 - u); `budget` caps integrand evaluations. QMC (n <= 4) uses
/// `budget` shifted Halton points with x_k = (u / (1 - u))^(1/p_k) / r_k; the
/// shift comes from `seed`.
CheckReport check_lemma2_numeric(const Lemma2Params& params, Lemma2Method method, std::uint64_t budget,
                                 double tolerance, std::uint64_t seed = 0);

/// G(eps) = eps^(-sum b) F_A(a; b; c; 1 - z(eps)/eps) with z_k(eps) = z0_k + z_slope_k eps
/// (z_slope empty means constant z). The last two entries of eps_sequence are
/// combined by Richardson extrapolation with exponent min(1, a - sum b).
CheckReport check_lemma1_limit(double a, const std::vector<double>& b, const std::vector<double>& c,
                               const std::vector<double>& z0, const std::vector<double>& eps_sequence,
                               double tolerance, const std::vector<double>& z_slope = {});

/// Finite-difference checks of q: residual at h = 1e-3 and its order between
/// h = 0.02 and 0.01 at `samples` seeded random points, decay of
/// |dq/dx_k| / |grad q| as x_k = 1e-1, 1e-2, 1e-3, and symmetry in (x, xi).
std::vector<CheckReport> check_fundamental_solution(const DomainSpec& spec, int samples, std::uint64_t seed,
                                                    const Tolerances& tol = Tolerances::defaults());

/// Built-in scenarios: zero31, bump31, zero42, algebraic42.
std::vector<std::string> neumann_scenarios();

/// Flux recovery, off-face vanishing (n >= 2), decay along a ray and the
/// residual of u on a coarse grid. A sub-check that throws becomes a failed
/// report; the others still run.
std::vector<CheckReport> check_neumann_end_to_end(const std::string& scenario,
                                                  const Tolerances& tol = Tolerances::defaults());

/// Scenarios: zero31, analytic31 (u = x_1^(1 - 2 alpha)), bump31.
std::vector<std::string> energy_scenarios();

/// Compares int_(D_R) x_1^(2 alpha) |grad u|^2 dx with the hemisphere term
/// int x_1^(2 alpha) u du/dN dS minus the face term int u nu dx~ on the half
/// ball D_R, m = 3 and n = 1. Observed is the relative mismatch of the two
/// sides at the finer of two grids; throws GridTooCoarse if either side moves
/// by more than half the tolerance between the grids.
CheckReport check_energy_identity(const std::string& scenario, double R, const Tolerances& tol = Tolerances::defaults());

/// Suites: "default" (everything except the energy identity), "extended"
/// (energy identity only) and "full". Reports are sorted by name.
std::vector<std::string> suite_names();
std::vector<CheckReport> run_suite(const std::string& suite, std::uint64_t seed, unsigned jobs = 1,
                                   const Tolerances& tol = Tolerances::defaults());

/// One JSON object per line; runtime only when asked for, so that reports of
/// identical runs are byte-identical.
std::string report_json_line(const CheckReport& report, std::uint64_t seed, bool with_runtime);
std::string summary_table(const std::vector<CheckReport>& reports);

}  // namespace lauricella
