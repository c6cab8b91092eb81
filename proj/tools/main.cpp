#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "lauricella/errors.hpp"

using namespace lauricella;
using namespace lauricella::cli;

namespace {

// Options given on the command line; each overrides the config file.
struct Flags {
  std::string config;
  std::string output;
  std::string format;
  unsigned jobs = 1;
  bool profile = false;

  int m = 0, n = 0;
  std::string alpha;
  std::string transform;
  int base_order = 0, levels = 0;
  double quad_tol = 0.0;
  std::string method;
  double rel_tol = 0.0;
  std::string data;

  double a = 0.0, s = 0.0, t = 0.0, tol = 0.0;
  std::string b, c, z0, z_slope, eps, p, q, r;
  std::vector<std::string> x;
  std::string xi;
  std::vector<std::string> points;
  int face = 0;
  std::string suite;
  std::uint64_t seed = 0;
  bool runtime = false;
  std::string manifest;
  std::string lemma2_method;
  std::uint64_t budget = 0;
};

std::filesystem::path output_path(const std::string& path) {
  std::filesystem::path p(path);
  const char* dir = std::getenv("LAURICELLA_OUTPUT_DIR");
  if (dir && *dir && p.is_relative()) return std::filesystem::path(dir) / p;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lauricella F_A, the fundamental solution q and the explicit Neumann solution u"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "JSON config file; command-line options take precedence");
  app.add_option("-o,--output", f.output, "Output file ('-' for stdout); relative paths go to $LAURICELLA_OUTPUT_DIR");
  app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-j,--jobs", f.jobs, "Worker threads for batch operations")->check(CLI::PositiveNumber);
  app.add_flag("--profile", f.profile, "Add node counts and wall time per point");
  app.add_option("--m", f.m, "Dimension m");
  app.add_option("--n", f.n, "Number of singular coordinates n");
  app.add_option("--alpha", f.alpha, "alpha_1..alpha_n, comma separated");
  app.add_option("--transform", f.transform, "Far-field map: tangent or rational");
  app.add_option("--base-order", f.base_order, "Gauss nodes per panel");
  app.add_option("--levels", f.levels, "Refinement levels");
  app.add_option("--quad-tol", f.quad_tol, "Target relative tolerance of the face integrals");
  app.add_option("--method", f.method, "F_A evaluation path: auto, series or integral");
  app.add_option("--rel-tol", f.rel_tol, "F_A series tolerance");

  auto* fa = app.add_subcommand("eval-fa", "Evaluate F_A(a; b; c; x)");
  fa->add_option("--a", f.a, "a");
  fa->add_option("--b", f.b, "b_1..b_n");
  fa->add_option("--c", f.c, "c_1..c_n");
  fa->add_option("--x", f.x, "Argument vector (repeatable)");

  auto* kernel = app.add_subcommand("eval-kernel", "Evaluate q(x, xi) and its xi-gradient");
  kernel->add_option("--x", f.x, "Point x")->expected(1);
  kernel->add_option("--xi", f.xi, "Pole xi");

  auto* solve = app.add_subcommand("solve", "Evaluate u and the face contributions I_j at points");
  solve->add_option("--point", f.points, "Point xi (repeatable)");
  solve->add_option("--data", f.data, "Boundary data as a JSON array (replaces the config's data)");

  auto* flux = app.add_subcommand("flux", "Evaluate xi_k^(2 alpha_k) du/dxi_k at points");
  flux->add_option("--point", f.points, "Point xi (repeatable)");
  flux->add_option("--face", f.face, "Face k, numbered from 1");
  flux->add_option("--data", f.data, "Boundary data as a JSON array");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", f.suite, "default, extended or full");
  verify->add_option("--seed", f.seed, "Random seed");
  verify->add_flag("--runtime", f.runtime, "Include wall time in the report");
  verify->add_option("--manifest", f.manifest, "JSON file of tolerance overrides");

  auto* lemma1 = app.add_subcommand("lemma1", "Limit eps^(-sum b) F_A(a; b; c; 1 - z/eps) against its closed form");
  lemma1->add_option("--a", f.a, "a");
  lemma1->add_option("--b", f.b, "b_1..b_n");
  lemma1->add_option("--c", f.c, "c_1..c_n");
  lemma1->add_option("--z0", f.z0, "z_k(0)");
  lemma1->add_option("--z-slope", f.z_slope, "z_k(eps) = z0_k + slope_k eps");
  lemma1->add_option("--eps", f.eps, "Decreasing eps sequence");
  lemma1->add_option("--tol", f.tol, "Tolerance");

  auto* lemma2 = app.add_subcommand("lemma2", "Octant integral against its closed form");
  lemma2->add_option("--p", f.p, "p_1..p_n");
  lemma2->add_option("--q", f.q, "q_1..q_n");
  lemma2->add_option("--r", f.r, "r_1..r_n");
  lemma2->add_option("--s", f.s, "s");
  lemma2->add_option("--t", f.t, "t");
  lemma2->add_option("--method", f.lemma2_method, "nested or qmc")->check(CLI::IsMember({"nested", "qmc"}));
  lemma2->add_option("--budget", f.budget, "Evaluation budget or QMC points");
  lemma2->add_option("--tol", f.tol, "Tolerance");
  lemma2->add_option("--seed", f.seed, "QMC shift seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  RunConfig cfg;
  auto given = [&](const char* name) {
    for (const CLI::App* sc : {&app, app.get_subcommands().front()})
      if (sc->get_option_no_throw(name) && sc->count(name) > 0) return true;
    return false;
  };
  try {
    if (!f.config.empty()) {
      try {
        apply_json(load_json_file(f.config), cfg);
      } catch (const ConfigError& e) {
        throw ConfigError(e.path().empty() || e.path() == f.config ? f.config : f.config + ": " + e.path(), e.message());
      }
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (given("--output")) cfg.output = f.output;
    if (given("--format")) cfg.format = parse_format(f.format, "--format");
    if (given("--jobs")) cfg.jobs = f.jobs;
    if (f.profile) cfg.profile = true;
    if (given("--m")) cfg.domain.m = f.m;
    if (given("--n")) cfg.domain.n = f.n;
    if (given("--alpha")) cfg.domain.alpha = parse_list(f.alpha, "--alpha");
    if (given("--transform")) {
      nlohmann::json q{{"quadrature", {{"transform", f.transform}}}};
      apply_json(q, cfg);
    }
    if (given("--base-order")) cfg.quadrature.base_order = f.base_order;
    if (given("--levels")) cfg.quadrature.refinement_levels = f.levels;
    if (given("--quad-tol")) cfg.quadrature.target_rel_tol = f.quad_tol;
    if (given("--method") && cfg.command != "lemma2") apply_json(nlohmann::json{{"eval", {{"method", f.method}}}}, cfg);
    if (given("--rel-tol")) cfg.eval.rel_tol = f.rel_tol;
    if (given("--data")) {
      try {
        apply_json(nlohmann::json{{"data", nlohmann::json::parse(f.data)}}, cfg);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("--data", e.what());
      }
    }
    if (given("--point")) {
      cfg.points.clear();
      for (std::size_t i = 0; i < f.points.size(); ++i)
        cfg.points.push_back(parse_list(f.points[i], "--point[" + std::to_string(i) + "]"));
    }
    if (given("--face")) {
      if (f.face < 1) throw ConfigError("--face", "faces are numbered from 1");
      cfg.flux_face = static_cast<std::size_t>(f.face - 1);
    }

    if (cfg.command == "eval-fa") {
      if (given("--a")) cfg.fa.params.a = f.a;
      if (given("--b")) cfg.fa.params.b = parse_list(f.b, "--b");
      if (given("--c")) cfg.fa.params.c = parse_list(f.c, "--c");
      if (given("--x")) {
        cfg.fa.x.clear();
        for (std::size_t i = 0; i < f.x.size(); ++i) cfg.fa.x.push_back(parse_list(f.x[i], "--x[" + std::to_string(i) + "]"));
      }
    } else if (cfg.command == "eval-kernel") {
      if (given("--x")) cfg.kernel.x = {parse_list(f.x.front(), "--x")};
      if (given("--xi")) cfg.kernel.xi = {parse_list(f.xi, "--xi")};
    } else if (cfg.command == "verify") {
      if (given("--suite")) cfg.verify.suite = f.suite;
      if (given("--seed")) cfg.verify.seed = f.seed;
      if (f.runtime) cfg.verify.runtime = true;
      if (given("--manifest")) apply_tolerances(load_json_file(f.manifest), cfg.verify.tolerances, f.manifest);
    } else if (cfg.command == "lemma1") {
      auto& l = cfg.lemma1;
      if (given("--a")) l.a = f.a;
      if (given("--b")) l.b = parse_list(f.b, "--b");
      if (given("--c")) l.c = parse_list(f.c, "--c");
      if (given("--z0")) l.z0 = parse_list(f.z0, "--z0");
      if (given("--z-slope")) l.z_slope = parse_list(f.z_slope, "--z-slope");
      if (given("--eps")) l.eps = parse_list(f.eps, "--eps");
      if (given("--tol")) l.tolerance = f.tol;
    } else if (cfg.command == "lemma2") {
      auto& l = cfg.lemma2;
      if (given("--p")) l.params.p = parse_list(f.p, "--p");
      if (given("--q")) l.params.q = parse_list(f.q, "--q");
      if (given("--r")) l.params.r = parse_list(f.r, "--r");
      if (given("--s")) l.params.s = f.s;
      if (given("--t")) l.params.t = f.t;
      if (given("--method")) l.method = f.lemma2_method == "qmc" ? Lemma2Method::QMC : Lemma2Method::Nested;
      if (given("--budget")) l.budget = f.budget;
      if (given("--tol")) l.tolerance = f.tol;
      if (given("--seed")) cfg.verify.seed = f.seed;
    }
    validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (cfg.output != "-") {
      const auto path = output_path(cfg.output);
      file.open(path);
      if (!file) {
        std::cerr << "cannot open output file " << path << "\n";
        return 1;
      }
      out = &file;
    }
    return run_command(cfg, *out, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? 1 : 2;
  }
}
