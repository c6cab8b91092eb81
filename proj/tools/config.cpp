#include "config.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "lauricella/errors.hpp"

namespace lauricella::cli {

namespace {

using nlohmann::json;

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(at(path, it.key()), "unknown field");
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<std::int64_t>();
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
  return j.get<bool>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at(path, i)));
  return out;
}

std::vector<std::vector<double>> rows(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of arrays");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(numbers(j[i], at(path, i)));
  return out;
}

template <class F>
void wrap(const std::string& path, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

TailTransform parse_transform(const std::string& s, const std::string& path) {
  if (s == "tangent") return TailTransform::TangentMap;
  if (s == "rational") return TailTransform::RationalMap;
  throw ConfigError(path, "expected \"tangent\" or \"rational\"");
}

MethodPreference parse_method(const std::string& s, const std::string& path) {
  if (s == "auto") return MethodPreference::Auto;
  if (s == "series") return MethodPreference::Series;
  if (s == "integral") return MethodPreference::IntegralRepresentation;
  throw ConfigError(path, "expected \"auto\", \"series\" or \"integral\"");
}

BoundaryDatum parse_datum(const json& j, const std::string& path, const DomainSpec& spec) {
  only_keys(j, path,
            {"face", "family", "amplitude", "exponent", "center", "width", "radius", "eps", "axes", "values", "bound",
             "fit_eps"});
  if (!j.contains("face")) throw ConfigError(at(path, "face"), "missing");
  if (!j.contains("family")) throw ConfigError(at(path, "family"), "missing");
  const std::int64_t face1 = integer(j["face"], at(path, "face"));
  if (face1 < 1 || face1 > spec.n) throw ConfigError(at(path, "face"), "must lie in 1..n");
  const auto face = static_cast<std::size_t>(face1 - 1);
  const std::string family = text(j["family"], at(path, "family"));
  const std::size_t dim = static_cast<std::size_t>(spec.m) - 1;

  auto get = [&](const char* key, double fallback) {
    return j.contains(key) ? number(j[key], at(path, key)) : fallback;
  };
  auto center = [&] {
    if (!j.contains("center")) return std::vector<double>(dim, 0.0);
    auto c = numbers(j["center"], at(path, "center"));
    if (c.size() != dim) throw ConfigError(at(path, "center"), "needs m - 1 = " + std::to_string(dim) + " entries");
    return c;
  };

  BoundaryDatum d = BoundaryDatum::zero(face);
  bool analytic = true;
  wrap(path, [&] {
    if (family == "zero") {
      analytic = false;
    } else if (family == "algebraic") {
      d = BoundaryDatum::algebraic(face, get("amplitude", 1.0), get("exponent", 1.0), center());
    } else if (family == "bound_matching") {
      d = BoundaryDatum::bound_matching(face, spec, get("amplitude", 1.0), get("eps", 0.5));
      analytic = false;
    } else if (family == "gaussian") {
      d = BoundaryDatum::gaussian(face, get("amplitude", 1.0), center(), get("width", 1.0));
    } else if (family == "compact_bump") {
      d = BoundaryDatum::compact_bump(face, get("amplitude", 1.0), center(), get("radius", 1.0));
    } else if (family == "tabulated") {
      if (!j.contains("axes") || !j.contains("values")) throw ConfigError(path, "tabulated data need axes and values");
      TabulatedGrid grid{rows(j["axes"], at(path, "axes")), numbers(j["values"], at(path, "values"))};
      d = BoundaryDatum::tabulated(face, std::move(grid), 1.0, 0.5);
    } else {
      throw ConfigError(at(path, "family"),
                        "unknown family '" + family +
                            "' (zero, algebraic, bound_matching, gaussian, compact_bump, tabulated)");
    }
  });

  if (j.contains("bound")) {
    const std::string bp = at(path, "bound");
    only_keys(j["bound"], bp, {"c", "eps"});
    const double c = j["bound"].contains("c") ? number(j["bound"]["c"], at(bp, "c")) : d.bound_c();
    const double eps = j["bound"].contains("eps") ? number(j["bound"]["eps"], at(bp, "eps")) : d.bound_eps();
    d = d.with_bound(c, eps);
  } else if (analytic || j.contains("fit_eps")) {
    // Without an explicit bound the constant is fitted to the samples.
    const double eps = j.contains("fit_eps") ? number(j["fit_eps"], at(path, "fit_eps")) : 0.5;
    wrap(path, [&] { d = d.with_fitted_bound(spec, eps); });
  }
  wrap(path, [&] { d.certify(spec); });
  return d;
}

}  // namespace

std::vector<double> parse_list(const std::string& s, const std::string& path) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    std::size_t a = pos, b = end;
    while (a < b && s[a] == ' ') ++a;
    while (b > a && s[b - 1] == ' ') --b;
    double v = 0.0;
    const auto res = std::from_chars(s.data() + a, s.data() + b, v);
    if (a == b || res.ec != std::errc() || res.ptr != s.data() + b)
      throw ConfigError(path, "cannot parse '" + s.substr(pos, end - pos) + "' as a number");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

Format parse_format(const std::string& s, const std::string& path) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ConfigError(path, "expected \"csv\" or \"json\"");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, e.what());
  }
}

void apply_tolerances(const json& doc, Tolerances& tol, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path, "expected an object of named tolerances");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string p = at(path, it.key());
    const double v = number(it.value(), p);
    wrap(p, [&] { tol.set(it.key(), v); });
  }
}

void apply_json(const json& doc, RunConfig& cfg) {
  only_keys(doc, "", {"command", "domain", "data", "quadrature", "eval", "output", "jobs", "profile", "points", "flux",
                      "fa", "kernel", "lemma1", "lemma2", "verify"});
  if (doc.contains("command")) cfg.command = text(doc["command"], "command");
  if (doc.contains("domain")) {
    const json& d = doc["domain"];
    only_keys(d, "domain", {"m", "n", "alpha"});
    if (d.contains("m")) cfg.domain.m = static_cast<int>(integer(d["m"], "domain.m"));
    if (d.contains("n")) cfg.domain.n = static_cast<int>(integer(d["n"], "domain.n"));
    if (d.contains("alpha")) cfg.domain.alpha = numbers(d["alpha"], "domain.alpha");
  }
  if (doc.contains("data")) {
    if (!doc["data"].is_array()) throw ConfigError("data", "expected an array of data");
    cfg.data = doc["data"];
  }
  if (doc.contains("quadrature")) {
    const json& q = doc["quadrature"];
    only_keys(q, "quadrature", {"transform", "base_order", "refinement_levels", "target_rel_tol"});
    if (q.contains("transform"))
      cfg.quadrature.transform = parse_transform(text(q["transform"], "quadrature.transform"), "quadrature.transform");
    if (q.contains("base_order")) cfg.quadrature.base_order = static_cast<int>(integer(q["base_order"], "quadrature.base_order"));
    if (q.contains("refinement_levels"))
      cfg.quadrature.refinement_levels = static_cast<int>(integer(q["refinement_levels"], "quadrature.refinement_levels"));
    if (q.contains("target_rel_tol")) cfg.quadrature.target_rel_tol = number(q["target_rel_tol"], "quadrature.target_rel_tol");
  }
  if (doc.contains("eval")) {
    const json& e = doc["eval"];
    only_keys(e, "eval", {"rel_tol", "max_total_degree", "quadrature_order", "method", "series_radius"});
    if (e.contains("rel_tol")) cfg.eval.rel_tol = number(e["rel_tol"], "eval.rel_tol");
    if (e.contains("max_total_degree")) {
      const auto v = integer(e["max_total_degree"], "eval.max_total_degree");
      if (v < 0) throw ConfigError("eval.max_total_degree", "must be non-negative");
      cfg.eval.max_total_degree = static_cast<std::size_t>(v);
    }
    if (e.contains("quadrature_order")) {
      const auto v = integer(e["quadrature_order"], "eval.quadrature_order");
      if (v < 1) throw ConfigError("eval.quadrature_order", "must be positive");
      cfg.eval.quadrature_order = static_cast<std::size_t>(v);
    }
    if (e.contains("method")) cfg.eval.method = parse_method(text(e["method"], "eval.method"), "eval.method");
    if (e.contains("series_radius")) cfg.eval.series_radius = number(e["series_radius"], "eval.series_radius");
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    only_keys(o, "output", {"path", "format"});
    if (o.contains("path")) cfg.output = text(o["path"], "output.path");
    if (o.contains("format")) cfg.format = parse_format(text(o["format"], "output.format"), "output.format");
  }
  if (doc.contains("jobs")) {
    const auto v = integer(doc["jobs"], "jobs");
    if (v < 1) throw ConfigError("jobs", "must be >= 1");
    cfg.jobs = static_cast<unsigned>(v);
  }
  if (doc.contains("profile")) cfg.profile = boolean(doc["profile"], "profile");
  if (doc.contains("points")) cfg.points = rows(doc["points"], "points");
  if (doc.contains("flux")) {
    only_keys(doc["flux"], "flux", {"face"});
    if (doc["flux"].contains("face")) {
      const auto f = integer(doc["flux"]["face"], "flux.face");
      if (f < 1) throw ConfigError("flux.face", "faces are numbered from 1");
      cfg.flux_face = static_cast<std::size_t>(f - 1);
    }
  }
  if (doc.contains("fa")) {
    const json& f = doc["fa"];
    only_keys(f, "fa", {"a", "b", "c", "x"});
    if (f.contains("a")) cfg.fa.params.a = number(f["a"], "fa.a");
    if (f.contains("b")) cfg.fa.params.b = numbers(f["b"], "fa.b");
    if (f.contains("c")) cfg.fa.params.c = numbers(f["c"], "fa.c");
    if (f.contains("x")) cfg.fa.x = rows(f["x"], "fa.x");
  }
  if (doc.contains("kernel")) {
    const json& k = doc["kernel"];
    only_keys(k, "kernel", {"x", "xi"});
    if (k.contains("x")) cfg.kernel.x = rows(k["x"], "kernel.x");
    if (k.contains("xi")) cfg.kernel.xi = rows(k["xi"], "kernel.xi");
  }
  if (doc.contains("lemma1")) {
    const json& l = doc["lemma1"];
    only_keys(l, "lemma1", {"a", "b", "c", "z0", "z_slope", "eps", "tolerance"});
    if (l.contains("a")) cfg.lemma1.a = number(l["a"], "lemma1.a");
    if (l.contains("b")) cfg.lemma1.b = numbers(l["b"], "lemma1.b");
    if (l.contains("c")) cfg.lemma1.c = numbers(l["c"], "lemma1.c");
    if (l.contains("z0")) cfg.lemma1.z0 = numbers(l["z0"], "lemma1.z0");
    if (l.contains("z_slope")) cfg.lemma1.z_slope = numbers(l["z_slope"], "lemma1.z_slope");
    if (l.contains("eps")) cfg.lemma1.eps = numbers(l["eps"], "lemma1.eps");
    if (l.contains("tolerance")) cfg.lemma1.tolerance = number(l["tolerance"], "lemma1.tolerance");
  }
  if (doc.contains("lemma2")) {
    const json& l = doc["lemma2"];
    only_keys(l, "lemma2", {"p", "q", "r", "s", "t", "method", "budget", "tolerance"});
    auto& p = cfg.lemma2.params;
    if (l.contains("p")) p.p = numbers(l["p"], "lemma2.p");
    if (l.contains("q")) p.q = numbers(l["q"], "lemma2.q");
    if (l.contains("r")) p.r = numbers(l["r"], "lemma2.r");
    if (l.contains("s")) p.s = number(l["s"], "lemma2.s");
    if (l.contains("t")) p.t = number(l["t"], "lemma2.t");
    if (l.contains("method")) {
      const std::string m = text(l["method"], "lemma2.method");
      if (m == "nested")
        cfg.lemma2.method = Lemma2Method::Nested;
      else if (m == "qmc")
        cfg.lemma2.method = Lemma2Method::QMC;
      else
        throw ConfigError("lemma2.method", "expected \"nested\" or \"qmc\"");
    }
    if (l.contains("budget")) {
      const auto b = integer(l["budget"], "lemma2.budget");
      if (b < 1) throw ConfigError("lemma2.budget", "must be positive");
      cfg.lemma2.budget = static_cast<std::uint64_t>(b);
    }
    if (l.contains("tolerance")) cfg.lemma2.tolerance = number(l["tolerance"], "lemma2.tolerance");
  }
  if (doc.contains("verify")) {
    const json& v = doc["verify"];
    only_keys(v, "verify", {"suite", "seed", "runtime", "tolerances"});
    if (v.contains("suite")) cfg.verify.suite = text(v["suite"], "verify.suite");
    if (v.contains("seed")) {
      const auto s = integer(v["seed"], "verify.seed");
      if (s < 0) throw ConfigError("verify.seed", "must be non-negative");
      cfg.verify.seed = static_cast<std::uint64_t>(s);
    }
    if (v.contains("runtime")) cfg.verify.runtime = boolean(v["runtime"], "verify.runtime");
    if (v.contains("tolerances")) apply_tolerances(v["tolerances"], cfg.verify.tolerances, "verify.tolerances");
  }
}

std::vector<BoundaryDatum> build_data(const RunConfig& cfg) {
  std::vector<BoundaryDatum> out;
  std::set<std::size_t> faces;
  for (std::size_t i = 0; i < cfg.data.size(); ++i) {
    const std::string path = at("data", i);
    out.push_back(parse_datum(cfg.data[i], path, cfg.domain));
    if (!faces.insert(out.back().face()).second) throw ConfigError(at(path, "face"), "face already has a datum");
  }
  return out;
}

void validate(const RunConfig& cfg) {
  wrap("domain", [&] { cfg.domain.validate(); });
  wrap("quadrature", [&] { cfg.quadrature.validate(); });
  wrap("eval", [&] { cfg.eval.validate(); });
  const auto m = static_cast<std::size_t>(cfg.domain.m);
  const std::string& c = cfg.command;
  if (c == "solve" || c == "flux") {
    build_data(cfg);
    if (cfg.points.empty()) throw ConfigError("points", "no evaluation points given");
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
      if (cfg.points[i].size() != m) throw ConfigError(at("points", i), "needs m = " + std::to_string(m) + " coordinates");
  }
  if (c == "flux" && cfg.flux_face >= static_cast<std::size_t>(cfg.domain.n))
    throw ConfigError("flux.face", "must lie in 1..n");
  if (c == "eval-fa") {
    wrap("fa", [&] { cfg.fa.params.validate(); });
    for (std::size_t i = 0; i < cfg.fa.x.size(); ++i)
      if (cfg.fa.x[i].size() != cfg.fa.params.dimension())
        throw ConfigError(at("fa.x", i), "needs n = " + std::to_string(cfg.fa.params.dimension()) + " entries");
  }
  if (c == "eval-kernel") {
    if (cfg.kernel.x.size() != cfg.kernel.xi.size()) throw ConfigError("kernel", "x and xi need the same number of rows");
    for (std::size_t i = 0; i < cfg.kernel.x.size(); ++i) {
      if (cfg.kernel.x[i].size() != m) throw ConfigError(at("kernel.x", i), "needs m coordinates");
      if (cfg.kernel.xi[i].size() != m) throw ConfigError(at("kernel.xi", i), "needs m coordinates");
    }
  }
  if (c == "lemma2") wrap("lemma2", [&] { cfg.lemma2.params.validate(); });
  if (c == "verify") {
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), cfg.verify.suite) == names.end())
      throw ConfigError("verify.suite", "unknown suite '" + cfg.verify.suite + "' (default, extended, full)");
  }
}

}  // namespace lauricella::cli
