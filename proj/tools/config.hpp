#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lauricella/datum.hpp"
#include "lauricella/hyperfun.hpp"
#include "lauricella/kernel.hpp"
#include "lauricella/quadrature.hpp"
#include "lauricella/verify.hpp"

namespace lauricella::cli {

/// Invalid configuration; `path` names the offending field, e.g. "data[1].width".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, std::string message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)),
        message_(std::move(message)) {}
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

enum class Format { Csv, Json };

struct FaConfig {
  FAParams params;
  std::vector<std::vector<double>> x;
};

struct KernelConfig {
  std::vector<std::vector<double>> x;
  std::vector<std::vector<double>> xi;
};

struct Lemma1Config {
  double a = 2.0;
  std::vector<double> b{0.5};
  std::vector<double> c{1.0};
  std::vector<double> z0{1.0};
  std::vector<double> z_slope;
  std::vector<double> eps{1e-4, 1e-5, 1e-6};
  double tolerance = 1e-3;
};

struct Lemma2Config {
  Lemma2Params params{{1.0}, {2.0}, {1.0}, 1.0, 0.0};
  Lemma2Method method = Lemma2Method::Nested;
  std::uint64_t budget = 50'000'000;
  double tolerance = 1e-6;
};

struct VerifyConfig {
  std::string suite = "default";
  std::uint64_t seed = 42;
  bool runtime = false;
  Tolerances tolerances = Tolerances::defaults();
};

/// Everything a command may need. Sections that a command does not use are
/// still validated when present.
struct RunConfig {
  std::string command;
  DomainSpec domain;
  nlohmann::json data = nlohmann::json::array();  // built by build_data once the domain is final
  QuadratureSpec quadrature;
  EvalOptions eval;
  std::string output = "-";
  std::optional<Format> format;  ///< default: JSON lines for verify, CSV otherwise
  unsigned jobs = 1;
  bool profile = false;

  std::vector<std::vector<double>> points;  // solve and flux
  std::size_t flux_face = 0;                // 0-based
  FaConfig fa;
  KernelConfig kernel;
  Lemma1Config lemma1;
  Lemma2Config lemma2;
  VerifyConfig verify;
};

/// Reads a JSON document into `cfg`. Unknown fields are errors.
void apply_json(const nlohmann::json& doc, RunConfig& cfg);
/// Boundary data from the "data" array; face numbers there are 1-based.
std::vector<BoundaryDatum> build_data(const RunConfig& cfg);
nlohmann::json load_json_file(const std::string& path);

/// Tolerance overrides: a JSON object {"neumann.flux": 0.02, ...}.
void apply_tolerances(const nlohmann::json& doc, Tolerances& tol, const std::string& path);

/// Re-runs every module invariant on the assembled configuration.
void validate(const RunConfig& cfg);

std::vector<double> parse_list(const std::string& text, const std::string& path);
Format parse_format(const std::string& text, const std::string& path);

}  // namespace lauricella::cli
