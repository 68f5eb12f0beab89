#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsign/output.hpp"

namespace hsign {

enum class ExperimentKind { SieveSum, Signs, FirstNegative };

/// A reproducible experiment bundle, stored as one JSON document:
///   {"experiment": "hsum" | "signs" | "first-negative",
///    "disc": 5, "x_grid": [1e4, 1e5], "y": 100, "y_grid": [100, 1000],
///    "u_grid": [1.0], "seed": 42, "samples": 1,
///    "coeff_source": "SatoTate" | {"file": "coeffs.csv"},
///    "output": "out.csv", "format": "csv"}
/// Every random draw derives from `seed` (sample i uses seed + i).
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::SieveSum;
  std::int64_t disc = 1;
  std::vector<double> x_grid;
  double y = 100.0;
  std::vector<double> y_grid;  // defaults to {y}
  std::vector<double> u_grid{1.0};
  std::uint64_t seed = 0;
  int samples = 1;
  std::optional<std::string> coeff_file;  // empty means Sato-Tate sampling
  std::string output;                     // empty means stdout
  OutputFormat format = OutputFormat::Csv;
};

/// Throws ConfigError on unknown keys, bad types or invariant violations
/// (x_grid strictly increasing, u_grid inside [1, 3/2], valid disc, ...).
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& config);
nlohmann::ordered_json to_json(const ExperimentConfig& config);

/// Runs the experiment and renders it; identical configs give identical bytes.
std::string render_experiment(const ExperimentConfig& config, unsigned threads = 1);

/// render_experiment written to config.output (or `fallback` when empty).
void run_experiment(const ExperimentConfig& config, std::ostream& fallback, unsigned threads = 1);

}  // namespace hsign
