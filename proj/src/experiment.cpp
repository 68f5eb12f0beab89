#include "hsign/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "hsign/coefficients.hpp"
#include "hsign/error.hpp"
#include "hsign/field.hpp"
#include "hsign/sieve.hpp"
#include "hsign/sums.hpp"

namespace hsign {

namespace {

std::string_view kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::SieveSum: return "hsum";
    case ExperimentKind::Signs: return "signs";
    case ExperimentKind::FirstNegative: return "first-negative";
  }
  return "?";
}

ExperimentKind parse_kind(const std::string& text) {
  if (text == "hsum") return ExperimentKind::SieveSum;
  if (text == "signs") return ExperimentKind::Signs;
  if (text == "first-negative") return ExperimentKind::FirstNegative;
  throw ConfigError("unknown experiment '" + text + "'");
}

template <class T>
T get(const nlohmann::json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

bool strictly_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

}  // namespace

ExperimentConfig parse_experiment_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("experiment config must be a JSON object");
  static const std::set<std::string> known = {"experiment", "disc",    "x_grid",       "y",
                                              "y_grid",     "u_grid",  "seed",         "samples",
                                              "coeff_source", "output", "format"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config field '" + key + "'");
  }
  ExperimentConfig config;
  config.kind = parse_kind(get<std::string>(doc, "experiment"));
  if (doc.contains("disc")) config.disc = get<std::int64_t>(doc, "disc");
  if (doc.contains("x_grid")) config.x_grid = get<std::vector<double>>(doc, "x_grid");
  if (doc.contains("y")) config.y = get<double>(doc, "y");
  if (doc.contains("y_grid")) config.y_grid = get<std::vector<double>>(doc, "y_grid");
  if (doc.contains("u_grid")) config.u_grid = get<std::vector<double>>(doc, "u_grid");
  if (doc.contains("seed")) config.seed = get<std::uint64_t>(doc, "seed");
  if (doc.contains("samples")) config.samples = get<int>(doc, "samples");
  if (doc.contains("coeff_source")) {
    const auto& source = doc.at("coeff_source");
    if (source.is_string() && source.get<std::string>() == "SatoTate") {
      config.coeff_file.reset();
    } else if (source.is_object() && source.contains("file") && source.at("file").is_string()) {
      config.coeff_file = source.at("file").get<std::string>();
    } else {
      throw ConfigError("coeff_source must be \"SatoTate\" or {\"file\": PATH}");
    }
  }
  if (doc.contains("output")) config.output = get<std::string>(doc, "output");
  if (doc.contains("format")) config.format = parse_format(get<std::string>(doc, "format"));
  validate(config);
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_experiment_config(doc);
}

void validate(const ExperimentConfig& config) {
  if (!is_fundamental_discriminant(config.disc)) {
    throw ConfigError("disc " + std::to_string(config.disc) + " is not 1 or a fundamental discriminant");
  }
  if (!strictly_increasing(config.x_grid)) throw ConfigError("x_grid must be strictly increasing");
  for (double x : config.x_grid) {
    if (!(x >= 1.0)) throw ConfigError("x_grid values must be >= 1");
  }
  for (double u : config.u_grid) {
    if (!(u >= 1.0 && u <= 1.5)) {
      throw ConfigError("u_grid values must lie in [1, 3/2], got " + format_real(u));
    }
  }
  if (!(config.y >= 4.0)) throw ConfigError("y must be >= 4");
  if (!strictly_increasing(config.y_grid)) throw ConfigError("y_grid must be strictly increasing");
  for (double y : config.y_grid) {
    if (!(y >= 4.0)) throw ConfigError("y_grid values must be >= 4");
  }
  if (config.samples < 1) throw ConfigError("samples must be >= 1");
  switch (config.kind) {
    case ExperimentKind::SieveSum:
      if (config.u_grid.empty()) throw ConfigError("hsum experiment needs a u_grid");
      break;
    case ExperimentKind::Signs:
    case ExperimentKind::FirstNegative:
      if (config.x_grid.empty()) throw ConfigError("experiment needs an x_grid");
      if (config.x_grid.back() < 2.0) throw ConfigError("x_grid must reach 2");
      break;
  }
}

nlohmann::ordered_json to_json(const ExperimentConfig& config) {
  nlohmann::ordered_json doc;
  doc["experiment"] = kind_name(config.kind);
  doc["disc"] = config.disc;
  doc["x_grid"] = config.x_grid;
  doc["y"] = config.y;
  doc["y_grid"] = config.y_grid;
  doc["u_grid"] = config.u_grid;
  doc["seed"] = config.seed;
  doc["samples"] = config.samples;
  if (config.coeff_file) {
    doc["coeff_source"] = {{"file", *config.coeff_file}};
  } else {
    doc["coeff_source"] = "SatoTate";
  }
  doc["output"] = config.output;
  doc["format"] = config.format == OutputFormat::Csv ? "csv" : "json";
  return doc;
}

namespace {

struct Sample {
  std::uint64_t seed;
  CoefficientSystem system;
};

std::vector<Sample> coefficient_samples(const ExperimentConfig& config, const QuadraticField& field) {
  std::vector<Sample> out;
  if (config.coeff_file) {
    out.push_back({config.seed, load_coefficients_csv(field, *config.coeff_file)});
    return out;
  }
  for (int i = 0; i < config.samples; ++i) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
    out.push_back({seed, sample_sato_tate(field, config.x_grid.back(), seed)});
  }
  return out;
}

Table sieve_sum_rows(const ExperimentConfig& config, const QuadraticField& field) {
  Table table;
  const std::vector<double> ys = config.y_grid.empty() ? std::vector<double>{config.y} : config.y_grid;
  for (double u : config.u_grid) {
    for (double y : ys) {
      const auto empirical = sieve_weight_sum(field, y, u);
      const double prediction = sieve_weight_sum_main_term(field, y, u);
      const double ratio = static_cast<double>(empirical) / prediction;
      table.rows.push_back(Record{}
                               .add("y", y)
                               .add("u", u)
                               .add("empirical", empirical)
                               .add("prediction", prediction)
                               .add("ratio", ratio)
                               .add("abs_ratio_error", std::abs(ratio - 1.0)));
    }
  }
  return table;
}

Table sign_rows(const ExperimentConfig& config, const QuadraticField& field) {
  Table table;
  const IdealTable ideals = enumerate_ideals(field, config.x_grid.back());
  int index = 0;
  for (const Sample& sample : coefficient_samples(config, field)) {
    for (double x : config.x_grid) {
      const SignReport r = sign_counts(sample.system, ideals, x);
      const double total = static_cast<double>(r.total());
      table.rows.push_back(Record{}
                               .add("sample", std::int64_t{index})
                               .add("seed", static_cast<std::int64_t>(sample.seed))
                               .add("x", x)
                               .add("positives", r.positives)
                               .add("negatives", r.negatives)
                               .add("zeros", r.zeros)
                               .add("positive_fraction", static_cast<double>(r.positives) / total)
                               .add("negative_fraction", static_cast<double>(r.negatives) / total)
                               .add("euler_product_prediction", r.euler_product_prediction)
                               .add("half_deviation", r.half_deviation));
    }
    ++index;
  }
  return table;
}

Table first_negative_rows(const ExperimentConfig& config, const QuadraticField& field) {
  Table table;
  int index = 0;
  for (const Sample& sample : coefficient_samples(config, field)) {
    for (double x : config.x_grid) {
      Record row;
      row.add("sample", std::int64_t{index})
          .add("seed", static_cast<std::int64_t>(sample.seed))
          .add("x_max", x);
      if (const auto hit = first_negative(sample.system, x)) {
        row.add("found", true)
            .add("norm", static_cast<std::int64_t>(hit->norm()))
            .add("ideal", to_string(*hit))
            .add("value", sample.system.value(*hit));
      } else {
        row.add("found", false).add("norm", std::int64_t{0}).add("ideal", std::string{}).add("value", 0.0);
      }
      table.rows.push_back(std::move(row));
    }
    ++index;
  }
  return table;
}

}  // namespace

std::string render_experiment(const ExperimentConfig& config, unsigned threads) {
  (void)threads;  // the bundled experiments are dominated by enumeration
  validate(config);
  const QuadraticField field(config.disc);
  Table table;
  switch (config.kind) {
    case ExperimentKind::SieveSum: table = sieve_sum_rows(config, field); break;
    case ExperimentKind::Signs: table = sign_rows(config, field); break;
    case ExperimentKind::FirstNegative: table = first_negative_rows(config, field); break;
  }
  std::ostringstream out;
  const nlohmann::ordered_json config_json = to_json(config);
  if (config.format == OutputFormat::Csv) {
    table.comments.push_back("experiment: " + std::string(kind_name(config.kind)));
    table.comments.push_back("config: " + config_json.dump());
    write_table(table, OutputFormat::Csv, out);
  } else {
    nlohmann::ordered_json doc;
    doc["config"] = config_json;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const Record& r : table.rows) doc["rows"].push_back(to_json(r));
    out << doc.dump(2) << '\n';
  }
  return out.str();
}

void run_experiment(const ExperimentConfig& config, std::ostream& fallback, unsigned threads) {
  const std::string text = render_experiment(config, threads);
  if (config.output.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw IoError("cannot write " + config.output);
  file << text;
  if (!file) throw IoError("failed writing " + config.output);
}

}  // namespace hsign
