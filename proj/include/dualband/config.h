#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dualband/sim_engine.h"

namespace dualband {

struct OutputSpec {
  std::string dir = "results";
  std::string csv = "results.csv";
  std::string samples = "outage_samples.csv";
  std::string manifest = "manifest.json";
  bool operator==(const OutputSpec&) const = default;
};

struct ConfigFile {
  ExperimentSpec experiment;  // experiment.base is the scenario
  OutputSpec output;
};

// Unknown keys and ill-typed values raise std::invalid_argument naming the
// offending key path, e.g. "radio.k1: expected an integer".
ConfigFile parse_config_json(const nlohmann::json& j);
ConfigFile parse_config(const std::filesystem::path& path);

// Fully resolved config; parse_config_json(config_to_json(c)) gives back c.
nlohmann::json config_to_json(const ConfigFile& c);

}  // namespace dualband
