#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lifespan/geometry.hpp"
#include "lifespan/models.hpp"
#include "lifespan/network.hpp"

namespace lifespan {

// Configuration problem (missing/ill-typed/contradictory fields). Carries the
// offending field path for diagnostics; maps to exit code 1 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// One scenario, loaded from a JSON file plus dotted-path overrides. Fields a
// given subcommand does not use may be absent; each runner validates what it
// needs and reports the missing field by name.
struct ScenarioConfig {
  std::optional<AreaShape> shape;
  std::optional<EnergyModel> energy;
  std::optional<TrafficModel> traffic;

  long nodes = 0;
  std::vector<long> nodes_list;    // from "nodes" or "nodes_sweep"
  std::vector<double> betas;       // from "beta" or "beta_sweep"
  std::vector<double> taus;        // from "tau_hours" or "tau_sweep_hours"
  std::vector<double> ranges;      // from "range_sweep_m" (else energy range)
  std::string mode = "single-hop";
  long trials = 0;
  std::uint64_t seed = 0;
  CapacitySemantics semantics = CapacitySemantics::Continuous;
  QuadratureSpec quad;
  std::optional<double> sensor_distance;  // "distance_m"
  std::string output_dir;

  nlohmann::json raw;
  std::uint64_t config_hash() const;  // FNV-1a over the canonical dump

  const AreaShape& require_shape() const;
  const EnergyModel& require_energy() const;
  const TrafficModel& require_traffic() const;
};

ScenarioConfig load_scenario(const std::string& path,
                             const std::vector<std::string>& overrides);

// Subcommand runners. Each writes CSV files under out_dir (a comment line
// with the config hash and seed, then a header row, then data rows) and
// returns the paths written. Numeric cells use shortest round-trip format.
std::vector<std::string> run_sensor_ccdf(const ScenarioConfig& cfg, const std::string& out_dir);
std::vector<std::string> run_network_ccdf(const ScenarioConfig& cfg, const std::string& out_dir);
std::vector<std::string> run_network_pdf(const ScenarioConfig& cfg, const std::string& out_dir);
std::vector<std::string> run_multihop_ccdf(const ScenarioConfig& cfg, const std::string& out_dir);
std::vector<std::string> run_simulate(const ScenarioConfig& cfg, const std::string& out_dir);
std::vector<std::string> run_compare(const ScenarioConfig& cfg, const std::string& out_dir);
std::vector<std::string> run_predict(const ScenarioConfig& cfg, const std::string& out_dir);

}  // namespace lifespan
