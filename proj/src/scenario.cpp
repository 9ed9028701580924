#include "lifespan/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lifespan/montecarlo.hpp"
#include "lifespan/multihop.hpp"
#include "lifespan/sensor.hpp"

namespace lifespan {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt(long v) { return std::to_string(v); }

// One CSV output file: a comment line carrying the config hash and seed, a
// header row, then data rows. Shortest round-trip numeric formatting keeps
// files byte-reproducible and loss-free.
class CsvFile {
 public:
  CsvFile(const std::string& path, const ScenarioConfig& cfg,
          const std::vector<std::string>& columns)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
    char comment[80];
    std::snprintf(comment, sizeof(comment), "# config_hash=%016llx seed=%llu",
                  static_cast<unsigned long long>(cfg.config_hash()),
                  static_cast<unsigned long long>(cfg.seed));
    out_ << comment << '\n';
    write_row(columns);
  }

  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

std::string output_path(const std::string& out_dir, const std::string& name) {
  std::filesystem::create_directories(out_dir);
  return (std::filesystem::path(out_dir) / name).string();
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double require_number(const json& obj, const std::string& where, const char* key) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError(where + "." + key, "missing required field");
  if (!v->is_number()) throw ConfigError(where + "." + key, "expected a number");
  return v->get<double>();
}

long require_integer(const json& obj, const std::string& where, const char* key) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError(where + "." + key, "missing required field");
  if (!v->is_number_integer()) throw ConfigError(where + "." + key, "expected an integer");
  return v->get<long>();
}

void check_known_keys(const json& obj, const std::string& where,
                      std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) {
          return it.key() == k;
        }) == known.end()) {
      throw ConfigError(where.empty() ? it.key() : where + "." + it.key(),
                        "unknown field");
    }
  }
}

AreaShape parse_shape(const json& obj) {
  check_known_keys(obj, "shape", {"shape", "radius_m", "sides", "side_m"});
  const json* kind = find(obj, "shape");
  if (!kind || !kind->is_string()) {
    throw ConfigError("shape.shape", "expected \"circle\" or \"polygon\"");
  }
  const std::string s = kind->get<std::string>();
  try {
    if (s == "circle") return AreaShape::circle(require_number(obj, "shape", "radius_m"));
    if (s == "polygon") {
      return AreaShape::regular_polygon(
          static_cast<int>(require_integer(obj, "shape", "sides")),
          require_number(obj, "shape", "side_m"));
    }
  } catch (const std::domain_error& e) {
    throw ConfigError("shape", e.what());
  }
  throw ConfigError("shape.shape", "expected \"circle\" or \"polygon\"");
}

EnergyModel parse_energy(const json& obj) {
  check_known_keys(obj, "energy",
                   {"alpha", "initial_energy_J", "k", "c", "e_t", "e_o",
                    "packet_bits", "fixed_range_m"});
  const double alpha = require_number(obj, "energy", "alpha");
  const double initial = require_number(obj, "energy", "initial_energy_J");
  const bool packet_level = find(obj, "k") || find(obj, "c");
  const bool bit_level = find(obj, "e_t") || find(obj, "e_o") || find(obj, "packet_bits");
  if (packet_level == bit_level) {
    throw ConfigError("energy", "give exactly one of (k, c) or (e_t, e_o, packet_bits)");
  }
  double k, c;
  if (packet_level) {
    k = require_number(obj, "energy", "k");
    c = require_number(obj, "energy", "c");
  } else {
    // Bit-level constants fold into per-packet ones at the config boundary.
    const double bits = require_number(obj, "energy", "packet_bits");
    k = require_number(obj, "energy", "e_t") * bits;
    c = require_number(obj, "energy", "e_o") * bits;
  }
  if (alpha < 2.0 || alpha > 4.0) {
    std::fprintf(stderr, "warning: energy.alpha=%g is outside the typical range [2, 4]\n",
                 alpha);
  }
  try {
    if (const json* r = find(obj, "fixed_range_m")) {
      return EnergyModel::fixed_range(r->get<double>(), k, c, alpha, initial);
    }
    return EnergyModel::adjustable(k, c, alpha, initial);
  } catch (const std::domain_error& e) {
    throw ConfigError("energy", e.what());
  }
}

TrafficModel parse_traffic(const json& obj) {
  check_known_keys(obj, "traffic", {"model", "rate_per_hour", "rate_table", "period_hours"});
  const json* kind = find(obj, "model");
  if (!kind || !kind->is_string()) {
    throw ConfigError("traffic.model",
                      "expected \"poisson\", \"position_poisson\" or \"time_driven\"");
  }
  const std::string s = kind->get<std::string>();
  try {
    if (s == "poisson") {
      return TrafficModel::poisson(require_number(obj, "traffic", "rate_per_hour"));
    }
    if (s == "time_driven") {
      return TrafficModel::time_driven(require_number(obj, "traffic", "period_hours"));
    }
    if (s == "position_poisson") {
      const json* table = find(obj, "rate_table");
      if (!table || !table->is_array() || table->empty()) {
        throw ConfigError("traffic.rate_table", "expected a nonempty array of [distance_m, rate] pairs");
      }
      std::vector<double> ds, rates;
      for (const auto& row : *table) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
          throw ConfigError("traffic.rate_table", "each entry must be [distance_m, rate]");
        }
        ds.push_back(row[0].get<double>());
        rates.push_back(row[1].get<double>());
      }
      for (std::size_t i = 0; i < ds.size(); ++i) {
        if (!(rates[i] > 0.0)) throw ConfigError("traffic.rate_table", "rates must be > 0");
        if (i && !(ds[i] > ds[i - 1])) {
          throw ConfigError("traffic.rate_table", "distances must be strictly increasing");
        }
      }
      // Piecewise-linear in distance, clamped at both ends.
      auto rate_fn = [ds, rates](double d) {
        if (d <= ds.front()) return rates.front();
        if (d >= ds.back()) return rates.back();
        auto it = std::upper_bound(ds.begin(), ds.end(), d);
        std::size_t i = static_cast<std::size_t>(it - ds.begin());
        const double t = (d - ds[i - 1]) / (ds[i] - ds[i - 1]);
        return rates[i - 1] + t * (rates[i] - rates[i - 1]);
      };
      return TrafficModel::position_poisson(rate_fn);
    }
  } catch (const std::domain_error& e) {
    throw ConfigError("traffic", e.what());
  }
  throw ConfigError("traffic.model",
                    "expected \"poisson\", \"position_poisson\" or \"time_driven\"");
}

// Scalar-or-sweep field pair: exactly one may be present.
std::vector<double> parse_sweep(const json& root, const char* scalar_key,
                                const char* sweep_key, bool allow_zero) {
  const json* scalar = find(root, scalar_key);
  const json* sweep = find(root, sweep_key);
  if (scalar && sweep) {
    throw ConfigError(sweep_key, std::string("give either ") + scalar_key + " or " +
                                     sweep_key + ", not both");
  }
  std::vector<double> values;
  if (scalar) {
    if (!scalar->is_number()) throw ConfigError(scalar_key, "expected a number");
    values.push_back(scalar->get<double>());
  } else if (sweep) {
    if (!sweep->is_array() || sweep->empty()) {
      throw ConfigError(sweep_key, "expected a nonempty array");
    }
    for (const auto& v : *sweep) {
      if (!v.is_number()) throw ConfigError(sweep_key, "expected numbers");
      values.push_back(v.get<double>());
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (!(values[i] > values[i - 1])) {
        throw ConfigError(sweep_key, "sweep values must be strictly increasing");
      }
    }
  }
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0)) {
      throw ConfigError(scalar ? scalar_key : sweep_key, "values must be positive");
    }
  }
  return values;
}

json parse_override_value(const std::string& text) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) return json(text);  // plain string value
  return parsed;
}

}  // namespace

std::uint64_t ScenarioConfig::config_hash() const {
  const std::string dump = raw.dump();
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  for (unsigned char b : dump) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

const AreaShape& ScenarioConfig::require_shape() const {
  if (!shape) throw ConfigError("shape", "missing required section");
  return *shape;
}

const EnergyModel& ScenarioConfig::require_energy() const {
  if (!energy) throw ConfigError("energy", "missing required section");
  return *energy;
}

const TrafficModel& ScenarioConfig::require_traffic() const {
  if (!traffic) throw ConfigError("traffic", "missing required section");
  return *traffic;
}

ScenarioConfig load_scenario(const std::string& path,
                             const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "config root must be a JSON object");

  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set", "expected key.path=value, got: " + kv);
    }
    std::string pointer = "/" + kv.substr(0, eq);
    std::replace(pointer.begin(), pointer.end(), '.', '/');
    try {
      root[json::json_pointer(pointer)] = parse_override_value(kv.substr(eq + 1));
    } catch (const json::exception& e) {
      throw ConfigError(kv.substr(0, eq), std::string("cannot apply override: ") + e.what());
    }
  }

  check_known_keys(root, "",
                   {"shape", "energy", "traffic", "nodes", "nodes_sweep", "beta",
                    "beta_sweep", "tau_hours", "tau_sweep_hours", "range_sweep_m",
                    "mode", "trials", "seed", "capacity_semantics", "quadrature",
                    "distance_m", "output_dir"});

  ScenarioConfig cfg;
  cfg.raw = root;

  if (const json* s = find(root, "shape")) cfg.shape = parse_shape(*s);
  if (const json* e = find(root, "energy")) cfg.energy = parse_energy(*e);
  if (const json* t = find(root, "traffic")) cfg.traffic = parse_traffic(*t);

  const json* nodes = find(root, "nodes");
  const json* nodes_sweep = find(root, "nodes_sweep");
  if (nodes && nodes_sweep) {
    throw ConfigError("nodes_sweep", "give either nodes or nodes_sweep, not both");
  }
  if (nodes) {
    if (!nodes->is_number_integer() || nodes->get<long>() < 1) {
      throw ConfigError("nodes", "expected an integer >= 1");
    }
    cfg.nodes = nodes->get<long>();
    cfg.nodes_list = {cfg.nodes};
  } else if (nodes_sweep) {
    if (!nodes_sweep->is_array() || nodes_sweep->empty()) {
      throw ConfigError("nodes_sweep", "expected a nonempty array");
    }
    for (const auto& v : *nodes_sweep) {
      if (!v.is_number_integer() || v.get<long>() < 1) {
        throw ConfigError("nodes_sweep", "expected integers >= 1");
      }
      cfg.nodes_list.push_back(v.get<long>());
    }
    for (std::size_t i = 1; i < cfg.nodes_list.size(); ++i) {
      if (cfg.nodes_list[i] <= cfg.nodes_list[i - 1]) {
        throw ConfigError("nodes_sweep", "sweep values must be strictly increasing");
      }
    }
    cfg.nodes = cfg.nodes_list.front();
  }

  cfg.betas = parse_sweep(root, "beta", "beta_sweep", false);
  for (double b : cfg.betas) {
    if (b > 1.0) throw ConfigError("beta", "beta must be in (0, 1]");
  }
  cfg.taus = parse_sweep(root, "tau_hours", "tau_sweep_hours", true);
  if (const json* r = find(root, "range_sweep_m")) {
    if (!r->is_array() || r->empty()) {
      throw ConfigError("range_sweep_m", "expected a nonempty array");
    }
    for (const auto& v : *r) {
      if (!v.is_number() || !(v.get<double>() > 0.0)) {
        throw ConfigError("range_sweep_m", "expected positive numbers");
      }
      cfg.ranges.push_back(v.get<double>());
    }
    for (std::size_t i = 1; i < cfg.ranges.size(); ++i) {
      if (cfg.ranges[i] <= cfg.ranges[i - 1]) {
        throw ConfigError("range_sweep_m", "sweep values must be strictly increasing");
      }
    }
  }

  if (const json* m = find(root, "mode")) {
    if (!m->is_string() ||
        (m->get<std::string>() != "single-hop" && m->get<std::string>() != "multi-hop")) {
      throw ConfigError("mode", "expected \"single-hop\" or \"multi-hop\"");
    }
    cfg.mode = m->get<std::string>();
  }
  if (const json* t = find(root, "trials")) {
    if (!t->is_number_integer() || t->get<long>() < 1) {
      throw ConfigError("trials", "expected an integer >= 1");
    }
    cfg.trials = t->get<long>();
  }
  if (const json* s = find(root, "seed")) {
    if (!s->is_number_unsigned() && !s->is_number_integer()) {
      throw ConfigError("seed", "expected a nonnegative integer");
    }
    cfg.seed = s->get<std::uint64_t>();
  }
  if (const json* s = find(root, "capacity_semantics")) {
    if (!s->is_string()) throw ConfigError("capacity_semantics", "expected a string");
    const std::string sem = s->get<std::string>();
    if (sem == "continuous") {
      cfg.semantics = CapacitySemantics::Continuous;
    } else if (sem == "floored") {
      cfg.semantics = CapacitySemantics::Floored;
    } else {
      throw ConfigError("capacity_semantics", "expected \"continuous\" or \"floored\"");
    }
  }
  if (const json* q = find(root, "quadrature")) {
    if (!q->is_object()) throw ConfigError("quadrature", "expected an object");
    check_known_keys(*q, "quadrature", {"rel_tol", "abs_tol", "max_subdivisions"});
    if (const json* v = find(*q, "rel_tol")) cfg.quad.rel_tol = v->get<double>();
    if (const json* v = find(*q, "abs_tol")) cfg.quad.abs_tol = v->get<double>();
    if (const json* v = find(*q, "max_subdivisions")) {
      if (!v->is_number_integer()) {
        throw ConfigError("quadrature.max_subdivisions", "expected an integer");
      }
      cfg.quad.max_subdivisions = static_cast<int>(v->get<long>());
    }
    if (!(cfg.quad.rel_tol > 0.0) || !(cfg.quad.abs_tol >= 0.0) ||
        cfg.quad.max_subdivisions < 1) {
      throw ConfigError("quadrature", "tolerances must be positive");
    }
  }
  if (const json* d = find(root, "distance_m")) {
    if (!d->is_number() || !(d->get<double>() >= 0.0)) {
      throw ConfigError("distance_m", "expected a number >= 0");
    }
    cfg.sensor_distance = d->get<double>();
  }
  if (const json* o = find(root, "output_dir")) {
    if (!o->is_string()) throw ConfigError("output_dir", "expected a string");
    cfg.output_dir = o->get<std::string>();
  }
  return cfg;
}

namespace {

void require_nonempty(const std::vector<double>& v, const char* field) {
  if (v.empty()) throw ConfigError(field, "missing required field");
}

long require_single_node_count(const ScenarioConfig& cfg) {
  if (cfg.nodes_list.size() != 1) {
    throw ConfigError("nodes", "this subcommand requires a single node count");
  }
  return cfg.nodes_list.front();
}

double require_single_beta(const ScenarioConfig& cfg) {
  if (cfg.betas.size() != 1) {
    throw ConfigError("beta", "this subcommand requires a single beta");
  }
  return cfg.betas.front();
}

long require_trials(const ScenarioConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials", "missing required field");
  return cfg.trials;
}

// Capacity and rate for the sensor-level subcommand: fixed-range models give
// p_f directly; adjustable models need an explicit distance.
std::pair<double, double> sensor_operating_point(const ScenarioConfig& cfg) {
  const EnergyModel& energy = cfg.require_energy();
  const TrafficModel& traffic = cfg.require_traffic();
  if (traffic.kind() == TrafficModel::Kind::TimeDriven) {
    throw ConfigError("traffic", "sensor-ccdf requires a Poisson-family traffic model");
  }
  double distance = cfg.sensor_distance.value_or(0.0);
  double capacity;
  if (energy.is_fixed_range()) {
    capacity = fixed_packet_capacity(energy);
  } else {
    if (!cfg.sensor_distance) {
      throw ConfigError("distance_m",
                        "required with an adjustable-power model (sets the sensor's distance)");
    }
    capacity = packet_capacity(energy, distance);
  }
  return {capacity, traffic.rate_at(distance)};
}

RingConfig ring_config_for(const ScenarioConfig& cfg, double range_m, long nodes,
                           double rate) {
  const AreaShape& shape = cfg.require_shape();
  try {
    if (shape.is_circle()) {
      return RingConfig::circle(shape.circumradius(), range_m, nodes, rate);
    }
    return RingConfig::general_area(shape.area(), range_m, nodes, rate);
  } catch (const std::domain_error& e) {
    throw ConfigError("shape", e.what());
  }
}

EnergyModel with_range(const EnergyModel& base, double range_m) {
  return EnergyModel::fixed_range(range_m, base.k(), base.c(), base.alpha(),
                                  base.initial_energy());
}

const char* verdict_name(AsymptoticVerdict v) {
  switch (v) {
    case AsymptoticVerdict::AchievesAlmostSurely:
      return "ACHIEVES";
    case AsymptoticVerdict::FailsAlmostSurely:
      return "FAILS";
    case AsymptoticVerdict::Critical:
      return "CRITICAL";
  }
  return "?";
}

}  // namespace

std::vector<std::string> run_sensor_ccdf(const ScenarioConfig& cfg,
                                         const std::string& out_dir) {
  require_nonempty(cfg.taus, "tau_hours");
  const auto [capacity, rate] = sensor_operating_point(cfg);
  CsvFile csv(output_path(out_dir, "sensor_ccdf.csv"), cfg,
              {"tau_hours", "capacity_packets", "rate_per_hour", "survival_exact",
               "survival_clt"});
  for (double tau : cfg.taus) {
    csv.write_row({fmt(tau), fmt(capacity), fmt(rate),
                   fmt(survival_exact(capacity, rate, tau)),
                   fmt(survival_clt(capacity, rate, tau))});
  }
  return {csv.path()};
}

std::vector<std::string> run_network_ccdf(const ScenarioConfig& cfg,
                                          const std::string& out_dir) {
  require_nonempty(cfg.taus, "tau_hours");
  require_nonempty(cfg.betas, "beta");
  if (cfg.nodes_list.empty()) throw ConfigError("nodes", "missing required field");
  const AreaShape& shape = cfg.require_shape();
  const EnergyModel& energy = cfg.require_energy();
  const TrafficModel& traffic = cfg.require_traffic();

  CsvFile csv(output_path(out_dir, "network_ccdf.csv"), cfg,
              {"tau_hours", "beta", "nodes", "mu", "sigma", "ccdf"});
  for (double tau : cfg.taus) {
    const SurvivalMoments m =
        survival_moments(shape, energy, traffic, tau, cfg.semantics, cfg.quad);
    for (long n : cfg.nodes_list) {
      for (double beta : cfg.betas) {
        const double value = network_ccdf(LifetimeQuery(tau, beta, n), m);
        csv.write_row({fmt(tau), fmt(beta), fmt(n), fmt(m.mu), fmt(m.sigma), fmt(value)});
      }
    }
  }
  return {csv.path()};
}

std::vector<std::string> run_network_pdf(const ScenarioConfig& cfg,
                                         const std::string& out_dir) {
  require_nonempty(cfg.taus, "tau_hours");
  require_nonempty(cfg.betas, "beta");
  const long n = require_single_node_count(cfg);
  for (double tau : cfg.taus) {
    if (!(tau > 0.0)) throw ConfigError("tau_hours", "network-pdf requires tau > 0");
  }
  const AreaShape& shape = cfg.require_shape();
  const EnergyModel& energy = cfg.require_energy();
  const TrafficModel& traffic = cfg.require_traffic();
  if (energy.is_fixed_range()) {
    throw ConfigError("energy.fixed_range_m",
                      "network-pdf requires an adjustable-power model");
  }
  if (traffic.kind() != TrafficModel::Kind::Poisson) {
    throw ConfigError("traffic", "network-pdf requires Poisson traffic");
  }

  CsvFile csv(output_path(out_dir, "network_pdf.csv"), cfg,
              {"tau_hours", "beta", "nodes", "pdf_per_hour"});
  for (double beta : cfg.betas) {
    for (double tau : cfg.taus) {
      const double pdf =
          network_pdf(tau, LifetimeQuery(tau, beta, n), shape, energy, traffic, cfg.quad);
      csv.write_row({fmt(tau), fmt(beta), fmt(n), fmt(pdf)});
    }
  }
  return {csv.path()};
}

std::vector<std::string> run_multihop_ccdf(const ScenarioConfig& cfg,
                                           const std::string& out_dir) {
  require_nonempty(cfg.taus, "tau_hours");
  require_nonempty(cfg.betas, "beta");
  const long n = require_single_node_count(cfg);
  const EnergyModel& energy = cfg.require_energy();
  const TrafficModel& traffic = cfg.require_traffic();
  if (traffic.kind() != TrafficModel::Kind::Poisson) {
    throw ConfigError("traffic", "multihop-ccdf requires Poisson traffic");
  }
  if (!energy.is_fixed_range() && cfg.ranges.empty()) {
    throw ConfigError("energy.fixed_range_m",
                      "multihop-ccdf requires a fixed range (or range_sweep_m)");
  }
  std::vector<double> ranges = cfg.ranges;
  if (ranges.empty()) ranges.push_back(energy.range());
  const double rate = traffic.rate_at(0.0);

  CsvFile csv(output_path(out_dir, "multihop_ccdf.csv"), cfg,
              {"tx_range_m", "ring_count", "q1", "tau_hours", "beta", "ccdf"});
  for (double r : ranges) {
    const EnergyModel ranged = with_range(energy, r);
    const RingConfig ring = ring_config_for(cfg, r, n, rate);
    const double q1 = ring_probability(ring, 1);
    for (double tau : cfg.taus) {
      for (double beta : cfg.betas) {
        csv.write_row({fmt(r), fmt(static_cast<long>(ring.ring_count())), fmt(q1),
                       fmt(tau), fmt(beta), fmt(multihop_ccdf(ring, ranged, tau, beta))});
      }
    }
  }
  return {csv.path()};
}

namespace {

EmpiricalCcdf simulate_for(const ScenarioConfig& cfg, double beta) {
  const long n = require_single_node_count(cfg);
  const long trials = require_trials(cfg);
  const EnergyModel& energy = cfg.require_energy();
  if (cfg.mode == "multi-hop") {
    const TrafficModel& traffic = cfg.require_traffic();
    if (traffic.kind() != TrafficModel::Kind::Poisson) {
      throw ConfigError("traffic", "multi-hop simulation requires Poisson traffic");
    }
    if (!energy.is_fixed_range()) {
      throw ConfigError("energy.fixed_range_m",
                        "multi-hop simulation requires a fixed-range model");
    }
    const RingConfig ring = ring_config_for(cfg, energy.range(), n, traffic.rate_at(0.0));
    return simulate_multi_hop(ring, energy, beta, trials, cfg.seed);
  }
  return simulate_single_hop(cfg.require_shape(), energy, cfg.require_traffic(), n, beta,
                             trials, cfg.seed);
}

}  // namespace

std::vector<std::string> run_simulate(const ScenarioConfig& cfg,
                                      const std::string& out_dir) {
  require_nonempty(cfg.taus, "tau_hours");
  const double beta = require_single_beta(cfg);
  const EmpiricalCcdf emp = simulate_for(cfg, beta);

  CsvFile samples(output_path(out_dir, "simulate_samples.csv"), cfg,
                  {"rank", "lifetime_hours"});
  long rank = 1;
  for (double lifetime : emp.samples()) {
    samples.write_row({fmt(rank), fmt(lifetime)});
    ++rank;
  }
  CsvFile ccdf(output_path(out_dir, "simulate_ccdf.csv"), cfg,
               {"tau_hours", "empirical_ccdf", "ci99_lo", "ci99_hi"});
  for (double tau : cfg.taus) {
    const auto interval = emp.ci(tau, 0.99);
    ccdf.write_row({fmt(tau), fmt(emp.eval(tau)), fmt(interval.lo), fmt(interval.hi)});
  }
  return {samples.path(), ccdf.path()};
}

std::vector<std::string> run_compare(const ScenarioConfig& cfg,
                                     const std::string& out_dir) {
  require_nonempty(cfg.taus, "tau_hours");
  require_nonempty(cfg.betas, "beta");
  const long n = require_single_node_count(cfg);
  const EnergyModel& energy = cfg.require_energy();

  CsvFile csv(output_path(out_dir, "compare.csv"), cfg,
              {"beta", "tau_hours", "analytic_ccdf", "empirical_ccdf", "deviation",
               "ci99_lo", "ci99_hi", "inside_ci", "max_abs_deviation"});
  for (double beta : cfg.betas) {
    ScenarioConfig one_beta = cfg;
    one_beta.betas = {beta};
    const EmpiricalCcdf emp = simulate_for(one_beta, beta);

    std::function<double(double)> analytic;
    if (cfg.mode == "multi-hop") {
      const RingConfig ring =
          ring_config_for(cfg, energy.range(), n, cfg.require_traffic().rate_at(0.0));
      analytic = [&, ring](double tau) { return multihop_ccdf(ring, energy, tau, beta); };
    } else {
      analytic = [&](double tau) {
        const SurvivalMoments m =
            survival_moments(cfg.require_shape(), energy, cfg.require_traffic(), tau,
                             cfg.semantics, cfg.quad);
        return network_ccdf(LifetimeQuery(tau, beta, n), m);
      };
    }
    const ComparisonReport report = empirical_vs_analytic(emp, analytic, cfg.taus, 0.99);
    for (const ComparisonRow& row : report.rows) {
      csv.write_row({fmt(beta), fmt(row.tau), fmt(row.analytic), fmt(row.empirical),
                     fmt(row.deviation), fmt(row.ci_lo), fmt(row.ci_hi),
                     fmt(static_cast<long>(row.inside_ci ? 1 : 0)),
                     fmt(report.max_abs_deviation)});
    }
  }
  return {csv.path()};
}

std::vector<std::string> run_predict(const ScenarioConfig& cfg,
                                     const std::string& out_dir) {
  require_nonempty(cfg.taus, "tau_hours");
  require_nonempty(cfg.betas, "beta");
  const AreaShape& shape = cfg.require_shape();
  const EnergyModel& energy = cfg.require_energy();
  const TrafficModel& traffic = cfg.require_traffic();

  CsvFile csv(output_path(out_dir, "predict.csv"), cfg,
              {"tau_hours", "beta", "mu", "a", "verdict"});
  for (double tau : cfg.taus) {
    const SurvivalMoments m =
        survival_moments(shape, energy, traffic, tau, cfg.semantics, cfg.quad);
    for (double beta : cfg.betas) {
      const double a = 1.0 - beta - m.mu;
      csv.write_row({fmt(tau), fmt(beta), fmt(m.mu), fmt(a),
                     verdict_name(asymptotic_predict(beta, m.mu))});
    }
  }
  return {csv.path()};
}

}  // namespace lifespan
