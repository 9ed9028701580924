#include "lifespan/multihop.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lifespan/sensor.hpp"
#include "lifespan/specfun.hpp"

namespace lifespan {

namespace {

void validate_ring_args(double range_m, long nodes, double rate) {
  if (!(range_m > 0.0) || !std::isfinite(range_m)) {
    throw std::domain_error("RingConfig: requires tx range > 0");
  }
  if (nodes < 1) {
    throw std::domain_error("RingConfig: requires at least one node");
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::domain_error("RingConfig: requires rate > 0");
  }
}

}  // namespace

RingConfig RingConfig::circle(double area_radius_m, double tx_range_m, long nodes,
                              double rate_per_hour) {
  if (!(area_radius_m > 0.0) || !std::isfinite(area_radius_m)) {
    throw std::domain_error("RingConfig: requires area radius > 0");
  }
  validate_ring_args(tx_range_m, nodes, rate_per_hour);
  RingConfig cfg;
  cfg.circle_ = true;
  cfg.radius_ = area_radius_m;
  cfg.area_ = std::numbers::pi * area_radius_m * area_radius_m;
  cfg.range_ = tx_range_m;
  cfg.nodes_ = nodes;
  cfg.rate_ = rate_per_hour;
  // ceil with a small guard so exact multiples are not pushed up by fp noise
  cfg.rings_ = static_cast<int>(std::ceil(area_radius_m / tx_range_m - 1e-9));
  if (cfg.rings_ < 1) cfg.rings_ = 1;
  return cfg;
}

RingConfig RingConfig::general_area(double area_m2, double tx_range_m, long nodes,
                                    double rate_per_hour) {
  if (!(area_m2 > 0.0) || !std::isfinite(area_m2)) {
    throw std::domain_error("RingConfig: requires area > 0");
  }
  validate_ring_args(tx_range_m, nodes, rate_per_hour);
  if (std::numbers::pi * tx_range_m * tx_range_m > area_m2 * (1.0 + 1e-12)) {
    throw std::domain_error("RingConfig: pi r^2 exceeds the area; q_1 would exceed 1");
  }
  RingConfig cfg;
  cfg.circle_ = false;
  cfg.area_ = area_m2;
  cfg.range_ = tx_range_m;
  cfg.nodes_ = nodes;
  cfg.rate_ = rate_per_hour;
  cfg.rings_ = 1;
  return cfg;
}

double RingConfig::area_radius() const {
  if (!circle_) {
    throw std::invalid_argument("RingConfig::area_radius: not a circular area");
  }
  return radius_;
}

double ring_probability(const RingConfig& cfg, int ring) {
  if (ring < 1 || ring > cfg.ring_count()) {
    throw std::domain_error("ring_probability: ring index out of range");
  }
  if (!cfg.is_circle()) {
    return std::numbers::pi * cfg.tx_range() * cfg.tx_range() / cfg.area();
  }
  // Annulus area over total area; the outermost ring may be truncated at R.
  const double r = cfg.tx_range();
  const double R = cfg.area_radius();
  const double inner = (ring - 1) * r;
  const double outer = std::min(ring * r, R);
  return (outer * outer - inner * inner) / (R * R);
}

double ring_rate(const RingConfig& cfg, int ring, const std::vector<long>& counts) {
  if (ring < 1 || ring > cfg.ring_count()) {
    throw std::domain_error("ring_rate: ring index out of range");
  }
  if (counts.size() != static_cast<std::size_t>(cfg.ring_count())) {
    throw std::domain_error("ring_rate: need one count per ring");
  }
  long total = 0;
  for (long c : counts) {
    if (c < 0) throw std::domain_error("ring_rate: negative ring count");
    total += c;
  }
  if (total != cfg.nodes()) {
    throw std::domain_error("ring_rate: counts must sum to the node total");
  }
  if (counts[ring - 1] == 0) {
    throw std::domain_error("ring_rate: rate undefined for an empty ring");
  }
  long outer_load = cfg.nodes();
  for (int i = 0; i < ring - 1; ++i) outer_load -= counts[i];
  return cfg.rate() * static_cast<double>(outer_load) /
         static_cast<double>(counts[ring - 1]);
}

double multihop_ccdf(const RingConfig& cfg, const EnergyModel& energy, double tau,
                     double beta) {
  if (!energy.is_fixed_range()) {
    throw std::invalid_argument("multihop_ccdf: requires a fixed-range energy model");
  }
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw std::domain_error("multihop_ccdf: requires tau >= 0");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw std::domain_error("multihop_ccdf: requires beta in (0, 1]");
  }
  if (tau == 0.0) return 1.0;

  const double p_f = fixed_packet_capacity(energy);
  const double q1 = ring_probability(cfg, 1);
  const long n = cfg.nodes();

  // Uncondition the first-ring Q-form over N_1 ~ Binomial(N, q1). The j = 0
  // outcome contributes no survival. Compensated summation keeps the result
  // independent of any term grouping.
  double sum = 0.0, comp = 0.0;
  for (long j = 1; j <= n; ++j) {
    const double logw = binomial_log_pmf(n, j, q1);
    if (logw == -std::numeric_limits<double>::infinity()) continue;
    const double lambda1 = cfg.rate() * static_cast<double>(n) / static_cast<double>(j);
    const double mu = survival_exact(p_f, lambda1, tau);
    const double var = mu - mu * mu;
    const double a = 1.0 - beta - mu;
    double term;
    if (var <= 0.0) {
      term = a < 0.0 ? 1.0 : (a > 0.0 ? 0.0 : 0.5);
    } else {
      term = gaussian_ccdf(std::sqrt(static_cast<double>(j)) * a / std::sqrt(var));
    }
    const double y = std::exp(logw) * term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return std::min(1.0, std::max(0.0, sum));
}

}  // namespace lifespan
