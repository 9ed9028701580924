#pragma once

#include <vector>

#include "lifespan/models.hpp"

namespace lifespan {

// Ring decomposition of a multi-hop network: annuli of width r around the
// sink. Ring 1 relays the whole network's traffic and defines the lifetime.
//
// Circles carry the full ring structure (ring i has occupation probability
// q_i proportional to its annulus area; R need not be a multiple of r — the
// outer ring is then truncated and the q_i come from the actual areas).
// Other shapes are described by their area alone and support only the first
// ring, with q_1 = pi r^2 / S.
class RingConfig {
 public:
  static RingConfig circle(double area_radius_m, double tx_range_m, long nodes,
                           double rate_per_hour);
  static RingConfig general_area(double area_m2, double tx_range_m, long nodes,
                                 double rate_per_hour);

  bool is_circle() const noexcept { return circle_; }
  int ring_count() const noexcept { return rings_; }
  double area_radius() const;  // circles only
  double area() const noexcept { return area_; }
  double tx_range() const noexcept { return range_; }
  long nodes() const noexcept { return nodes_; }
  double rate() const noexcept { return rate_; }

 private:
  RingConfig() = default;
  bool circle_ = true;
  int rings_ = 0;
  double radius_ = 0, area_ = 0, range_ = 0, rate_ = 0;
  long nodes_ = 0;
};

// q_i: probability that a uniformly placed node lands in ring i (1-based).
double ring_probability(const RingConfig& cfg, int ring);

// lambda_i = lambda * (N - N_1 - ... - N_{i-1}) / N_i: the per-node
// transmission rate in ring i once traffic is balanced within each ring.
// counts must sum to the configured node total; N_i = 0 is an error.
double ring_rate(const RingConfig& cfg, int ring, const std::vector<long>& counts);

// P(L >= tau) where L is the first-ring lifetime: the conditional Q-form
// given N_1 nodes in ring 1, decompiled over N_1 ~ Binomial(N, q_1) with
// weights in log space and compensated summation. The N_1 = 0 outcome
// contributes no survival for tau > 0 (nothing can reach the sink); at
// tau = 0 the ccdf is 1 by definition. Requires a fixed-range energy model.
double multihop_ccdf(const RingConfig& cfg, const EnergyModel& energy,
                     double tau, double beta);

}  // namespace lifespan
