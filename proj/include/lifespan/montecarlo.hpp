#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lifespan/geometry.hpp"
#include "lifespan/models.hpp"
#include "lifespan/multihop.hpp"
#include "lifespan/rng.hpp"

namespace lifespan {

// Number of simulation workers: `requested` if positive, otherwise the
// hardware concurrency, in both cases capped by LIFESPAN_THREADS when set.
int worker_count(int requested = 0);

// One simulated deployment. network_lifetime is the ceil(beta*n)-th smallest
// death time over the n nodes in scope (all nodes single-hop, first-ring
// nodes multi-hop).
struct TrialResult {
  std::vector<double> death_times;
  double network_lifetime;
};

// Empirical ccdf over simulated network lifetimes.
class EmpiricalCcdf {
 public:
  explicit EmpiricalCcdf(std::vector<double> lifetimes);

  double eval(double tau) const;  // fraction of samples >= tau
  struct Interval {
    double lo, hi;
  };
  // Wilson score interval at the given confidence level; always contains
  // eval(tau) and stays meaningful at empirical 0 and 1.
  Interval ci(double tau, double level) const;

  const std::vector<double>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

 private:
  std::vector<double> samples_;  // sorted ascending
};

TrialResult single_hop_trial(const AreaShape& shape, const EnergyModel& energy,
                             const TrafficModel& traffic, long nodes, double beta,
                             RngStream& rng);
TrialResult multi_hop_trial(const RingConfig& cfg, const EnergyModel& energy,
                            double beta, RngStream& rng);

// Run `trials` independent deployments. Deterministic for a fixed seed no
// matter how many threads run the trials.
EmpiricalCcdf simulate_single_hop(const AreaShape& shape, const EnergyModel& energy,
                                  const TrafficModel& traffic, long nodes, double beta,
                                  long trials, std::uint64_t seed, int threads = 0);
EmpiricalCcdf simulate_multi_hop(const RingConfig& cfg, const EnergyModel& energy,
                                 double beta, long trials, std::uint64_t seed,
                                 int threads = 0);

struct ComparisonRow {
  double tau;
  double analytic;
  double empirical;
  double deviation;  // analytic - empirical
  double ci_lo, ci_hi;
  bool inside_ci;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double max_abs_deviation;
  double ci_level;
};

// Point-by-point comparison of an analytic ccdf against an empirical one.
ComparisonReport empirical_vs_analytic(const EmpiricalCcdf& empirical,
                                       const std::function<double(double)>& analytic,
                                       const std::vector<double>& tau_grid,
                                       double ci_level = 0.99);

}  // namespace lifespan
