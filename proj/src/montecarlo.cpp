#include "lifespan/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

#include "lifespan/specfun.hpp"

namespace lifespan {

namespace {

// Above this budget a node's death time is drawn as one exact gamma variate
// instead of summing exponentials; the law is identical, the cost is O(1).
constexpr long kGammaSamplingThreshold = 10000;

// ceil with a guard against fp noise in products like beta*N.
long ceil_count(double x) { return static_cast<long>(std::ceil(x - 1e-9)); }

double death_time(long packets, double rate, RngStream& rng) {
  if (packets <= 0) return 0.0;
  if (packets <= kGammaSamplingThreshold) {
    double t = 0.0;
    for (long i = 0; i < packets; ++i) t += rng.exponential(rate);
    return t;
  }
  return rng.gamma(static_cast<double>(packets)) / rate;
}

double order_statistic(const std::vector<double>& values, long k) {
  std::vector<double> scratch(values);
  auto nth = scratch.begin() + (k - 1);
  std::nth_element(scratch.begin(), nth, scratch.end());
  return *nth;
}

void validate_trial_args(long nodes, double beta) {
  if (nodes < 1) throw std::domain_error("simulate: requires at least one node");
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw std::domain_error("simulate: requires beta in (0, 1]");
  }
}

template <typename TrialFn>
std::vector<double> run_trials(long trials, int threads, const TrialFn& fn) {
  if (trials < 1) throw std::domain_error("simulate: requires at least one trial");
  std::vector<double> lifetimes(static_cast<std::size_t>(trials));
  const int workers = std::min<long>(worker_count(threads), trials);
  if (workers <= 1) {
    for (long t = 0; t < trials; ++t) lifetimes[t] = fn(t);
    return lifetimes;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const long begin = trials * w / workers;
    const long end = trials * (w + 1) / workers;
    pool.emplace_back([&, begin, end, w] {
      try {
        for (long t = begin; t < end; ++t) lifetimes[t] = fn(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return lifetimes;
}

}  // namespace

int worker_count(int requested) {
  long cap = 1L << 20;
  if (const char* env = std::getenv("LIFESPAN_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) cap = v;
  }
  long n = requested > 0
               ? requested
               : static_cast<long>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min(n, cap));
}

EmpiricalCcdf::EmpiricalCcdf(std::vector<double> lifetimes)
    : samples_(std::move(lifetimes)) {
  if (samples_.empty()) {
    throw std::domain_error("EmpiricalCcdf: requires at least one sample");
  }
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCcdf::eval(double tau) const {
  auto first_ge = std::lower_bound(samples_.begin(), samples_.end(), tau);
  return static_cast<double>(samples_.end() - first_ge) /
         static_cast<double>(samples_.size());
}

EmpiricalCcdf::Interval EmpiricalCcdf::ci(double tau, double level) const {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("EmpiricalCcdf::ci: requires level in (0, 1)");
  }
  const double p = eval(tau);
  const double n = static_cast<double>(samples_.size());
  const double z = inverse_gaussian_ccdf((1.0 - level) / 2.0);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

TrialResult single_hop_trial(const AreaShape& shape, const EnergyModel& energy,
                             const TrafficModel& traffic, long nodes, double beta,
                             RngStream& rng) {
  validate_trial_args(nodes, beta);
  const bool time_driven = traffic.kind() == TrafficModel::Kind::TimeDriven;
  TrialResult result;
  result.death_times.reserve(static_cast<std::size_t>(nodes));
  for (long i = 0; i < nodes; ++i) {
    const double d = sample_distance(shape, rng);
    const long packets =
        static_cast<long>(std::floor(packet_capacity(energy, d)));
    double t;
    if (time_driven) {
      t = static_cast<double>(packets) * traffic.period();
    } else {
      t = death_time(packets, traffic.rate_at(d), rng);
    }
    result.death_times.push_back(t);
  }
  const long k = std::clamp(ceil_count(beta * static_cast<double>(nodes)), 1L, nodes);
  result.network_lifetime = order_statistic(result.death_times, k);
  return result;
}

TrialResult multi_hop_trial(const RingConfig& cfg, const EnergyModel& energy,
                            double beta, RngStream& rng) {
  if (!energy.is_fixed_range()) {
    throw std::invalid_argument("multi_hop_trial: requires a fixed-range energy model");
  }
  validate_trial_args(cfg.nodes(), beta);

  // Place every node into its ring; only the first-ring population matters
  // beyond its size (outer nodes contribute traffic volume, not deaths).
  const int rings = cfg.ring_count();
  std::vector<double> cumulative(rings);
  double acc = 0.0;
  for (int i = 0; i < rings; ++i) {
    acc += ring_probability(cfg, i + 1);
    cumulative[i] = acc;
  }
  long first_ring = 0;
  for (long i = 0; i < cfg.nodes(); ++i) {
    const double u = rng.uniform01();
    if (u < cumulative[0]) ++first_ring;
  }

  TrialResult result;
  if (first_ring == 0) {
    result.network_lifetime = 0.0;  // no node can reach the sink
    return result;
  }
  const double lambda1 =
      cfg.rate() * static_cast<double>(cfg.nodes()) / static_cast<double>(first_ring);
  const long packets = static_cast<long>(std::floor(fixed_packet_capacity(energy)));
  result.death_times.reserve(static_cast<std::size_t>(first_ring));
  for (long i = 0; i < first_ring; ++i) {
    result.death_times.push_back(death_time(packets, lambda1, rng));
  }
  const long k =
      std::clamp(ceil_count(beta * static_cast<double>(first_ring)), 1L, first_ring);
  result.network_lifetime = order_statistic(result.death_times, k);
  return result;
}

EmpiricalCcdf simulate_single_hop(const AreaShape& shape, const EnergyModel& energy,
                                  const TrafficModel& traffic, long nodes, double beta,
                                  long trials, std::uint64_t seed, int threads) {
  validate_trial_args(nodes, beta);
  return EmpiricalCcdf(run_trials(trials, threads, [&](long t) {
    RngStream rng = RngStream::for_trial(seed, static_cast<std::uint64_t>(t));
    return single_hop_trial(shape, energy, traffic, nodes, beta, rng).network_lifetime;
  }));
}

EmpiricalCcdf simulate_multi_hop(const RingConfig& cfg, const EnergyModel& energy,
                                 double beta, long trials, std::uint64_t seed,
                                 int threads) {
  if (!energy.is_fixed_range()) {
    throw std::invalid_argument("simulate_multi_hop: requires a fixed-range energy model");
  }
  validate_trial_args(cfg.nodes(), beta);
  return EmpiricalCcdf(run_trials(trials, threads, [&](long t) {
    RngStream rng = RngStream::for_trial(seed, static_cast<std::uint64_t>(t));
    return multi_hop_trial(cfg, energy, beta, rng).network_lifetime;
  }));
}

ComparisonReport empirical_vs_analytic(const EmpiricalCcdf& empirical,
                                       const std::function<double(double)>& analytic,
                                       const std::vector<double>& tau_grid,
                                       double ci_level) {
  if (tau_grid.empty()) {
    throw std::domain_error("empirical_vs_analytic: requires a nonempty grid");
  }
  ComparisonReport report;
  report.ci_level = ci_level;
  report.max_abs_deviation = 0.0;
  report.rows.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    ComparisonRow row;
    row.tau = tau;
    row.analytic = analytic(tau);
    row.empirical = empirical.eval(tau);
    row.deviation = row.analytic - row.empirical;
    const auto interval = empirical.ci(tau, ci_level);
    row.ci_lo = interval.lo;
    row.ci_hi = interval.hi;
    row.inside_ci = row.analytic >= interval.lo && row.analytic <= interval.hi;
    report.max_abs_deviation =
        std::max(report.max_abs_deviation, std::fabs(row.deviation));
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace lifespan
