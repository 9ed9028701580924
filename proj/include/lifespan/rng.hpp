#pragma once

#include <cstdint>
#include <random>

namespace lifespan {

// Seeded random stream with the samplers the simulator needs. All samplers
// are implemented on top of raw 64-bit draws so that results are
// bit-reproducible across platforms and standard-library versions.
//
// Parallel trials use for_trial(master, i): the per-trial stream depends only
// on (master seed, trial index), never on the thread that runs it.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);
  static RngStream for_trial(std::uint64_t master_seed, std::uint64_t trial_index);

  std::uint64_t next_u64();
  double uniform01();                 // in [0, 1)
  double exponential(double rate);    // inverse CDF; rate > 0
  double normal();                    // polar method
  double gamma(double shape);         // unit rate; Marsaglia-Tsang

 private:
  std::mt19937_64 engine_;
};

}  // namespace lifespan
