#include "lifespan/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace lifespan {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : engine_(seed) {}

RngStream RngStream::for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
  // Counter-based split: scramble (seed, index) through splitmix64 so nearby
  // trial indices land on unrelated engine seeds.
  std::uint64_t state = master_seed ^ (trial_index * 0x632BE59BD9B4E019ULL);
  splitmix64(state);
  std::uint64_t derived = splitmix64(state);
  return RngStream(derived);
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0)) {
    throw std::domain_error("RngStream::exponential: requires rate > 0");
  }
  return -std::log1p(-uniform01()) / rate;
}

double RngStream::normal() {
  // Polar method; the second variate is discarded to keep the stream
  // stateless between calls.
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) {
    throw std::domain_error("RngStream::gamma: requires shape > 0");
  }
  if (shape < 1.0) {
    // Boost: G(a) = G(a+1) * U^{1/a}.
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  while (true) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (u == 0.0) continue;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace lifespan
