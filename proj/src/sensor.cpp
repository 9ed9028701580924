#include "lifespan/sensor.hpp"

#include <cmath>
#include <stdexcept>

#include "lifespan/specfun.hpp"

namespace lifespan {

namespace {

void validate_survival_args(double capacity, double rate, double threshold) {
  if (!(capacity > 0.0) || !std::isfinite(capacity)) {
    throw std::domain_error("survival: requires capacity > 0");
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::domain_error("survival: requires rate > 0");
  }
  if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
    throw std::domain_error("survival: requires threshold >= 0");
  }
}

}  // namespace

double survival_exact(double capacity, double rate, double threshold) {
  validate_survival_args(capacity, rate, threshold);
  return 1.0 - regularized_lower_gamma(capacity, rate * threshold);
}

double survival_clt(double capacity, double rate, double threshold) {
  validate_survival_args(capacity, rate, threshold);
  const double mean = capacity / rate;
  const double sd = std::sqrt(capacity) / rate;
  return gaussian_ccdf((threshold - mean) / sd);
}

double survival_fixed_range(const EnergyModel& energy, double rate,
                            double threshold) {
  if (!energy.is_fixed_range()) {
    throw std::invalid_argument("survival_fixed_range: requires a fixed-range model");
  }
  return survival_exact(fixed_packet_capacity(energy), rate, threshold);
}

double lifetime_time_driven(double capacity, double period) {
  if (!(capacity > 0.0) || !std::isfinite(capacity)) {
    throw std::domain_error("lifetime_time_driven: requires capacity > 0");
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw std::domain_error("lifetime_time_driven: requires period > 0");
  }
  return std::floor(capacity) * period;
}

SensorSurvival sensor_survival(double capacity, double rate, double threshold) {
  return {capacity, rate, threshold, survival_exact(capacity, rate, threshold)};
}

}  // namespace lifespan
