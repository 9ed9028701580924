#include "lifespan/models.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace lifespan {

namespace {

void validate_energy(double k, double c, double alpha, double initial_energy) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::domain_error("EnergyModel: requires k > 0");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::domain_error("EnergyModel: requires c > 0");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("EnergyModel: requires alpha > 0");
  }
  if (!(initial_energy > 0.0) || !std::isfinite(initial_energy)) {
    throw std::domain_error("EnergyModel: requires initial_energy > 0");
  }
}

}  // namespace

EnergyModel EnergyModel::adjustable(double k, double c, double alpha,
                                    double initial_energy) {
  validate_energy(k, c, alpha, initial_energy);
  EnergyModel m;
  m.fixed_range_ = false;
  m.k_ = k;
  m.c_ = c;
  m.alpha_ = alpha;
  m.initial_energy_ = initial_energy;
  return m;
}

EnergyModel EnergyModel::fixed_range(double range_m, double k, double c,
                                     double alpha, double initial_energy) {
  validate_energy(k, c, alpha, initial_energy);
  if (!(range_m > 0.0) || !std::isfinite(range_m)) {
    throw std::domain_error("EnergyModel: requires range > 0");
  }
  EnergyModel m;
  m.fixed_range_ = true;
  m.k_ = k;
  m.c_ = c;
  m.alpha_ = alpha;
  m.range_m_ = range_m;
  m.initial_energy_ = initial_energy;
  return m;
}

double EnergyModel::range() const {
  if (!fixed_range_) {
    throw std::invalid_argument("EnergyModel::range: adjustable-power model has no fixed range");
  }
  return range_m_;
}

TrafficModel TrafficModel::poisson(double rate_per_hour) {
  if (!(rate_per_hour > 0.0) || !std::isfinite(rate_per_hour)) {
    throw std::domain_error("TrafficModel: requires rate > 0");
  }
  TrafficModel t;
  t.kind_ = Kind::Poisson;
  t.rate_ = rate_per_hour;
  return t;
}

TrafficModel TrafficModel::position_poisson(std::function<double(double)> rate_at_distance) {
  if (!rate_at_distance) {
    throw std::domain_error("TrafficModel: rate function must be callable");
  }
  TrafficModel t;
  t.kind_ = Kind::PositionPoisson;
  t.rate_fn_ = std::move(rate_at_distance);
  return t;
}

TrafficModel TrafficModel::time_driven(double period_hours) {
  if (!(period_hours > 0.0) || !std::isfinite(period_hours)) {
    throw std::domain_error("TrafficModel: requires period > 0");
  }
  TrafficModel t;
  t.kind_ = Kind::TimeDriven;
  t.period_ = period_hours;
  return t;
}

double TrafficModel::rate_at(double distance_m) const {
  switch (kind_) {
    case Kind::Poisson:
      return rate_;
    case Kind::PositionPoisson: {
      double r = rate_fn_(distance_m);
      if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::domain_error("TrafficModel: position-dependent rate must be > 0");
      }
      return r;
    }
    case Kind::TimeDriven:
      break;
  }
  throw std::invalid_argument("TrafficModel::rate_at: time-driven traffic has no rate");
}

double TrafficModel::period() const {
  if (kind_ != Kind::TimeDriven) {
    throw std::invalid_argument("TrafficModel::period: not a time-driven model");
  }
  return period_;
}

double packet_energy(const EnergyModel& energy, double distance_m) {
  if (energy.is_fixed_range()) {
    return energy.k() * std::pow(energy.range(), energy.alpha()) + energy.c();
  }
  if (!(distance_m >= 0.0) || !std::isfinite(distance_m)) {
    throw std::domain_error("packet_energy: requires distance >= 0");
  }
  return energy.k() * std::pow(distance_m, energy.alpha()) + energy.c();
}

double packet_capacity(const EnergyModel& energy, double distance_m) {
  return energy.initial_energy() / packet_energy(energy, distance_m);
}

double fixed_packet_capacity(const EnergyModel& energy) {
  if (!energy.is_fixed_range()) {
    throw std::invalid_argument("fixed_packet_capacity: requires a fixed-range model");
  }
  return energy.initial_energy() / packet_energy(energy, 0.0);
}

double sample_interarrival(const TrafficModel& traffic, double distance_m,
                           RngStream& rng) {
  switch (traffic.kind()) {
    case TrafficModel::Kind::Poisson:
    case TrafficModel::Kind::PositionPoisson:
      return rng.exponential(traffic.rate_at(distance_m));
    case TrafficModel::Kind::TimeDriven:
      return traffic.period();
  }
  throw std::logic_error("sample_interarrival: unreachable");
}

}  // namespace lifespan
