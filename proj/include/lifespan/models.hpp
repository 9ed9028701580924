#pragma once

#include <functional>

#include "lifespan/rng.hpp"

namespace lifespan {

// Per-packet transmit energy e(d) = k*d^alpha + c (joules), plus the initial
// battery budget. Two transmission modes:
//   - adjustable power: e depends on the node's distance to the sink;
//   - fixed range r:    every packet costs e(r) regardless of distance.
class EnergyModel {
 public:
  static EnergyModel adjustable(double k, double c, double alpha,
                                double initial_energy);
  static EnergyModel fixed_range(double range_m, double k, double c,
                                 double alpha, double initial_energy);

  bool is_fixed_range() const noexcept { return fixed_range_; }
  double k() const noexcept { return k_; }
  double c() const noexcept { return c_; }
  double alpha() const noexcept { return alpha_; }
  double range() const;  // fixed-range models only
  double initial_energy() const noexcept { return initial_energy_; }

 private:
  EnergyModel() = default;
  bool fixed_range_ = false;
  double k_ = 0, c_ = 0, alpha_ = 0, range_m_ = 0, initial_energy_ = 0;
};

// Packet generation process. Poisson traffic has exponential interarrivals
// with the given rate; the position-dependent variant lets the rate vary with
// the node's distance to the sink; time-driven traffic transmits at a fixed
// period.
class TrafficModel {
 public:
  enum class Kind { Poisson, PositionPoisson, TimeDriven };

  static TrafficModel poisson(double rate_per_hour);
  static TrafficModel position_poisson(std::function<double(double)> rate_at_distance);
  static TrafficModel time_driven(double period_hours);

  Kind kind() const noexcept { return kind_; }
  double rate_at(double distance_m) const;  // Poisson kinds only
  double period() const;                    // time-driven only

 private:
  TrafficModel() = default;
  Kind kind_ = Kind::Poisson;
  double rate_ = 0, period_ = 0;
  std::function<double(double)> rate_fn_;
};

// e(d) in joules. Fixed-range models ignore d and charge e(r).
double packet_energy(const EnergyModel& energy, double distance_m);

// p = E_i / e(d), the (real-valued) packet budget of a node at distance d.
// Callers choose between continuous p (analytic path) and floor(p) (the
// simulator's ground truth).
double packet_capacity(const EnergyModel& energy, double distance_m);

// p_f = E_i / e(r) for fixed-range models.
double fixed_packet_capacity(const EnergyModel& energy);

// Draw the time to the next transmission for a node at the given distance.
double sample_interarrival(const TrafficModel& traffic, double distance_m,
                           RngStream& rng);

}  // namespace lifespan
