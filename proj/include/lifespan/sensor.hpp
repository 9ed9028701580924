#pragma once

#include "lifespan/models.hpp"

namespace lifespan {

// One evaluated point of the per-sensor survival law.
struct SensorSurvival {
  double capacity;     // packets
  double rate;         // packets/hour
  double threshold;    // hours
  double probability;  // P(death time >= threshold)
};

// P(t >= tau) for a sensor with packet budget p and Poisson rate lambda:
// 1 - P(p, lambda*tau) with P the regularized lower incomplete gamma.
// Requires p > 0, lambda > 0, tau >= 0.
double survival_exact(double capacity, double rate, double threshold);

// Central-limit approximation Q((tau - p/lambda) / (sqrt(p)/lambda)).
// Approximates survival_exact; good to ~0.01 once p is in the hundreds.
double survival_clt(double capacity, double rate, double threshold);

// Fixed-range survival: survival_exact evaluated at p_f = E_i/e(r).
// Rejects adjustable-power models.
double survival_fixed_range(const EnergyModel& energy, double rate,
                            double threshold);

// Time-driven lifetime floor(p)*T: deterministic, no distribution involved.
double lifetime_time_driven(double capacity, double period);

SensorSurvival sensor_survival(double capacity, double rate, double threshold);

}  // namespace lifespan
