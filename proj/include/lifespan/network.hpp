#pragma once

#include "lifespan/geometry.hpp"
#include "lifespan/models.hpp"
#include "lifespan/specfun.hpp"

namespace lifespan {

// Mean and standard deviation of the Bernoulli indicator "this randomly
// placed sensor survives past tau". sigma = sqrt(mu - mu^2) by construction.
struct SurvivalMoments {
  double mu;
  double sigma;
  double tau;
};

// The lifetime event under test: the network achieves lifetime tau if fewer
// than a fraction beta of its N nodes are dead at tau. beta = 1/N encodes the
// first-node-death definition.
struct LifetimeQuery {
  LifetimeQuery(double tau, double beta, long nodes);
  double tau;
  double beta;
  long nodes;
};

// Which packet-budget law the moment integral uses. Continuous treats p as
// real-valued (the analytic simplification); Floored integrates the survival
// of floor(p), which is the simulator's exact generative law. The two differ
// by up to ~0.4*frac(p)/sqrt(p) per sensor, which matters wherever the
// budget distribution is narrow.
enum class CapacitySemantics { Continuous, Floored };

// E[survival] of a randomly placed sensor at tau, assembled per traffic and
// energy model: adjustable power integrates against the capacity density;
// fixed range is a single survival evaluation; position-dependent rates
// integrate over distance; time-driven reduces to a distance-CDF lookup.
SurvivalMoments survival_moments(const AreaShape& shape, const EnergyModel& energy,
                                 const TrafficModel& traffic, double tau,
                                 CapacitySemantics semantics = CapacitySemantics::Continuous,
                                 const QuadratureSpec& quad = {});

// P(L >= tau) = Q(sqrt(N) * (1 - beta - mu) / sigma). The degenerate case
// sigma = 0 returns the exact limit: 1 when 1-beta-mu < 0, 0 when > 0, and
// 0.5 on the boundary. The query and moments must refer to the same tau.
double network_ccdf(const LifetimeQuery& query, const SurvivalMoments& moments);

// Density of the network lifetime at tau (> 0): the negative tau-derivative
// of the ccdf in closed form. Requires Poisson traffic and adjustable power;
// the inner integral is evaluated in log space to survive large budgets.
double network_pdf(double tau, const LifetimeQuery& query, const AreaShape& shape,
                   const EnergyModel& energy, const TrafficModel& traffic,
                   const QuadratureSpec& quad = {});

// Large-N verdict from the sign of a = 1 - beta - mu: the achievement
// probability tends to 0 (a > 0) or 1 (a < 0) with an error decaying like
// exp(-N a^2 / (2 sigma^2)).
enum class AsymptoticVerdict { AchievesAlmostSurely, FailsAlmostSurely, Critical };
AsymptoticVerdict asymptotic_predict(double beta, double mu);

// For non-identically distributed sensors whose survival means average to
// mean_mu, the equal-mu formula maximizes the variance of the alive count,
// so it bounds the true probability: from above when 1-beta-mu > 0, from
// below when < 0, exactly at the boundary.
enum class BoundDirection { UpperBound, LowerBound, Exact };
BoundDirection hetero_bound_direction(const LifetimeQuery& query, double mean_mu);

}  // namespace lifespan
