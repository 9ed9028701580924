#include "lifespan/network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lifespan/sensor.hpp"

namespace lifespan {

namespace {

// Integrate f over [lo, hi], splitting at the interior cut points (sorted,
// deduplicated, restricted to the open interval). Keeps the adaptive rule
// away from known kinks and branch junctions.
double integrate_with_cuts(const std::function<double(double)>& f, double lo, double hi,
                           std::vector<double> cuts, const QuadratureSpec& quad) {
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [&](double c) { return !(c > lo && c < hi); }),
             cuts.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  double a = lo;
  for (double c : cuts) {
    if (c > a) total += integrate(f, a, c, quad);
    a = c;
  }
  if (hi > a) total += integrate(f, a, hi, quad);
  return total;
}

// Distance at which the packet budget equals x (adjustable power), anchored
// at the representable support endpoint like capacity_pdf.
double distance_of_capacity(const EnergyModel& energy, double x) {
  const double hi = energy.initial_energy() / energy.c();
  const double w = energy.c() * (hi - x) / (energy.k() * x);
  return std::pow(w, 1.0 / energy.alpha());
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

SurvivalMoments make_moments(double mu, double tau) {
  mu = clamp01(mu);
  return {mu, std::sqrt(std::max(0.0, mu - mu * mu)), tau};
}

// Smallest packet count m with m * period >= tau (tau > 0).
long min_packets_time_driven(double tau, double period) {
  return static_cast<long>(std::ceil(tau / period - 1e-12));
}

// E[survival] over the capacity density: continuous semantics integrates the
// survival of the real-valued budget; floored semantics sums over the integer
// budget classes, each weighted by its exact probability mass. floor(p) = 0
// nodes never survive a positive threshold. Integration runs in the
// tail variable u = hi - p so the singular end of the density is perfectly
// conditioned.
double adjustable_poisson_mu(const AreaShape& shape, const EnergyModel& energy,
                             double rate, double tau, CapacitySemantics semantics,
                             const QuadratureSpec& quad) {
  const CapacitySupport sup = capacity_support(shape, energy);
  const double u_hi = sup.hi - sup.lo;
  const std::vector<double> branch_cut = {sup.hi - sup.inner_break};
  auto density = [&](double u) { return capacity_pdf_from_tail(shape, energy, u); };
  if (semantics == CapacitySemantics::Continuous) {
    auto f = [&](double u) { return survival_exact(sup.hi - u, rate, tau) * density(u); };
    return integrate_with_cuts(f, 0.0, u_hi, branch_cut, quad);
  }
  double mu = 0.0;
  const long m_lo = static_cast<long>(std::floor(sup.lo));
  const long m_hi = static_cast<long>(std::ceil(sup.hi - 1e-12)) - 1;
  for (long m = std::max<long>(1, m_lo); m <= m_hi; ++m) {
    const double u_a = std::max(0.0, sup.hi - static_cast<double>(m + 1));
    const double u_b = std::min(u_hi, sup.hi - static_cast<double>(m));
    if (!(u_b > u_a)) continue;
    const double mass = integrate_with_cuts(density, u_a, u_b, branch_cut, quad);
    mu += survival_exact(static_cast<double>(m), rate, tau) * mass;
  }
  return mu;
}

// Position-dependent rates force the integral onto the distance axis, where
// both the budget p(d) and the rate lambda(d) are deterministic functions.
double position_poisson_mu(const AreaShape& shape, const EnergyModel& energy,
                           const TrafficModel& traffic, double tau,
                           CapacitySemantics semantics, const QuadratureSpec& quad) {
  const double rc = shape.circumradius();
  std::vector<double> cuts;
  if (!shape.is_circle()) cuts.push_back(shape.inradius());

  if (energy.is_fixed_range()) {
    double p = fixed_packet_capacity(energy);
    if (semantics == CapacitySemantics::Floored) p = std::floor(p);
    if (p < 1.0 && semantics == CapacitySemantics::Floored) return 0.0;
    auto f = [&](double d) {
      return survival_exact(p, traffic.rate_at(d), tau) * distance_pdf(shape, d);
    };
    return integrate_with_cuts(f, 0.0, rc, cuts, quad);
  }

  if (semantics == CapacitySemantics::Continuous) {
    auto f = [&](double d) {
      return survival_exact(packet_capacity(energy, d), traffic.rate_at(d), tau) *
             distance_pdf(shape, d);
    };
    return integrate_with_cuts(f, 0.0, rc, cuts, quad);
  }

  // Floored: split the distance axis where floor(p(d)) steps.
  const CapacitySupport sup = capacity_support(shape, energy);
  for (long m = static_cast<long>(std::ceil(sup.lo)); m <= static_cast<long>(sup.hi); ++m) {
    const double d = distance_of_capacity(energy, static_cast<double>(m));
    if (d > 0.0 && d < rc) cuts.push_back(d);
  }
  auto f = [&](double d) {
    const double m = std::floor(packet_capacity(energy, d));
    if (m < 1.0) return 0.0;
    return survival_exact(m, traffic.rate_at(d), tau) * distance_pdf(shape, d);
  };
  return integrate_with_cuts(f, 0.0, rc, cuts, quad);
}

// Time-driven lifetimes are deterministic given the budget, so the mean
// survival is a distance-CDF lookup: floor(p) T >= tau iff p >= m*.
double time_driven_mu(const AreaShape& shape, const EnergyModel& energy,
                      const TrafficModel& traffic, double tau) {
  const long m_star = min_packets_time_driven(tau, traffic.period());
  if (energy.is_fixed_range()) {
    return std::floor(fixed_packet_capacity(energy)) >= static_cast<double>(m_star) ? 1.0 : 0.0;
  }
  const CapacitySupport sup = capacity_support(shape, energy);
  const double m = static_cast<double>(m_star);
  if (m >= sup.hi) return 0.0;
  if (m <= sup.lo) return 1.0;
  return distance_cdf(shape, distance_of_capacity(energy, m));
}

}  // namespace

LifetimeQuery::LifetimeQuery(double tau_, double beta_, long nodes_)
    : tau(tau_), beta(beta_), nodes(nodes_) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw std::domain_error("LifetimeQuery: requires tau >= 0");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw std::domain_error("LifetimeQuery: requires beta in (0, 1]");
  }
  if (nodes < 1) {
    throw std::domain_error("LifetimeQuery: requires at least one node");
  }
}

SurvivalMoments survival_moments(const AreaShape& shape, const EnergyModel& energy,
                                 const TrafficModel& traffic, double tau,
                                 CapacitySemantics semantics, const QuadratureSpec& quad) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw std::domain_error("survival_moments: requires tau >= 0");
  }
  if (tau == 0.0) return {1.0, 0.0, 0.0};

  switch (traffic.kind()) {
    case TrafficModel::Kind::Poisson: {
      const double rate = traffic.rate_at(0.0);
      if (energy.is_fixed_range()) {
        double p = fixed_packet_capacity(energy);
        if (semantics == CapacitySemantics::Floored) {
          p = std::floor(p);
          if (p < 1.0) return make_moments(0.0, tau);
        }
        return make_moments(survival_exact(p, rate, tau), tau);
      }
      return make_moments(adjustable_poisson_mu(shape, energy, rate, tau, semantics, quad),
                          tau);
    }
    case TrafficModel::Kind::PositionPoisson:
      return make_moments(position_poisson_mu(shape, energy, traffic, tau, semantics, quad),
                          tau);
    case TrafficModel::Kind::TimeDriven:
      return make_moments(time_driven_mu(shape, energy, traffic, tau), tau);
  }
  throw std::logic_error("survival_moments: unreachable");
}

double network_ccdf(const LifetimeQuery& query, const SurvivalMoments& moments) {
  if (query.tau != moments.tau) {
    throw std::invalid_argument("network_ccdf: query and moments disagree on tau");
  }
  const double a = 1.0 - query.beta - moments.mu;
  if (moments.sigma == 0.0) {
    if (a < 0.0) return 1.0;
    if (a > 0.0) return 0.0;
    return 0.5;
  }
  const double n = static_cast<double>(query.nodes);
  return gaussian_ccdf(std::sqrt(n) * a / moments.sigma);
}

double network_pdf(double tau, const LifetimeQuery& query, const AreaShape& shape,
                   const EnergyModel& energy, const TrafficModel& traffic,
                   const QuadratureSpec& quad) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::domain_error("network_pdf: requires tau > 0");
  }
  if (traffic.kind() != TrafficModel::Kind::Poisson) {
    throw std::invalid_argument("network_pdf: requires Poisson traffic");
  }
  if (energy.is_fixed_range()) {
    throw std::invalid_argument("network_pdf: requires an adjustable-power model");
  }

  const SurvivalMoments m =
      survival_moments(shape, energy, traffic, tau, CapacitySemantics::Continuous, quad);
  const double var = m.mu - m.mu * m.mu;
  if (!(var > 1e-300)) return 0.0;  // both tails: the Gaussian factor wins

  const double rate = traffic.rate_at(0.0);
  const double lt = rate * tau;
  const CapacitySupport sup = capacity_support(shape, energy);

  // c(tau) = int f_p(x) (rate*tau)^{x-1} / Gamma(x) dx, handled in log space:
  // factor out the maximum of g(x) = (x-1) log(rate*tau) - lgamma(x), which
  // sits near x = rate*tau when that lies inside the support. Integration is
  // in the tail variable u = hi - x for the sake of the singular end.
  auto g = [&](double x) { return (x - 1.0) * std::log(lt) - std::lgamma(x); };
  double g_max = std::max(g(sup.lo), g(sup.hi));
  if (lt > sup.lo && lt < sup.hi) g_max = std::max(g_max, g(lt));
  auto integrand = [&](double u) {
    return capacity_pdf_from_tail(shape, energy, u) * std::exp(g(sup.hi - u) - g_max);
  };
  const double scaled = integrate_with_cuts(
      integrand, 0.0, sup.hi - sup.lo, {sup.hi - sup.inner_break, sup.hi - lt}, quad);
  if (!(scaled > 0.0)) return 0.0;

  const double n = static_cast<double>(query.nodes);
  const double beta = query.beta;
  const double a = 1.0 - beta - m.mu;
  const double shape_factor = 1.0 - m.mu - beta * (1.0 - 2.0 * m.mu);
  const double log_pdf = std::log(rate * std::sqrt(n) /
                                  (2.0 * std::sqrt(2.0 * std::numbers::pi))) +
                         std::log(shape_factor) - 1.5 * std::log(var) +
                         g_max + std::log(scaled) - lt - n * a * a / (2.0 * var);
  return std::exp(log_pdf);
}

AsymptoticVerdict asymptotic_predict(double beta, double mu) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw std::domain_error("asymptotic_predict: requires beta in (0, 1]");
  }
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::domain_error("asymptotic_predict: requires mu in [0, 1]");
  }
  const double a = 1.0 - beta - mu;
  if (std::fabs(a) <= 1e-12) return AsymptoticVerdict::Critical;
  return a > 0.0 ? AsymptoticVerdict::FailsAlmostSurely
                 : AsymptoticVerdict::AchievesAlmostSurely;
}

BoundDirection hetero_bound_direction(const LifetimeQuery& query, double mean_mu) {
  if (!(mean_mu >= 0.0 && mean_mu <= 1.0)) {
    throw std::domain_error("hetero_bound_direction: requires mean_mu in [0, 1]");
  }
  const double a = 1.0 - query.beta - mean_mu;
  if (a > 0.0) return BoundDirection::UpperBound;
  if (a < 0.0) return BoundDirection::LowerBound;
  return BoundDirection::Exact;
}

}  // namespace lifespan
