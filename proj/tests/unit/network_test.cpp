#include <cmath>
#include <vector>

#include <doctest.h>

#include "lifespan/montecarlo.hpp"
#include "lifespan/network.hpp"
#include "lifespan/sensor.hpp"

using namespace lifespan;

namespace {

EnergyModel paper_energy(double initial_energy = 0.011) {
  return EnergyModel::adjustable(1.3e-12, 5e-5, 4.0, initial_energy);
}

// Exact binomial tail P(W >= ceil(threshold)) for W ~ Binomial(n, mu).
double binomial_tail(long n, double threshold, double mu) {
  const long k = static_cast<long>(std::ceil(threshold - 1e-9));
  double tail = 0.0;
  for (long j = std::max(0L, k); j <= n; ++j) {
    tail += std::exp(binomial_log_pmf(n, j, mu));
  }
  return tail;
}

}  // namespace

TEST_SUITE_BEGIN("network");

TEST_CASE("lifetime query validation") {
  CHECK_THROWS_AS(LifetimeQuery(-1.0, 0.3, 10), std::domain_error);
  CHECK_THROWS_AS(LifetimeQuery(1.0, 0.0, 10), std::domain_error);
  CHECK_THROWS_AS(LifetimeQuery(1.0, 1.5, 10), std::domain_error);
  CHECK_THROWS_AS(LifetimeQuery(1.0, 0.3, 0), std::domain_error);
}

TEST_CASE("moments at the boundaries") {
  const AreaShape c = AreaShape::circle(10.0);
  const TrafficModel tr = TrafficModel::poisson(1.0);
  const SurvivalMoments at_zero = survival_moments(c, paper_energy(), tr, 0.0);
  CHECK(at_zero.mu == 1.0);
  CHECK(at_zero.sigma == 0.0);

  const SurvivalMoments late = survival_moments(c, paper_energy(), tr, 23000.0);
  CHECK(late.mu < 1e-12);
}

TEST_CASE("moments definition sigma^2 = mu - mu^2") {
  const AreaShape c = AreaShape::circle(10.0);
  const TrafficModel tr = TrafficModel::poisson(1.0);
  for (double tau : {50.0, 180.0, 205.0, 212.0, 220.0, 260.0}) {
    const SurvivalMoments m = survival_moments(c, paper_energy(), tr, tau);
    CHECK(m.sigma * m.sigma == doctest::Approx(m.mu - m.mu * m.mu).epsilon(1e-14));
    CHECK(m.tau == tau);
    CHECK(m.mu >= 0.0);
    CHECK(m.mu <= 1.0);
  }
}

TEST_CASE("fixed-range moments reduce to a single survival evaluation") {
  const AreaShape c = AreaShape::circle(10.0);
  const EnergyModel fixed = EnergyModel::fixed_range(20.0, 1.3e-12, 5e-5, 4.0, 0.1);
  const TrafficModel tr = TrafficModel::poisson(25.0);
  const SurvivalMoments m = survival_moments(c, fixed, tr, 75.0);
  CHECK(m.mu == survival_fixed_range(fixed, 25.0, 75.0));

  const SurvivalMoments floored =
      survival_moments(c, fixed, tr, 75.0, CapacitySemantics::Floored);
  CHECK(floored.mu == survival_exact(1991.0, 25.0, 75.0));
}

TEST_CASE("adjustable moments match a Monte Carlo position average") {
  const TrafficModel tr = TrafficModel::poisson(1.0);
  struct Scenario {
    AreaShape shape;
    double tau;
  };
  const std::vector<Scenario> scenarios = {
      {AreaShape::circle(10.0), 100.0},
      {AreaShape::circle(10.0), 212.0},
      {AreaShape::circle(100.0), 100.0},
  };
  for (const auto& sc : scenarios) {
    const EnergyModel e = paper_energy();
    const SurvivalMoments m = survival_moments(sc.shape, e, tr, sc.tau);
    RngStream rng(4242);
    const int n = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s =
          survival_exact(packet_capacity(e, sample_distance(sc.shape, rng)), 1.0, sc.tau);
      sum += s;
      sum_sq += s * s;
    }
    const double mean = sum / n;
    const double se = std::sqrt(std::max(0.0, sum_sq / n - mean * mean) / n);
    CHECK(std::fabs(m.mu - mean) <= 3.0 * se + 1e-7);
  }
}

TEST_CASE("floored moments collapse to the single budget class of a narrow support") {
  // Budgets lie in [219.94, 220): every node floors to 219 packets.
  const AreaShape c = AreaShape::circle(10.0);
  const TrafficModel tr = TrafficModel::poisson(1.0);
  for (double tau : {150.0, 205.0, 212.0, 230.0}) {
    const SurvivalMoments m =
        survival_moments(c, paper_energy(), tr, tau, CapacitySemantics::Floored);
    CHECK(m.mu == doctest::Approx(survival_exact(219.0, 1.0, tau)).epsilon(1e-9));
  }
}

TEST_CASE("position-dependent rate with a constant table equals plain Poisson") {
  const AreaShape c = AreaShape::circle(100.0);
  const EnergyModel e = paper_energy();
  const TrafficModel flat = TrafficModel::position_poisson([](double) { return 2.0; });
  const TrafficModel plain = TrafficModel::poisson(2.0);
  for (auto sem : {CapacitySemantics::Continuous, CapacitySemantics::Floored}) {
    for (double tau : {40.0, 60.0, 80.0}) {
      const double a = survival_moments(c, e, flat, tau, sem).mu;
      const double b = survival_moments(c, e, plain, tau, sem).mu;
      CHECK(a == doctest::Approx(b).epsilon(1e-7));
    }
  }
}

TEST_CASE("position-dependent rate integrates over the distance law") {
  // rate doubles away from the sink; oracle by direct position sampling
  const AreaShape c = AreaShape::circle(100.0);
  const EnergyModel e = paper_energy();
  auto rate = [](double d) { return 1.0 + d / 100.0; };
  const TrafficModel tr = TrafficModel::position_poisson(rate);
  const double tau = 70.0;
  const SurvivalMoments m = survival_moments(c, e, tr, tau);
  RngStream rng(555);
  const int n = 500000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = sample_distance(c, rng);
    sum += survival_exact(packet_capacity(e, d), rate(d), tau);
  }
  CHECK(m.mu == doctest::Approx(sum / n).epsilon(0.01));
}

TEST_CASE("time-driven moments") {
  const AreaShape c = AreaShape::circle(10.0);
  const TrafficModel tr = TrafficModel::time_driven(2.0);

  const EnergyModel fixed = EnergyModel::fixed_range(20.0, 1.3e-12, 5e-5, 4.0, 0.1);
  // floor(p_f) = 1991 transmissions, lifetime exactly 3982 hours
  CHECK(survival_moments(c, fixed, tr, 3982.0).mu == 1.0);
  CHECK(survival_moments(c, fixed, tr, 3982.0 + 1e-6).mu == 0.0);

  // adjustable: mu = P(floor(p) T >= tau), checked against the budget density
  const EnergyModel wide = EnergyModel::adjustable(5e-7, 5e-5, 4.0, 0.011);
  const auto sup = capacity_support(c, wide);
  for (double tau : {2.0 * 60.0, 2.0 * 90.0, 2.0 * 120.0}) {
    const double m_star = std::ceil(tau / 2.0 - 1e-12);
    double expected = 0.0;
    if (m_star <= sup.lo) {
      expected = 1.0;
    } else if (m_star < sup.hi) {
      expected = integrate([&](double x) { return capacity_pdf(c, wide, x); }, m_star,
                           sup.hi, {});
    }
    CHECK(survival_moments(c, wide, tr, tau).mu ==
          doctest::Approx(expected).epsilon(1e-7));
  }
}

TEST_CASE("network ccdf closed forms and the degenerate rule") {
  CHECK(network_ccdf(LifetimeQuery(1.0, 0.3, 50), {0.7, std::sqrt(0.21), 1.0}) == 0.5);
  CHECK(network_ccdf(LifetimeQuery(1.0, 0.3, 50), {1.0, 0.0, 1.0}) == 1.0);
  CHECK(network_ccdf(LifetimeQuery(1.0, 0.3, 50), {0.0, 0.0, 1.0}) == 0.0);
  CHECK(network_ccdf(LifetimeQuery(1.0, 1.0, 50), {0.0, 0.0, 1.0}) == 0.5);
  CHECK(network_ccdf(LifetimeQuery(1.0, 0.3, 500), {0.6, std::sqrt(0.24), 1.0}) ==
        doctest::Approx(2.5051659781952240e-6).epsilon(1e-9));
  CHECK_THROWS_AS(network_ccdf(LifetimeQuery(2.0, 0.3, 50), {0.7, 0.458, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("network ccdf monotone in tau and beta") {
  const AreaShape c = AreaShape::circle(10.0);
  const TrafficModel tr = TrafficModel::poisson(1.0);
  double prev = 1.0;
  for (double tau = 150.0; tau <= 280.0; tau += 2.0) {
    const SurvivalMoments m = survival_moments(c, paper_energy(), tr, tau);
    const double v = network_ccdf(LifetimeQuery(tau, 0.305, 500), m);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  const SurvivalMoments mid = survival_moments(c, paper_energy(), tr, 212.0);
  prev = 0.0;
  for (double beta = 0.05; beta <= 0.95; beta += 0.05) {
    const double v = network_ccdf(LifetimeQuery(212.0, beta, 500), mid);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("node count pushes the ccdf toward its asymptote") {
  // sign of d ccdf / d N matches sign(mu - (1 - beta))
  const double beta = 0.3;
  for (double mu : {0.6, 0.65, 0.75, 0.8}) {
    const double sigma = std::sqrt(mu - mu * mu);
    double prev = network_ccdf(LifetimeQuery(1.0, beta, 50), {mu, sigma, 1.0});
    for (long n : {100L, 200L, 500L, 1000L, 5000L}) {
      const double v = network_ccdf(LifetimeQuery(1.0, beta, n), {mu, sigma, 1.0});
      if (mu > 1.0 - beta) {
        CHECK(v > prev);
      } else {
        CHECK(v < prev);
      }
      prev = v;
    }
  }
}

TEST_CASE("gaussian ccdf form tracks the exact binomial tail") {
  // Thresholds are placed at half-integers: that is the fair comparison of a
  // continuous tail form against a lattice distribution, and it is also how
  // the simulator's order-statistic event lands when beta*N is fractional.
  for (long n : {10L, 20L, 30L}) {
    for (double mu : {0.2, 0.5, 0.8}) {
      const double sw = std::sqrt(n * mu * (1.0 - mu));
      for (double shift = -2.0; shift <= 2.0; shift += 0.5) {
        const double thr =
            std::floor(n * mu + shift * sw) + 0.5;  // half-integer threshold
        if (thr <= 0.5 || thr >= n) continue;
        const double beta = 1.0 - thr / n;
        if (beta <= 0.0 || beta > 1.0) continue;
        const double q_form = network_ccdf(LifetimeQuery(1.0, beta, n),
                                           {mu, std::sqrt(mu - mu * mu), 1.0});
        CHECK(std::fabs(q_form - binomial_tail(n, thr, mu)) <= 0.06);
      }
    }
  }
  for (double mu : {0.2, 0.5, 0.8}) {
    const long n = 500;
    const double sw = std::sqrt(n * mu * (1.0 - mu));
    for (double shift = -3.0; shift <= 3.0; shift += 0.5) {
      const double thr = std::floor(n * mu + shift * sw) + 0.5;
      const double beta = 1.0 - thr / n;
      const double q_form = network_ccdf(LifetimeQuery(1.0, beta, n),
                                         {mu, std::sqrt(mu - mu * mu), 1.0});
      CHECK(std::fabs(q_form - binomial_tail(n, thr, mu)) <= 0.01);
    }
  }
}

TEST_CASE("network pdf requirements") {
  const AreaShape c = AreaShape::circle(10.0);
  const TrafficModel tr = TrafficModel::poisson(1.0);
  const LifetimeQuery q(1.0, 0.3, 500);
  CHECK_THROWS_AS(network_pdf(0.0, q, c, paper_energy(), tr), std::domain_error);
  CHECK_THROWS_AS(
      network_pdf(1.0, q, c, EnergyModel::fixed_range(20.0, 1.3e-12, 5e-5, 4.0, 0.1), tr),
      std::invalid_argument);
  CHECK_THROWS_AS(network_pdf(1.0, q, c, paper_energy(), TrafficModel::time_driven(2.0)),
                  std::invalid_argument);
}

TEST_CASE("network pdf is the negative slope of the ccdf") {
  const AreaShape c = AreaShape::circle(10.0);
  const EnergyModel e = paper_energy();
  const TrafficModel tr = TrafficModel::poisson(1.0);
  const double beta = 0.305;
  const long n = 500;
  auto ccdf = [&](double tau) {
    return network_ccdf(LifetimeQuery(tau, beta, n), survival_moments(c, e, tr, tau));
  };
  for (double tau : {209.0, 211.5, 214.0}) {
    const double pdf = network_pdf(tau, LifetimeQuery(tau, beta, n), c, e, tr);
    const double h = 0.02;
    const double fd = (ccdf(tau - h) - ccdf(tau + h)) / (2.0 * h);
    CHECK(pdf == doctest::Approx(fd).epsilon(2e-4));
    CHECK(pdf >= 0.0);
  }
  // far tails carry no density
  CHECK(network_pdf(20.0, LifetimeQuery(20.0, beta, n), c, e, tr) == 0.0);
  CHECK(network_pdf(1000.0, LifetimeQuery(1000.0, beta, n), c, e, tr) == 0.0);
}

TEST_CASE("asymptotic verdicts") {
  CHECK(asymptotic_predict(0.3, 0.6) == AsymptoticVerdict::FailsAlmostSurely);
  CHECK(asymptotic_predict(0.3, 0.8) == AsymptoticVerdict::AchievesAlmostSurely);
  CHECK(asymptotic_predict(0.3, 0.7) == AsymptoticVerdict::Critical);
  // first-node-death regime: beta -> 0 with any mu < 1 fails almost surely
  CHECK(asymptotic_predict(1e-9, 0.999) == AsymptoticVerdict::FailsAlmostSurely);
  CHECK_THROWS_AS(asymptotic_predict(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(asymptotic_predict(0.3, 1.5), std::domain_error);
}

TEST_CASE("bound direction for non-identical sensors") {
  CHECK(hetero_bound_direction(LifetimeQuery(1.0, 0.3, 100), 0.6) ==
        BoundDirection::UpperBound);
  CHECK(hetero_bound_direction(LifetimeQuery(1.0, 0.3, 100), 0.8) ==
        BoundDirection::LowerBound);
  CHECK(hetero_bound_direction(LifetimeQuery(1.0, 0.3, 100), 0.7) ==
        BoundDirection::Exact);
}

TEST_SUITE_END();
