#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "lifespan/models.hpp"

using namespace lifespan;

TEST_SUITE_BEGIN("models");

TEST_CASE("packet energy closed forms") {
  const EnergyModel adj = EnergyModel::adjustable(1.3e-12, 5e-5, 4.0, 0.011);
  CHECK(packet_energy(adj, 10.0) == doctest::Approx(5.0013e-5).epsilon(1e-14));
  CHECK(packet_energy(adj, 0.0) == 5e-5);  // overhead only

  const EnergyModel fixed = EnergyModel::fixed_range(20.0, 1.3e-12, 5e-5, 4.0, 0.1);
  CHECK(packet_energy(fixed, 0.0) == doctest::Approx(5.0208e-5).epsilon(1e-14));
  CHECK(packet_energy(fixed, 123.0) == packet_energy(fixed, 0.0));  // d ignored

  CHECK_THROWS_AS(packet_energy(adj, -1.0), std::domain_error);
}

TEST_CASE("packet energy grows with distance") {
  const EnergyModel adj = EnergyModel::adjustable(1.3e-12, 5e-5, 4.0, 0.011);
  double prev = 0.0;
  for (double d = 0.0; d <= 100.0; d += 0.5) {
    const double e = packet_energy(adj, d);
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("packet capacity") {
  const EnergyModel adj = EnergyModel::adjustable(1.3e-12, 5e-5, 4.0, 0.011);
  CHECK(packet_capacity(adj, 10.0) == doctest::Approx(219.94281486813428509).epsilon(1e-13));

  const EnergyModel unit = EnergyModel::adjustable(1.3e-12, 5e-5, 4.0, 5.0013e-5);
  CHECK(packet_capacity(unit, 10.0) == doctest::Approx(1.0).epsilon(1e-14));

  const EnergyModel fixed = EnergyModel::fixed_range(20.0, 1.3e-12, 5e-5, 4.0, 0.1);
  CHECK(fixed_packet_capacity(fixed) == doctest::Approx(1991.7144678138942).epsilon(1e-13));
  CHECK_THROWS_AS(fixed_packet_capacity(adj), std::invalid_argument);

  for (double d : {0.0, 3.7, 25.0, 80.0}) {
    CHECK(packet_capacity(adj, d) * packet_energy(adj, d) ==
          doctest::Approx(0.011).epsilon(1e-15));
  }
}

TEST_CASE("energy model validation") {
  CHECK_THROWS_AS(EnergyModel::adjustable(0.0, 5e-5, 4.0, 0.011), std::domain_error);
  CHECK_THROWS_AS(EnergyModel::adjustable(1e-12, 0.0, 4.0, 0.011), std::domain_error);
  CHECK_THROWS_AS(EnergyModel::adjustable(1e-12, 5e-5, 4.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(EnergyModel::fixed_range(0.0, 1e-12, 5e-5, 4.0, 0.011),
                  std::domain_error);
  CHECK_THROWS_AS(EnergyModel::adjustable(1e-12, 5e-5, 4.0, 0.011).range(),
                  std::invalid_argument);
}

TEST_CASE("interarrival sampling laws") {
  RngStream rng(99);
  const int n = 1000000;

  const TrafficModel poisson = TrafficModel::poisson(1.0);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_interarrival(poisson, 0.0, rng);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0).epsilon(0.03));

  const TrafficModel fixed = TrafficModel::time_driven(2.0);
  for (int i = 0; i < 10; ++i) CHECK(sample_interarrival(fixed, 5.0, rng) == 2.0);

  const TrafficModel position =
      TrafficModel::position_poisson([](double d) { return d < 3.0 ? 1.0 : 2.0; });
  double psum = 0.0;
  for (int i = 0; i < n; ++i) psum += sample_interarrival(position, 5.0, rng);
  CHECK(psum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("traffic model validation") {
  CHECK_THROWS_AS(TrafficModel::poisson(0.0), std::domain_error);
  CHECK_THROWS_AS(TrafficModel::time_driven(-1.0), std::domain_error);
  CHECK_THROWS_AS(TrafficModel::poisson(1.0).period(), std::invalid_argument);
  CHECK_THROWS_AS(TrafficModel::time_driven(1.0).rate_at(0.0), std::invalid_argument);
  const TrafficModel bad = TrafficModel::position_poisson([](double) { return -1.0; });
  CHECK_THROWS_AS(bad.rate_at(1.0), std::domain_error);
}

TEST_SUITE_END();
