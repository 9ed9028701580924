#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lifespan/geometry.hpp"
#include "lifespan/models.hpp"
#include "lifespan/montecarlo.hpp"
#include "lifespan/multihop.hpp"
#include "lifespan/network.hpp"
#include "lifespan/rng.hpp"
#include "lifespan/sensor.hpp"
#include "lifespan/specfun.hpp"

namespace py = pybind11;
using namespace lifespan;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Lifetime law of wireless sensor networks: per-sensor survival, "
      "single-hop and multi-hop network ccdfs, asymptotic verdicts, and a "
      "seeded Monte Carlo oracle.";

  // --- special functions ----------------------------------------------
  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
      .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
      .def_readwrite("max_subdivisions", &QuadratureSpec::max_subdivisions);

  py::register_exception<QuadratureError>(m, "QuadratureFailure", PyExc_ArithmeticError);

  m.def("regularized_lower_gamma", &regularized_lower_gamma, py::arg("a"), py::arg("x"),
        "P(a, x) = gamma(a, x) / Gamma(a)");
  m.def("gaussian_ccdf", &gaussian_ccdf, py::arg("x"));
  m.def("inverse_gaussian_ccdf", &inverse_gaussian_ccdf, py::arg("p"));
  m.def("integrate", &integrate, py::arg("f"), py::arg("lo"), py::arg("hi"),
        py::arg("spec") = QuadratureSpec{},
        "Adaptive Gauss-Kronrod quadrature with endpoint-avoiding nodes");
  m.def("binomial_log_pmf", &binomial_log_pmf, py::arg("n"), py::arg("j"), py::arg("q"));

  // --- random streams ---------------------------------------------------
  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("for_trial", &RngStream::for_trial, py::arg("master_seed"),
                  py::arg("trial_index"))
      .def("uniform01", &RngStream::uniform01)
      .def("exponential", &RngStream::exponential, py::arg("rate"))
      .def("normal", &RngStream::normal)
      .def("gamma", &RngStream::gamma, py::arg("shape"));

  // --- geometry ----------------------------------------------------------
  py::class_<AreaShape>(m, "AreaShape")
      .def_static("circle", &AreaShape::circle, py::arg("radius_m"))
      .def_static("regular_polygon", &AreaShape::regular_polygon, py::arg("sides"),
                  py::arg("side_m"))
      .def_property_readonly("is_circle", &AreaShape::is_circle)
      .def_property_readonly("sides", &AreaShape::sides)
      .def_property_readonly("inradius", &AreaShape::inradius)
      .def_property_readonly("circumradius", &AreaShape::circumradius)
      .def_property_readonly("area", &AreaShape::area);

  py::class_<CapacitySupport>(m, "CapacitySupport")
      .def_readonly("lo", &CapacitySupport::lo)
      .def_readonly("hi", &CapacitySupport::hi)
      .def_readonly("inner_break", &CapacitySupport::inner_break);

  m.def("distance_pdf", &distance_pdf, py::arg("shape"), py::arg("x"));
  m.def("distance_cdf", &distance_cdf, py::arg("shape"), py::arg("x"));
  m.def("capacity_support", &capacity_support, py::arg("shape"), py::arg("energy"));
  m.def("capacity_pdf", &capacity_pdf, py::arg("shape"), py::arg("energy"), py::arg("x"));
  m.def("capacity_pdf_from_tail", &capacity_pdf_from_tail, py::arg("shape"),
        py::arg("energy"), py::arg("u"));
  m.def("sample_distance", &sample_distance, py::arg("shape"), py::arg("rng"));

  // --- models -------------------------------------------------------------
  py::class_<EnergyModel>(m, "EnergyModel")
      .def_static("adjustable", &EnergyModel::adjustable, py::arg("k"), py::arg("c"),
                  py::arg("alpha"), py::arg("initial_energy"))
      .def_static("fixed_range", &EnergyModel::fixed_range, py::arg("range_m"),
                  py::arg("k"), py::arg("c"), py::arg("alpha"), py::arg("initial_energy"))
      .def_property_readonly("is_fixed_range", &EnergyModel::is_fixed_range)
      .def_property_readonly("k", &EnergyModel::k)
      .def_property_readonly("c", &EnergyModel::c)
      .def_property_readonly("alpha", &EnergyModel::alpha)
      .def_property_readonly("initial_energy", &EnergyModel::initial_energy);

  py::class_<TrafficModel>(m, "TrafficModel")
      .def_static("poisson", &TrafficModel::poisson, py::arg("rate_per_hour"))
      .def_static("position_poisson", &TrafficModel::position_poisson,
                  py::arg("rate_at_distance"))
      .def_static("time_driven", &TrafficModel::time_driven, py::arg("period_hours"))
      .def("rate_at", &TrafficModel::rate_at, py::arg("distance_m"))
      .def("period", &TrafficModel::period);

  m.def("packet_energy", &packet_energy, py::arg("energy"), py::arg("distance_m"));
  m.def("packet_capacity", &packet_capacity, py::arg("energy"), py::arg("distance_m"));
  m.def("fixed_packet_capacity", &fixed_packet_capacity, py::arg("energy"));
  m.def("sample_interarrival", &sample_interarrival, py::arg("traffic"),
        py::arg("distance_m"), py::arg("rng"));

  // --- sensor level ---------------------------------------------------------
  py::class_<SensorSurvival>(m, "SensorSurvival")
      .def_readonly("capacity", &SensorSurvival::capacity)
      .def_readonly("rate", &SensorSurvival::rate)
      .def_readonly("threshold", &SensorSurvival::threshold)
      .def_readonly("probability", &SensorSurvival::probability);

  m.def("survival_exact", &survival_exact, py::arg("capacity"), py::arg("rate"),
        py::arg("threshold"),
        "P(sensor death time >= threshold) for a Poisson packet process");
  m.def("survival_clt", &survival_clt, py::arg("capacity"), py::arg("rate"),
        py::arg("threshold"));
  m.def("survival_fixed_range", &survival_fixed_range, py::arg("energy"), py::arg("rate"),
        py::arg("threshold"));
  m.def("lifetime_time_driven", &lifetime_time_driven, py::arg("capacity"),
        py::arg("period"));
  m.def("sensor_survival", &sensor_survival, py::arg("capacity"), py::arg("rate"),
        py::arg("threshold"));

  // --- network level ----------------------------------------------------------
  py::class_<SurvivalMoments>(m, "SurvivalMoments")
      .def(py::init([](double mu, double sigma, double tau) {
             return SurvivalMoments{mu, sigma, tau};
           }),
           py::arg("mu"), py::arg("sigma"), py::arg("tau"))
      .def_readonly("mu", &SurvivalMoments::mu)
      .def_readonly("sigma", &SurvivalMoments::sigma)
      .def_readonly("tau", &SurvivalMoments::tau);

  py::class_<LifetimeQuery>(m, "LifetimeQuery")
      .def(py::init<double, double, long>(), py::arg("tau"), py::arg("beta"),
           py::arg("nodes"))
      .def_readonly("tau", &LifetimeQuery::tau)
      .def_readonly("beta", &LifetimeQuery::beta)
      .def_readonly("nodes", &LifetimeQuery::nodes);

  py::enum_<CapacitySemantics>(m, "CapacitySemantics")
      .value("CONTINUOUS", CapacitySemantics::Continuous)
      .value("FLOORED", CapacitySemantics::Floored);

  m.def("survival_moments", &survival_moments, py::arg("shape"), py::arg("energy"),
        py::arg("traffic"), py::arg("tau"),
        py::arg("semantics") = CapacitySemantics::Continuous,
        py::arg("quad") = QuadratureSpec{},
        "Mean/std of the survival indicator of a randomly placed sensor");
  m.def("network_ccdf", &network_ccdf, py::arg("query"), py::arg("moments"),
        "P(network lifetime >= tau) = Q(sqrt(N) (1 - beta - mu) / sigma)");
  m.def("network_pdf", &network_pdf, py::arg("tau"), py::arg("query"), py::arg("shape"),
        py::arg("energy"), py::arg("traffic"), py::arg("quad") = QuadratureSpec{});

  py::enum_<AsymptoticVerdict>(m, "AsymptoticVerdict")
      .value("ACHIEVES_ALMOST_SURELY", AsymptoticVerdict::AchievesAlmostSurely)
      .value("FAILS_ALMOST_SURELY", AsymptoticVerdict::FailsAlmostSurely)
      .value("CRITICAL", AsymptoticVerdict::Critical);
  m.def("asymptotic_predict", &asymptotic_predict, py::arg("beta"), py::arg("mu"));

  py::enum_<BoundDirection>(m, "BoundDirection")
      .value("UPPER_BOUND", BoundDirection::UpperBound)
      .value("LOWER_BOUND", BoundDirection::LowerBound)
      .value("EXACT", BoundDirection::Exact);
  m.def("hetero_bound_direction", &hetero_bound_direction, py::arg("query"),
        py::arg("mean_mu"));

  // --- multi-hop -------------------------------------------------------------
  py::class_<RingConfig>(m, "RingConfig")
      .def_static("circle", &RingConfig::circle, py::arg("area_radius_m"),
                  py::arg("tx_range_m"), py::arg("nodes"), py::arg("rate_per_hour"))
      .def_static("general_area", &RingConfig::general_area, py::arg("area_m2"),
                  py::arg("tx_range_m"), py::arg("nodes"), py::arg("rate_per_hour"))
      .def_property_readonly("is_circle", &RingConfig::is_circle)
      .def_property_readonly("ring_count", &RingConfig::ring_count)
      .def_property_readonly("tx_range", &RingConfig::tx_range)
      .def_property_readonly("nodes", &RingConfig::nodes)
      .def_property_readonly("rate", &RingConfig::rate);

  m.def("ring_probability", &ring_probability, py::arg("cfg"), py::arg("ring"));
  m.def("ring_rate", &ring_rate, py::arg("cfg"), py::arg("ring"), py::arg("counts"));
  m.def("multihop_ccdf", &multihop_ccdf, py::arg("cfg"), py::arg("energy"),
        py::arg("tau"), py::arg("beta"),
        "First-ring lifetime ccdf, unconditioned over the ring-1 population");

  // --- Monte Carlo oracle -------------------------------------------------------
  py::class_<TrialResult>(m, "TrialResult")
      .def_readonly("death_times", &TrialResult::death_times)
      .def_readonly("network_lifetime", &TrialResult::network_lifetime);

  py::class_<EmpiricalCcdf>(m, "EmpiricalCcdf")
      .def(py::init<std::vector<double>>(), py::arg("lifetimes"))
      .def("eval", &EmpiricalCcdf::eval, py::arg("tau"))
      .def(
          "ci",
          [](const EmpiricalCcdf& self, double tau, double level) {
            const auto interval = self.ci(tau, level);
            return py::make_tuple(interval.lo, interval.hi);
          },
          py::arg("tau"), py::arg("level"))
      .def_property_readonly("samples", &EmpiricalCcdf::samples)
      .def("__len__", &EmpiricalCcdf::size);

  m.def("single_hop_trial", &single_hop_trial, py::arg("shape"), py::arg("energy"),
        py::arg("traffic"), py::arg("nodes"), py::arg("beta"), py::arg("rng"));
  m.def("multi_hop_trial", &multi_hop_trial, py::arg("cfg"), py::arg("energy"),
        py::arg("beta"), py::arg("rng"));
  // The GIL is released while trials run so worker threads may call back
  // into Python-defined rate functions.
  m.def("simulate_single_hop", &simulate_single_hop, py::arg("shape"), py::arg("energy"),
        py::arg("traffic"), py::arg("nodes"), py::arg("beta"), py::arg("trials"),
        py::arg("seed"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("simulate_multi_hop", &simulate_multi_hop, py::arg("cfg"), py::arg("energy"),
        py::arg("beta"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());

  py::class_<ComparisonRow>(m, "ComparisonRow")
      .def_readonly("tau", &ComparisonRow::tau)
      .def_readonly("analytic", &ComparisonRow::analytic)
      .def_readonly("empirical", &ComparisonRow::empirical)
      .def_readonly("deviation", &ComparisonRow::deviation)
      .def_readonly("ci_lo", &ComparisonRow::ci_lo)
      .def_readonly("ci_hi", &ComparisonRow::ci_hi)
      .def_readonly("inside_ci", &ComparisonRow::inside_ci);

  py::class_<ComparisonReport>(m, "ComparisonReport")
      .def_readonly("rows", &ComparisonReport::rows)
      .def_readonly("max_abs_deviation", &ComparisonReport::max_abs_deviation)
      .def_readonly("ci_level", &ComparisonReport::ci_level);

  m.def("empirical_vs_analytic", &empirical_vs_analytic, py::arg("empirical"),
        py::arg("analytic"), py::arg("tau_grid"), py::arg("ci_level") = 0.99);
  m.def("worker_count", &worker_count, py::arg("requested") = 0);
}
