#include "lifespan/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lifespan {

namespace {
constexpr double kPi = std::numbers::pi;
}

AreaShape AreaShape::circle(double radius_m) {
  if (!(radius_m > 0.0) || !std::isfinite(radius_m)) {
    throw std::domain_error("AreaShape::circle: requires radius > 0");
  }
  AreaShape s;
  s.circle_ = true;
  s.inradius_ = radius_m;
  s.circumradius_ = radius_m;
  s.area_ = kPi * radius_m * radius_m;
  return s;
}

AreaShape AreaShape::regular_polygon(int sides, double side_m) {
  if (sides < 3) {
    throw std::domain_error("AreaShape::regular_polygon: requires at least 3 sides");
  }
  if (!(side_m > 0.0) || !std::isfinite(side_m)) {
    throw std::domain_error("AreaShape::regular_polygon: requires side length > 0");
  }
  const double n = static_cast<double>(sides);
  const double cot = 1.0 / std::tan(kPi / n);
  AreaShape s;
  s.circle_ = false;
  s.sides_ = sides;
  s.side_ = side_m;
  s.inradius_ = 0.5 * side_m * cot;
  s.circumradius_ = side_m / (2.0 * std::sin(kPi / n));
  s.area_ = 0.25 * n * side_m * side_m * cot;
  return s;
}

double distance_pdf(const AreaShape& shape, double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("distance_pdf: requires finite x");
  }
  if (x <= 0.0 || x > shape.circumradius()) return 0.0;
  if (shape.is_circle()) {
    const double r = shape.circumradius();
    return 2.0 * x / (r * r);
  }
  const double ri = shape.inradius();
  if (x <= ri) return 2.0 * kPi * x / shape.area();
  // Between the inscribed and circumscribed circles, each of the n sides cuts
  // away an arc of the circle of radius x.
  const double n = static_cast<double>(shape.sides());
  return (2.0 * kPi * x - 2.0 * n * x * std::acos(ri / x)) / shape.area();
}

double distance_cdf(const AreaShape& shape, double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("distance_cdf: requires finite x");
  }
  if (x <= 0.0) return 0.0;
  if (x >= shape.circumradius()) return 1.0;
  if (shape.is_circle()) {
    const double r = shape.circumradius();
    return (x * x) / (r * r);
  }
  const double ri = shape.inradius();
  if (x <= ri) return kPi * x * x / shape.area();
  // Disk of radius x minus the n circular segments that stick out past the
  // sides (they do not overlap while x <= circumradius).
  const double n = static_cast<double>(shape.sides());
  const double seg = x * x * std::acos(ri / x) - ri * std::sqrt(x * x - ri * ri);
  return (kPi * x * x - n * seg) / shape.area();
}

CapacitySupport capacity_support(const AreaShape& shape, const EnergyModel& energy) {
  if (energy.is_fixed_range()) {
    throw std::invalid_argument(
        "capacity_support: fixed-range models have a deterministic packet budget");
  }
  const double e = energy.initial_energy();
  const double k = energy.k();
  const double c = energy.c();
  const double a = energy.alpha();
  CapacitySupport s;
  s.lo = e / (k * std::pow(shape.circumradius(), a) + c);
  s.hi = e / c;
  s.inner_break =
      shape.is_circle() ? s.lo : e / (k * std::pow(shape.inradius(), a) + c);
  return s;
}

namespace {

// Shared evaluation with the distance-to-endpoint u = hi - x supplied by the
// caller: the singular factor is computed from u directly, so it vanishes
// exactly at the representable support endpoint and stays fully conditioned
// arbitrarily close to it.
double capacity_pdf_impl(const AreaShape& shape, const EnergyModel& energy,
                         const CapacitySupport& sup, double x, double u) {
  const double e = energy.initial_energy();
  const double k = energy.k();
  const double c = energy.c();
  const double a = energy.alpha();
  const double w = c * u / (k * x);  // = d^alpha at the distance whose budget is x
  const double tail = std::pow(w, (2.0 - a) / a);

  if (shape.is_circle()) {
    const double r = shape.circumradius();
    return 2.0 * e / (r * r * k * a * x * x) * tail;
  }
  const double base = 2.0 * e / (k * a * shape.area() * x * x) * tail;
  if (u <= sup.hi - sup.inner_break) return kPi * base;
  const double d = std::pow(w, 1.0 / a);
  double ratio = shape.inradius() / d;
  if (ratio > 1.0) ratio = 1.0;  // guard fp noise at the branch junction
  return base * (kPi - static_cast<double>(shape.sides()) * std::acos(ratio));
}

}  // namespace

double capacity_pdf(const AreaShape& shape, const EnergyModel& energy, double x) {
  const CapacitySupport sup = capacity_support(shape, energy);
  if (!std::isfinite(x)) {
    throw std::domain_error("capacity_pdf: requires finite x");
  }
  if (x < sup.lo || x >= sup.hi) return 0.0;
  return capacity_pdf_impl(shape, energy, sup, x, sup.hi - x);
}

double capacity_pdf_from_tail(const AreaShape& shape, const EnergyModel& energy,
                              double u) {
  const CapacitySupport sup = capacity_support(shape, energy);
  if (!std::isfinite(u)) {
    throw std::domain_error("capacity_pdf_from_tail: requires finite u");
  }
  if (u <= 0.0 || u > sup.hi - sup.lo) return 0.0;
  return capacity_pdf_impl(shape, energy, sup, sup.hi - u, u);
}

double sample_distance(const AreaShape& shape, RngStream& rng) {
  if (shape.is_circle()) {
    return shape.circumradius() * std::sqrt(rng.uniform01());
  }
  // Rejection from the circumcircle. The boundary radius at polar angle theta
  // is ri / cos(phi) with phi the offset from the nearest edge normal.
  const double n = static_cast<double>(shape.sides());
  const double sector = 2.0 * kPi / n;
  const double ri = shape.inradius();
  const double rc = shape.circumradius();
  while (true) {
    const double rho = rc * std::sqrt(rng.uniform01());
    const double theta = 2.0 * kPi * rng.uniform01();
    const double phi = std::fmod(theta, sector) - 0.5 * sector;
    if (rho * std::cos(phi) <= ri) return rho;
  }
}

}  // namespace lifespan
