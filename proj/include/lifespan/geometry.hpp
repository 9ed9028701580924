#pragma once

#include "lifespan/models.hpp"
#include "lifespan/rng.hpp"

namespace lifespan {

// Deployment region with the sink at its center: a circle of radius R, or a
// regular polygon with n sides of length a (sink at the centroid).
class AreaShape {
 public:
  static AreaShape circle(double radius_m);
  static AreaShape regular_polygon(int sides, double side_m);

  bool is_circle() const noexcept { return circle_; }
  int sides() const noexcept { return sides_; }  // 0 for circles
  double side_length() const noexcept { return side_; }
  double inradius() const noexcept { return inradius_; }
  double circumradius() const noexcept { return circumradius_; }
  double area() const noexcept { return area_; }

 private:
  AreaShape() = default;
  bool circle_ = true;
  int sides_ = 0;
  double side_ = 0, inradius_ = 0, circumradius_ = 0, area_ = 0;
};

// Support of the packet-budget distribution under an adjustable-power model:
// p ranges over [lo, hi) with lo = E_i/(k*Rc^alpha + c) and hi = E_i/c.
// For polygons, inner_break = E_i/(k*ri^alpha + c) marks the junction of the
// two density branches; it equals lo for circles.
struct CapacitySupport {
  double lo;
  double hi;
  double inner_break;
};

// f_d: density of the node-to-sink distance under uniform deployment.
// Zero outside (0, circumradius].
double distance_pdf(const AreaShape& shape, double x);

// F_d: exact closed-form CDF of the node-to-sink distance.
double distance_cdf(const AreaShape& shape, double x);

CapacitySupport capacity_support(const AreaShape& shape, const EnergyModel& energy);

// f_p: density of the packet budget p = E_i/e(d) induced by f_d. Requires an
// adjustable-power energy model (with fixed range the budget is
// deterministic). Zero outside the capacity support; has an integrable
// singularity at the upper end when alpha > 2.
double capacity_pdf(const AreaShape& shape, const EnergyModel& energy, double x);

// f_p evaluated at budget hi - u. Quadrature against the singular upper end
// should integrate this over u starting at 0: the distance to the endpoint
// is then an exact quantity rather than a difference of nearby doubles.
double capacity_pdf_from_tail(const AreaShape& shape, const EnergyModel& energy,
                              double u);

// Draw a node-to-sink distance distributed per distance_pdf. Circles use the
// inverse CDF; polygons use rejection from the circumcircle.
double sample_distance(const AreaShape& shape, RngStream& rng);

}  // namespace lifespan
