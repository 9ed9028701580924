#include "lifespan/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace lifespan {

namespace {

constexpr int kMaxGammaIter = 500000;

// Series for P(a,x), valid for x < a+1. All prefactors in log space so the
// same code serves a = 0.5 and a = 1e5.
double lower_gamma_series(double a, double x) {
  double sum = 1.0;
  double term = 1.0;
  double denom = a;
  for (int n = 0; n < kMaxGammaIter; ++n) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (term < sum * 1e-17) {
      double logp = a * std::log(x) - x - std::lgamma(a + 1.0) + std::log(sum);
      return logp >= 0.0 ? 1.0 : std::exp(logp);
    }
  }
  throw std::runtime_error("regularized_lower_gamma: series did not converge");
}

// Modified Lentz continued fraction for Q(a,x), valid for x >= a+1.
double upper_gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxGammaIter; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) {
      double logq = a * std::log(x) - x - std::lgamma(a) + std::log(h);
      return logq >= 0.0 ? 1.0 : std::exp(logq);
    }
  }
  throw std::runtime_error("regularized_lower_gamma: continued fraction did not converge");
}

}  // namespace

double regularized_lower_gamma(double a, double x) {
  if (!std::isfinite(a) || !std::isfinite(x) || a <= 0.0 || x < 0.0) {
    throw std::domain_error("regularized_lower_gamma: requires a > 0 and x >= 0");
  }
  if (x == 0.0) return 0.0;
  // Regime switch at x = a+1: the series converges fast below, the continued
  // fraction above.
  if (x < a + 1.0) return lower_gamma_series(a, x);
  return 1.0 - upper_gamma_cf(a, x);
}

double gaussian_ccdf(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("gaussian_ccdf: requires finite x");
  }
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double inverse_gaussian_ccdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("inverse_gaussian_ccdf: requires p in (0,1)");
  }
  // Bracket, bisect to ~1e-3, then Newton. Q is strictly decreasing.
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 40; ++i) {
    double mid = 0.5 * (lo + hi);
    if (gaussian_ccdf(mid) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  const double inv_sqrt_2pi = 0.3989422804014327;
  for (int i = 0; i < 4; ++i) {
    double pdf = inv_sqrt_2pi * std::exp(-0.5 * x * x);
    if (pdf <= 0.0) break;
    x += (gaussian_ccdf(x) - p) / pdf;
  }
  return x;
}

namespace {

// Gauss-Kronrod 7/15 pair on [-1,1]: positive Kronrod abscissae (descending),
// Kronrod weights, and the embedded Gauss weights (odd indices + center).
constexpr double kXgk[7] = {
    0.9914553711208126392069, 0.9491079123427585245262, 0.8648644233597690727897,
    0.7415311855993944398639, 0.5860872354676911302941, 0.4058451513773971669066,
    0.2077849550078984676007};
constexpr double kWgk[8] = {
    0.0229353220105292249637, 0.0630920926299785532907, 0.1047900103222501838399,
    0.1406532597155259187452, 0.1690047266392679028266, 0.1903505780647854099133,
    0.2044329400752988924142, 0.2094821410847278280130};
constexpr double kWg[4] = {
    0.1294849661688696932706, 0.2797053914892766679015, 0.3818300505051189449504,
    0.4179591836734693877551};

struct Panel {
  double lo, hi;
  double integral;
  double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  // Deep subdivision against an endpoint singularity can round a node onto
  // the endpoint itself; keep every node strictly interior.
  auto interior = [lo, hi](double x) {
    if (x <= lo) return std::nextafter(lo, hi);
    if (x >= hi) return std::nextafter(hi, lo);
    return x;
  };
  const double fc = f(interior(center));
  double fv1[7], fv2[7];
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    fv1[i] = f(interior(center - half * kXgk[i]));
    fv2[i] = f(interior(center + half * kXgk[i]));
    resk += kWgk[i] * (fv1[i] + fv2[i]);
    if (i % 2 == 1) resg += kWg[i / 2] * (fv1[i] + fv2[i]);
  }
  // Error estimate in the QUADPACK style: |K15 - G7| rescaled against the
  // variation of f over the panel, so near-cancelling rule differences on
  // rough integrands do not masquerade as convergence.
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int i = 0; i < 7; ++i) {
    resasc += kWgk[i] * (std::fabs(fv1[i] - reskh) + std::fabs(fv2[i] - reskh));
  }
  resasc *= std::fabs(half);
  double err = std::fabs(resk - resg) * std::fabs(half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.integral = resk * half;
  p.error = err;
  return p;
}

bool panel_order(const Panel& a, const Panel& b) { return a.error < b.error; }

// The K15 value of the panel pinned against an endpoint singularity misses
// part of the sliver's mass. The panels marching toward that endpoint form a
// geometric cascade (each half the width of the next), so the true sliver
// mass is the geometric continuation m_A * q / (1 - q) of the two nearest
// cascade masses. Applies only to the panel that actually touches an
// integration bound; interior panels are already well estimated. Returns the
// original estimate when the neighbors do not look like a clean cascade.
double floor_panel_mass(const Panel& f, double global_lo, double global_hi,
                        const std::vector<Panel>& heap,
                        const std::vector<Panel>& floored) {
  auto find_neighbor = [&](double edge, bool ending_at) -> const Panel* {
    for (const auto& set : {&heap, &floored}) {
      for (const Panel& p : *set) {
        if (ending_at ? p.hi == edge : p.lo == edge) return &p;
      }
    }
    return nullptr;
  };
  for (bool singular_at_hi : {true, false}) {
    if (singular_at_hi ? f.hi != global_hi : f.lo != global_lo) continue;
    const Panel* a = singular_at_hi ? find_neighbor(f.lo, true) : find_neighbor(f.hi, false);
    if (!a) continue;
    const Panel* b = singular_at_hi ? find_neighbor(a->lo, true) : find_neighbor(a->hi, false);
    if (!b) continue;
    const Panel* c = singular_at_hi ? find_neighbor(b->lo, true) : find_neighbor(b->hi, false);
    if (!c) continue;
    const double wf = f.hi - f.lo;
    const double wa = a->hi - a->lo;
    const double wb = b->hi - b->lo;
    const double wc = c->hi - c->lo;
    if (std::fabs(wa / wf - 1.0) > 0.01 || std::fabs(wb / wa - 2.0) > 0.01 ||
        std::fabs(wc / wb - 2.0) > 0.01) {
      continue;
    }
    const double q = a->integral / b->integral;
    const double q_outer = b->integral / c->integral;
    if (!(q > 1e-6 && q < 0.99)) continue;
    // A power-law cascade has the same mass ratio at every level; a drifting
    // ratio means the blow-up is not at this endpoint, so extrapolating
    // toward it would be wrong.
    if (std::fabs(q - q_outer) > 0.02 * q) continue;
    return a->integral * q / (1.0 - q);
  }
  return f.integral;
}

double compensated_total(const std::vector<Panel>& panels) {
  double sum = 0.0, comp = 0.0;
  for (const Panel& p : panels) {
    double y = p.integral - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::domain_error("integrate: requires finite lo < hi");
  }
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol >= 0.0) || spec.max_subdivisions < 1) {
    throw std::domain_error("integrate: invalid QuadratureSpec");
  }

  // Stop subdividing below this width: deep enough that a singular cascade's
  // remaining mass is tiny, while panel edges are still exact halvings (the
  // geometric continuation below needs clean 2:1 widths, which break down
  // near the ulp scale of the endpoints).
  const double min_width =
      std::max((hi - lo) * 1e-13,
               128.0 * std::numeric_limits<double>::epsilon() *
                   std::max({std::fabs(lo), std::fabs(hi), hi - lo}));

  std::vector<Panel> heap;
  std::vector<Panel> floored;  // panels retired at the width floor
  heap.reserve(64);
  heap.push_back(evaluate_panel(f, lo, hi));
  double total_integral = heap.front().integral;
  double total_error = heap.front().error;
  double floor_error = 0.0;

  int subdivisions = 0;
  while (!heap.empty()) {
    if (!std::isfinite(total_integral)) {
      throw std::domain_error("integrate: integrand produced a non-finite value");
    }
    double target = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_integral));
    if (total_error <= target) break;

    std::pop_heap(heap.begin(), heap.end(), panel_order);
    Panel worst = heap.back();
    heap.pop_back();

    double mid = 0.5 * (worst.lo + worst.hi);
    if (worst.hi - worst.lo <= min_width || !(mid > worst.lo && mid < worst.hi)) {
      // Cannot be refined in double precision. Replace the value by the
      // geometric continuation of its cascade and retire the error; a
      // divergent integrand keeps piling mass up here and trips the guard.
      const double corrected = floor_panel_mass(worst, lo, hi, heap, floored);
      total_integral += corrected - worst.integral;
      worst.integral = corrected;
      total_error -= worst.error;
      floor_error += worst.error;
      floored.push_back(worst);
      if (floor_error > 0.1 * (std::fabs(total_integral) + 1e-300)) {
        double estimate = compensated_total(heap) + compensated_total(floored);
        throw QuadratureError(
            "integrate: unresolved mass at the floating-point resolution floor",
            estimate, total_error + floor_error);
      }
      continue;
    }
    if (subdivisions >= spec.max_subdivisions) {
      heap.push_back(worst);
      double estimate = compensated_total(heap) + compensated_total(floored);
      throw QuadratureError("integrate: tolerance not reached within max_subdivisions",
                            estimate, total_error + floor_error);
    }

    Panel left = evaluate_panel(f, worst.lo, mid);
    Panel right = evaluate_panel(f, mid, worst.hi);
    total_integral += left.integral + right.integral - worst.integral;
    total_error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), panel_order);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), panel_order);
    ++subdivisions;
  }

  // A deep bisection cascade marks an endpoint singularity whose terminal
  // sliver the rule systematically under-resolves; patch that one panel with
  // its geometric continuation before summing up.
  Panel* deepest = nullptr;
  for (auto* set : {&heap, &floored}) {
    for (Panel& p : *set) {
      if (!deepest || (p.hi - p.lo) < (deepest->hi - deepest->lo)) deepest = &p;
    }
  }
  if (deepest && (deepest->hi - deepest->lo) < 1e-6 * (hi - lo)) {
    deepest->integral = floor_panel_mass(*deepest, lo, hi, heap, floored);
  }
  return compensated_total(heap) + compensated_total(floored);
}

double binomial_log_pmf(long n, long j, double q) {
  if (n < 0 || j < 0 || j > n || !std::isfinite(q) || q < 0.0 || q > 1.0) {
    throw std::domain_error("binomial_log_pmf: requires 0 <= j <= n and q in [0,1]");
  }
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (q == 0.0) return j == 0 ? 0.0 : neg_inf;
  if (q == 1.0) return j == n ? 0.0 : neg_inf;
  const double nd = static_cast<double>(n);
  const double jd = static_cast<double>(j);
  const double log_choose =
      std::lgamma(nd + 1.0) - std::lgamma(jd + 1.0) - std::lgamma(nd - jd + 1.0);
  return log_choose + jd * std::log(q) + (nd - jd) * std::log1p(-q);
}

}  // namespace lifespan
