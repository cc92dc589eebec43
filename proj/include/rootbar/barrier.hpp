#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootbar/pde.hpp"

namespace rootbar {

// First-contact time at one abscissa. "never" stands in for the r(x) = +inf
// of barriers that are not reached within the finite solve horizon; keeping
// it a tag instead of an infinite float makes serialization exact and every
// comparison explicit.
struct HitTime {
  double t = 0.0;
  bool never = false;

  static HitTime at(double time) { return {time, false}; }
  static HitTime never_hit() { return {0.0, true}; }

  bool operator==(const HitTime& o) const {
    return never == o.never && (never || t == o.t);
  }
};

// never compares greater than any finite time
inline bool hit_ge(const HitTime& a, const HitTime& b) {
  if (a.never) return true;
  if (b.never) return false;
  return a.t >= b.t;
}
inline const HitTime& hit_min(const HitTime& a, const HitTime& b) {
  return hit_ge(a, b) ? b : a;
}

// Sampled barrier function r over sorted abscissae. The barrier set is the
// epigraph {(t, x) : t >= r(x)}; extraction yields one well-defined first
// contact per column because u - v is non-increasing in time past the first
// row, so contact never un-happens.
struct Barrier {
  std::vector<double> xs;
  std::vector<HitTime> r;
  double horizon = 0.0;
  double contact_tol = 0.0;     // extraction epsilon (0 when hand-built)
  double time_resolution = 0.0; // dt of the source grid (0 when hand-built)
  bool regularized = false;

  double x_min() const { return xs.front(); }
  double x_max() const { return xs.back(); }
};

// r(x_j) = min{ t_n : u(t_n, x_j) - v(x_j) <= eps }, never if no such n.
Barrier extract_barrier(const ValueField& field, double epsilon);

// One-pass variant on the streaming solver (no stored field).
Barrier solve_to_barrier(const Measure& m, const SolverGrid& grid,
                         double epsilon);

// Scheme-scaled default: 2 (dx + dt) (1 + max|v|).
double default_contact_tol(const ValueField& field);
double default_contact_tol(const Measure& m, const SolverGrid& grid);

// Zero the barrier outside [x_-, x_+], the first zeros at or outside the
// origin on each side. Throws when a side has no zero (grid too small).
Barrier regularize(const Barrier& b);

// r_lambda(x) = lambda r(x / sqrt(lambda)) as a sampled transform: abscissae
// scale by sqrt(lambda), values by lambda, never stays never.
Barrier scale_barrier(const Barrier& b, double lambda);

// Piecewise-constant nearest-node evaluation; exact midpoints resolve toward
// the smaller r. Throws outside [xs.front, xs.back].
HitTime eval_barrier(const Barrier& b, double x);
// Clamped variant for path simulation: out-of-range x uses the end node.
HitTime eval_barrier_clamped(const Barrier& b, double x);

struct ScalingConditionReport {
  bool holds = true;
  std::optional<std::pair<double, double>> witness;  // violating abscissae
};

// q(x) = r(x)/x^2 must be non-decreasing through negative abscissae and
// non-increasing through positive ones. Abscissae with |x| <= exclusion are
// skipped (q is unstable near 0); never counts as +inf. A non-negative
// per-pair slack of 2 * time_resolution / min(x^2) absorbs the time
// quantization of extracted barriers.
ScalingConditionReport check_scaling_condition(const Barrier& b,
                                               double exclusion_radius = -1.0,
                                               double quantization_slack = -1.0);

struct InclusionReport {
  bool included = false;
  double max_violation = 0.0;
};

// R_inner ⊂ R_outer  ⇔  r_inner >= r_outer pointwise. Both barriers are
// resampled onto the union of their abscissae restricted to the common
// range; tolerance defaults to 2 * max(time_resolution).
InclusionReport barrier_inclusion(const Barrier& inner, const Barrier& outer,
                                  double tol = -1.0);

// CSV: header x,r,is_never (r empty when is_never = 1); metadata rides in
// '#' comment lines so a re-read reproduces the barrier exactly. `method`
// adds a provenance column.
void write_barrier_csv(const Barrier& b, std::ostream& os,
                       const std::string& method = "");
Barrier read_barrier_csv(std::istream& is);

}  // namespace rootbar
