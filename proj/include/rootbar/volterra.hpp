#pragma once

#include <vector>

#include "rootbar/barrier.hpp"
#include "rootbar/measure.hpp"

namespace rootbar {

// g(t, z) = sqrt(2t/pi) exp(-z^2/(2t)) - |z| Erfc(|z| / sqrt(2t)),
// extended continuously by g(0, z) = 0.
double g_kernel(double t, double z);

// Independent oracle for continuous barriers of atom-free symmetric
// measures: r solves, at every x,
//   v_{delta_0}(x) - v_mu(x) = g(r(x), x)
//                              - int_{r(y) < r(x)} g(r(x) - r(y), x - y) dmu(y).
// In the regime where r is symmetric and non-increasing in |x| the domain of
// integration is the already-solved outer region, so the grid is processed
// from the support edge inward and each abscissa reduces to one scalar
// root-find.
struct VolterraProblem {
  Measure measure;
  std::vector<double> xs_positive;  // solve points, descending to >= 0 is not required; sorted ascending
  double t_max = 10.0;              // root-search horizon
  double bisect_tol_factor = 1e-8;  // tolerance = factor * t_max
  int integration_subdivisions = 4; // trapezoid refinement between solved nodes
  double flat_residual_band = 1e-3; // accept flat continuation within this band

  // xs spans [0, x_top] uniformly; x_top should exceed the support edge.
  static VolterraProblem on_uniform_grid(Measure m, double x_top, int n_points,
                                         double t_max);
};

struct VolterraSolution {
  Barrier barrier;                 // symmetric, on +-xs
  std::vector<double> residuals;   // |lhs - rhs| at each positive abscissa
  std::vector<bool> flat_accepted; // true where the flat-continuation rule fired
};

// Throws std::runtime_error with the offending x and residuals when the
// expanding bracket finds no sign change and the flat band does not apply,
// or when the intermediate profile loses monotonicity.
VolterraSolution solve_volterra(const VolterraProblem& p);

}  // namespace rootbar
