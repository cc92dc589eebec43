#pragma once

#include <string>
#include <vector>

namespace rootbar {

struct Atom {
  double pos;
  double mass;
};

// Density piece sampled uniformly on [left, right]; values are interpreted as
// a piecewise-linear density (trapezoid mass), which the potential and moment
// quadratures integrate exactly.
struct Panel {
  double left;
  double right;
  std::vector<double> values;
};

// Mean-zero integrable probability measure with bounded support: atoms plus
// piecewise-linear density panels. Immutable after construction; every
// constructor validates mass = 1 and mean = 0 to 1e-9 and rejects anything
// outside the declared support.
class Measure {
 public:
  Measure(std::vector<Atom> atoms, std::vector<Panel> panels, double supp_lo,
          double supp_hi);

  static Measure point_mass_at_zero();

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Panel>& panels() const { return panels_; }
  double support_lo() const { return supp_lo_; }
  double support_hi() const { return supp_hi_; }
  bool has_atoms() const { return !atoms_.empty(); }

  // v(x) = -int |x-y| d mu(y); equals -|x| outside the support (mean-zero
  // tail identity, applied exactly as a branch).
  double potential(double x) const;

  double cdf(double x) const;
  double density_at(double x) const;  // panels only, 0 off-panel
  double first_abs_moment() const { return m1_; }
  double second_moment() const { return m2_; }

  // Image under y -> sqrt(lambda) y; lambda = 0 gives the point mass at 0.
  Measure scaled(double lambda) const;

  bool is_symmetric(double tol = 1e-9) const;

  std::string to_text() const;
  static Measure from_text(const std::string& doc);

 private:
  void validate();

  std::vector<Atom> atoms_;
  std::vector<Panel> panels_;
  double supp_lo_, supp_hi_;
  double m1_ = 0.0, m2_ = 0.0;
};

// The worked example measures. Curved densities are sampled with `samples`
// points per panel and renormalized so the trapezoid mass is exactly one.
Measure make_uniform(int samples = 2001);
Measure make_sqrt_abs(int samples = 2001);
Measure make_abs(int samples = 2001);
Measure make_two_point(double a, double b);
Measure make_three_point(double a, double p);
Measure make_gaussian_truncated(double sigma, double cutoff = 6.0,
                                int samples = 4001);

// name in {uniform, sqrt_abs, abs, two_point, three_point,
// gaussian_truncated}; params looked up by key.
Measure example_measure(const std::string& name,
                        const std::vector<std::pair<std::string, double>>& params,
                        int samples = 2001);

}  // namespace rootbar
