#include "rootbar/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rootbar/text_io.hpp"

namespace rootbar {

double g_kernel(double t, double z) {
  constexpr double pi = 3.141592653589793238462643383279502884;
  if (t <= 0.0) return 0.0;
  const double az = std::abs(z);
  const double s = std::sqrt(2.0 * t);
  return std::sqrt(2.0 * t / pi) * std::exp(-z * z / (2.0 * t)) -
         az * std::erfc(az / s);
}

VolterraProblem VolterraProblem::on_uniform_grid(Measure m, double x_top,
                                                 int n_points, double t_max) {
  VolterraProblem p{std::move(m), {}, t_max};
  if (n_points < 2) throw std::invalid_argument("need >= 2 grid points");
  p.xs_positive.resize(static_cast<std::size_t>(n_points));
  const double h = x_top / static_cast<double>(n_points - 1);
  for (int k = 0; k < n_points; ++k)
    p.xs_positive[static_cast<std::size_t>(k)] = h * static_cast<double>(k);
  return p;
}

namespace {

void validate(const VolterraProblem& p) {
  if (p.measure.has_atoms())
    throw std::invalid_argument("volterra oracle needs an atom-free measure");
  if (!p.measure.is_symmetric(1e-9))
    throw std::invalid_argument("volterra oracle needs a symmetric measure");
  if (p.xs_positive.size() < 2)
    throw std::invalid_argument("volterra grid too small");
  for (std::size_t k = 0; k + 1 < p.xs_positive.size(); ++k)
    if (!(p.xs_positive[k] < p.xs_positive[k + 1]))
      throw std::invalid_argument("volterra grid must be strictly increasing");
  if (!(p.xs_positive.front() >= 0.0))
    throw std::invalid_argument("volterra grid must be non-negative");
  if (p.xs_positive.back() <= p.measure.support_hi())
    throw std::invalid_argument("volterra grid must extend past the support edge");
  if (!(p.t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
}

// Residual of the integral equation at x given the outer profile
// (ys descending |x| outside x, with solved r values). The integral runs
// over both tails {|y| > x}; nodes are the solve grid refined `nsub`-fold
// with the profile linearly interpolated, and the innermost node y = x
// carries integrand zero (the tie r(y) = r(x) is excluded).
class Residual {
 public:
  Residual(const VolterraProblem& p, double x, double lhs,
           const std::vector<double>& ys_desc, const std::vector<double>& rs_desc)
      : p_(p), x_(x), lhs_(lhs) {
    // ascending nodes from x to the outermost abscissa
    const std::size_t m = ys_desc.size();
    ys_.reserve(m + 1);
    rs_.reserve(m + 1);
    ys_.push_back(x);
    rs_.push_back(0.0);  // placeholder; integrand at y = x is pinned to 0
    for (std::size_t i = m; i-- > 0;) {
      ys_.push_back(ys_desc[i]);
      rs_.push_back(rs_desc[i]);
    }
  }

  double operator()(double rho) const {
    const int nsub = std::max(1, p_.integration_subdivisions);
    double integral = 0.0;
    double y_prev = 0.0, f_prev = 0.0;
    bool have_prev = false;
    for (std::size_t k = 0; k + 1 < ys_.size(); ++k) {
      const double y0 = ys_[k], y1 = ys_[k + 1];
      const double r0 = (k == 0) ? rho : rs_[k];
      const double r1 = rs_[k + 1];
      for (int s = 0; s <= nsub; ++s) {
        if (s == 0 && have_prev) continue;  // node shared with previous segment
        const double frac = static_cast<double>(s) / static_cast<double>(nsub);
        const double y = y0 + (y1 - y0) * frac;
        const double ry = r0 + (r1 - r0) * frac;
        const double dr = rho - ry;
        double f = 0.0;
        if (dr > 0.0 && !(k == 0 && s == 0)) {
          const double dens = p_.measure.density_at(y);
          if (dens > 0.0)
            f = (g_kernel(dr, x_ - y) + g_kernel(dr, x_ + y)) * dens;
        }
        if (have_prev) integral += 0.5 * (f_prev + f) * (y - y_prev);
        y_prev = y;
        f_prev = f;
        have_prev = true;
      }
    }
    return g_kernel(rho, x_) - integral - lhs_;
  }

 private:
  const VolterraProblem& p_;
  double x_;
  double lhs_;
  std::vector<double> ys_;  // ascending, starting at x
  std::vector<double> rs_;
};

}  // namespace

VolterraSolution solve_volterra(const VolterraProblem& p) {
  validate(p);
  const double tol = p.bisect_tol_factor * p.t_max;
  const double alpha = p.measure.support_hi();

  std::vector<double> ys_desc, rs_desc;  // solved outer profile, |x| descending
  std::vector<double> r_pos(p.xs_positive.size(), 0.0);
  VolterraSolution sol;
  sol.residuals.assign(p.xs_positive.size(), 0.0);
  sol.flat_accepted.assign(p.xs_positive.size(), false);

  double r_prev = 0.0;
  for (std::size_t idx = p.xs_positive.size(); idx-- > 0;) {
    const double x = p.xs_positive[idx];
    if (x >= alpha) {  // off support: lhs = 0 and r = 0 solves exactly
      r_pos[idx] = 0.0;
      ys_desc.push_back(x);
      rs_desc.push_back(0.0);
      continue;
    }
    const double lhs = -std::abs(x) - p.measure.potential(x);
    Residual F(p, x, lhs, ys_desc, rs_desc);

    double lo = r_prev;
    double flo = F(lo);
    double rho;
    if (flo > 0.0) {
      // profile locally flat: the previous level already (over)satisfies the
      // equation, keep it rather than step backwards
      rho = lo;
      sol.flat_accepted[idx] = true;
    } else {
      // expanding search for the first upcrossing, then bisection
      double step = std::max(tol, 1e-4);
      double hi = lo + step;
      bool found = false;
      while (hi <= p.t_max) {
        if (F(hi) > 0.0) {
          found = true;
          break;
        }
        lo = hi;
        step *= 1.6;
        hi = lo + step;
      }
      if (!found) {
        if (flo > -p.flat_residual_band) {
          rho = r_prev;
          sol.flat_accepted[idx] = true;
        } else {
          throw std::runtime_error(
              "volterra: no bracket at x = " + text::format_double(x) +
              " (residual " + text::format_double(flo) + " at r = " +
              text::format_double(r_prev) + ", " +
              text::format_double(F(p.t_max)) + " at t_max)");
        }
      } else {
        while (hi - lo > tol) {
          const double mid = 0.5 * (lo + hi);
          if (F(mid) <= 0.0)
            lo = mid;
          else
            hi = mid;
        }
        rho = 0.5 * (lo + hi);
      }
    }
    if (rho < r_prev)
      throw std::runtime_error("volterra: non-monotone profile at x = " +
                               text::format_double(x));
    sol.residuals[idx] = std::abs(F(rho));
    r_pos[idx] = rho;
    r_prev = rho;
    ys_desc.push_back(x);
    rs_desc.push_back(rho);
  }

  // mirror onto a symmetric barrier
  Barrier& b = sol.barrier;
  const std::size_t n = p.xs_positive.size();
  const bool has_zero = p.xs_positive.front() == 0.0;
  for (std::size_t i = n; i-- > (has_zero ? 1 : 0);)
    b.xs.push_back(-p.xs_positive[i]);
  for (std::size_t i = 0; i < n; ++i) b.xs.push_back(p.xs_positive[i]);
  for (std::size_t i = n; i-- > (has_zero ? 1 : 0);)
    b.r.push_back(HitTime::at(r_pos[i]));
  for (std::size_t i = 0; i < n; ++i) b.r.push_back(HitTime::at(r_pos[i]));
  b.horizon = p.t_max;
  b.contact_tol = 0.0;
  b.time_resolution = 0.0;
  b.regularized = true;
  return sol;
}

}  // namespace rootbar
