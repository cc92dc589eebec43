#include "rootbar/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rootbar/text_io.hpp"

namespace rootbar {

namespace {

std::vector<double> grid_abscissae(const SolverGrid& g) {
  std::vector<double> xs(static_cast<std::size_t>(g.nx) + 1);
  for (int j = 0; j <= g.nx; ++j) xs[static_cast<std::size_t>(j)] = g.x(j);
  return xs;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double default_contact_tol(const ValueField& field) {
  return 2.0 * (field.grid.dx() + field.grid.dt()) * (1.0 + max_abs(field.obstacle));
}

double default_contact_tol(const Measure& m, const SolverGrid& grid) {
  double vmax = 0.0;
  for (int j = 0; j <= grid.nx; ++j)
    vmax = std::max(vmax, std::abs(m.potential(grid.x(j))));
  return 2.0 * (grid.dx() + grid.dt()) * (1.0 + vmax);
}

Barrier extract_barrier(const ValueField& field, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  Barrier b;
  b.xs = grid_abscissae(field.grid);
  b.horizon = field.grid.horizon;
  b.contact_tol = epsilon;
  b.time_resolution = field.grid.dt();
  b.r.assign(b.xs.size(), HitTime::never_hit());
  for (int j = 0; j <= field.grid.nx; ++j) {
    for (int n = 0; n <= field.grid.nt; ++n) {
      if (field.at(n, j) - field.obstacle[static_cast<std::size_t>(j)] <= epsilon) {
        b.r[static_cast<std::size_t>(j)] = HitTime::at(field.grid.t(n));
        break;
      }
    }
  }
  return b;
}

Barrier solve_to_barrier(const Measure& m, const SolverGrid& grid,
                         double epsilon) {
  StreamContact sc = solve_obstacle_streaming(m, grid, epsilon);
  Barrier b;
  b.xs = grid_abscissae(grid);
  b.horizon = grid.horizon;
  b.contact_tol = epsilon;
  b.time_resolution = grid.dt();
  b.r.reserve(sc.first_contact.size());
  for (double t : sc.first_contact)
    b.r.push_back(t < 0.0 ? HitTime::never_hit() : HitTime::at(t));
  return b;
}

Barrier regularize(const Barrier& b) {
  if (b.xs.empty()) throw std::invalid_argument("empty barrier");
  const auto is_zero = [&](std::size_t j) {
    return !b.r[j].never && b.r[j].t == 0.0;
  };
  // first zero at or left of 0 and at or right of 0, scanning outward
  std::ptrdiff_t left = -1, right = -1;
  for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(b.xs.size()) - 1; j >= 0; --j) {
    if (b.xs[static_cast<std::size_t>(j)] > 0.0) continue;
    if (is_zero(static_cast<std::size_t>(j))) {
      left = j;
      break;
    }
  }
  for (std::size_t j = 0; j < b.xs.size(); ++j) {
    if (b.xs[j] < 0.0) continue;
    if (is_zero(j)) {
      right = static_cast<std::ptrdiff_t>(j);
      break;
    }
  }
  if (left < 0 || right < 0)
    throw std::invalid_argument(
        "regularize: no barrier zero found on one side of the origin (grid too small)");
  Barrier out = b;
  for (std::size_t j = 0; j < out.xs.size(); ++j) {
    if (out.xs[j] < out.xs[static_cast<std::size_t>(left)] ||
        out.xs[j] > out.xs[static_cast<std::size_t>(right)])
      out.r[j] = HitTime::at(0.0);
  }
  out.regularized = true;
  return out;
}

Barrier scale_barrier(const Barrier& b, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  const double s = std::sqrt(lambda);
  Barrier out = b;
  for (double& x : out.xs) x *= s;
  for (HitTime& h : out.r)
    if (!h.never) h.t *= lambda;
  out.horizon = b.horizon * lambda;
  out.time_resolution = b.time_resolution * lambda;
  out.contact_tol = b.contact_tol * s;  // u-scale factor under the scaling law
  return out;
}

namespace {

// nearest-node index with the midpoint tie resolved toward the smaller r
std::size_t nearest_index(const Barrier& b, double x) {
  const auto it = std::lower_bound(b.xs.begin(), b.xs.end(), x);
  if (it == b.xs.begin()) return 0;
  if (it == b.xs.end()) return b.xs.size() - 1;
  const std::size_t hi = static_cast<std::size_t>(it - b.xs.begin());
  const std::size_t lo = hi - 1;
  const double dl = x - b.xs[lo], dh = b.xs[hi] - x;
  if (dl < dh) return lo;
  if (dh < dl) return hi;
  return hit_ge(b.r[lo], b.r[hi]) ? hi : lo;
}

}  // namespace

HitTime eval_barrier(const Barrier& b, double x) {
  if (b.xs.empty()) throw std::invalid_argument("empty barrier");
  if (x < b.x_min() || x > b.x_max())
    throw std::out_of_range("eval_barrier: x outside sampled range");
  return b.r[nearest_index(b, x)];
}

HitTime eval_barrier_clamped(const Barrier& b, double x) {
  if (x <= b.x_min()) return b.r.front();
  if (x >= b.x_max()) return b.r.back();
  return b.r[nearest_index(b, x)];
}

ScalingConditionReport check_scaling_condition(const Barrier& b,
                                               double exclusion_radius,
                                               double quantization_slack) {
  double dx = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + 1 < b.xs.size(); ++j)
    dx = std::min(dx, b.xs[j + 1] - b.xs[j]);
  if (exclusion_radius < 0.0) exclusion_radius = 2.0 * dx;
  if (quantization_slack < 0.0) quantization_slack = 2.0 * b.time_resolution;

  ScalingConditionReport rep;
  const double inf = std::numeric_limits<double>::infinity();
  auto q = [&](std::size_t j) {
    if (b.r[j].never) return inf;
    return b.r[j].t / (b.xs[j] * b.xs[j]);
  };
  // walk adjacent included pairs; sign = +1 requires q non-decreasing
  auto walk = [&](bool negative_side) {
    std::ptrdiff_t prev = -1;
    for (std::size_t j = 0; j < b.xs.size(); ++j) {
      const double x = b.xs[j];
      if (negative_side ? (x >= 0.0) : (x <= 0.0)) continue;
      if (std::abs(x) <= exclusion_radius) continue;
      if (prev >= 0) {
        const std::size_t i = static_cast<std::size_t>(prev);
        const double qi = q(i), qj = q(j);
        // moving toward +x: negative side must not decrease, positive side
        // must not increase
        const double delta = negative_side ? (qj - qi) : (qi - qj);
        if (std::isinf(qi) && std::isinf(qj)) {
          // both never: no constraint
        } else {
          double slack = quantization_slack /
                         std::min(b.xs[i] * b.xs[i], b.xs[j] * b.xs[j]);
          if (delta < -slack) {
            if (rep.holds) rep.witness = {b.xs[i], b.xs[j]};
            rep.holds = false;
            return;
          }
        }
      }
      prev = static_cast<std::ptrdiff_t>(j);
    }
  };
  walk(true);
  if (rep.holds) walk(false);
  return rep;
}

InclusionReport barrier_inclusion(const Barrier& inner, const Barrier& outer,
                                  double tol) {
  if (tol < 0.0) tol = 2.0 * std::max(inner.time_resolution, outer.time_resolution);
  const double lo = std::max(inner.x_min(), outer.x_min());
  const double hi = std::min(inner.x_max(), outer.x_max());
  std::vector<double> common;
  common.reserve(inner.xs.size() + outer.xs.size());
  for (double x : inner.xs)
    if (x >= lo && x <= hi) common.push_back(x);
  for (double x : outer.xs)
    if (x >= lo && x <= hi) common.push_back(x);
  std::sort(common.begin(), common.end());
  common.erase(std::unique(common.begin(), common.end()), common.end());

  InclusionReport rep;
  rep.included = true;
  for (double x : common) {
    const HitTime ri = eval_barrier(inner, x);
    const HitTime ro = eval_barrier(outer, x);
    double violation = 0.0;
    if (ro.never) {
      violation = ri.never ? 0.0 : std::max(outer.horizon - ri.t, 0.0);
    } else if (!ri.never) {
      violation = std::max(ro.t - ri.t, 0.0);
    }
    rep.max_violation = std::max(rep.max_violation, violation);
  }
  rep.included = rep.max_violation <= tol;
  return rep;
}

void write_barrier_csv(const Barrier& b, std::ostream& os,
                       const std::string& method) {
  os << "# horizon = " << text::format_double(b.horizon) << '\n';
  os << "# contact_tol = " << text::format_double(b.contact_tol) << '\n';
  os << "# time_resolution = " << text::format_double(b.time_resolution) << '\n';
  os << "# regularized = " << (b.regularized ? 1 : 0) << '\n';
  os << (method.empty() ? "x,r,is_never" : "x,r,is_never,method") << '\n';
  for (std::size_t j = 0; j < b.xs.size(); ++j) {
    os << text::format_double(b.xs[j]) << ',';
    if (b.r[j].never)
      os << ",1";
    else
      os << text::format_double(b.r[j].t) << ",0";
    if (!method.empty()) os << ',' << method;
    os << '\n';
  }
}

Barrier read_barrier_csv(std::istream& is) {
  Barrier b;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    std::string_view sv = text::trim(line);
    if (sv.empty()) continue;
    if (sv.front() == '#') {
      auto eq = sv.find('=');
      if (eq != std::string_view::npos) {
        std::string key(text::trim(sv.substr(1, eq - 1)));
        std::string_view val = text::trim(sv.substr(eq + 1));
        if (key == "horizon") b.horizon = text::parse_double(val);
        else if (key == "contact_tol") b.contact_tol = text::parse_double(val);
        else if (key == "time_resolution") b.time_resolution = text::parse_double(val);
        else if (key == "regularized") b.regularized = text::parse_long(val) != 0;
      }
      continue;
    }
    if (!header_seen) {
      if (sv.substr(0, 12) != "x,r,is_never")
        throw std::invalid_argument("barrier CSV: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    auto cells = text::split(sv, ',');
    if (cells.size() < 3) throw std::invalid_argument("barrier CSV: short row");
    b.xs.push_back(text::parse_double(cells[0]));
    const bool is_never = text::parse_long(cells[2]) != 0;
    if (is_never) {
      if (!cells[1].empty())
        throw std::invalid_argument("barrier CSV: r must be empty when is_never=1");
      b.r.push_back(HitTime::never_hit());
    } else {
      b.r.push_back(HitTime::at(text::parse_double(cells[1])));
    }
  }
  if (!header_seen) throw std::invalid_argument("barrier CSV: missing header");
  for (std::size_t j = 0; j + 1 < b.xs.size(); ++j)
    if (!(b.xs[j] < b.xs[j + 1]))
      throw std::invalid_argument("barrier CSV: abscissae not increasing");
  return b;
}

}  // namespace rootbar
