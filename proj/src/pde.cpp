#include "rootbar/pde.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "rootbar/kernels.hpp"
#include "rootbar/text_io.hpp"

namespace rootbar {

CflResult cfl_check(const SolverGrid& grid) {
  const double dxsq = grid.dx() * grid.dx();
  return {grid.dt() < dxsq, grid.dt(), dxsq};
}

void validate_grid(const SolverGrid& grid, const Measure& m) {
  if (grid.nx < 2 || grid.nt < 1)
    throw std::invalid_argument("grid needs nx >= 2 and nt >= 1");
  if (!(grid.a < 0.0 && grid.b > 0.0))
    throw std::invalid_argument("grid must satisfy a < 0 < b");
  if (!(grid.horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
  const CflResult c = cfl_check(grid);
  if (!c.ok) throw CflViolation(c.dt, c.dx_squared);
  if (!(grid.a < m.support_lo() && grid.b > m.support_hi()))
    throw std::invalid_argument("measure support must lie strictly inside (a, b)");
}

void ValueField::write_csv(std::ostream& os) const {
  os << "t,x,u,v\n";
  for (int n = 0; n <= grid.nt; ++n)
    for (int j = 0; j <= grid.nx; ++j)
      os << text::format_double(grid.t(n)) << ',' << text::format_double(grid.x(j))
         << ',' << text::format_double(at(n, j)) << ','
         << text::format_double(obstacle[static_cast<std::size_t>(j)]) << '\n';
}

namespace {

std::vector<double> obstacle_row(const Measure& m, const SolverGrid& grid) {
  std::vector<double> v(static_cast<std::size_t>(grid.nx) + 1);
  for (int j = 0; j <= grid.nx; ++j)
    v[static_cast<std::size_t>(j)] = m.potential(grid.x(j));
  return v;
}

std::vector<double> initial_row(const SolverGrid& grid) {
  std::vector<double> u(static_cast<std::size_t>(grid.nx) + 1);
  for (int j = 0; j <= grid.nx; ++j)
    u[static_cast<std::size_t>(j)] = -std::abs(grid.x(j));
  return u;
}

}  // namespace

ValueField solve_obstacle(const Measure& m, const SolverGrid& grid,
                          const std::string& measure_id) {
  validate_grid(grid, m);
  const std::size_t w = static_cast<std::size_t>(grid.nx) + 1;
  ValueField field;
  field.grid = grid;
  field.measure_id = measure_id;
  field.obstacle = obstacle_row(m, grid);
  field.values.resize(w * (static_cast<std::size_t>(grid.nt) + 1));

  std::vector<double> row = initial_row(grid);
  std::copy(row.begin(), row.end(), field.values.begin());
  const double coef = grid.dt() / (2.0 * grid.dx() * grid.dx());
  const double left = -std::abs(grid.a), right = -std::abs(grid.b);
  for (int n = 0; n < grid.nt; ++n) {
    double* src = field.values.data() + static_cast<std::size_t>(n) * w;
    double* dst = src + w;
    kernels::heat_obstacle_row(src, field.obstacle.data(), dst, w, coef);
    dst[0] = left;
    dst[w - 1] = right;
  }
  return field;
}

StreamContact solve_obstacle_streaming(const Measure& m, const SolverGrid& grid,
                                       double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  validate_grid(grid, m);
  const std::size_t w = static_cast<std::size_t>(grid.nx) + 1;

  StreamContact out;
  out.obstacle = obstacle_row(m, grid);
  out.first_contact.assign(w, -1.0);

  std::vector<double> u = initial_row(grid);
  std::vector<double> next(w);
  const double coef = grid.dt() / (2.0 * grid.dx() * grid.dx());
  const double left = -std::abs(grid.a), right = -std::abs(grid.b);

  std::size_t pending = 0;
  for (std::size_t j = 0; j < w; ++j) {
    if (u[j] - out.obstacle[j] <= epsilon)
      out.first_contact[j] = 0.0;
    else
      ++pending;
  }
  for (int n = 0; n < grid.nt; ++n) {
    kernels::heat_obstacle_row(u.data(), out.obstacle.data(), next.data(), w, coef);
    next[0] = left;
    next[w - 1] = right;
    u.swap(next);
    if (pending > 0) {
      const double tn = grid.t(n + 1);
      for (std::size_t j = 0; j < w; ++j) {
        if (out.first_contact[j] < 0.0 && u[j] - out.obstacle[j] <= epsilon) {
          out.first_contact[j] = tn;
          --pending;
        }
      }
    }
  }
  out.min_final_gap = u[1] - out.obstacle[1];
  for (std::size_t j = 1; j + 1 < w; ++j)
    out.min_final_gap = std::min(out.min_final_gap, u[j] - out.obstacle[j]);
  return out;
}

}  // namespace rootbar
