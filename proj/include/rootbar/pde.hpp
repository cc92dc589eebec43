#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootbar/measure.hpp"

namespace rootbar {

struct CflResult {
  bool ok;
  double dt;
  double dx_squared;
};

class CflViolation : public std::runtime_error {
 public:
  CflViolation(double dt, double dx_sq)
      : std::runtime_error("CFL violated: dt = " + std::to_string(dt) +
                           " >= dx^2 = " + std::to_string(dx_sq)),
        dt(dt),
        dx_squared(dx_sq) {}
  double dt;
  double dx_squared;
};

// Rectangular time-space mesh on [0,T] x [a,b]; t_n = n dt, x_j = a + j dx.
struct SolverGrid {
  double a;
  double b;
  double horizon;
  int nx;
  int nt;

  double dx() const { return (b - a) / static_cast<double>(nx); }
  double dt() const { return horizon / static_cast<double>(nt); }
  double x(int j) const { return a + dx() * static_cast<double>(j); }
  double t(int n) const { return dt() * static_cast<double>(n); }
};

// dt < dx^2, strictly.
CflResult cfl_check(const SolverGrid& grid);

// Throws CflViolation / invalid_argument when the grid cannot host the
// measure (support must lie strictly inside (a, b)).
void validate_grid(const SolverGrid& grid, const Measure& m);

struct ValueField {
  SolverGrid grid;
  std::vector<double> values;    // (nt+1) x (nx+1), time-major
  std::vector<double> obstacle;  // v at the grid columns
  std::string measure_id;

  double at(int n, int j) const {
    return values[static_cast<std::size_t>(n) * (grid.nx + 1) +
                  static_cast<std::size_t>(j)];
  }
  // header t,x,u,v; rows t-major
  void write_csv(std::ostream& os) const;
};

// Explicit scheme: row 0 is -|x|, then
//   u(n+1, j) = max(v(j), u(n, j) + dt/(2 dx^2) * (u(n,j+1) - 2u(n,j) + u(n,j-1)))
// at interior columns, with both boundary columns pinned to -|a|, -|b|.
ValueField solve_obstacle(const Measure& m, const SolverGrid& grid,
                          const std::string& measure_id = "");

// Streaming variant: keeps two rows and records per-column first-contact
// times; the barrier module wraps it (see solve_to_barrier there).
struct StreamContact {
  std::vector<double> first_contact;  // -1 when never within horizon
  std::vector<double> obstacle;
  double min_final_gap;  // min over columns of u(T) - v
};
StreamContact solve_obstacle_streaming(const Measure& m, const SolverGrid& grid,
                                       double epsilon);

}  // namespace rootbar
