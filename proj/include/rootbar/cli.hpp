#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rootbar/barrier.hpp"
#include "rootbar/measure.hpp"
#include "rootbar/montecarlo.hpp"
#include "rootbar/pde.hpp"

namespace rootbar::cli {

// exit codes shared by the tool and the in-process runners
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCfl = 3;
inline constexpr int kExitNumeric = 4;
inline constexpr int kExitStatistical = 5;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // measure: either a builder name with parameters or a file path
  std::string measure_builder;
  std::vector<std::pair<std::string, double>> measure_params;
  std::string measure_file;
  int measure_samples = 2001;

  SolverGrid grid{-2.0, 2.0, 1.0, 200, 5000};

  std::vector<double> lambdas{1.0};
  std::optional<double> epsilon;  // default: scheme-scaled contact tolerance
  bool family_from_files = false; // family-check reads barrier_<lambda>.csv

  mc::McConfig mc;

  std::string out_dir = "out";

  // volterra section
  double volterra_x_top = 0.0;  // 0 = support edge + 10%
  int volterra_points = 0;      // 0 = match grid dx
  double volterra_t_max = 10.0;

  Measure build_measure() const;
  double epsilon_for(const Measure& m) const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& doc);

// overrides applied after the file (CLI flags)
struct Overrides {
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> lambdas;
};
void apply_overrides(RunConfig& cfg, const Overrides& o);

// Command runners; each returns a process exit code and logs to `log`.
int run_solve(const RunConfig& cfg, std::ostream& log);
int run_family_check(const RunConfig& cfg, std::ostream& log);
int run_verify_embed(const RunConfig& cfg, std::ostream& log);
int run_volterra(const RunConfig& cfg, std::ostream& log);
int run_plot(const std::vector<std::string>& csv_paths, const std::string& out_svg,
             std::optional<double> horizon, std::ostream& log);

// barrier_<lambda>.csv inside dir
std::string barrier_csv_path(const std::string& dir, double lambda);

// Deterministic SVG rendering: time horizontal, space vertical, barrier
// regions as filled epigraph polygons, lambda = 1 drawn blue on top of the
// red lambda < 1 regions. NEVER rows extend to the horizon edge.
void render_barriers_svg(const std::vector<std::pair<std::string, Barrier>>& named,
                         double horizon, std::ostream& os);

}  // namespace rootbar::cli
