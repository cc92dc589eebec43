#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rootbar/cli.hpp"
#include "rootbar/text_io.hpp"

namespace cli = rootbar::cli;

int main(int argc, char** argv) {
  CLI::App app{"Root barriers for the Skorokhod embedding problem: obstacle-PDE "
               "solver, scaling-family checks, Volterra oracle, Monte Carlo "
               "verification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string lambda_csv;
  std::int64_t seed = -1;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    cmd->add_option("--config", config_path, "run configuration file")
        ->required(config_required);
    cmd->add_option("--out", out_dir, "output directory override");
    cmd->add_option("--seed", seed, "RNG seed override");
    cmd->add_option("--lambda", lambda_csv, "comma-separated lambda list override");
  };

  CLI::App* c_solve = app.add_subcommand("solve", "solve barriers per lambda");
  add_common(c_solve, true);
  CLI::App* c_family = app.add_subcommand(
      "family-check", "scaling condition, inclusion and scale-law checks");
  add_common(c_family, true);
  CLI::App* c_verify = app.add_subcommand(
      "verify-embed", "Monte Carlo embedding, martingale and scaling checks");
  add_common(c_verify, true);
  CLI::App* c_volterra =
      app.add_subcommand("volterra", "integral-equation barrier oracle");
  add_common(c_volterra, true);

  CLI::App* c_plot = app.add_subcommand("plot", "render barrier CSVs to SVG");
  std::vector<std::string> plot_inputs;
  std::string plot_out = "barriers.svg";
  double plot_horizon = 0.0;
  c_plot->add_option("inputs", plot_inputs, "barrier CSV files")->required();
  c_plot->add_option("--out", plot_out, "output SVG path");
  c_plot->add_option("--horizon", plot_horizon, "time-axis extent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return cli::kExitConfig;
  }

  if (c_plot->parsed()) {
    std::optional<double> h;
    if (plot_horizon > 0.0) h = plot_horizon;
    return cli::run_plot(plot_inputs, plot_out, h, std::cout);
  }

  cli::RunConfig cfg;
  try {
    cfg = cli::load_config(config_path);
    cli::Overrides ov;
    if (!out_dir.empty()) ov.out_dir = out_dir;
    if (seed >= 0) ov.seed = static_cast<std::uint64_t>(seed);
    if (!lambda_csv.empty()) {
      std::vector<double> ls;
      for (const std::string& tok : rootbar::text::split(lambda_csv, ','))
        ls.push_back(rootbar::text::parse_double(tok));
      ov.lambdas = ls;
    }
    cli::apply_overrides(cfg, ov);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitConfig;
  }

  if (c_solve->parsed()) return cli::run_solve(cfg, std::cout);
  if (c_family->parsed()) return cli::run_family_check(cfg, std::cout);
  if (c_verify->parsed()) return cli::run_verify_embed(cfg, std::cout);
  if (c_volterra->parsed()) return cli::run_volterra(cfg, std::cout);
  return cli::kExitConfig;
}
