#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rootbar/cli.hpp"
#include "rootbar/text_io.hpp"
#include "rootbar/volterra.hpp"

namespace rootbar::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require_lambdas(const RunConfig& cfg, std::size_t min_count) {
  if (cfg.lambdas.size() < min_count)
    throw ConfigError("need at least " + std::to_string(min_count) +
                      " lambda value(s)");
  for (double l : cfg.lambdas)
    if (!(l > 0.0)) throw ConfigError("lambda values must be positive");
  for (std::size_t i = 0; i + 1 < cfg.lambdas.size(); ++i)
    if (!(cfg.lambdas[i] < cfg.lambdas[i + 1]))
      throw ConfigError("lambda list must be strictly ascending");
}

// Direct solve of the scaled measure on the configured grid. The contact
// tolerance scales with sqrt(lambda) so extraction commutes with the
// scaling law at leading order.
Barrier solve_lambda(const RunConfig& cfg, const Measure& base, double lambda,
                     double eps_base) {
  const Measure scaled = base.scaled(lambda);
  return solve_to_barrier(scaled, cfg.grid, eps_base * std::sqrt(lambda));
}

struct ContactStats {
  std::size_t zero = 0, finite = 0, never = 0;
};

ContactStats contact_stats(const Barrier& b) {
  ContactStats s;
  for (const HitTime& h : b.r) {
    if (h.never)
      ++s.never;
    else if (h.t == 0.0)
      ++s.zero;
    else
      ++s.finite;
  }
  return s;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
}

int map_exception(std::ostream& log) {
  try {
    throw;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CflViolation& e) {
    log << "CFL violation: dt = " << text::format_double(e.dt)
        << " must be < dx^2 = " << text::format_double(e.dx_squared) << '\n';
    return kExitCfl;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace

int run_solve(const RunConfig& cfg, std::ostream& log) {
  try {
    require_lambdas(cfg, 1);
    const auto t0 = Clock::now();
    const Measure base = cfg.build_measure();
    const double eps = cfg.epsilon_for(base);
    fs::create_directories(cfg.out_dir);
    for (double lambda : cfg.lambdas) {
      Barrier b = regularize(solve_lambda(cfg, base, lambda, eps));
      std::ostringstream csv;
      write_barrier_csv(b, csv);
      const std::string path = barrier_csv_path(cfg.out_dir, lambda);
      write_file(path, csv.str());
      const ContactStats st = contact_stats(b);
      log << "lambda=" << text::format_double(lambda) << " -> " << path
          << "  contacts: zero=" << st.zero << " finite=" << st.finite
          << " never=" << st.never << '\n';
    }
    log << "solve done in " << text::format_double(seconds_since(t0)) << " s\n";
    return kExitOk;
  } catch (...) {
    return map_exception(log);
  }
}

int run_family_check(const RunConfig& cfg, std::ostream& log) {
  try {
    require_lambdas(cfg, 2);
    const bool has_one =
        std::count(cfg.lambdas.begin(), cfg.lambdas.end(), 1.0) > 0;
    if (!has_one) throw ConfigError("family-check needs lambda = 1 in the list");

    const Measure base = cfg.build_measure();
    const double eps = cfg.epsilon_for(base);
    std::vector<std::pair<double, Barrier>> family;
    for (double lambda : cfg.lambdas) {
      if (cfg.family_from_files) {
        const std::string path = barrier_csv_path(cfg.out_dir, lambda);
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open barrier file '" + path + "'");
        family.emplace_back(lambda, read_barrier_csv(in));
      } else {
        family.emplace_back(lambda, regularize(solve_lambda(cfg, base, lambda, eps)));
      }
    }

    const Barrier* b1 = nullptr;
    for (const auto& [lambda, b] : family)
      if (lambda == 1.0) b1 = &b;

    std::vector<mc::CheckReport> reports;

    {
      const ScalingConditionReport sc = check_scaling_condition(*b1);
      mc::CheckReport rep;
      rep.metric = "scaling_condition_lambda_1";
      rep.pass = sc.holds;
      rep.value = sc.holds ? 0.0 : 1.0;
      rep.threshold = 0.0;
      if (sc.witness)
        rep.detail = "witness x = (" + text::format_double(sc.witness->first) +
                     " ; " + text::format_double(sc.witness->second) + ")";
      reports.push_back(rep);
    }

    const double inc_tol = 2.0 * cfg.grid.dt();
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (std::size_t j = i + 1; j < family.size(); ++j) {
        // larger lambda gives the smaller barrier set: inner = family[j]
        const InclusionReport rep =
            barrier_inclusion(family[j].second, family[i].second, inc_tol);
        mc::CheckReport cr;
        cr.metric = "inclusion_" + text::format_double(family[j].first) +
                    "_in_" + text::format_double(family[i].first);
        cr.value = rep.max_violation;
        cr.threshold = inc_tol;
        cr.pass = rep.included;
        reports.push_back(cr);
      }
    }

    // scale-law comparison: direct solve of mu_lambda against the scaled
    // lambda = 1 barrier, on the direct grid's abscissae
    const double scale_tol = 5.0 * cfg.grid.dt() + 0.1;
    for (const auto& [lambda, direct] : family) {
      if (lambda == 1.0) continue;
      const Barrier scaled = scale_barrier(*b1, lambda);
      double sup = 0.0;
      bool comparable = true;
      for (std::size_t j = 0; j < direct.xs.size(); ++j) {
        const double x = direct.xs[j];
        if (x < scaled.x_min() || x > scaled.x_max()) continue;
        const HitTime a = direct.r[j];
        const HitTime s = eval_barrier(scaled, x);
        if (a.never != s.never) {
          comparable = false;
          break;
        }
        if (!a.never) sup = std::max(sup, std::abs(a.t - s.t));
      }
      mc::CheckReport cr;
      cr.metric = "scale_law_lambda_" + text::format_double(lambda);
      cr.value = comparable ? sup : std::numeric_limits<double>::infinity();
      cr.threshold = scale_tol;
      cr.pass = comparable && sup <= scale_tol;
      if (!comparable) cr.detail = "finite/never mismatch";
      reports.push_back(cr);
    }

    mc::write_reports(reports, log);
    fs::create_directories(cfg.out_dir);
    std::ostringstream rep_text;
    mc::write_reports(reports, rep_text);
    write_file(cfg.out_dir + "/family_check.csv", rep_text.str());

    const bool all_pass = std::all_of(reports.begin(), reports.end(),
                                      [](const mc::CheckReport& r) { return r.pass; });
    return all_pass ? kExitOk : kExitStatistical;
  } catch (...) {
    return map_exception(log);
  }
}

int run_verify_embed(const RunConfig& cfg, std::ostream& log) {
  try {
    require_lambdas(cfg, 1);
    const Measure base = cfg.build_measure();
    const double eps = cfg.epsilon_for(base);

    std::vector<std::pair<double, Barrier>> family;
    for (double lambda : cfg.lambdas)
      family.emplace_back(lambda, regularize(solve_lambda(cfg, base, lambda, eps)));

    mc::McConfig mcc = cfg.mc;
    mcc.lambdas = cfg.lambdas;
    if (mcc.t_cap <= 0.0) {
      double mh = 0.0;
      for (const auto& [l, b] : family) {
        (void)l;
        mh = std::max(mh, b.horizon);
      }
      mcc.t_cap = 10.0 * mh;  // generous: finite barriers stop by max r anyway
    }

    const mc::HittingSampleSet samples = mc::sample_hitting(family, mcc);

    std::vector<mc::CheckReport> reports;
    const double n = static_cast<double>(mcc.n_paths);
    const double ks_threshold = 1.63 / std::sqrt(n) + 2.0 * std::sqrt(mcc.dt_sim);

    for (std::size_t k = 0; k < cfg.lambdas.size(); ++k) {
      const double lambda = cfg.lambdas[k];
      const Measure target = base.scaled(lambda);
      std::vector<double> values;
      values.reserve(samples.samples[k].size());
      for (const mc::PathSample& ps : samples.samples[k]) values.push_back(ps.b_tau);
      if (target.has_atoms())
        values = mc::snap_to_atoms(values, target, 2.0 * std::sqrt(mcc.dt_sim));
      mc::CheckReport rep;
      rep.metric = "ks_embedding_lambda_" + text::format_double(lambda);
      rep.value = mc::ks_distance(values, target);
      rep.threshold = ks_threshold;
      rep.pass = rep.value <= rep.threshold;
      if (target.has_atoms()) rep.detail = "atom-snapped";
      reports.push_back(rep);
    }

    for (std::size_t k = 0; k + 1 < cfg.lambdas.size(); ++k) {
      auto mart = mc::martingale_check(samples, cfg.lambdas[k], cfg.lambdas[k + 1]);
      reports.insert(reports.end(), mart.begin(), mart.end());
    }

    if (std::count(cfg.lambdas.begin(), cfg.lambdas.end(), 1.0) > 0) {
      for (double lambda : cfg.lambdas)
        if (lambda != 1.0) reports.push_back(mc::scaling_check(samples, lambda));
    }

    auto mt = mc::mean_tau_check(samples, base);
    reports.insert(reports.end(), mt.begin(), mt.end());

    mc::write_reports(reports, log);
    fs::create_directories(cfg.out_dir);
    std::ostringstream rep_text;
    mc::write_reports(reports, rep_text);
    write_file(cfg.out_dir + "/verify_embed.csv", rep_text.str());
    std::ostringstream sample_csv;
    samples.write_csv(sample_csv);
    write_file(cfg.out_dir + "/samples.csv", sample_csv.str());

    const bool all_pass = std::all_of(reports.begin(), reports.end(),
                                      [](const mc::CheckReport& r) { return r.pass; });
    return all_pass ? kExitOk : kExitStatistical;
  } catch (...) {
    return map_exception(log);
  }
}

int run_volterra(const RunConfig& cfg, std::ostream& log) {
  try {
    const Measure m = cfg.build_measure();
    const double x_top = cfg.volterra_x_top > 0.0 ? cfg.volterra_x_top
                                                  : 1.1 * m.support_hi();
    int points = cfg.volterra_points;
    if (points <= 0) points = static_cast<int>(std::round(x_top / cfg.grid.dx())) + 1;
    VolterraProblem prob =
        VolterraProblem::on_uniform_grid(m, x_top, points, cfg.volterra_t_max);
    const auto t0 = Clock::now();
    const VolterraSolution sol = solve_volterra(prob);
    double max_resid = 0.0;
    for (double r : sol.residuals) max_resid = std::max(max_resid, r);
    fs::create_directories(cfg.out_dir);
    std::ostringstream csv;
    write_barrier_csv(sol.barrier, csv, "volterra");
    write_file(cfg.out_dir + "/barrier_volterra.csv", csv.str());
    log << "volterra solved " << points << " abscissae in "
        << text::format_double(seconds_since(t0))
        << " s, max residual = " << text::format_double(max_resid) << '\n';
    return kExitOk;
  } catch (...) {
    return map_exception(log);
  }
}

int run_plot(const std::vector<std::string>& csv_paths, const std::string& out_svg,
             std::optional<double> horizon, std::ostream& log) {
  try {
    if (csv_paths.empty()) throw ConfigError("plot needs at least one barrier CSV");
    std::vector<std::pair<std::string, Barrier>> named;
    for (const std::string& path : csv_paths) {
      std::ifstream in(path);
      if (!in) throw ConfigError("cannot open '" + path + "'");
      Barrier b;
      try {
        b = read_barrier_csv(in);
      } catch (const std::exception& e) {
        throw ConfigError("malformed CSV '" + path + "': " + e.what());
      }
      std::string stem = fs::path(path).stem().string();
      named.emplace_back(stem, std::move(b));
    }
    double h = horizon.value_or(0.0);
    if (h <= 0.0) {
      for (const auto& [name, b] : named) {
        (void)name;
        h = std::max(h, b.horizon);
        for (const HitTime& r : b.r)
          if (!r.never) h = std::max(h, r.t);
      }
      if (h <= 0.0) h = 1.0;
    }
    std::ostringstream svg;
    render_barriers_svg(named, h, svg);
    write_file(out_svg, svg.str());
    log << "wrote " << out_svg << '\n';
    return kExitOk;
  } catch (...) {
    return map_exception(log);
  }
}

}  // namespace rootbar::cli
