#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rootbar/cli.hpp"
#include "rootbar/text_io.hpp"

namespace rootbar::cli {

Measure RunConfig::build_measure() const {
  if (!measure_file.empty()) {
    std::ifstream in(measure_file);
    if (!in) throw ConfigError("cannot open measure file '" + measure_file + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return Measure::from_text(ss.str());
  }
  if (measure_builder.empty())
    throw ConfigError("config needs measure.builder or measure.file");
  return example_measure(measure_builder, measure_params, measure_samples);
}

double RunConfig::epsilon_for(const Measure& m) const {
  if (epsilon) {
    if (!(*epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
    return *epsilon;
  }
  return default_contact_tol(m, grid);
}

namespace {

double get_double(const std::map<std::string, std::string>& kv,
                  const std::string& key, double dflt) {
  auto it = kv.find(key);
  if (it == kv.end()) return dflt;
  return text::parse_double(it->second);
}

long get_long(const std::map<std::string, std::string>& kv,
              const std::string& key, long dflt) {
  auto it = kv.find(key);
  if (it == kv.end()) return dflt;
  return text::parse_long(it->second);
}

}  // namespace

RunConfig parse_config_text(const std::string& doc) {
  std::map<std::string, std::string> kv;
  try {
    kv = text::read_keyvalue(doc);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  RunConfig cfg;
  try {
    if (auto it = kv.find("measure.builder"); it != kv.end())
      cfg.measure_builder = it->second;
    if (auto it = kv.find("measure.file"); it != kv.end())
      cfg.measure_file = it->second;
    cfg.measure_samples = static_cast<int>(get_long(kv, "measure.samples", 2001));
    for (const char* pname : {"a", "b", "p", "sigma", "cutoff"}) {
      auto it = kv.find(std::string("measure.") + pname);
      if (it != kv.end())
        cfg.measure_params.emplace_back(pname, text::parse_double(it->second));
    }

    cfg.grid.a = get_double(kv, "grid.a", cfg.grid.a);
    cfg.grid.b = get_double(kv, "grid.b", cfg.grid.b);
    cfg.grid.horizon = get_double(kv, "grid.T", cfg.grid.horizon);
    cfg.grid.nx = static_cast<int>(get_long(kv, "grid.nx", cfg.grid.nx));
    cfg.grid.nt = static_cast<int>(get_long(kv, "grid.nt", cfg.grid.nt));

    if (auto it = kv.find("family.lambda"); it != kv.end()) {
      cfg.lambdas.clear();
      for (const std::string& tok : text::split(it->second, ','))
        cfg.lambdas.push_back(text::parse_double(tok));
    }
    if (auto it = kv.find("barrier.epsilon"); it != kv.end()) {
      if (it->second != "auto") cfg.epsilon = text::parse_double(it->second);
    }
    cfg.family_from_files = get_long(kv, "family.from_files", 0) != 0;

    cfg.mc.n_paths = get_long(kv, "mc.paths", 100000);
    cfg.mc.dt_sim = get_double(kv, "mc.dt_sim", 5e-5);
    cfg.mc.t_cap = get_double(kv, "mc.t_cap", 0.0);
    cfg.mc.seed = static_cast<std::uint64_t>(get_long(kv, "mc.seed", 42));
    cfg.mc.n_threads = static_cast<int>(get_long(kv, "mc.threads", 0));

    if (auto it = kv.find("output.dir"); it != kv.end()) cfg.out_dir = it->second;

    cfg.volterra_x_top = get_double(kv, "volterra.x_top", 0.0);
    cfg.volterra_points = static_cast<int>(get_long(kv, "volterra.points", 0));
    cfg.volterra_t_max = get_double(kv, "volterra.t_max", 10.0);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.seed) cfg.mc.seed = *o.seed;
  if (o.lambdas) cfg.lambdas = *o.lambdas;
}

std::string barrier_csv_path(const std::string& dir, double lambda) {
  return dir + "/barrier_" + text::format_double(lambda) + ".csv";
}

}  // namespace rootbar::cli
