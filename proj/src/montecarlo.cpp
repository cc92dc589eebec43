#include "rootbar/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "rootbar/rng.hpp"
#include "rootbar/text_io.hpp"

namespace rootbar::mc {

double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 32) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

double pairwise_mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean of empty sample");
  return pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - mean;
    sq[i] = d * d;
  }
  return std::sqrt(pairwise_sum(sq.data(), sq.size()) /
                   static_cast<double>(v.size() - 1));
}

const std::vector<PathSample>& HittingSampleSet::at_lambda(double lambda) const {
  for (std::size_t k = 0; k < config.lambdas.size(); ++k)
    if (config.lambdas[k] == lambda) return samples[k];
  throw std::invalid_argument("lambda " + text::format_double(lambda) +
                              " not present in sample set");
}

void HittingSampleSet::write_csv(std::ostream& os) const {
  os << "path_id,lambda,tau,b_tau,capped\n";
  for (std::int64_t p = 0; p < config.n_paths; ++p) {
    for (std::size_t k = 0; k < config.lambdas.size(); ++k) {
      const PathSample& ps = samples[k][static_cast<std::size_t>(p)];
      os << p << ',' << text::format_double(config.lambdas[k]) << ','
         << text::format_double(ps.tau) << ',' << text::format_double(ps.b_tau)
         << ',' << (ps.capped ? 1 : 0) << '\n';
    }
  }
}

namespace {

void validate_config(const McConfig& cfg,
                     const std::vector<std::pair<double, Barrier>>& family) {
  if (cfg.n_paths <= 0) throw std::invalid_argument("n_paths must be > 0");
  if (!(cfg.dt_sim > 0.0)) throw std::invalid_argument("dt_sim must be > 0");
  if (family.empty()) throw std::invalid_argument("empty barrier family");
  for (std::size_t k = 0; k + 1 < family.size(); ++k)
    if (!(family[k].first < family[k + 1].first))
      throw std::invalid_argument("lambda list must be strictly ascending");
  for (const auto& [lambda, b] : family) {
    (void)lambda;
    if (b.time_resolution > 0.0 && cfg.dt_sim > b.time_resolution + 1e-15)
      throw std::invalid_argument("dt_sim must not exceed the barrier grid dt");
  }
  double max_horizon = 0.0;
  for (const auto& [lambda, b] : family) {
    (void)lambda;
    max_horizon = std::max(max_horizon, b.horizon);
  }
  if (!(cfg.t_cap >= max_horizon))
    throw std::invalid_argument("t_cap must cover the largest barrier horizon");
}

}  // namespace

HittingSampleSet sample_hitting(const std::vector<std::pair<double, Barrier>>& family,
                                const McConfig& cfg) {
  validate_config(cfg, family);

  HittingSampleSet out;
  out.config = cfg;
  out.config.lambdas.clear();
  for (const auto& [lambda, b] : family) {
    (void)b;
    out.config.lambdas.push_back(lambda);
  }

  // nesting pre-check: ascending lambda means shrinking barriers, so the
  // larger-lambda barrier must include into the smaller-lambda one
  for (std::size_t k = 0; k + 1 < family.size(); ++k) {
    const InclusionReport rep =
        barrier_inclusion(family[k + 1].second, family[k].second);
    out.nesting_violations.push_back(rep.max_violation);
    if (!rep.included)
      throw std::invalid_argument(
          "barrier family is not nested between lambda = " +
          text::format_double(family[k].first) + " and " +
          text::format_double(family[k + 1].first) + " (violation " +
          text::format_double(rep.max_violation) + ")");
  }

  const std::size_t nl = family.size();
  const std::size_t np = static_cast<std::size_t>(cfg.n_paths);
  out.samples.assign(nl, std::vector<PathSample>(np));

  const double sqrt_dt = std::sqrt(cfg.dt_sim);
  const std::int64_t cap_steps =
      static_cast<std::int64_t>(std::ceil(cfg.t_cap / cfg.dt_sim));

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      rng::NormalStream stream(cfg.seed, static_cast<std::uint64_t>(p));
      double pos = 0.0;
      std::int64_t step = 0;
      for (std::size_t k = 0; k < nl; ++k) {
        const Barrier& b = family[k].second;
        PathSample ps{0.0, 0.0, false};
        while (true) {
          const double t = static_cast<double>(step) * cfg.dt_sim;
          const HitTime r = eval_barrier_clamped(b, pos);
          if (!r.never && t >= r.t) {
            ps.tau = t;
            ps.b_tau = pos;
            break;
          }
          if (step >= cap_steps) {
            ps.tau = t;
            ps.b_tau = pos;
            ps.capped = true;
            break;
          }
          pos += sqrt_dt * stream.next();
          ++step;
        }
        if (!std::isfinite(pos))
          throw std::runtime_error("non-finite Brownian increment encountered");
        out.samples[k][p] = ps;
      }
    }
  };

  int threads = cfg.n_threads > 0
                    ? cfg.n_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, 16));
  if (threads == 1 || np < 256) {
    run_range(0, np);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    const std::size_t chunk = (np + static_cast<std::size_t>(threads) - 1) /
                              static_cast<std::size_t>(threads);
    for (int ti = 0; ti < threads; ++ti) {
      const std::size_t begin = static_cast<std::size_t>(ti) * chunk;
      const std::size_t end = std::min(np, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, ti, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          errors[static_cast<std::size_t>(ti)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const std::exception_ptr& ep : errors)
      if (ep) std::rethrow_exception(ep);
  }
  return out;
}

double ks_distance(std::vector<double> samples, const Measure& m) {
  if (samples.empty()) throw std::invalid_argument("empty sample set");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());

  // candidate points: sample values and atom positions; F_emp is flat and
  // F_mu monotone between them, so the sup is attained at a candidate side
  std::vector<double> cand = samples;
  for (const Atom& a : m.atoms()) cand.push_back(a.pos);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  double d = 0.0;
  for (double x : cand) {
    const auto lo = std::lower_bound(samples.begin(), samples.end(), x);
    const auto hi = std::upper_bound(samples.begin(), samples.end(), x);
    const double emp_left = static_cast<double>(lo - samples.begin()) / n;
    const double emp_right = static_cast<double>(hi - samples.begin()) / n;
    const double f_right = m.cdf(x);
    double f_left = f_right;
    for (const Atom& a : m.atoms())
      if (a.pos == x) f_left -= a.mass;
    d = std::max(d, std::abs(emp_left - f_left));
    d = std::max(d, std::abs(emp_right - f_right));
  }
  return d;
}

std::vector<double> snap_to_atoms(const std::vector<double>& values,
                                  const Measure& m, double radius) {
  std::vector<double> out = values;
  if (m.atoms().empty()) return out;
  for (double& v : out) {
    double best = radius;
    double snapped = v;
    for (const Atom& a : m.atoms()) {
      const double d = std::abs(v - a.pos);
      if (d <= best) {
        best = d;
        snapped = a.pos;
      }
    }
    v = snapped;
  }
  return out;
}

void write_reports(const std::vector<CheckReport>& reports, std::ostream& os) {
  os << "metric,value,threshold,pass\n";
  for (const CheckReport& r : reports) {
    os << r.metric << ',' << text::format_double(r.value) << ','
       << text::format_double(r.threshold) << ',' << (r.pass ? 1 : 0);
    if (!r.detail.empty()) os << ',' << r.detail;
    os << '\n';
  }
}

std::vector<CheckReport> martingale_check(const HittingSampleSet& s,
                                          double lambda_from, double lambda_to,
                                          int n_bins) {
  if (!(lambda_from < lambda_to))
    throw std::invalid_argument("martingale_check needs lambda_from < lambda_to");
  const auto& from = s.at_lambda(lambda_from);
  const auto& to = s.at_lambda(lambda_to);
  const std::size_t n = from.size();

  while (n_bins > 1 && n / static_cast<std::size_t>(n_bins) < 30) --n_bins;
  if (n < 30)
    throw std::invalid_argument("martingale_check: fewer than 30 paths");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return from[a].b_tau < from[b].b_tau;
  });

  std::vector<CheckReport> reports;
  std::vector<double> all(n);
  for (std::size_t i = 0; i < n; ++i)
    all[i] = to[order[i]].b_tau - from[order[i]].b_tau;

  bool all_pass = true;
  for (int bin = 0; bin < n_bins; ++bin) {
    const std::size_t lo = n * static_cast<std::size_t>(bin) /
                           static_cast<std::size_t>(n_bins);
    const std::size_t hi = n * static_cast<std::size_t>(bin + 1) /
                           static_cast<std::size_t>(n_bins);
    std::vector<double> inc(all.begin() + static_cast<std::ptrdiff_t>(lo),
                            all.begin() + static_cast<std::ptrdiff_t>(hi));
    const double mean = pairwise_mean(inc);
    const double se = sample_stddev(inc, mean) / std::sqrt(static_cast<double>(inc.size()));
    CheckReport rep;
    rep.metric = "martingale_bin_" + std::to_string(bin);
    rep.value = std::abs(mean);
    rep.threshold = 4.0 * se;
    rep.pass = rep.value <= rep.threshold;
    all_pass = all_pass && rep.pass;
    reports.push_back(rep);
  }
  const double gmean = pairwise_mean(all);
  const double gse = sample_stddev(all, gmean) / std::sqrt(static_cast<double>(n));
  CheckReport grep;
  grep.metric = "martingale_global";
  grep.value = std::abs(gmean);
  grep.threshold = 4.0 * gse;
  grep.pass = grep.value <= grep.threshold && all_pass;
  reports.push_back(grep);
  return reports;
}

namespace {

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() || ib < b.size()) {
    const double x = (ib >= b.size() || (ia < a.size() && a[ia] <= b[ib]))
                         ? a[ia]
                         : b[ib];
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    const double fa = static_cast<double>(ia) / static_cast<double>(a.size());
    const double fb = static_cast<double>(ib) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

}  // namespace

CheckReport scaling_check(const HittingSampleSet& s, double lambda) {
  const auto& at_l = s.at_lambda(lambda);
  const auto& at_1 = s.at_lambda(1.0);
  const std::size_t n = at_l.size();
  const std::size_t half = n / 2;
  if (half < 10) throw std::invalid_argument("scaling_check: too few paths");

  // disjoint path blocks keep the two samples independent
  const double root = std::sqrt(lambda);
  std::vector<double> a, b;
  a.reserve(half);
  b.reserve(n - half);
  for (std::size_t p = 0; p < half; ++p) a.push_back(at_l[p].b_tau);
  for (std::size_t p = half; p < n; ++p) b.push_back(root * at_1[p].b_tau);

  CheckReport rep;
  rep.metric = "scaling_lambda_" + text::format_double(lambda);
  rep.value = two_sample_ks(std::move(a), std::move(b));
  const double na = static_cast<double>(half);
  const double nb = static_cast<double>(n - half);
  rep.threshold = 1.628 * std::sqrt((na + nb) / (na * nb));  // level 0.01
  rep.pass = rep.value < rep.threshold;
  return rep;
}

std::vector<CheckReport> mean_tau_check(const HittingSampleSet& s,
                                        const Measure& m1, double allowance) {
  if (allowance < 0.0) allowance = 2.0 * std::sqrt(s.config.dt_sim);
  const double m2 = m1.second_moment();
  std::vector<CheckReport> reports;
  for (std::size_t k = 0; k < s.config.lambdas.size(); ++k) {
    const double lambda = s.config.lambdas[k];
    std::vector<double> taus;
    std::size_t capped = 0;
    taus.reserve(s.samples[k].size());
    for (const PathSample& ps : s.samples[k]) {
      if (ps.capped)
        ++capped;
      else
        taus.push_back(ps.tau);
    }
    CheckReport rep;
    rep.metric = "mean_tau_lambda_" + text::format_double(lambda);
    const double frac_capped =
        static_cast<double>(capped) / static_cast<double>(s.samples[k].size());
    if (taus.empty()) {
      rep.pass = false;
      rep.detail = "all paths capped";
      reports.push_back(rep);
      continue;
    }
    const double mean = pairwise_mean(taus);
    const double se = sample_stddev(taus, mean) / std::sqrt(static_cast<double>(taus.size()));
    const double target = lambda * m2;
    rep.value = std::abs(mean - target);
    rep.threshold = 4.0 * se + allowance;
    rep.pass = rep.value <= rep.threshold;
    if (frac_capped > 0.01) {
      rep.detail = "warning: " + text::format_double(frac_capped) +
                   " of paths capped and excluded (biases the mean low)";
    }
    reports.push_back(rep);
  }
  return reports;
}

CheckReport ui_proxy_check(const Barrier& b, const McConfig& cfg, double t,
                           const std::vector<double>& thresholds) {
  const double sqrt_dt = std::sqrt(cfg.dt_sim);
  const std::int64_t steps = static_cast<std::int64_t>(std::floor(t / cfg.dt_sim));
  const std::size_t np = static_cast<std::size_t>(cfg.n_paths);
  std::vector<double> stopped_abs(np);
  for (std::size_t p = 0; p < np; ++p) {
    rng::NormalStream stream(cfg.seed, static_cast<std::uint64_t>(p));
    double pos = 0.0;
    double tau_pos = 0.0;
    bool hit = false;
    for (std::int64_t k = 0; k <= steps; ++k) {
      const double tk = static_cast<double>(k) * cfg.dt_sim;
      const HitTime r = eval_barrier_clamped(b, pos);
      if (!r.never && tk >= r.t) {
        tau_pos = pos;
        hit = true;
        break;
      }
      pos += sqrt_dt * stream.next();
    }
    stopped_abs[p] = std::abs(hit ? tau_pos : pos);  // |B_{tau ^ t}|
  }
  CheckReport rep;
  rep.metric = "uniform_integrability_proxy";
  rep.pass = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double K : thresholds) {
    std::vector<double> tail(np, 0.0);
    for (std::size_t p = 0; p < np; ++p)
      tail[p] = stopped_abs[p] > K ? stopped_abs[p] : 0.0;
    const double tail_mean = pairwise_mean(tail);
    if (tail_mean > prev + 1e-15) rep.pass = false;
    prev = tail_mean;
    if (!rep.detail.empty()) rep.detail += ';';
    rep.detail += "K=" + text::format_double(K) + ":" + text::format_double(tail_mean);
  }
  rep.value = prev;
  return rep;
}

}  // namespace rootbar::mc
