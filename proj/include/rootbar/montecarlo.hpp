#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rootbar/barrier.hpp"
#include "rootbar/measure.hpp"

namespace rootbar::mc {

struct McConfig {
  std::int64_t n_paths = 0;
  double dt_sim = 0.0;
  double t_cap = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> lambdas;
  int n_threads = 0;  // 0 = hardware concurrency
};

struct PathSample {
  double tau;
  double b_tau;
  bool capped;
};

struct HittingSampleSet {
  McConfig config;
  // samples[k][p]: path p stopped against the k-th barrier (ascending lambda)
  std::vector<std::vector<PathSample>> samples;
  // max inclusion violation found per consecutive lambda pair during the
  // nesting pre-check (residual violations are reported, within-tolerance
  // families are accepted)
  std::vector<double> nesting_violations;

  const std::vector<PathSample>& at_lambda(double lambda) const;
  // path_id,lambda,tau,b_tau,capped; path-major
  void write_csv(std::ostream& os) const;
};

// Euler simulation of Brownian paths against a nested barrier family,
// lambdas ascending. Each path uses its own counter-based stream; for each
// lambda in turn the stopping search resumes from the previous stopping
// step, which realizes per-path monotonicity of tau exactly.
HittingSampleSet sample_hitting(const std::vector<std::pair<double, Barrier>>& family,
                                const McConfig& cfg);

// sup_x |F_empirical - F_mu| with both one-sided limits examined at every
// sample point and atom.
double ks_distance(std::vector<double> samples, const Measure& m);

// Atom-targeted post-processing for distribution comparison: values within
// `radius` (default 2 sqrt(dt_sim)) of an atom snap onto it. Raw values stay
// in the sample set; this returns the snapped copy.
std::vector<double> snap_to_atoms(const std::vector<double>& values,
                                  const Measure& m, double radius);

struct CheckReport {
  std::string metric;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};
void write_reports(const std::vector<CheckReport>& reports, std::ostream& os);

// Bins paths by B_{tau_from} quantiles and tests per-bin and global means of
// the increment against 0 at 4 standard errors. n_bins shrinks automatically
// until every bin holds >= 30 paths; throws when even one bin is starved.
std::vector<CheckReport> martingale_check(const HittingSampleSet& s,
                                          double lambda_from, double lambda_to,
                                          int n_bins = 10);

// Two-sample KS between {B_tau_lambda} and {sqrt(lambda) B_tau_1} on
// disjoint path blocks, level-0.01 threshold 1.628 sqrt((n+m)/(nm)).
CheckReport scaling_check(const HittingSampleSet& s, double lambda);

// Per lambda: sample mean of tau against lambda * second_moment(m1) within
// 4 standard errors + allowance (default 2 sqrt(dt_sim)). Capped paths are
// excluded with a warning detail when they exceed 1%.
std::vector<CheckReport> mean_tau_check(const HittingSampleSet& s,
                                        const Measure& m1,
                                        double allowance = -1.0);

// Weak uniform-integrability proxy: E[|B_{tau ^ t}| 1{|B| > K}] sampled at
// the given thresholds must be non-increasing in K. Simulates fresh paths.
CheckReport ui_proxy_check(const Barrier& b, const McConfig& cfg, double t,
                           const std::vector<double>& thresholds);

// Deterministic order-insensitive reduction helpers.
double pairwise_sum(const double* data, std::size_t n);
double pairwise_mean(const std::vector<double>& v);
double sample_stddev(const std::vector<double>& v, double mean);

}  // namespace rootbar::mc
