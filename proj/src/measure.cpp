#include "rootbar/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rootbar/text_io.hpp"

namespace rootbar {

namespace {

constexpr double kMassTol = 1e-9;
constexpr double kMeanTol = 1e-9;

// exact integral of |x-y| * (linear density) over [y0,y1]; Simpson is exact
// for the quadratic integrand once [y0,y1] is split at the kink.
double seg_abs_linear(double x, double y0, double y1, double d0, double d1) {
  auto simpson = [&](double a, double b) {
    const double m = 0.5 * (a + b);
    const double t0 = (a - y0) / (y1 - y0);
    const double tm = (m - y0) / (y1 - y0);
    const double t1 = (b - y0) / (y1 - y0);
    const double f0 = std::abs(x - a) * (d0 + (d1 - d0) * t0);
    const double fm = std::abs(x - m) * (d0 + (d1 - d0) * tm);
    const double f1 = std::abs(x - b) * (d0 + (d1 - d0) * t1);
    return (b - a) / 6.0 * (f0 + 4.0 * fm + f1);
  };
  if (x > y0 && x < y1) return simpson(y0, x) + simpson(x, y1);
  return simpson(y0, y1);
}

// exact integral of w(y) * (linear density) for polynomial weights
double seg_weighted(double y0, double y1, double d0, double d1,
                    double (*w)(double)) {
  const double m = 0.5 * (y0 + y1);
  const double f0 = w(y0) * d0;
  const double fm = w(m) * (0.5 * (d0 + d1));
  const double f1 = w(y1) * d1;
  return (y1 - y0) / 6.0 * (f0 + 4.0 * fm + f1);
}

double w_one(double) { return 1.0; }
double w_y(double y) { return y; }
double w_y2(double y) { return y * y; }

double panel_step(const Panel& p) {
  return (p.right - p.left) / static_cast<double>(p.values.size() - 1);
}

}  // namespace

Measure::Measure(std::vector<Atom> atoms, std::vector<Panel> panels,
                 double supp_lo, double supp_hi)
    : atoms_(std::move(atoms)),
      panels_(std::move(panels)),
      supp_lo_(supp_lo),
      supp_hi_(supp_hi) {
  validate();
}

Measure Measure::point_mass_at_zero() {
  return Measure({{0.0, 1.0}}, {}, 0.0, 0.0);
}

void Measure::validate() {
  if (!(supp_lo_ <= supp_hi_)) throw std::invalid_argument("support interval inverted");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (!(a.mass > 0.0 && a.mass <= 1.0))
      throw std::invalid_argument("atom mass must be in (0,1]");
    if (a.pos < supp_lo_ || a.pos > supp_hi_)
      throw std::invalid_argument("atom outside support");
    if (i > 0 && !(atoms_[i - 1].pos < a.pos))
      throw std::invalid_argument("atom positions must be strictly sorted");
  }
  for (std::size_t i = 0; i < panels_.size(); ++i) {
    const Panel& p = panels_[i];
    if (!(p.left < p.right)) throw std::invalid_argument("panel interval inverted");
    if (p.values.size() < 2) throw std::invalid_argument("panel needs >= 2 samples");
    if (p.left < supp_lo_ || p.right > supp_hi_)
      throw std::invalid_argument("panel outside support");
    for (double v : p.values)
      if (!(v >= 0.0)) throw std::invalid_argument("negative density sample");
    if (i > 0 && panels_[i - 1].right > p.left)
      throw std::invalid_argument("panels must be disjoint and sorted");
  }

  double mass = 0.0, mean = 0.0;
  m1_ = 0.0;
  m2_ = 0.0;
  for (const Atom& a : atoms_) {
    mass += a.mass;
    mean += a.mass * a.pos;
    m1_ += a.mass * std::abs(a.pos);
    m2_ += a.mass * a.pos * a.pos;
  }
  for (const Panel& p : panels_) {
    const double h = panel_step(p);
    for (std::size_t k = 0; k + 1 < p.values.size(); ++k) {
      const double y0 = p.left + h * static_cast<double>(k);
      const double y1 = (k + 2 == p.values.size()) ? p.right : y0 + h;
      const double d0 = p.values[k], d1 = p.values[k + 1];
      mass += seg_weighted(y0, y1, d0, d1, w_one);
      mean += seg_weighted(y0, y1, d0, d1, w_y);
      m2_ += seg_weighted(y0, y1, d0, d1, w_y2);
      m1_ += seg_abs_linear(0.0, y0, y1, d0, d1);
    }
  }
  if (std::abs(mass - 1.0) > kMassTol)
    throw std::invalid_argument("total mass is " + text::format_double(mass) +
                                ", expected 1");
  if (std::abs(mean) > kMeanTol)
    throw std::invalid_argument("measure not centered: mean = " +
                                text::format_double(mean));
}

double Measure::potential(double x) const {
  if (x <= supp_lo_ || x >= supp_hi_) return -std::abs(x);
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.mass * std::abs(x - a.pos);
  for (const Panel& p : panels_) {
    const double h = panel_step(p);
    for (std::size_t k = 0; k + 1 < p.values.size(); ++k) {
      const double y0 = p.left + h * static_cast<double>(k);
      const double y1 = (k + 2 == p.values.size()) ? p.right : y0 + h;
      s += seg_abs_linear(x, y0, y1, p.values[k], p.values[k + 1]);
    }
  }
  return -s;
}

double Measure::cdf(double x) const {
  double s = 0.0;
  for (const Atom& a : atoms_)
    if (a.pos <= x) s += a.mass;
  for (const Panel& p : panels_) {
    if (x <= p.left) continue;
    const double h = panel_step(p);
    for (std::size_t k = 0; k + 1 < p.values.size(); ++k) {
      const double y0 = p.left + h * static_cast<double>(k);
      const double y1 = (k + 2 == p.values.size()) ? p.right : y0 + h;
      if (x >= y1) {
        s += seg_weighted(y0, y1, p.values[k], p.values[k + 1], w_one);
      } else if (x > y0) {
        const double t = (x - y0) / (y1 - y0);
        const double dx_val = p.values[k] + (p.values[k + 1] - p.values[k]) * t;
        s += seg_weighted(y0, x, p.values[k], dx_val, w_one);
        break;
      } else {
        break;
      }
    }
  }
  return s;
}

double Measure::density_at(double x) const {
  for (const Panel& p : panels_) {
    if (x < p.left || x > p.right) continue;
    const double h = panel_step(p);
    const std::size_t k = std::min<std::size_t>(
        p.values.size() - 2,
        static_cast<std::size_t>(std::max(0.0, (x - p.left) / h)));
    const double y0 = p.left + h * static_cast<double>(k);
    const double t = std::clamp((x - y0) / h, 0.0, 1.0);
    return p.values[k] + (p.values[k + 1] - p.values[k]) * t;
  }
  return 0.0;
}

Measure Measure::scaled(double lambda) const {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (lambda == 0.0) return point_mass_at_zero();
  const double s = std::sqrt(lambda);
  std::vector<Atom> atoms;
  atoms.reserve(atoms_.size());
  for (const Atom& a : atoms_) atoms.push_back({s * a.pos, a.mass});
  std::vector<Panel> panels;
  panels.reserve(panels_.size());
  for (const Panel& p : panels_) {
    Panel q{s * p.left, s * p.right, p.values};
    for (double& v : q.values) v /= s;
    panels.push_back(std::move(q));
  }
  return Measure(std::move(atoms), std::move(panels), s * supp_lo_, s * supp_hi_);
}

bool Measure::is_symmetric(double tol) const {
  for (const Atom& a : atoms_) {
    bool found = false;
    for (const Atom& b : atoms_)
      if (std::abs(a.pos + b.pos) <= tol && std::abs(a.mass - b.mass) <= tol)
        found = true;
    if (!found) return false;
  }
  // sample-level check of the density
  for (const Panel& p : panels_) {
    const double h = panel_step(p);
    for (std::size_t k = 0; k < p.values.size(); ++k) {
      const double y = p.left + h * static_cast<double>(k);
      if (std::abs(density_at(-y) - p.values[k]) > tol + 1e-9 * p.values[k])
        return false;
    }
  }
  return true;
}

std::string Measure::to_text() const {
  std::ostringstream os;
  os << "atoms = [";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) os << ", ";
    os << "[" << text::format_double(atoms_[i].pos) << ", "
       << text::format_double(atoms_[i].mass) << "]";
  }
  os << "]\n";
  os << "panels = [";
  for (std::size_t i = 0; i < panels_.size(); ++i) {
    if (i) os << ", ";
    const Panel& p = panels_[i];
    os << "[" << text::format_double(p.left) << ", "
       << text::format_double(p.right) << ", [";
    for (std::size_t k = 0; k < p.values.size(); ++k) {
      if (k) os << ", ";
      os << text::format_double(p.values[k]);
    }
    os << "]]";
  }
  os << "]\n";
  os << "support = [" << text::format_double(supp_lo_) << ", "
     << text::format_double(supp_hi_) << "]\n";
  return os.str();
}

Measure Measure::from_text(const std::string& doc) {
  auto kv = text::read_keyvalue(doc);
  auto need = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument(std::string("measure document missing '") + key + "'");
    return it->second;
  };
  const text::ListNode atoms_n = text::parse_list(need("atoms"));
  const text::ListNode panels_n = text::parse_list(need("panels"));
  const text::ListNode supp_n = text::parse_list(need("support"));
  if (supp_n.items.size() != 2 || !supp_n.items[0].is_number)
    throw std::invalid_argument("support must be [lo, hi]");

  std::vector<Atom> atoms;
  for (const auto& it : atoms_n.items) {
    if (it.items.size() != 2) throw std::invalid_argument("atom must be [pos, mass]");
    atoms.push_back({it.items[0].number, it.items[1].number});
  }
  std::vector<Panel> panels;
  for (const auto& it : panels_n.items) {
    if (it.items.size() != 3 || it.items[2].is_number)
      throw std::invalid_argument("panel must be [left, right, [values...]]");
    Panel p{it.items[0].number, it.items[1].number, {}};
    for (const auto& v : it.items[2].items) p.values.push_back(v.number);
    panels.push_back(std::move(p));
  }
  return Measure(std::move(atoms), std::move(panels), supp_n.items[0].number,
                 supp_n.items[1].number);
}

namespace {

template <typename Shape>
Measure sampled_density(double lo, double hi, int samples, Shape shape) {
  if (samples < 2) throw std::invalid_argument("need >= 2 samples");
  std::vector<double> vals(static_cast<std::size_t>(samples));
  const double h = (hi - lo) / static_cast<double>(samples - 1);
  for (int k = 0; k < samples; ++k)
    vals[static_cast<std::size_t>(k)] = shape(lo + h * k);
  // normalize so trapezoid mass is exactly one
  double mass = 0.0;
  for (int k = 0; k + 1 < samples; ++k)
    mass += 0.5 * (vals[k] + vals[k + 1]) * h;
  for (double& v : vals) v /= mass;
  return Measure({}, {{lo, hi, std::move(vals)}}, lo, hi);
}

}  // namespace

Measure make_uniform(int samples) {
  return sampled_density(-1.0, 1.0, samples, [](double) { return 0.5; });
}

Measure make_sqrt_abs(int samples) {
  if (samples % 2 == 0) ++samples;  // keep the kink at 0 on a sample
  return sampled_density(-1.0, 1.0, samples,
                         [](double y) { return std::sqrt(std::abs(y)); });
}

Measure make_abs(int samples) {
  if (samples % 2 == 0) ++samples;
  return sampled_density(-1.0, 1.0, samples,
                         [](double y) { return std::abs(y); });
}

Measure make_two_point(double a, double b) {
  // The two masses b/(b-a) and -a/(b-a) are positive exactly because a < 0;
  // the magnitude |a| enters through b - a = b + |a|.
  if (!(a < 0.0)) throw std::invalid_argument("two_point: a must be negative");
  if (!(b > 0.0)) throw std::invalid_argument("two_point: b must be positive");
  const double span = b - a;
  return Measure({{a, b / span}, {b, -a / span}}, {}, a, b);
}

Measure make_three_point(double a, double p) {
  if (!(a > 0.0)) throw std::invalid_argument("three_point: a must be positive");
  if (!(p > 0.0 && p <= 0.5))
    throw std::invalid_argument("three_point: p must be in (0, 1/2]");
  std::vector<Atom> atoms;
  atoms.push_back({-a, p});
  if (p < 0.5) atoms.push_back({0.0, 1.0 - 2.0 * p});
  atoms.push_back({a, p});
  return Measure(std::move(atoms), {}, -a, a);
}

Measure make_gaussian_truncated(double sigma, double cutoff, int samples) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: sigma must be > 0");
  if (!(cutoff > 0.0)) throw std::invalid_argument("gaussian: cutoff must be > 0");
  if (samples % 2 == 0) ++samples;
  const double r = cutoff * sigma;
  return sampled_density(-r, r, samples, [sigma](double y) {
    return std::exp(-y * y / (2.0 * sigma * sigma));
  });
}

Measure example_measure(const std::string& name,
                        const std::vector<std::pair<std::string, double>>& params,
                        int samples) {
  auto get = [&](const char* key, double dflt, bool required) {
    for (const auto& kvp : params)
      if (kvp.first == key) return kvp.second;
    if (required)
      throw std::invalid_argument("measure '" + name + "' needs parameter '" + key + "'");
    return dflt;
  };
  if (name == "uniform") return make_uniform(samples);
  if (name == "sqrt_abs") return make_sqrt_abs(samples);
  if (name == "abs") return make_abs(samples);
  if (name == "two_point")
    return make_two_point(get("a", 0, true), get("b", 0, true));
  if (name == "three_point")
    return make_three_point(get("a", 0, true), get("p", 0, true));
  if (name == "gaussian_truncated")
    return make_gaussian_truncated(get("sigma", 0, true), get("cutoff", 6.0, false),
                                   std::max(samples, 4001));
  throw std::invalid_argument("unknown measure builder '" + name + "'");
}

}  // namespace rootbar
