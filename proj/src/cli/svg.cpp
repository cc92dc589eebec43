#include <algorithm>
#include <cmath>
#include <ostream>

#include "rootbar/cli.hpp"
#include "rootbar/text_io.hpp"

namespace rootbar::cli {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 56;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 20;
constexpr int kMarginBottom = 44;

const char* kBlue = "#1f77b4";
const char* kRed = "#d62728";

std::string fmt(double v) {
  // fixed 2-decimal pixel coordinates keep the output bytes deterministic
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// lambda parsed from a "barrier_<lambda>" stem; 1.0 when absent
double lambda_of(const std::string& name) {
  const std::string prefix = "barrier_";
  if (name.rfind(prefix, 0) == 0) {
    try {
      return text::parse_double(name.substr(prefix.size()));
    } catch (const std::exception&) {
    }
  }
  return 1.0;
}

}  // namespace

void render_barriers_svg(const std::vector<std::pair<std::string, Barrier>>& named,
                         double horizon, std::ostream& os) {
  double x_lo = 0.0, x_hi = 0.0;
  for (const auto& [name, b] : named) {
    (void)name;
    x_lo = std::min(x_lo, b.x_min());
    x_hi = std::max(x_hi, b.x_max());
  }
  if (x_lo == x_hi) {
    x_lo -= 1.0;
    x_hi += 1.0;
  }
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double t) { return kMarginLeft + (t / horizon) * plot_w; };
  auto py = [&](double x) {
    return kMarginTop + (1.0 - (x - x_lo) / (x_hi - x_lo)) * plot_h;
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
     << kHeight << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n";

  // larger sets (smaller lambda) first so lambda = 1 lands on top in blue
  std::vector<std::size_t> order(named.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lambda_of(named[a].first) < lambda_of(named[b].first);
  });

  for (std::size_t oi : order) {
    const auto& [name, b] = named[oi];
    const double lambda = lambda_of(name);
    const char* color = lambda == 1.0 ? kBlue : kRed;
    // epigraph staircase: cell j spans [x_j - h/2, x_j + h/2] at t = r(x_j)
    os << "<path d=\"";
    const std::size_t n = b.xs.size();
    auto cell_lo = [&](std::size_t j) {
      return j == 0 ? b.xs[0] : 0.5 * (b.xs[j - 1] + b.xs[j]);
    };
    auto cell_hi = [&](std::size_t j) {
      return j + 1 == n ? b.xs[n - 1] : 0.5 * (b.xs[j] + b.xs[j + 1]);
    };
    auto t_of = [&](std::size_t j) {
      return b.r[j].never ? horizon : std::min(b.r[j].t, horizon);
    };
    os << "M" << fmt(px(horizon)) << ' ' << fmt(py(cell_lo(0)));
    for (std::size_t j = 0; j < n; ++j) {
      os << " L" << fmt(px(t_of(j))) << ' ' << fmt(py(cell_lo(j)));
      os << " L" << fmt(px(t_of(j))) << ' ' << fmt(py(cell_hi(j)));
    }
    os << " L" << fmt(px(horizon)) << ' ' << fmt(py(cell_hi(n - 1)));
    os << " Z\" fill=\"" << color << "\" fill-opacity=\"0.55\" stroke=\"" << color
       << "\" stroke-width=\"1\"/>\n";
  }

  // frame and ticks
  os << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
     << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double t = horizon * i / 4.0;
    os << "<line x1=\"" << fmt(px(t)) << "\" y1=\"" << fmt(kMarginTop + plot_h)
       << "\" x2=\"" << fmt(px(t)) << "\" y2=\"" << fmt(kMarginTop + plot_h + 5)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(px(t)) << "\" y=\"" << fmt(kMarginTop + plot_h + 18)
       << "\" font-size=\"11\" text-anchor=\"middle\">" << text::format_double(t)
       << "</text>\n";
    const double x = x_lo + (x_hi - x_lo) * i / 4.0;
    os << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << fmt(py(x)) << "\" x2=\""
       << kMarginLeft << "\" y2=\"" << fmt(py(x)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt(py(x) + 4)
       << "\" font-size=\"11\" text-anchor=\"end\">" << text::format_double(x)
       << "</text>\n";
  }
  os << "<text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\""
     << kHeight - 8 << "\" font-size=\"12\" text-anchor=\"middle\">t</text>\n";
  os << "<text x=\"14\" y=\"" << fmt(kMarginTop + plot_h / 2)
     << "\" font-size=\"12\" text-anchor=\"middle\">x</text>\n";

  // legend, top-right
  double ly = kMarginTop + 14.0;
  for (std::size_t oi : order) {
    const auto& [name, b] = named[oi];
    (void)b;
    const char* color = lambda_of(name) == 1.0 ? kBlue : kRed;
    const double lx = kMarginLeft + plot_w - 150.0;
    os << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly - 9) << "\" width=\"12\""
       << " height=\"12\" fill=\"" << color << "\" fill-opacity=\"0.55\"/>\n";
    os << "<text x=\"" << fmt(lx + 18) << "\" y=\"" << fmt(ly + 1)
       << "\" font-size=\"11\">" << name << "</text>\n";
    ly += 16.0;
  }
  os << "</svg>\n";
}

}  // namespace rootbar::cli
