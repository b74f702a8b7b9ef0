#include "optomag/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace optomag {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kMargin = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Range {
  double lo{std::numeric_limits<double>::infinity()};
  double hi{-std::numeric_limits<double>::infinity()};
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double span() const { return hi > lo ? hi - lo : 1.0; }
};

std::string header(const std::string& title) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << title
    << "</text>\n";
  return s.str();
}

std::string axes_frame(const Range& x, const Range& y, const std::string& xl, const std::string& yl) {
  std::ostringstream s;
  const double x0 = kMargin, x1 = kWidth - kMargin, y0 = kHeight - kMargin, y1 = kMargin;
  s << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\""
    << y0 - y1 << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<text x=\"" << x0 << "\" y=\"" << y0 + 18 << "\" font-size=\"11\">" << num(x.lo) << "</text>\n";
  s << "<text x=\"" << x1 << "\" y=\"" << y0 + 18 << "\" font-size=\"11\" text-anchor=\"end\">"
    << num(x.hi) << "</text>\n";
  s << "<text x=\"" << x0 - 6 << "\" y=\"" << y0 << "\" font-size=\"11\" text-anchor=\"end\">"
    << num(y.lo) << "</text>\n";
  s << "<text x=\"" << x0 - 6 << "\" y=\"" << y1 + 10 << "\" font-size=\"11\" text-anchor=\"end\">"
    << num(y.hi) << "</text>\n";
  s << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 20 << "\" text-anchor=\"middle\" "
    << "font-size=\"12\">" << xl << "</text>\n";
  s << "<text x=\"16\" y=\"" << kHeight / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 "
    << kHeight / 2 << ")\" text-anchor=\"middle\">" << yl << "</text>\n";
  return s.str();
}

// White to dark blue.
std::string shade(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(255 * (1 - 0.9 * t));
  const int g = static_cast<int>(255 * (1 - 0.7 * t));
  const int b = static_cast<int>(255 * (1 - 0.3 * t));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string render_heatmap(const SweepResult& r, const std::string& column) {
  if (r.axes.size() != 2) throw std::invalid_argument("heatmap needs a two-axis sweep");
  const auto& ax = r.axes[1];  // horizontal: μ
  const auto& ay = r.axes[0];  // vertical: κ
  const std::size_t c = r.column(column);
  Range vr;
  for (const auto& row : r.rows) vr.add(row.values[c]);
  Range xr{ax.min, ax.max}, yr{ay.min, ay.max};

  std::ostringstream s;
  s << header(column + " over (" + ay.name + ", " + ax.name + ")");
  const double cw = (kWidth - 2 * kMargin) / ax.count;
  const double ch = (kHeight - 2 * kMargin) / ay.count;
  for (const auto& row : r.rows) {
    const double x = kMargin + row.index[1] * cw;
    const double y = kHeight - kMargin - (row.index[0] + 1) * ch;
    s << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(cw + 0.5)
      << "\" height=\"" << num(ch + 0.5) << "\" fill=\"" << shade((row.values[c] - vr.lo) / vr.span())
      << "\"/>\n";
  }
  s << axes_frame(xr, yr, ax.name, ay.name);
  s << "</svg>\n";
  return s.str();
}

std::string render_lines(const SweepResult& r, const std::string& x_column,
                         const std::vector<std::string>& y_columns, const std::string& group_column) {
  const std::size_t xc = r.column(x_column);
  const std::size_t status = r.label_column("status");
  // (series label) -> points
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  Range xr, yr;
  for (const auto& row : r.rows) {
    if (row.labels[status] != "ok") continue;
    for (const auto& yname : y_columns) {
      std::string key = yname;
      if (!group_column.empty()) key += " N=" + num(row.values[r.column(group_column)]);
      const double x = row.values[xc];
      const double y = row.values[r.column(yname)];
      series[key].emplace_back(x, y);
      xr.add(x);
      yr.add(y);
    }
  }
  std::ostringstream s;
  std::string title;
  for (const auto& y : y_columns) title += (title.empty() ? "" : ", ") + y;
  s << header(title + " vs " + x_column);
  auto px = [&](double x) { return kMargin + (x - xr.lo) / xr.span() * (kWidth - 2 * kMargin); };
  auto py = [&](double y) { return kHeight - kMargin - (y - yr.lo) / yr.span() * (kHeight - 2 * kMargin); };
  std::size_t k = 0;
  for (const auto& [name, pts] : series) {
    const char* color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) s << num(px(x)) << ',' << num(py(y)) << ' ';
    s << "\"/>\n";
    s << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << kMargin + 14 * k << "\" font-size=\"10\" fill=\""
      << color << "\">" << name << "</text>\n";
    ++k;
  }
  s << axes_frame(xr, yr, x_column, title);
  s << "</svg>\n";
  return s.str();
}

std::string render_default_plot(const SweepResult& r) {
  const auto& cmd = r.metadata.command;
  if (cmd == "phase-diagram") return render_heatmap(r, "psi");
  if (cmd == "lobes") return render_lines(r, "delta_a", {"mu_minus_omega_c"}, "N");
  if (cmd == "observables") return render_lines(r, "mu_minus_omega_c", {"n_tot", "n_photon", "n_magnon"});
  if (cmd == "repulsion") return render_lines(r, r.axes.at(0).name, {"U"}, "N");
  throw std::invalid_argument("no plot for command '" + cmd + "'");
}

}  // namespace optomag
