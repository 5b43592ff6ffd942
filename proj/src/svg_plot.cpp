#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ugsim/io.hpp"

namespace ugsim {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr std::size_t kMaxPoints = 1000;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
                                    "#000000"};

std::string num(double v, int precision = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(precision);
  s << v;
  return s.str();
}

double tick_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const AggregateCurve& curve, const std::string& title) {
  const std::size_t n = curve.trials();
  if (n == 0 || curve.arm_count == 0) throw std::invalid_argument("cannot plot an empty curve");

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double x_max = std::max<double>(static_cast<double>(n), 2.0);
  const auto px = [&](double t) { return kLeft + (t - 1.0) / (x_max - 1.0) * plot_w; };
  const auto py = [&](double f) { return kTop + (1.0 - f) * plot_h; };

  // Sampled trial indices shared by every polyline; always includes 1 and n.
  std::vector<std::size_t> ts;
  const std::size_t points = std::min(n, kMaxPoints);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points == 1 ? 1.0 : 1.0 + static_cast<double>(i) * (n - 1) / (points - 1);
    ts.push_back(static_cast<std::size_t>(std::llround(t)));
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-size=\"16\">" << escape(title) << "</text>\n";
  }

  // axes and ticks
  svg << "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(kLeft + plot_w)
      << "\" y2=\"" << num(py(0)) << "\"/>\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(py(1)) << "\"/>\n</g>\n";

  svg << "<g font-size=\"12\" fill=\"#333\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double f = i / 5.0;
    svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(f)) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(py(f)) << "\" stroke=\"#333\"/>\n"
        << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(f) + 4)
        << "\" text-anchor=\"end\">" << num(f, 1) << "</text>\n";
  }
  const double step = tick_step(x_max - 1.0);
  for (double t = step; t <= x_max + 1e-9; t += step) {
    svg << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(t))
        << "\" y2=\"" << num(py(0) + 5) << "\" stroke=\"#333\"/>\n"
        << "<text x=\"" << num(px(t)) << "\" y=\"" << num(py(0) + 20)
        << "\" text-anchor=\"middle\">" << num(t, 0) << "</text>\n";
  }
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 15)
      << "\" text-anchor=\"middle\">trial</text>\n"
      << "<text x=\"18\" y=\"" << num(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num(kTop + plot_h / 2) << ")\">mean offer frequency</text>\n</g>\n";

  for (std::size_t a = 0; a < curve.arm_count; ++a) {
    const char* color = kPalette[a % std::size(kPalette)];
    svg << "<polyline class=\"arm\" data-arm=\"" << a << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) svg << ' ';
      svg << num(px(static_cast<double>(ts[i]))) << ',' << num(py(curve.at(ts[i], a)));
    }
    svg << "\"/>\n";
  }

  svg << "<g font-size=\"12\">\n";
  for (std::size_t a = 0; a < curve.arm_count; ++a) {
    const double y = kTop + 10.0 + 20.0 * static_cast<double>(a);
    const double x = kLeft + plot_w + 20.0;
    const double frac = curve.arm_count > 1 ? static_cast<double>(a) / (curve.arm_count - 1) : 0.0;
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x + 24) << "\" y2=\""
        << num(y) << "\" stroke=\"" << kPalette[a % std::size(kPalette)] << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << num(x + 30) << "\" y=\"" << num(y + 4) << "\">" << num(100.0 * frac, 0)
        << "% offer</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace ugsim
