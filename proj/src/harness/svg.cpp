#include <algorithm>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "lcuwalk/harness.hpp"

namespace lcuwalk::harness {

std::string sweep_svg(const std::vector<SweepRow>& rows) {
  constexpr double kW = 640, kH = 400, kLeft = 70, kRight = 180, kTop = 30, kBottom = 50;
  static constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  std::map<std::tuple<double, int, double>, std::vector<std::pair<double, double>>> groups;
  double xmax = 0.0, ymax = 0.0;
  for (const auto& r : rows) {
    groups[{r.epsilon, r.d, r.alpha}].emplace_back(r.tau, double(r.queries));
    xmax = std::max(xmax, r.tau);
    ymax = std::max(ymax, double(r.queries));
  }
  if (xmax <= 0.0) xmax = 1.0;
  if (ymax <= 0.0) ymax = 1.0;
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double x) { return kLeft + pw * x / xmax; };
  auto py = [&](double y) { return kTop + ph * (1.0 - y / ymax); };

  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<g font-family=\"sans-serif\" font-size=\"12\">\n",
      kW, kH);
  s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kLeft, kTop + ph,
                   kLeft + pw);
  s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", kLeft, kTop,
                   kTop + ph);
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmax * i / 4.0, yv = ymax * i / 4.0;
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.3g}</text>\n", px(xv),
                     kTop + ph + 18, xv);
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.3g}</text>\n", kLeft - 6,
                     py(yv) + 4, yv);
  }
  s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">tau</text>\n", kLeft + pw / 2,
                   kH - 10);
  s += fmt::format("<text x=\"14\" y=\"{:.1f}\" transform=\"rotate(-90 14 {:.1f})\" "
                   "text-anchor=\"middle\">queries</text>\n",
                   kTop + ph / 2, kTop + ph / 2);

  std::size_t idx = 0;
  for (auto& [key, pts] : groups) {
    std::sort(pts.begin(), pts.end());
    const char* colour = kColours[idx % std::size(kColours)];
    std::string poly;
    for (const auto& [x, y] : pts) poly += fmt::format("{:.1f},{:.1f} ", px(x), py(y));
    s += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", colour, poly);
    const auto& [eps, d, a] = key;
    const double ly = kTop + 16.0 * double(idx);
    s += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"12\" height=\"3\" fill=\"{}\"/>\n",
                     kLeft + pw + 12, ly, colour);
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">eps={:.0e} d={} a={:.2g}</text>\n", kLeft + pw + 28,
                     ly + 5, eps, d, a);
    ++idx;
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace lcuwalk::harness
