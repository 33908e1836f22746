#include "maneuver/roc_plot.hpp"

#include <array>

#include <fmt/format.h>

#include "maneuver/error.hpp"
#include "text_util.hpp"

namespace maneuver {
namespace {

constexpr double kLeft = 70.0;
constexpr double kTop = 30.0;
constexpr double kSide = 400.0;
constexpr double kWidth = 500.0;
constexpr double kHeight = 500.0;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e",
                                              "#8c564b", "#e377c2", "#17becf", "#7f7f7f"};

double px(double fpr) { return kLeft + fpr * kSide; }
double py(double tpr) { return kTop + (1.0 - tpr) * kSide; }

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
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

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

RocPlot render_roc(std::span<const NamedCurve> curves) {
  if (curves.empty()) throw Error(ErrorCode::EmptyCurveSet, "no ROC curves to render");

  RocPlot plot;
  plot.csv = "algorithm,threshold,fpr,tpr\n";
  for (const auto& c : curves) {
    for (const auto& p : c.curve.points) {
      plot.csv += fmt::format("{},{},{},{}\n", csv_field(c.name), detail::format_real(p.threshold),
                              detail::format_real(p.fpr), detail::format_real(p.tpr));
    }
  }

  std::string& s = plot.svg;
  s += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" viewBox=\"0 0 {0:.0f} "
      "{1:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  s += fmt::format("<rect x=\"0\" y=\"0\" width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", kWidth, kHeight);
  s += fmt::format("<rect class=\"frame\" x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" "
                   "stroke=\"black\"/>\n",
                   kLeft, kTop, kSide, kSide);
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    s += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n", px(v),
                     py(0.0), py(0.0) + 5.0);
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.1f}</text>\n", px(v), py(0.0) + 18.0,
                     v);
    s += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"black\"/>\n",
                     px(0.0) - 5.0, py(v), px(0.0));
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.1f}</text>\n", px(0.0) - 8.0,
                     py(v) + 4.0, v);
  }
  s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">False positive rate</text>\n",
                   kLeft + kSide / 2.0, kTop + kSide + 40.0);
  s += fmt::format(
      "<text x=\"{0:.1f}\" y=\"{1:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 {0:.1f} {1:.1f})\">True "
      "positive rate</text>\n",
      kLeft - 45.0, kTop + kSide / 2.0);
  s += fmt::format("<line class=\"chance\" x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"red\" "
                   "stroke-dasharray=\"6 4\"/>\n",
                   px(0.0), py(0.0), px(1.0), py(1.0));

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* color = kPalette[i % kPalette.size()];
    std::string pts;
    for (const auto& p : curves[i].curve.points) {
      if (!pts.empty()) pts += ' ';
      pts += fmt::format("{:.2f},{:.2f}", px(p.fpr), py(p.tpr));
    }
    s += fmt::format("<polyline class=\"roc\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", color,
                     pts);
  }

  // Legend, bottom-right inside the plot area.
  const double row_h = 16.0;
  const double box_h = row_h * static_cast<double>(curves.size() + 1) + 8.0;
  const double box_w = 190.0;
  const double bx = kLeft + kSide - box_w - 10.0;
  const double by = kTop + kSide - box_h - 10.0;
  s += fmt::format("<rect class=\"legend\" x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
                   "fill=\"white\" stroke=\"#999999\"/>\n",
                   bx, by, box_w, box_h);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const double y = by + row_h * static_cast<double>(i + 1);
    s += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                     bx + 8.0, y - 4.0, bx + 28.0, y - 4.0, kPalette[i % kPalette.size()]);
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{} (AUC = {:.4f})</text>\n", bx + 34.0, y,
                     xml_escape(curves[i].name), auc(curves[i].curve));
  }
  const double y = by + row_h * static_cast<double>(curves.size() + 1);
  s += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"red\" "
                   "stroke-dasharray=\"6 4\"/>\n",
                   bx + 8.0, y - 4.0, bx + 28.0, y - 4.0);
  s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">chance</text>\n", bx + 34.0, y);
  s += "</svg>\n";
  return plot;
}

}  // namespace maneuver
