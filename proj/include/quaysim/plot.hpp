#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "quaysim/errors.hpp"
#include "quaysim/kpi.hpp"

namespace quaysim {

inline constexpr std::string_view kPlotCsvHeader = "vessel_id,teu,baseline_min,candidate_min";

inline std::string render_plot_csv(const KpiReport& baseline, const KpiReport& candidate) {
  ComparisonResult cmp = compare(baseline, candidate);  // validates the vessel sets
  std::ostringstream out;
  out << kPlotCsvHeader << '\n';
  for (std::size_t i = 0; i < baseline.rows.size(); ++i)
    out << baseline.rows[i].vessel_id << ',' << baseline.rows[i].teu << ','
        << cmp.deltas[i].baseline_min << ',' << cmp.deltas[i].candidate_min << '\n';
  return out.str();
}

// Grouped bar chart of per-vessel service minutes, one pair of bars per
// vessel, x groups labeled with ship number and TEU.
inline std::string render_plot_svg(const KpiReport& baseline, const KpiReport& candidate) {
  ComparisonResult cmp = compare(baseline, candidate);
  const int n = static_cast<int>(baseline.rows.size());
  const int group_w = 64, bar_w = 22, left = 70, bottom = 46, top = 34;
  const int chart_h = 300;
  const int width = left + std::max(1, n) * group_w + 30;
  const int height = top + chart_h + bottom;

  long long max_min = 1;
  for (const auto& d : cmp.deltas)
    max_min = std::max({max_min, d.baseline_min, d.candidate_min});

  auto bar_h = [&](long long v) {
    return static_cast<int>(static_cast<double>(v) / static_cast<double>(max_min) * chart_h);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "  <text x=\"" << width / 2 << "\" y=\"16\" text-anchor=\"middle\" font-size=\"13\">"
         "Service time: actual vs simulated</text>\n";
  // Axes
  svg << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + chart_h << "\" stroke=\"black\"/>\n";
  svg << "  <line x1=\"" << left << "\" y1=\"" << top + chart_h << "\" x2=\"" << width - 20
      << "\" y2=\"" << top + chart_h << "\" stroke=\"black\"/>\n";
  svg << "  <text x=\"14\" y=\"" << top + chart_h / 2
      << "\" transform=\"rotate(-90 14 " << top + chart_h / 2
      << ")\" text-anchor=\"middle\">service time (min)</text>\n";
  svg << "  <text x=\"" << left + std::max(1, n) * group_w / 2 << "\" y=\"" << height - 6
      << "\" text-anchor=\"middle\">ship (TEU)</text>\n";
  // Y ticks: 0, half, max
  for (long long tick : {0LL, max_min / 2, max_min}) {
    int y = top + chart_h - bar_h(tick);
    svg << "  <line x1=\"" << left - 4 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << tick
        << "</text>\n";
  }
  // Bars
  for (int i = 0; i < n; ++i) {
    const auto& d = cmp.deltas[static_cast<std::size_t>(i)];
    int gx = left + i * group_w + 8;
    int hb = bar_h(d.baseline_min), hc = bar_h(d.candidate_min);
    svg << "  <rect x=\"" << gx << "\" y=\"" << top + chart_h - hb << "\" width=\"" << bar_w
        << "\" height=\"" << hb << "\" fill=\"#888888\"/>\n";
    svg << "  <rect x=\"" << gx + bar_w + 2 << "\" y=\"" << top + chart_h - hc << "\" width=\""
        << bar_w << "\" height=\"" << hc << "\" fill=\"#3a6ea5\"/>\n";
    svg << "  <text x=\"" << gx + bar_w + 1 << "\" y=\"" << top + chart_h + 14
        << "\" text-anchor=\"middle\">" << d.vessel_id << "</text>\n";
    svg << "  <text x=\"" << gx + bar_w + 1 << "\" y=\"" << top + chart_h + 27
        << "\" text-anchor=\"middle\">(" << baseline.rows[static_cast<std::size_t>(i)].teu
        << ")</text>\n";
  }
  // Legend
  svg << "  <rect x=\"" << width - 150 << "\" y=\"8\" width=\"10\" height=\"10\" fill=\"#888888\"/>"
         "<text x=\"" << width - 136 << "\" y=\"17\">actual</text>\n";
  svg << "  <rect x=\"" << width - 86 << "\" y=\"8\" width=\"10\" height=\"10\" fill=\"#3a6ea5\"/>"
         "<text x=\"" << width - 72 << "\" y=\"17\">simulated</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

// Writes the data CSV and the SVG chart. Degenerate (empty) reports still
// produce a valid header-only CSV and an empty chart.
inline void emit_plot(const KpiReport& baseline, const KpiReport& candidate,
                      const std::string& csv_path, const std::string& svg_path) {
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw IoFailure("cannot write '" + csv_path + "'");
  csv << render_plot_csv(baseline, candidate);
  if (!csv.flush()) throw IoFailure("short write on '" + csv_path + "'");

  std::ofstream svg(svg_path, std::ios::binary);
  if (!svg) throw IoFailure("cannot write '" + svg_path + "'");
  svg << render_plot_svg(baseline, candidate);
  if (!svg.flush()) throw IoFailure("short write on '" + svg_path + "'");
}

}  // namespace quaysim
