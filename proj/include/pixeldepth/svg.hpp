#pragma once

#include <string>
#include <vector>

namespace pixeldepth {

// Static SVG charts for report bundles. No styling knobs; the reports are
// summaries, not a plotting library.

struct BarDatum {
    std::string label;
    double value = 0.0;
    double error = 0.0; // half-width of the error bar; 0 for none
};

std::string svg_bar_chart(const std::string& title, const std::string& y_label,
                          const std::vector<BarDatum>& data);

std::string svg_scatter(const std::string& title, const std::string& x_label,
                        const std::string& y_label,
                        const std::vector<std::pair<double, double>>& points);

std::string svg_line(const std::string& title, const std::string& x_label,
                     const std::string& y_label,
                     const std::vector<std::pair<double, double>>& points);

} // namespace pixeldepth
