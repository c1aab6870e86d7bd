#include "pixeldepth/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pixeldepth {

namespace {

constexpr double kWidth = 900, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

void open_doc(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
           "font-family=\"sans-serif\">"
        << escape(title) << "</text>\n";
}

void axes(std::ostringstream& out, const std::string& x_label, const std::string& y_label,
          double y_max) {
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << kWidth - kRight << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 14
        << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
        << escape(x_label) << "</text>\n"
        << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 16 "
        << (kTop + kHeight - kBottom) / 2 << ")\">" << escape(y_label) << "</text>\n";
    // y-axis ticks at 0, half, max
    for (double frac : {0.0, 0.5, 1.0}) {
        const double y = kHeight - kBottom - frac * (kHeight - kTop - kBottom);
        out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\""
            << y << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">"
            << fmt(frac * y_max) << "</text>\n";
    }
}

} // namespace

std::string svg_bar_chart(const std::string& title, const std::string& y_label,
                          const std::vector<BarDatum>& data) {
    std::ostringstream out;
    open_doc(out, title);
    double y_max = 1e-300;
    for (const auto& d : data) y_max = std::max(y_max, d.value + d.error);
    axes(out, "image", y_label, y_max);

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double slot = plot_w / std::max<size_t>(1, data.size());
    const double bar_w = std::max(1.0, slot * 0.7);

    for (size_t i = 0; i < data.size(); ++i) {
        const double v = std::max(0.0, data[i].value);
        const double x = kLeft + slot * static_cast<double>(i) + (slot - bar_w) / 2;
        const double h = plot_h * v / y_max;
        const double y = kHeight - kBottom - h;
        out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(bar_w)
            << "\" height=\"" << fmt(h) << "\" fill=\"#4878a8\"/>\n";
        if (data[i].error > 0) {
            const double cx = x + bar_w / 2;
            const double e = plot_h * data[i].error / y_max;
            out << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(y - e) << "\" x2=\"" << fmt(cx)
                << "\" y2=\"" << fmt(std::min(y + e, kHeight - kBottom)) << "\" stroke=\"black\"/>\n";
        }
        if (data.size() <= 64) {
            const double cx = x + bar_w / 2;
            out << "<text x=\"" << fmt(cx) << "\" y=\"" << kHeight - kBottom + 12
                << "\" text-anchor=\"end\" font-size=\"8\" font-family=\"sans-serif\" "
                   "transform=\"rotate(-45 "
                << fmt(cx) << " " << kHeight - kBottom + 12 << ")\">" << escape(data[i].label)
                << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

namespace {

std::string points_doc(const std::string& title, const std::string& x_label,
                       const std::string& y_label,
                       const std::vector<std::pair<double, double>>& points, bool connect) {
    std::ostringstream out;
    open_doc(out, title);
    double x_min = 0, x_max = 1e-300, y_max = 1e-300;
    for (const auto& [x, y] : points) {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_max = std::max(y_max, y);
    }
    axes(out, x_label, y_label, y_max);
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) {
        return kLeft + (x_max > x_min ? (x - x_min) / (x_max - x_min) : 0.5) * plot_w;
    };
    auto py = [&](double y) { return kHeight - kBottom - plot_h * y / y_max; };

    if (connect && points.size() > 1) {
        out << "<polyline fill=\"none\" stroke=\"#4878a8\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : points) out << fmt(px(x)) << "," << fmt(py(y)) << " ";
        out << "\"/>\n";
    }
    for (const auto& [x, y] : points)
        out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
            << "\" r=\"2.5\" fill=\"#a84848\"/>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace

std::string svg_scatter(const std::string& title, const std::string& x_label,
                        const std::string& y_label,
                        const std::vector<std::pair<double, double>>& points) {
    return points_doc(title, x_label, y_label, points, false);
}

std::string svg_line(const std::string& title, const std::string& x_label,
                     const std::string& y_label,
                     const std::vector<std::pair<double, double>>& points) {
    return points_doc(title, x_label, y_label, points, true);
}

} // namespace pixeldepth
