#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "rlclab/csv.hpp"

namespace rlclab {

/// Static line-plot SVG emitter, so figures need no external tooling.
/// Series are drawn as polylines with markers; a legend is stacked in the
/// top-left of the plot area.
class SvgLinePlot {
public:
    struct Series {
        std::string label;
        std::vector<double> x;
        std::vector<double> y;
        bool dashed = false;
    };

    SvgLinePlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_series(Series s) { series_.push_back(std::move(s)); }

    void set_y_range(double lo, double hi) {
        y_lo_ = lo;
        y_hi_ = hi;
        fixed_y_ = true;
    }

    void render(std::ostream& os) const {
        const double width = 760, height = 520;
        const double ml = 64, mr = 16, mt = 36, mb = 48;
        double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
        bool first = true;
        for (const auto& s : series_) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (first) {
                    x_lo = x_hi = s.x[i];
                    y_lo = y_hi = s.y[i];
                    first = false;
                }
                x_lo = std::min(x_lo, s.x[i]);
                x_hi = std::max(x_hi, s.x[i]);
                y_lo = std::min(y_lo, s.y[i]);
                y_hi = std::max(y_hi, s.y[i]);
            }
        }
        if (fixed_y_) {
            y_lo = y_lo_;
            y_hi = y_hi_;
        }
        if (x_hi == x_lo) {
            x_hi = x_lo + 1;
        }
        if (y_hi == y_lo) {
            y_hi = y_lo + 1;
        }
        const double px = width - ml - mr;
        const double py = height - mt - mb;
        auto sx = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * px; };
        auto sy = [&](double y) { return mt + py - (y - y_lo) / (y_hi - y_lo) * py; };

        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
           << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
           << "font-family=\"sans-serif\" font-size=\"14\">" << title_ << "</text>\n";

        // axes with 5 ticks each
        os << "<g stroke=\"#444\" stroke-width=\"1\" font-family=\"sans-serif\" "
           << "font-size=\"11\">\n";
        os << "<line x1=\"" << ml << "\" y1=\"" << mt + py << "\" x2=\"" << ml + px << "\" y2=\""
           << mt + py << "\"/>\n";
        os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + py
           << "\"/>\n";
        for (int t = 0; t <= 5; ++t) {
            const double fx = x_lo + (x_hi - x_lo) * t / 5.0;
            const double fy = y_lo + (y_hi - y_lo) * t / 5.0;
            os << "<line x1=\"" << sx(fx) << "\" y1=\"" << mt + py << "\" x2=\"" << sx(fx)
               << "\" y2=\"" << mt + py + 4 << "\"/>\n";
            os << "<text x=\"" << sx(fx) << "\" y=\"" << mt + py + 16
               << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#222\">" << format_number(fx)
               << "</text>\n";
            os << "<line x1=\"" << ml - 4 << "\" y1=\"" << sy(fy) << "\" x2=\"" << ml << "\" y2=\""
               << sy(fy) << "\"/>\n";
            os << "<text x=\"" << ml - 7 << "\" y=\"" << sy(fy) + 4
               << "\" text-anchor=\"end\" stroke=\"none\" fill=\"#222\">" << format_number(fy)
               << "</text>\n";
        }
        os << "</g>\n";
        os << "<text x=\"" << ml + px / 2 << "\" y=\"" << height - 10
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label_
           << "</text>\n";
        os << "<text x=\"14\" y=\"" << mt + py / 2
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           << "transform=\"rotate(-90 14 " << mt + py / 2 << ")\">" << y_label_ << "</text>\n";

        for (std::size_t i = 0; i < series_.size(); ++i) {
            const auto& s = series_[i];
            const std::string color = kPalette[i % kPalette.size()];
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\"";
            if (s.dashed) {
                os << " stroke-dasharray=\"6 4\"";
            }
            os << " points=\"";
            for (std::size_t p = 0; p < s.x.size(); ++p) {
                os << sx(s.x[p]) << ',' << sy(s.y[p]) << ' ';
            }
            os << "\"/>\n";
            if (!s.dashed) {
                for (std::size_t p = 0; p < s.x.size(); ++p) {
                    os << "<circle cx=\"" << sx(s.x[p]) << "\" cy=\"" << sy(s.y[p])
                       << "\" r=\"2.4\" fill=\"" << color << "\"/>\n";
                }
            }
            const double ly = mt + 14 + 15 * static_cast<double>(i);
            os << "<line x1=\"" << ml + 8 << "\" y1=\"" << ly << "\" x2=\"" << ml + 30 << "\" y2=\""
               << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.6\""
               << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
            os << "<text x=\"" << ml + 36 << "\" y=\"" << ly + 4
               << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        }
        os << "</svg>\n";
    }

private:
    static constexpr std::array<const char*, 9> kPalette = {
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
        "#8c564b", "#17becf", "#7f7f7f", "#bcbd22"};

    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
    double y_lo_ = 0, y_hi_ = 1;
    bool fixed_y_ = false;
};

}  // namespace rlclab
