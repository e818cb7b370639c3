#include "dvarma/io/svg.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dvarma::io {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
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

double day_number(const series::Date& d) {
    return static_cast<double>(std::chrono::sys_days(d).time_since_epoch().count());
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& set, const std::string& title) {
    if (set.empty()) throw std::invalid_argument("render_svg: no series");
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (const auto& s : set) {
        if (s.values.empty() || s.values.size() != s.dates.size()) {
            throw std::invalid_argument("render_svg: series '" + s.name + "' is empty or ragged");
        }
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            const double x = day_number(s.dates[i]);
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, s.values[i]);
            y1 = std::max(y1, s.values[i]);
        }
    }
    if (x1 == x0) {
        x0 -= 1.0;
        x1 += 1.0;
    }
    if (y1 == y0) {
        y0 -= 1.0;
        y1 += 1.0;
    }
    const double xpad = 0.05 * (x1 - x0);
    const double ypad = 0.05 * (y1 - y0);
    x0 -= xpad;
    x1 += xpad;
    y0 -= ypad;
    y1 += ypad;
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
    const auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(kWidth) << "\" height=\""
      << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(kHeight) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight) << "\" fill=\"white\"/>\n"
      << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << escape(title) << "</text>\n";
    // axes
    o << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(kLeft + pw) << "\" y2=\""
      << fmt(kTop + ph) << "\"/>\n"
      << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(kLeft) << "\" y2=\""
      << fmt(kTop + ph) << "\"/>\n"
      << "</g>\n";
    o << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int k = 0; k <= 4; ++k) {
        const double v = y0 + (y1 - y0) * k / 4.0;
        o << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(py(v) + 4) << "\" text-anchor=\"end\">" << fmt(v)
          << "</text>\n";
    }
    const auto date_label = [&](double x) {
        const series::Date d{std::chrono::sys_days{std::chrono::days{static_cast<long>(x)}}};
        return series::format_date(d);
    };
    o << "<text x=\"" << fmt(px(x0 + xpad)) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"start\">"
      << date_label(x0 + xpad) << "</text>\n"
      << "<text x=\"" << fmt(px(x1 - xpad)) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"end\">"
      << date_label(x1 - xpad) << "</text>\n"
      << "</g>\n";

    for (std::size_t k = 0; k < set.size(); ++k) {
        const auto& s = set[k];
        o << "<polyline fill=\"none\" stroke=\"" << kPalette[k % kPalette.size()] << "\" stroke-width=\"1.5\"";
        if (k >= kPalette.size()) o << " stroke-dasharray=\"4 2\"";
        o << " points=\"";
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            if (i) o << ' ';
            o << fmt(px(day_number(s.dates[i]))) << ',' << fmt(py(s.values[i]));
        }
        o << "\"/>\n";
    }
    o << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t k = 0; k < set.size(); ++k) {
        const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
        const double lx = kLeft + pw + 15;
        o << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 20) << "\" y2=\"" << fmt(ly)
          << "\" stroke=\"" << kPalette[k % kPalette.size()] << "\" stroke-width=\"2\"/>\n"
          << "<text x=\"" << fmt(lx + 26) << "\" y=\"" << fmt(ly + 4) << "\">" << escape(set[k].name) << "</text>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

}  // namespace dvarma::io
