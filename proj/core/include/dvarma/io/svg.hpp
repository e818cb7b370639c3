#pragma once

#include "dvarma/series/panel.hpp"

#include <string>
#include <vector>

namespace dvarma::io {

struct PlotSeries {
    std::string name;
    std::vector<series::Date> dates;
    std::vector<double> values;
};

/**
 * Line chart: one polyline per series with a distinct stroke, a legend, and
 * axes spanning the data range padded by 5%. Output depends only on the input.
 * Throws std::invalid_argument on an empty set or an empty/ragged series.
 */
std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title);

}  // namespace dvarma::io
