#pragma once

#include "dvarma/series/panel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dvarma::series {

/// One row of the descriptive-statistics table.
struct StatsRow {
    std::string name;
    Index sample_size = 0;
    double max = 0.0;
    double min = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;                ///< sample standard deviation (n - 1)
    std::optional<double> skewness;      ///< bias-adjusted; empty when std is 0 or n < 3
    std::optional<double> kurtosis;      ///< bias-adjusted excess; empty when std is 0 or n < 4
};

StatsRow describe(std::span<const double> values, std::string name);

/// One row per column; throws on an empty or incomplete panel.
std::vector<StatsRow> descriptive_stats(const Panel& panel);

}  // namespace dvarma::series
