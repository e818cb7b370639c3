#pragma once

#include "dvarma/eval/evaluation.hpp"
#include "dvarma/series/describe.hpp"
#include "dvarma/stationarity/adf.hpp"

#include <filesystem>
#include <ostream>
#include <string>

namespace dvarma::io {

void write_stats_csv(std::ostream& out, const std::vector<series::StatsRow>& rows);

/// Header "series,original_p,diff_p".
void write_stationarity_csv(std::ostream& out, const stationarity::StationarityReport& report);
/// Object keyed by column name.
std::string stationarity_json(const stationarity::StationarityReport& report);

/// Object with exactly the keys mse, rmse, mae, mape (null when undefined), n.
std::string metric_json(const eval::MetricReport& report);

/// Header "model,<points>,<1:a ...>"; cells are the cross-series means, or
/// the values of one series when `series_index` >= 0.
void write_horizon_csv(std::ostream& out, const eval::HorizonTable& table, int series_index = -1);
std::string horizon_json(const eval::HorizonTable& table);

/// One block per endogenous series: "series,model,MSE,RMSE,MAE,MAPE", "-" for
/// inapplicable cells.
void write_comparison_csv(std::ostream& out, const eval::ComparisonReport& report);
std::string comparison_json(const eval::ComparisonReport& report);

/// Write `content` to `path`; throws std::runtime_error when the file cannot
/// be opened (e.g. missing directory).
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace dvarma::io
