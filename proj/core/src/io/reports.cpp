#include "dvarma/io/reports.hpp"

#include "dvarma/series/csv.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace dvarma::io {

using nlohmann::json;
using series::format_double;

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string("-"); }

json opt_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

json metric_object(const eval::MetricReport& r) {
    return {{"mse", r.mse}, {"rmse", r.rmse}, {"mae", r.mae}, {"mape", opt_json(r.mape)}, {"n", r.n}};
}

}  // namespace

void write_stats_csv(std::ostream& out, const std::vector<series::StatsRow>& rows) {
    out << "series,sample_size,max,min,mean,std,skewness,kurtosis\n";
    for (const auto& r : rows) {
        out << r.name << ',' << r.sample_size << ',' << format_double(r.max) << ',' << format_double(r.min) << ','
            << format_double(r.mean) << ',' << format_double(r.std_dev) << ',' << opt(r.skewness) << ','
            << opt(r.kurtosis) << '\n';
    }
}

void write_stationarity_csv(std::ostream& out, const stationarity::StationarityReport& report) {
    out << "series,original_p,diff_p\n";
    for (const auto& r : report.rows) {
        out << r.series << ',' << format_double(r.original_p) << ',' << format_double(r.diff_p) << '\n';
    }
}

std::string stationarity_json(const stationarity::StationarityReport& report) {
    json j = json::object();
    for (const auto& r : report.rows) j[r.series] = {{"original_p", r.original_p}, {"diff_p", r.diff_p}};
    return j.dump(2);
}

std::string metric_json(const eval::MetricReport& report) { return metric_object(report).dump(2); }

void write_horizon_csv(std::ostream& out, const eval::HorizonTable& table, int series_index) {
    out << "model";
    for (const auto& c : table.spec.column_labels()) out << ',' << c;
    out << '\n';
    for (std::size_t k = 0; k < table.models.size(); ++k) {
        const std::vector<double>& cells =
            series_index < 0 ? table.cells[k] : table.by_series[k].at(static_cast<std::size_t>(series_index));
        out << table.models[k];
        for (double v : cells) out << ',' << (series::is_missing(v) ? std::string("-") : format_double(v));
        out << '\n';
    }
}

std::string horizon_json(const eval::HorizonTable& table) {
    json j;
    j["columns"] = table.spec.column_labels();
    j["series"] = table.series;
    json models = json::array();
    for (std::size_t k = 0; k < table.models.size(); ++k) {
        json per = json::object();
        for (std::size_t s = 0; s < table.series.size(); ++s) per[table.series[s]] = table.by_series[k][s];
        models.push_back({{"model", table.models[k]}, {"mean", table.cells[k]}, {"by_series", per}});
    }
    j["models"] = models;
    return j.dump(2);
}

void write_comparison_csv(std::ostream& out, const eval::ComparisonReport& report) {
    out << "series,model,MSE,RMSE,MAE,MAPE\n";
    const auto row = [&](const std::string& series, const std::string& model,
                         const std::optional<eval::MetricReport>& r) {
        out << series << ',' << model << ',';
        if (!r) {
            out << "-,-,-,-\n";
            return;
        }
        out << format_double(r->mse) << ',' << format_double(r->rmse) << ',' << format_double(r->mae) << ','
            << opt(r->mape) << '\n';
    };
    for (std::size_t s = 0; s < report.series.size(); ++s) {
        for (std::size_t k = 0; k < report.models.size(); ++k) row(report.series[s], report.models[k], report.cells[k][s]);
    }
    for (std::size_t k = 0; k < report.models.size(); ++k) row("mean", report.models[k], report.mean[k]);
}

std::string comparison_json(const eval::ComparisonReport& report) {
    json j;
    j["protocol"] = report.protocol;
    j["series"] = report.series;
    json models = json::array();
    for (std::size_t k = 0; k < report.models.size(); ++k) {
        json per = json::object();
        for (std::size_t s = 0; s < report.series.size(); ++s) {
            const auto& c = report.cells[k][s];
            per[report.series[s]] = c ? metric_object(*c) : json("-");
        }
        models.push_back({{"model", report.models[k]},
                          {"by_series", per},
                          {"mean", report.mean[k] ? metric_object(*report.mean[k]) : json("-")}});
    }
    j["models"] = models;
    return j.dump(2);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace dvarma::io
