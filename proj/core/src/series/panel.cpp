#include "dvarma/series/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

namespace dvarma::series {

namespace {

int parse_fixed_int(std::string_view text, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("invalid date '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw std::invalid_argument("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    }
    const int y = parse_fixed_int(text.substr(0, 4), text);
    const int m = parse_fixed_int(text.substr(5, 2), text);
    const int d = parse_fixed_int(text.substr(8, 2), text);
    Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
              std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) {
        throw std::invalid_argument("invalid calendar date '" + std::string(text) + "'");
    }
    return date;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

std::vector<Date> daily_dates(Date start, Index count) {
    std::vector<Date> out;
    out.reserve(static_cast<std::size_t>(count));
    std::chrono::sys_days day{start};
    for (Index i = 0; i < count; ++i) {
        out.emplace_back(day);
        day += std::chrono::days{1};
    }
    return out;
}

Panel::Panel(std::vector<Date> timestamps, std::vector<std::string> columns, Eigen::MatrixXd values)
    : timestamps_(std::move(timestamps)), columns_(std::move(columns)), values_(std::move(values)) {
    if (static_cast<Index>(timestamps_.size()) != values_.rows()) {
        throw std::invalid_argument("panel: timestamp count does not match row count");
    }
    if (static_cast<Index>(columns_.size()) != values_.cols()) {
        throw std::invalid_argument("panel: column name count does not match column count");
    }
    for (std::size_t i = 1; i < timestamps_.size(); ++i) {
        if (std::chrono::sys_days{timestamps_[i]} <= std::chrono::sys_days{timestamps_[i - 1]}) {
            throw std::invalid_argument("non-monotone timestamps at " + format_date(timestamps_[i]));
        }
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : columns_) {
        if (name.empty()) throw std::invalid_argument("panel: empty column name");
        if (!seen.insert(name).second) {
            throw std::invalid_argument("panel: duplicate column name '" + name + "'");
        }
    }
}

Index Panel::column_index(std::string_view name) const {
    auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) {
        throw std::invalid_argument("unknown column '" + std::string(name) + "'");
    }
    return static_cast<Index>(it - columns_.begin());
}

bool Panel::has_column(std::string_view name) const noexcept {
    return std::find(columns_.begin(), columns_.end(), name) != columns_.end();
}

bool Panel::has_missing() const noexcept { return values_.hasNaN(); }

void Panel::require_complete(std::string_view operation) const {
    if (has_missing()) {
        throw std::invalid_argument(std::string(operation) + ": panel contains missing values");
    }
}

Panel Panel::select(std::span<const std::string> names) const {
    Eigen::MatrixXd out(rows(), static_cast<Index>(names.size()));
    std::vector<std::string> cols;
    cols.reserve(names.size());
    for (std::size_t j = 0; j < names.size(); ++j) {
        out.col(static_cast<Index>(j)) = values_.col(column_index(names[j]));
        cols.push_back(names[j]);
    }
    return Panel(timestamps_, std::move(cols), std::move(out));
}

Panel Panel::slice_rows(Index begin, Index count) const {
    if (begin < 0 || count < 0 || begin + count > rows()) {
        throw std::out_of_range("panel: row slice out of range");
    }
    std::vector<Date> ts(timestamps_.begin() + begin, timestamps_.begin() + begin + count);
    return Panel(std::move(ts), columns_, values_.middleRows(begin, count));
}

Panel Panel::with_values(Eigen::MatrixXd values) const {
    if (values.rows() != rows() || values.cols() != cols()) {
        throw std::invalid_argument("panel: replacement values have a different shape");
    }
    return Panel(timestamps_, columns_, std::move(values));
}

Panel Panel::concat_rows(const Panel& above, const Panel& below) {
    if (above.columns_ != below.columns_) {
        throw std::invalid_argument("panel concat: column names differ");
    }
    std::vector<Date> ts = above.timestamps_;
    ts.insert(ts.end(), below.timestamps_.begin(), below.timestamps_.end());
    Eigen::MatrixXd v(above.rows() + below.rows(), above.cols());
    v.topRows(above.rows()) = above.values_;
    v.bottomRows(below.rows()) = below.values_;
    return Panel(std::move(ts), above.columns_, std::move(v));
}

}  // namespace dvarma::series
