#pragma once

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dvarma::series {

using Date = std::chrono::year_month_day;
using Index = Eigen::Index;

/// Marker stored in a Panel cell that holds no observation. It is a quiet NaN,
/// so no parsed number can collide with it; every operation that does
/// arithmetic on a panel calls Panel::require_complete() first instead of
/// letting the NaN propagate.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) noexcept { return std::isnan(v); }

/// Parse "YYYY-MM-DD". Throws std::invalid_argument on malformed or invalid dates.
Date parse_date(std::string_view text);
std::string format_date(const Date& d);

/**
 * @brief Time-indexed matrix of aligned numeric series.
 *
 * Rows are time steps (strictly increasing calendar dates), columns are named
 * series. Values are immutable after construction; transforms return new
 * panels.
 */
class Panel {
public:
    Panel() = default;

    /// Validates: one timestamp per row, strictly increasing dates, unique
    /// non-empty column names, one name per column.
    Panel(std::vector<Date> timestamps, std::vector<std::string> columns, Eigen::MatrixXd values);

    [[nodiscard]] Index rows() const noexcept { return values_.rows(); }
    [[nodiscard]] Index cols() const noexcept { return values_.cols(); }
    [[nodiscard]] bool empty() const noexcept { return values_.rows() == 0; }

    [[nodiscard]] const std::vector<Date>& timestamps() const noexcept { return timestamps_; }
    [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
    [[nodiscard]] const Eigen::MatrixXd& values() const noexcept { return values_; }

    [[nodiscard]] Index column_index(std::string_view name) const;
    [[nodiscard]] bool has_column(std::string_view name) const noexcept;
    [[nodiscard]] Eigen::VectorXd column(Index j) const { return values_.col(j); }
    [[nodiscard]] Eigen::VectorXd column(std::string_view name) const {
        return values_.col(column_index(name));
    }

    [[nodiscard]] bool has_missing() const noexcept;
    /// Throws std::invalid_argument naming `operation` when any cell is missing.
    void require_complete(std::string_view operation) const;

    /// Columns in the given order.
    [[nodiscard]] Panel select(std::span<const std::string> names) const;
    /// Contiguous row range [begin, begin + count).
    [[nodiscard]] Panel slice_rows(Index begin, Index count) const;
    [[nodiscard]] Panel tail_rows(Index count) const { return slice_rows(rows() - count, count); }
    /// Same timestamps and names, new values (shape must match).
    [[nodiscard]] Panel with_values(Eigen::MatrixXd values) const;

    /// Row-wise concatenation; column names must agree and `below` must start
    /// after the last timestamp of `above`.
    static Panel concat_rows(const Panel& above, const Panel& below);

private:
    std::vector<Date> timestamps_;
    std::vector<std::string> columns_;
    Eigen::MatrixXd values_;
};

/// `count` consecutive calendar days starting at `start`.
std::vector<Date> daily_dates(Date start, Index count);

}  // namespace dvarma::series
