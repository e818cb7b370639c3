#pragma once

#include "dvarma/series/panel.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace dvarma::series {

/**
 * @brief Read a panel from comma-separated text.
 *
 * The first row is a header. The column named `date_column` holds ISO-8601
 * dates (YYYY-MM-DD); every other column is a decimal number with '.' as the
 * separator, or empty for a missing observation.
 *
 * Throws std::invalid_argument on empty input, unparsable cells, ragged rows
 * and non-monotone or duplicate dates.
 */
Panel load_panel(std::istream& in, const std::string& date_column = "date");
Panel load_panel_file(const std::filesystem::path& path, const std::string& date_column = "date");

/// Same layout as load_panel. Numbers use the shortest representation that
/// round-trips exactly; missing cells are written empty.
void write_panel(std::ostream& out, const Panel& panel, const std::string& date_column = "date");
void write_panel_file(const std::filesystem::path& path, const Panel& panel,
                      const std::string& date_column = "date");

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace dvarma::series
