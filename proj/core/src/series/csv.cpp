#include "dvarma/series/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace dvarma::series {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return fields;
}

double parse_number(std::string_view cell, std::size_t line_no) {
    if (cell.empty()) return kMissing;
    if (cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value,
                                     std::chars_format::general);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": unparsable numeric cell '" +
                                    std::string(cell) + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

Panel load_panel(std::istream& in, const std::string& date_column) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
            static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF) {
            line.erase(0, 3);
        }
        if (!trim(line).empty()) {
            have_header = true;
            break;
        }
    }
    if (!have_header) throw std::invalid_argument("empty input: no header row");

    const auto header = split_fields(line);
    Index date_idx = -1;
    std::vector<std::string> names;
    std::vector<std::size_t> value_field;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == date_column) {
            date_idx = static_cast<Index>(i);
        } else {
            names.emplace_back(header[i]);
            value_field.push_back(i);
        }
    }
    if (date_idx < 0) throw std::invalid_argument("header lacks date column '" + date_column + "'");

    std::vector<Date> dates;
    std::vector<double> flat;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(header.size()) + " fields, found " +
                                        std::to_string(fields.size()));
        }
        const Date d = parse_date(fields[static_cast<std::size_t>(date_idx)]);
        if (!dates.empty() && std::chrono::sys_days{d} <= std::chrono::sys_days{dates.back()}) {
            throw std::invalid_argument("non-monotone timestamps at line " + std::to_string(line_no));
        }
        dates.push_back(d);
        for (auto f : value_field) flat.push_back(parse_number(fields[f], line_no));
    }
    if (dates.empty()) throw std::invalid_argument("empty input: no data rows");

    const auto T = static_cast<Index>(dates.size());
    const auto K = static_cast<Index>(names.size());
    Eigen::MatrixXd values(T, K);
    for (Index t = 0; t < T; ++t) {
        for (Index k = 0; k < K; ++k) values(t, k) = flat[static_cast<std::size_t>(t * K + k)];
    }
    return Panel(std::move(dates), std::move(names), std::move(values));
}

Panel load_panel_file(const std::filesystem::path& path, const std::string& date_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    return load_panel(in, date_column);
}

void write_panel(std::ostream& out, const Panel& panel, const std::string& date_column) {
    out << date_column;
    for (const auto& c : panel.columns()) out << ',' << c;
    out << '\n';
    for (Index t = 0; t < panel.rows(); ++t) {
        out << format_date(panel.timestamps()[static_cast<std::size_t>(t)]);
        for (Index k = 0; k < panel.cols(); ++k) {
            out << ',';
            const double v = panel.values()(t, k);
            if (!is_missing(v)) out << format_double(v);
        }
        out << '\n';
    }
}

void write_panel_file(const std::filesystem::path& path, const Panel& panel,
                      const std::string& date_column) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_panel(out, panel, date_column);
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace dvarma::series
