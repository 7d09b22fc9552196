#include "mcr/result_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

namespace mcr {

void ResultTable::set_config(std::string key, std::string value) {
    config_.emplace_back(std::move(key), std::move(value));
}
void ResultTable::set_config(std::string key, std::uint64_t value) {
    set_config(std::move(key), std::to_string(value));
}
void ResultTable::set_config(std::string key, double value) {
    set_config(std::move(key), format_double(value));
}

void ResultTable::set_columns(std::vector<std::string> columns) { columns_ = std::move(columns); }

std::vector<std::string>& ResultTable::add_row() { return rows_.emplace_back(); }

void ResultTable::add_cell(std::vector<std::string>& row, const std::string& v) { row.push_back(v); }
void ResultTable::add_cell(std::vector<std::string>& row, std::uint64_t v) {
    row.push_back(std::to_string(v));
}
void ResultTable::add_cell(std::vector<std::string>& row, std::int64_t v) {
    row.push_back(std::to_string(v));
}
void ResultTable::add_cell(std::vector<std::string>& row, double v) {
    row.push_back(format_double(v));
}

std::string ResultTable::format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void ResultTable::write_csv(std::ostream& out) const {
    for (const auto& [k, v] : config_) out << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i)
        out << columns_[i] << (i + 1 < columns_.size() ? "," : "");
    out << "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

void ResultTable::write_json(std::ostream& out) const {
    nlohmann::ordered_json j;
    auto& cfg = j["config"];
    for (const auto& [k, v] : config_) cfg[k] = v;
    j["columns"] = columns_;
    auto& rows = j["rows"];
    rows = nlohmann::ordered_json::array();
    for (const auto& row : rows_) rows.push_back(row);
    out << j.dump(2) << "\n";
}

void ResultTable::write(const std::string& path, const std::string& format) const {
    const bool json = format == "json";
    if (!json && format != "csv")
        throw std::invalid_argument("ResultTable::write: format must be csv or json");
    if (path == "-") {
        json ? write_json(std::cout) : write_csv(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    json ? write_json(f) : write_csv(f);
}

} // namespace mcr
