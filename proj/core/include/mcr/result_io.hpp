#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mcr {

// Tabular experiment output. Result files are self-describing: the full
// resolved configuration (including the seed) is embedded ahead of the
// data so any result can be reproduced from the file alone.
class ResultTable {
public:
    void set_config(std::string key, std::string value);
    void set_config(std::string key, std::uint64_t value);
    void set_config(std::string key, double value);
    void set_columns(std::vector<std::string> columns);

    std::vector<std::string>& add_row();
    void add_cell(std::vector<std::string>& row, const std::string& v);
    void add_cell(std::vector<std::string>& row, std::uint64_t v);
    void add_cell(std::vector<std::string>& row, std::int64_t v);
    void add_cell(std::vector<std::string>& row, double v);

    const std::vector<std::pair<std::string, std::string>>& config() const { return config_; }
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    // CSV: '# key=value' comment lines, then the header row, then data.
    void write_csv(std::ostream& out) const;
    // JSON object {"config": {...}, "columns": [...], "rows": [[...]]}.
    void write_json(std::ostream& out) const;

    // format is "csv" or "json"; path "-" writes to stdout.
    void write(const std::string& path, const std::string& format) const;

    static std::string format_double(double v);

private:
    std::vector<std::pair<std::string, std::string>> config_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace mcr
