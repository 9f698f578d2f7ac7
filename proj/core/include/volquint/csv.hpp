#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace volquint {

// Minimal CSV reader for the flat, unquoted schemas used by the data files.
// Keeps track of line numbers so loaders can point at the offending row.
class CsvReader {
public:
    // Reads the whole file up front and consumes the header row.
    explicit CsvReader(const std::string& path);

    // Column index for a required header name; throws DataError if absent.
    std::size_t column(std::string_view name) const;

    // Advances to the next data row; returns false at end of file.
    bool next();

    std::size_t field_count() const { return fields_.size(); }
    std::string_view field(std::size_t col) const;
    std::size_t line() const { return line_; } // 1-based physical line

    double number(std::size_t col, std::string_view what) const;

private:
    std::string path_;
    std::vector<std::string> rows_;
    std::vector<std::string> header_;
    std::vector<std::string_view> fields_;
    std::size_t next_row_ = 0;
    std::size_t line_ = 1;
};

// Canonical number formatting for CSV output: integers print bare, everything
// else uses enough digits to round-trip the double exactly.
std::string fmt_double(double v);

} // namespace volquint
