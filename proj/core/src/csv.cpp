#include "volquint/csv.hpp"

#include "volquint/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace volquint {

namespace {

std::vector<std::string> split_comma(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

} // namespace

CsvReader::CsvReader(const std::string& path) : path_(path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file '" + path + "'");
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        line = strip_cr(std::move(line));
        if (!have_header) {
            header_ = split_comma(line);
            have_header = true;
        } else {
            rows_.push_back(std::move(line));
        }
    }
    if (!have_header) throw DataError("file '" + path + "' is empty (no header)");
}

std::size_t CsvReader::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) return i;
    }
    throw DataError("file '" + path_ + "' missing required column '" + std::string(name) + "'");
}

bool CsvReader::next() {
    while (next_row_ < rows_.size()) {
        const std::string& row = rows_[next_row_++];
        line_ = next_row_ + 1; // +1 for the header line
        if (row.empty()) continue;
        // Split against the stored row so the views stay valid.
        fields_.clear();
        std::size_t start = 0;
        std::string_view rv(row);
        while (true) {
            std::size_t pos = rv.find(',', start);
            if (pos == std::string_view::npos) {
                fields_.push_back(rv.substr(start));
                break;
            }
            fields_.push_back(rv.substr(start, pos - start));
            start = pos + 1;
        }
        return true;
    }
    return false;
}

std::string_view CsvReader::field(std::size_t col) const {
    if (col >= fields_.size()) {
        throw DataError("file '" + path_ + "' line " + std::to_string(line_) +
                        ": missing field " + std::to_string(col + 1));
    }
    return fields_[col];
}

double CsvReader::number(std::size_t col, std::string_view what) const {
    std::string_view f = field(col);
    double v = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw DataError("file '" + path_ + "' line " + std::to_string(line_) + ": invalid " +
                        std::string(what) + " '" + std::string(f) + "'");
    }
    return v;
}

std::string fmt_double(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace volquint
