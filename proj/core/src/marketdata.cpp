#include "volquint/marketdata.hpp"

#include "volquint/csv.hpp"
#include "volquint/errors.hpp"
#include "volquint/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

namespace volquint {

int BinGrid::bin_count() const {
    validate();
    return (session_close - session_open) / bin_minutes;
}

void BinGrid::validate() const {
    if (bin_minutes <= 0) throw ConfigError("bin_minutes must be positive");
    if (session_close <= session_open) throw ConfigError("session close must be after open");
    if ((session_close - session_open) % bin_minutes != 0) {
        throw ConfigError("bin_minutes must divide the session length exactly");
    }
}

namespace {

int parse_hhmm(std::string_view s, const char* what) {
    if (s.size() != 5 || s[2] != ':') {
        throw ConfigError(std::string("invalid ") + what + " '" + std::string(s) +
                          "', expected HH:MM");
    }
    int h = 0, m = 0;
    auto r1 = std::from_chars(s.data(), s.data() + 2, h);
    auto r2 = std::from_chars(s.data() + 3, s.data() + 5, m);
    if (r1.ec != std::errc() || r2.ec != std::errc() || h < 0 || h > 23 || m < 0 || m > 59) {
        throw ConfigError(std::string("invalid ") + what + " '" + std::string(s) + "'");
    }
    return h * 60 + m;
}

} // namespace

BinGrid BinGrid::from_session(std::string_view session, int bin_minutes) {
    auto dash = session.find('-');
    if (dash == std::string_view::npos) {
        throw ConfigError("session must look like 09:30-16:00");
    }
    BinGrid g;
    g.session_open = parse_hhmm(session.substr(0, dash), "session open");
    g.session_close = parse_hhmm(session.substr(dash + 1), "session close");
    g.bin_minutes = bin_minutes;
    g.validate();
    return g;
}

int BinGrid::bin_index(std::string_view hhmm, std::size_t line) const {
    const int minute = parse_hhmm(hhmm, "bin_start");
    const std::string where = line ? " at line " + std::to_string(line) : "";
    if (minute < session_open || minute >= session_close) {
        throw DataError("bin_start " + std::string(hhmm) + " outside session" + where);
    }
    if ((minute - session_open) % bin_minutes != 0) {
        throw DataError("bin_start " + std::string(hhmm) + " is off the " +
                        std::to_string(bin_minutes) + "-minute grid" + where);
    }
    return (minute - session_open) / bin_minutes;
}

std::string BinGrid::bin_label(int bin) const {
    const int minute = session_open + bin * bin_minutes;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d:%02d", minute / 60, minute % 60);
    return buf;
}

double BinSeries::total() const {
    double s = 0.0;
    for (double v : volumes) s += v;
    return s;
}

std::size_t BinSeries::zero_bins() const {
    std::size_t n = 0;
    for (double v : volumes) n += (v == 0.0);
    return n;
}

namespace {

DayFlags parse_flags(std::string_view field, const std::string& path, std::size_t line) {
    DayFlags f;
    std::size_t start = 0;
    while (start <= field.size()) {
        std::size_t pos = field.find('|', start);
        std::string_view tok = field.substr(
            start, pos == std::string_view::npos ? field.size() - start : pos - start);
        if (tok == "earnings") {
            f.earnings = true;
        } else if (tok == "optexp") {
            f.optexp = true;
        } else if (tok == "rebalance") {
            f.rebalance = true;
        } else if (!tok.empty()) {
            throw DataError("file '" + path + "' line " + std::to_string(line) +
                            ": unknown flag '" + std::string(tok) + "'");
        }
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return f;
}

} // namespace

std::map<std::string, std::vector<DayRecord>> load_days(const std::string& path) {
    CsvReader csv(path);
    const std::size_t c_sym = csv.column("symbol");
    const std::size_t c_date = csv.column("date");
    const std::size_t c_open = csv.column("open");
    const std::size_t c_close = csv.column("close");
    const std::size_t c_total = csv.column("total_volume");
    const std::size_t c_auction = csv.column("auction_volume");
    const std::size_t c_flags = csv.column("flags");

    std::map<std::string, std::vector<DayRecord>> out;
    std::set<std::pair<std::string, int32_t>> seen;

    while (csv.next()) {
        DayRecord rec;
        std::string sym(csv.field(c_sym));
        try {
            rec.date = Date::parse(csv.field(c_date));
        } catch (const DataError& e) {
            throw DataError("file '" + path + "' line " + std::to_string(csv.line()) + ": " +
                            e.what());
        }
        rec.open_price = csv.number(c_open, "open price");
        rec.close_price = csv.number(c_close, "close price");
        rec.total_volume = csv.number(c_total, "total_volume");
        rec.auction_volume = csv.number(c_auction, "auction_volume");
        rec.flags = parse_flags(csv.field(c_flags), path, csv.line());

        const std::string where = "file '" + path + "' line " + std::to_string(csv.line());
        if (!(rec.open_price > 0.0) || !(rec.close_price > 0.0)) {
            throw DataError(where + ": non-positive price for " + sym + " " +
                            rec.date.to_string());
        }
        if (rec.total_volume < 0.0 || rec.auction_volume < 0.0) {
            throw DataError(where + ": negative volume");
        }
        if (rec.auction_volume > rec.total_volume) {
            throw DataError(where + ": auction volume exceeds total volume for " + sym + " " +
                            rec.date.to_string());
        }
        if (!seen.insert({sym, rec.date.serial()}).second) {
            throw DataError(where + ": duplicate date " + rec.date.to_string() + " for symbol " +
                            sym);
        }
        out[sym].push_back(rec);
    }
    for (auto& [sym, days] : out) {
        std::sort(days.begin(), days.end(),
                  [](const DayRecord& a, const DayRecord& b) { return a.date < b.date; });
    }
    return out;
}

std::map<std::string, std::vector<BinSeries>> load_bins(const std::string& path,
                                                        const BinGrid& grid, LoadStats* stats) {
    grid.validate();
    CsvReader csv(path);
    const std::size_t c_sym = csv.column("symbol");
    const std::size_t c_date = csv.column("date");
    const std::size_t c_start = csv.column("bin_start");
    const std::size_t c_vol = csv.column("volume");
    const int nbins = grid.bin_count();

    // (symbol, date) -> (volumes, filled mask)
    std::map<std::pair<std::string, int32_t>, std::pair<std::vector<double>, std::vector<bool>>>
        acc;
    LoadStats local;

    while (csv.next()) {
        std::string sym(csv.field(c_sym));
        Date date;
        try {
            date = Date::parse(csv.field(c_date));
        } catch (const DataError& e) {
            throw DataError("file '" + path + "' line " + std::to_string(csv.line()) + ": " +
                            e.what());
        }
        int bin;
        try {
            bin = grid.bin_index(csv.field(c_start), csv.line());
        } catch (const DataError& e) {
            throw DataError("file '" + path + "': " + e.what());
        }
        double vol = csv.number(c_vol, "volume");
        if (vol < 0.0) {
            throw DataError("file '" + path + "' line " + std::to_string(csv.line()) +
                            ": negative bin volume");
        }
        auto& slot = acc[{sym, date.serial()}];
        if (slot.first.empty()) {
            slot.first.assign(static_cast<std::size_t>(nbins), 0.0);
            slot.second.assign(static_cast<std::size_t>(nbins), false);
        }
        slot.first[static_cast<std::size_t>(bin)] += vol;
        slot.second[static_cast<std::size_t>(bin)] = true;
        ++local.rows;
    }

    std::map<std::string, std::vector<BinSeries>> out;
    for (auto& [key, slot] : acc) {
        BinSeries series;
        series.date = Date::from_serial(key.second);
        series.volumes = std::move(slot.first);
        for (bool filled : slot.second) local.zero_filled_bins += !filled;
        out[key.first].push_back(std::move(series));
    }
    for (auto& [sym, list] : out) {
        std::sort(list.begin(), list.end(),
                  [](const BinSeries& a, const BinSeries& b) { return a.date < b.date; });
    }
    if (stats) *stats = local;
    return out;
}

double trailing_return_stdev(std::span<const double> closes, int window) {
    if (closes.size() < 3) throw DataError("insufficient history for volatility");
    std::vector<double> returns;
    const std::size_t first =
        closes.size() > static_cast<std::size_t>(window) + 1
            ? closes.size() - static_cast<std::size_t>(window) - 1
            : 0;
    for (std::size_t i = first + 1; i < closes.size(); ++i) {
        returns.push_back(std::log(closes[i] / closes[i - 1]));
    }
    if (returns.size() < 2) throw DataError("insufficient history for volatility");
    return sample_stdev(returns);
}

GapObservation overnight_gap(const DayRecord& prev, const DayRecord& today,
                             std::span<const DayRecord> history) {
    if (history.size() < 3) throw DataError("insufficient history for overnight gap");
    if (history.back().date != prev.date) {
        throw DataError("overnight_gap: history must end at the previous day");
    }
    if (prev.date >= today.date) {
        throw DataError("overnight_gap: prev must precede today");
    }
    std::vector<double> closes;
    closes.reserve(history.size());
    for (const auto& d : history) closes.push_back(d.close_price);

    GapObservation g;
    g.raw_gap = today.open_price / prev.close_price - 1.0;
    g.vol20 = trailing_return_stdev(closes, 20);
    g.short_window = closes.size() < 21;
    if (!(g.vol20 > 0.0)) throw DataError("degenerate volatility");
    g.gap_ratio = g.raw_gap / g.vol20;
    return g;
}

double volume_percentile(double current, std::span<const double> history) {
    if (history.empty()) throw std::invalid_argument("volume_percentile: empty history");
    std::size_t below = 0;
    for (double h : history) below += (h < current);
    return static_cast<double>(below) / static_cast<double>(history.size());
}

double continuous_volume(const DayRecord& day, bool total_includes_auction) {
    return total_includes_auction ? day.total_volume - day.auction_volume : day.total_volume;
}

Reconciliation reconcile_day(const DayRecord& day, const BinSeries& bins,
                             bool total_includes_auction, double tolerance) {
    Reconciliation r;
    if (!(day.total_volume > 0.0)) return r;
    const double covered =
        bins.total() + (total_includes_auction ? day.auction_volume : 0.0);
    r.relative_error = std::fabs(covered - day.total_volume) / day.total_volume;
    r.flagged = r.relative_error > tolerance;
    return r;
}

} // namespace volquint
