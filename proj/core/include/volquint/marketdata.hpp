#pragma once

#include "volquint/dates.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace volquint {

struct DayFlags {
    bool earnings = false;
    bool optexp = false;
    bool rebalance = false;

    bool any() const { return earnings || optexp || rebalance; }
};

struct DayRecord {
    Date date;
    double open_price = 0.0;
    double close_price = 0.0;
    double total_volume = 0.0;   // convention set by total_includes_auction
    double auction_volume = 0.0; // close auction
    DayFlags flags;
};

// Intraday bin layout. Times are minutes since midnight, exchange local.
struct BinGrid {
    int session_open = 570;  // 09:30
    int session_close = 960; // 16:00
    int bin_minutes = 10;

    int bin_count() const;
    void validate() const; // bin_minutes must divide the session exactly

    // "09:30-16:00" -> grid; throws ConfigError on malformed input.
    static BinGrid from_session(std::string_view session, int bin_minutes);

    // Maps an HH:MM label to a bin index; throws DataError when the stamp is
    // off-grid or outside the session.
    int bin_index(std::string_view hhmm, std::size_t line = 0) const;
    std::string bin_label(int bin) const; // start-of-bin "HH:MM"
};

struct BinSeries {
    Date date;
    std::vector<double> volumes; // length == grid.bin_count()

    double total() const;
    std::size_t zero_bins() const;
};

struct GapObservation {
    double raw_gap = 0.0;   // open / prev close - 1
    double vol20 = 0.0;     // stdev of trailing close-to-close log returns
    double gap_ratio = 0.0; // raw_gap / vol20
    bool short_window = false; // fewer than 20 returns were available
};

struct LoadStats {
    std::size_t zero_filled_bins = 0; // bins absent from the file, set to 0
    std::size_t rows = 0;
};

// days CSV: symbol,date,open,close,total_volume,auction_volume,flags
// Records come back sorted by date; duplicates and constraint violations
// throw DataError naming the offending line.
std::map<std::string, std::vector<DayRecord>> load_days(const std::string& path);

// bins CSV: symbol,date,bin_start,volume. Missing bins are zero-filled and
// counted in stats. Off-grid stamps throw.
std::map<std::string, std::vector<BinSeries>> load_bins(const std::string& path,
                                                        const BinGrid& grid,
                                                        LoadStats* stats = nullptr);

// Overnight gap for `today` given its immediate predecessor and the day
// history ending at `prev` (closes supply the volatility window).
GapObservation overnight_gap(const DayRecord& prev, const DayRecord& today,
                             std::span<const DayRecord> history);

// Fraction of history strictly below `current`. Ties count as not-lower.
double volume_percentile(double current, std::span<const double> history);

// Continuous-session volume under the configured total convention.
double continuous_volume(const DayRecord& day, bool total_includes_auction);

struct Reconciliation {
    bool flagged = false;
    double relative_error = 0.0;
};

// Checks sum(bins) (+ auction when the total includes it) against the daily
// total. Mismatches beyond tolerance are flagged, never dropped.
Reconciliation reconcile_day(const DayRecord& day, const BinSeries& bins,
                             bool total_includes_auction, double tolerance = 0.005);

// Sample stdev of log close-to-close returns over the trailing `window`
// closes (shared by overnight_gap and the synthetic generator).
double trailing_return_stdev(std::span<const double> closes, int window = 20);

} // namespace volquint
