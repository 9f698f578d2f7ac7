#pragma once

#include "volquint/auction.hpp"
#include "volquint/config.hpp"
#include "volquint/forecast.hpp"
#include "volquint/params.hpp"
#include "volquint/synth.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace volquint {

// Joined per-symbol view of the loaded data.
struct SymbolFrame {
    std::string symbol;
    std::vector<DayRecord> days;            // sorted by date
    std::vector<BinSeries> bins;            // sorted by date
    std::vector<int> bins_index;            // day index -> bins index, -1 if absent
    std::vector<double> continuous;         // per day, under the total convention
    std::vector<Date> reconcile_flagged;    // days outside tolerance
};

SymbolFrame build_frame(const std::string& symbol, std::vector<DayRecord> days,
                        std::vector<BinSeries> bins, const RunConfig& cfg);

std::map<std::string, SymbolFrame> load_frames(const RunConfig& cfg);

struct DayFeatures {
    bool has_gap = false;
    double gap_ratio = 0.0;
    bool has_percentile = false;
    double percentile = 0.0;
    bool has_y = false;
    double y = 0.0; // excess log volume over the filtered rolling mean
};

// Features for day `index` using strictly prior data.
DayFeatures day_features(const SymbolFrame& frame, std::size_t index, const RunConfig& cfg);

// Fits every model for one symbol. Never throws for thin histories; the
// returned parameters carry fallback flags instead. `pooled_special` supplies
// the cross-sectional special-day fit used when the symbol has too few rows.
CalibratedParams calibrate_symbol(const SymbolFrame& frame, const RunConfig& cfg,
                                  const ExpiryCalendar& calendar,
                                  const std::vector<double>* pooled_special = nullptr);

// Cross-sectional special-day regression rows (y, gap, earnings, optexp,
// rebalance) for the pooled fallback.
void collect_special_rows(const SymbolFrame& frame, const RunConfig& cfg,
                          std::vector<double>& y_out, std::vector<double>& rows_out);

inline const std::vector<std::string> kSpecialPredictorNames = {
    "gap_ratio", "earnings", "optexp", "rebalance"};

// What is known about today at the open; realized volumes deliberately
// excluded so the replay cannot peek.
struct DayOpen {
    Date date;
    double open_price = 0.0;
    DayFlags flags;
};

// Bin-by-bin replay of one symbol-day. Construct with history strictly
// before the day, then feed bins in order.
class DayReplay {
public:
    DayReplay(const CalibratedParams& params, const RunConfig& cfg,
              const ExpiryCalendar& calendar, std::span<const DayRecord> history,
              std::span<const double> continuous_history, const DayOpen& today);

    const Forecast& current() const { return last_; }
    Forecast step(double bin_volume);

    // Baseline decompositions for the metric table (log space).
    double gm_log() const { return gm_log_; }
    double gm_arma_log() const { return gm_arma_log_; }
    double prior_log() const { return prior_.log_mean(); }
    double auction_prediction() const { return auction_pred_; }
    const VolumePrior& prior() const { return prior_; }

private:
    void refresh_curve();
    const IntradayState& state() const { return *state_; }

    const CalibratedParams& params_;
    const RunConfig& cfg_;
    std::string symbol_;
    Date date_;
    VolumePrior prior_;
    std::optional<IntradayState> state_;
    Curve curve_;
    double gm_log_ = 0.0;
    double gm_arma_log_ = 0.0;
    double auction_pred_ = 0.0;
    double gap_ratio_ = 0.0;
    bool has_gap_ = false;
    std::vector<double> percentile_history_;
    Forecast last_;
};

struct CalibrationOutcome {
    std::vector<std::string> succeeded;
    std::vector<std::pair<std::string, std::string>> failed; // symbol, reason
};

CalibrationOutcome cmd_calibrate(const RunConfig& cfg);

struct ModelMetrics {
    std::string model;
    MetricReport metrics;
    std::size_t n = 0;
};

struct ReplayReport {
    std::vector<ModelMetrics> total_volume; // gm_only, gm_arma, gm_arma_gap, quintet_eod
    ModelMetrics remaining_midday;
    ModelMetrics auction;
    std::size_t days_replayed = 0;
    std::size_t days_skipped = 0;
    std::size_t symbols = 0;

    std::string to_text() const;
    std::string to_json() const;
};

ReplayReport cmd_replay(const RunConfig& cfg, const Date& from, const Date& to);

void cmd_export_curves(const RunConfig& cfg);

SynthFiles cmd_synth(const RunConfig& cfg);

// Forecast record serialization (one JSON object per line in the stream).
std::string forecast_to_json(const Forecast& f);

} // namespace volquint
