#include "volquint/harness.hpp"

#include "volquint/csv.hpp"
#include "volquint/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <memory>
#include <fstream>
#include <numeric>
#include <sstream>

namespace volquint {

using ordered_json = nlohmann::ordered_json;

namespace {

// Last `window` strictly positive values of `series` before `index`.
// Returns an empty vector when fewer than `window` are available.
std::vector<double> trailing_positive(std::span<const double> series, std::size_t index,
                                      int window) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(window));
    for (std::size_t i = index; i-- > 0;) {
        if (series[i] > 0.0) {
            out.push_back(series[i]);
            if (out.size() == static_cast<std::size_t>(window)) break;
        }
    }
    if (out.size() < static_cast<std::size_t>(window)) return {};
    std::reverse(out.begin(), out.end());
    return out;
}

// Up to `window` positive values before `index` (no minimum).
std::vector<double> trailing_positive_upto(std::span<const double> series, std::size_t index,
                                           int window) {
    std::vector<double> out;
    for (std::size_t i = index; i-- > 0;) {
        if (series[i] > 0.0) {
            out.push_back(series[i]);
            if (out.size() == static_cast<std::size_t>(window)) break;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace

SymbolFrame build_frame(const std::string& symbol, std::vector<DayRecord> days,
                        std::vector<BinSeries> bins, const RunConfig& cfg) {
    SymbolFrame frame;
    frame.symbol = symbol;
    frame.days = std::move(days);
    frame.bins = std::move(bins);
    frame.bins_index.assign(frame.days.size(), -1);
    frame.continuous.resize(frame.days.size());

    std::map<int32_t, int> by_date;
    for (std::size_t b = 0; b < frame.bins.size(); ++b) {
        by_date[frame.bins[b].date.serial()] = static_cast<int>(b);
    }
    for (std::size_t i = 0; i < frame.days.size(); ++i) {
        frame.continuous[i] = continuous_volume(frame.days[i], cfg.total_includes_auction);
        auto it = by_date.find(frame.days[i].date.serial());
        if (it != by_date.end()) {
            frame.bins_index[i] = it->second;
            auto rec = reconcile_day(frame.days[i], frame.bins[it->second],
                                     cfg.total_includes_auction, cfg.reconcile_tolerance);
            if (rec.flagged) frame.reconcile_flagged.push_back(frame.days[i].date);
        }
    }
    return frame;
}

std::map<std::string, SymbolFrame> load_frames(const RunConfig& cfg) {
    auto days = load_days(cfg.days_file);
    std::map<std::string, std::vector<BinSeries>> bins;
    if (!cfg.bins_file.empty()) bins = load_bins(cfg.bins_file, cfg.grid);

    std::map<std::string, SymbolFrame> frames;
    for (auto& [sym, recs] : days) {
        auto it = bins.find(sym);
        frames.emplace(sym, build_frame(sym, std::move(recs),
                                        it != bins.end() ? std::move(it->second)
                                                         : std::vector<BinSeries>{},
                                        cfg));
    }
    return frames;
}

DayFeatures day_features(const SymbolFrame& frame, std::size_t index, const RunConfig& cfg) {
    DayFeatures f;
    if (index >= frame.days.size()) throw std::invalid_argument("day index out of range");

    if (index >= 3) {
        try {
            auto gap = overnight_gap(frame.days[index - 1], frame.days[index],
                                     std::span(frame.days.data(), index));
            f.has_gap = true;
            f.gap_ratio = gap.gap_ratio;
        } catch (const DataError&) {
            // degenerate volatility or broken history: leave the gap unset
        }
    }

    auto pct_hist = trailing_positive_upto(frame.continuous, index, cfg.percentile_window);
    if (pct_hist.size() >= 20 && frame.continuous[index] > 0.0) {
        f.has_percentile = true;
        f.percentile = volume_percentile(frame.continuous[index], pct_hist);
    }

    if (frame.continuous[index] > 0.0) {
        auto window = trailing_positive(frame.continuous, index, cfg.prior_window);
        if (!window.empty()) {
            f.has_y = true;
            f.y = std::log(frame.continuous[index]) - rolling_log_mean(window, cfg.grubbs_alpha);
        }
    }
    return f;
}

void collect_special_rows(const SymbolFrame& frame, const RunConfig& cfg,
                          std::vector<double>& y_out, std::vector<double>& rows_out) {
    for (std::size_t i = 0; i < frame.days.size(); ++i) {
        DayFeatures f = day_features(frame, i, cfg);
        if (!f.has_y || !f.has_gap) continue;
        y_out.push_back(f.y);
        rows_out.push_back(f.gap_ratio);
        rows_out.push_back(frame.days[i].flags.earnings ? 1.0 : 0.0);
        rows_out.push_back(frame.days[i].flags.optexp ? 1.0 : 0.0);
        rows_out.push_back(frame.days[i].flags.rebalance ? 1.0 : 0.0);
    }
}

namespace {

// Fit the special-day regression on the columns that actually vary; the rest keep
// a zero coefficient.
std::vector<double> fit_special_betas(std::span<const double> y, std::span<const double> rows,
                                      const LossSpec& loss) {
    const std::size_t k = kSpecialPredictorNames.size();
    const std::size_t n = y.size();
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < k; ++j) {
        double lo = rows[j], hi = rows[j];
        for (std::size_t i = 0; i < n; ++i) {
            lo = std::min(lo, rows[i * k + j]);
            hi = std::max(hi, rows[i * k + j]);
        }
        if (hi - lo > 1e-12) active.push_back(j);
    }
    std::vector<double> betas(k, 0.0);
    if (active.empty() || n < active.size() + 2) return betas;

    Matrix X(n, active.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < active.size(); ++a) X(i, a) = rows[i * k + active[a]];
    }
    auto fit = ale_regression(y, X, loss);
    for (std::size_t a = 0; a < active.size(); ++a) betas[active[a]] = fit[a];
    return betas;
}

std::vector<double> special_features_for_day(const DayFeatures& f, const DayFlags& flags) {
    return {f.has_gap ? f.gap_ratio : 0.0, flags.earnings ? 1.0 : 0.0,
            flags.optexp ? 1.0 : 0.0, flags.rebalance ? 1.0 : 0.0};
}

Curve uniform_curve(int bins) {
    Curve c;
    c.kind = CurveKind::c;
    c.values.resize(static_cast<std::size_t>(bins));
    for (int t = 0; t < bins; ++t) {
        c.values[static_cast<std::size_t>(t)] =
            static_cast<double>(t + 1) / static_cast<double>(bins);
    }
    c.values.back() = 1.0;
    return c;
}

} // namespace

CalibratedParams calibrate_symbol(const SymbolFrame& frame, const RunConfig& cfg,
                                  const ExpiryCalendar& calendar,
                                  const std::vector<double>* pooled_special) {
    const int nbins = cfg.grid.bin_count();
    CalibratedParams p;
    p.symbol = frame.symbol;
    p.bin_count = nbins;
    p.kappa0 = cfg.kappa0();
    p.prior_window = cfg.prior_window;
    p.diag.days = frame.days.size();

    if (frame.days.size() < 3) {
        throw CalibrationError("symbol " + frame.symbol + ": fewer than 3 days of data");
    }

    // Per-day features, computed once.
    std::vector<DayFeatures> features(frame.days.size());
    for (std::size_t i = 0; i < frame.days.size(); ++i) {
        features[i] = day_features(frame, i, cfg);
    }

    // --- Model one: ARMA on the excess series. ---
    std::vector<double> y_series;
    for (const auto& f : features) {
        if (f.has_y) y_series.push_back(f.y);
    }
    auto arma_fit = calibrate_arma(y_series, cfg.loss);
    p.arma = arma_fit.params;
    p.arma_prior_only = arma_fit.prior_only;
    p.diag.arma_obs = y_series.size();
    p.diag.arma_loss = arma_fit.loss;

    // --- Special-day regression (per symbol, pooled fallback). ---
    p.special_names = kSpecialPredictorNames;
    std::vector<double> y_rows;
    std::vector<double> x_rows;
    collect_special_rows(frame, cfg, y_rows, x_rows);
    p.diag.special_rows = y_rows.size();
    if (y_rows.size() >= 60) {
        p.special_betas = fit_special_betas(y_rows, x_rows, cfg.loss);
    } else if (pooled_special && pooled_special->size() == kSpecialPredictorNames.size()) {
        p.special_betas = *pooled_special;
        p.special_pooled = true;
    } else {
        p.special_betas.assign(kSpecialPredictorNames.size(), 0.0);
        p.special_pooled = true;
    }

    // --- Model two: historical curve + functional regression. ---
    try {
        p.base_curve = historical_curve(frame.bins, cfg.curve_window);
    } catch (const CalibrationError&) {
        p.base_curve = uniform_curve(nbins);
    }

    std::vector<std::vector<double>> day_curves;
    std::vector<double> gap_col, pct_col;
    for (std::size_t i = 0; i < frame.days.size(); ++i) {
        const int b = frame.bins_index[i];
        if (b < 0) continue;
        const auto& series = frame.bins[static_cast<std::size_t>(b)];
        if (!usable_curve_day(series)) continue;
        if (!features[i].has_gap || !features[i].has_percentile) continue;
        auto c = day_c_curve(series);
        if (c.empty() || c.size() != static_cast<std::size_t>(nbins)) continue;
        day_curves.push_back(std::move(c));
        gap_col.push_back(features[i].gap_ratio);
        pct_col.push_back(features[i].percentile);
    }
    if (day_curves.size() > static_cast<std::size_t>(cfg.curve_window)) {
        const std::size_t drop = day_curves.size() - static_cast<std::size_t>(cfg.curve_window);
        day_curves.erase(day_curves.begin(), day_curves.begin() + static_cast<std::ptrdiff_t>(drop));
        gap_col.erase(gap_col.begin(), gap_col.begin() + static_cast<std::ptrdiff_t>(drop));
        pct_col.erase(pct_col.begin(), pct_col.begin() + static_cast<std::ptrdiff_t>(drop));
    }
    p.diag.curve_days = day_curves.size();
    if (day_curves.size() >= 40) {
        Matrix X(day_curves.size(), 2);
        for (std::size_t i = 0; i < day_curves.size(); ++i) {
            X(i, 0) = gap_col[i];
            X(i, 1) = pct_col[i];
        }
        p.curve_betas = fit_functional_regression(
            day_curves, X, {kGapPredictor, kVolumePercentilePredictor}, cfg.smooth_betas);
        p.curve_fitted = true;
    }

    // --- Model three: auction seasonality. ---
    try {
        p.auction = fit_auction_seasonality(frame.days, calendar, cfg.prior_window,
                                            cfg.exclude_expiry_from_auction_mean);
    } catch (const CalibrationError&) {
        p.auction.flagged = true;
        p.auction.mean_window = cfg.prior_window;
        p.auction.exclude_expiry_from_mean = cfg.exclude_expiry_from_auction_mean;
    }
    std::size_t expiry_days = 0;
    for (const auto& d : frame.days) expiry_days += calendar.is_expiry(d);
    p.diag.expiry_days = expiry_days;

    // --- Routing over the trailing curve window. ---
    std::span<const BinSeries> route_window(frame.bins);
    if (route_window.size() > static_cast<std::size_t>(cfg.curve_window)) {
        route_window = route_window.subspan(route_window.size() -
                                            static_cast<std::size_t>(cfg.curve_window));
    }
    p.route = route_symbol(route_window, cfg.routing_threshold);
    {
        std::size_t zeros = 0, total = 0;
        for (const auto& d : route_window) {
            zeros += d.zero_bins();
            total += d.volumes.size();
        }
        p.diag.zero_bin_fraction =
            total ? static_cast<double>(zeros) / static_cast<double>(total) : 1.0;
    }

    // --- Model five support: dispersion profile from the base curve. ---
    std::vector<std::vector<double>> z_by_day;
    std::vector<double> log_totals;
    for (std::size_t i = frame.days.size(); i-- > 0;) {
        if (z_by_day.size() >= static_cast<std::size_t>(cfg.dispersion_days)) break;
        const int b = frame.bins_index[i];
        if (b < 0 || !(frame.continuous[i] > 0.0)) continue;
        const auto& series = frame.bins[static_cast<std::size_t>(b)];
        if (series.volumes.size() != static_cast<std::size_t>(nbins)) continue;
        std::vector<double> z(series.volumes.size(), std::nan(""));
        double cum = 0.0;
        for (std::size_t t = 0; t < series.volumes.size(); ++t) {
            cum += series.volumes[t];
            const double c_hat = p.base_curve.values[t];
            if (cum > 0.0 && c_hat > 0.0) z[t] = std::log(cum / c_hat);
        }
        z_by_day.push_back(std::move(z));
        log_totals.push_back(std::log(frame.continuous[i]));
    }
    if (z_by_day.size() >= 20) {
        p.omega_sq = dispersion_profile(z_by_day, log_totals, cfg.omega_floor);
    } else {
        p.omega_sq.assign(static_cast<std::size_t>(nbins), kUninformativeDispersion);
    }
    return p;
}

DayReplay::DayReplay(const CalibratedParams& params, const RunConfig& cfg,
                     const ExpiryCalendar& calendar, std::span<const DayRecord> history,
                     std::span<const double> continuous_history, const DayOpen& today)
    : params_(params), cfg_(cfg), symbol_(params.symbol), date_(today.date) {
    if (history.size() != continuous_history.size()) {
        throw std::invalid_argument("DayReplay: history span mismatch");
    }
    if (!history.empty() && history.back().date >= today.date) {
        throw std::invalid_argument("DayReplay: history must end before the replay date");
    }

    auto window = trailing_positive(continuous_history, continuous_history.size(),
                                    cfg.prior_window);
    if (window.empty()) {
        throw CalibrationError("symbol " + symbol_ + " " + today.date.to_string() +
                               ": fewer than " + std::to_string(cfg.prior_window) +
                               " positive days before the replay date");
    }

    // Excess series for the ARMA forecast, built from strictly prior data.
    std::vector<double> y_hist;
    for (std::size_t i = 0; i < continuous_history.size(); ++i) {
        if (!(continuous_history[i] > 0.0)) continue;
        auto w = trailing_positive(continuous_history, i, cfg.prior_window);
        if (w.empty()) continue;
        y_hist.push_back(std::log(continuous_history[i]) -
                         rolling_log_mean(w, cfg.grubbs_alpha));
    }

    // Overnight gap from the open print.
    if (history.size() >= 3) {
        DayRecord today_rec;
        today_rec.date = today.date;
        today_rec.open_price = today.open_price;
        today_rec.close_price = today.open_price;
        try {
            auto gap = overnight_gap(history.back(), today_rec, history);
            has_gap_ = true;
            gap_ratio_ = gap.gap_ratio;
        } catch (const DataError&) {
        }
    }

    DayFeatures f;
    f.has_gap = has_gap_;
    f.gap_ratio = gap_ratio_;
    auto today_features = special_features_for_day(f, today.flags);

    ArmaParams arma = params.arma_prior_only ? ArmaParams{} : params.arma;
    prior_ = build_prior(window, y_hist, arma, params.special_betas, today_features,
                         cfg.grubbs_alpha, cfg.sigma0_floor);

    gm_log_ = rolling_log_mean(window, cfg.grubbs_alpha);
    gm_arma_log_ = gm_log_;
    if (!y_hist.empty() && (arma.phi != 0.0 || arma.theta != 0.0)) {
        gm_arma_log_ += arma_forecast(y_hist, arma);
    }

    percentile_history_ = trailing_positive_upto(continuous_history,
                                                 continuous_history.size(),
                                                 cfg.percentile_window);

    IntradayConfig icfg;
    icfg.kappa0 = params.kappa0;
    icfg.min_bins_for_variance = cfg.min_bins_for_variance;
    icfg.sample_var_floor = cfg.sample_var_floor;
    icfg.omega_floor = cfg.omega_floor;
    icfg.zero_bin_reroute = cfg.routing_threshold;
    icfg.grubbs_alpha = cfg.grubbs_alpha;
    state_.emplace(prior_, params.route, params.omega_sq, icfg);

    auction_pred_ = predict_auction(params.auction, history, today.date, calendar);

    refresh_curve();
    last_ = assemble(symbol_, date_, state(), curve_, auction_pred_);
}

void DayReplay::refresh_curve() {
    const double estimate =
        state().bins_seen() == 0 ? prior_.mean_volume() : std::exp(state().posterior().mu_p);
    std::vector<double> raw(params_.curve_betas.betas.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const auto& name = params_.curve_betas.predictor_names[k];
        if (name == kGapPredictor) {
            raw[k] = has_gap_ ? gap_ratio_ : params_.curve_betas.predictor_mean[k];
        } else if (name == kVolumePercentilePredictor) {
            raw[k] = percentile_history_.empty()
                         ? params_.curve_betas.predictor_mean[k]
                         : volume_percentile(estimate, percentile_history_);
        } else {
            raw[k] = params_.curve_betas.predictor_mean[k];
        }
    }
    curve_ = predict_curve(params_.base_curve, params_.curve_betas, raw);
}

Forecast DayReplay::step(double bin_volume) {
    const int j = state().bins_seen();
    if (j >= static_cast<int>(curve_.values.size())) {
        throw std::invalid_argument("DayReplay: session already complete");
    }
    const double c_before = curve_.at_boundary(j);
    const double c_after = curve_.values[static_cast<std::size_t>(j)];
    const double u_hat = c_after - c_before;
    state_->observe_bin(j, bin_volume, u_hat, c_after);
    refresh_curve();
    last_ = assemble(symbol_, date_, state(), curve_, auction_pred_);
    return last_;
}

CalibrationOutcome cmd_calibrate(const RunConfig& cfg) {
    cfg.validate();
    auto frames = load_frames(cfg);
    ExpiryCalendar calendar = cfg.calendar_file.empty()
                                  ? ExpiryCalendar{}
                                  : ExpiryCalendar::from_csv(cfg.calendar_file);

    // Pooled special-day fit for symbols with thin histories.
    std::vector<double> pooled_y, pooled_rows;
    for (const auto& [sym, frame] : frames) {
        collect_special_rows(frame, cfg, pooled_y, pooled_rows);
    }
    std::vector<double> pooled_betas(kSpecialPredictorNames.size(), 0.0);
    if (pooled_y.size() >= 60) {
        pooled_betas = fit_special_betas(pooled_y, pooled_rows, cfg.loss);
    }

    CalibrationOutcome outcome;
    for (const auto& [sym, frame] : frames) {
        try {
            auto params = calibrate_symbol(frame, cfg, calendar, &pooled_betas);
            save_params(cfg.params_dir.empty() ? cfg.out_dir : cfg.params_dir, params);
            outcome.succeeded.push_back(sym);
        } catch (const std::exception& e) {
            outcome.failed.emplace_back(sym, e.what());
        }
    }
    return outcome;
}

std::string forecast_to_json(const Forecast& f) {
    ordered_json j;
    j["symbol"] = f.symbol;
    j["date"] = f.date.to_string();
    j["as_of_bin"] = f.as_of_bin;
    j["route"] = route_name(f.route);
    j["total_log"] = f.total_log;
    j["total"] = f.total;
    j["traded"] = f.traded;
    j["remaining"] = f.remaining;
    j["posterior_var"] = f.posterior_var;
    j["auction"] = f.auction;
    j["deficit"] = f.deficit;
    j["c_hat"] = f.c_hat.values;
    return j.dump();
}

namespace {

struct MetricAccumulator {
    std::vector<double> est_log;
    std::vector<double> true_log;

    void add(double est, double truth) {
        est_log.push_back(est);
        true_log.push_back(truth);
    }
    ModelMetrics finish(const std::string& name, const LossSpec& loss) const {
        ModelMetrics m;
        m.model = name;
        m.n = est_log.size();
        if (!est_log.empty()) m.metrics = report_metrics(est_log, true_log, loss);
        return m;
    }
};

} // namespace

ReplayReport cmd_replay(const RunConfig& cfg, const Date& from, const Date& to) {
    cfg.validate();
    if (cfg.params_dir.empty()) throw ConfigError("replay requires params_dir");
    auto frames = load_frames(cfg);
    ExpiryCalendar calendar = cfg.calendar_file.empty()
                                  ? ExpiryCalendar{}
                                  : ExpiryCalendar::from_csv(cfg.calendar_file);

    std::ofstream forecasts;
    if (!cfg.forecasts_file.empty()) {
        forecasts.open(cfg.forecasts_file);
        if (!forecasts) {
            throw DataError("cannot write forecasts file '" + cfg.forecasts_file + "'");
        }
    }

    MetricAccumulator gm_only, gm_arma, gm_arma_gap, quintet, remaining_mid, auction_acc;
    ReplayReport report;

    for (const auto& [sym, frame] : frames) {
        CalibratedParams params = load_params(cfg.params_dir, sym);
        ++report.symbols;

        for (std::size_t i = 0; i < frame.days.size(); ++i) {
            const Date d = frame.days[i].date;
            if (d < from || d > to) continue;
            const int b = frame.bins_index[i];
            if (b < 0 || !(frame.continuous[i] > 0.0)) {
                ++report.days_skipped;
                continue;
            }
            DayOpen open{d, frame.days[i].open_price, frame.days[i].flags};
            std::unique_ptr<DayReplay> replay;
            try {
                replay = std::make_unique<DayReplay>(
                    params, cfg, calendar, std::span(frame.days.data(), i),
                    std::span(frame.continuous.data(), i), open);
            } catch (const CalibrationError&) {
                ++report.days_skipped;
                continue;
            }

            const auto& series = frame.bins[static_cast<std::size_t>(b)];
            const int nbins = static_cast<int>(series.volumes.size());
            const int mid = nbins / 2;
            double traded_mid = 0.0;
            double remaining_mid_est = 0.0;

            if (forecasts.is_open()) forecasts << forecast_to_json(replay->current()) << '\n';
            Forecast last = replay->current();
            for (int t = 0; t < nbins; ++t) {
                last = replay->step(series.volumes[static_cast<std::size_t>(t)]);
                if (forecasts.is_open()) forecasts << forecast_to_json(last) << '\n';
                if (last.as_of_bin == mid) {
                    traded_mid = last.traded;
                    remaining_mid_est = last.remaining;
                }
            }

            const double true_log = std::log(frame.continuous[i]);
            gm_only.add(replay->gm_log(), true_log);
            gm_arma.add(replay->gm_arma_log(), true_log);
            gm_arma_gap.add(replay->prior_log(), true_log);
            quintet.add(last.total_log, true_log);

            const double realized_remaining = frame.continuous[i] - traded_mid;
            if (remaining_mid_est > 0.0 && realized_remaining > 0.0) {
                remaining_mid.add(std::log(remaining_mid_est), std::log(realized_remaining));
            }
            if (replay->auction_prediction() > 0.0 && frame.days[i].auction_volume > 0.0) {
                auction_acc.add(std::log(replay->auction_prediction()),
                                std::log(frame.days[i].auction_volume));
            }
            ++report.days_replayed;
        }
    }

    report.total_volume.push_back(gm_only.finish("gm_only", cfg.loss));
    report.total_volume.push_back(gm_arma.finish("gm_arma", cfg.loss));
    report.total_volume.push_back(gm_arma_gap.finish("gm_arma_gap", cfg.loss));
    report.total_volume.push_back(quintet.finish("quintet_eod", cfg.loss));
    report.remaining_midday = remaining_mid.finish("quintet_remaining_midday", cfg.loss);
    report.auction = auction_acc.finish("auction_gm_expiry", cfg.loss);

    if (!cfg.report_file.empty()) {
        std::ofstream out(cfg.report_file);
        if (!out) throw DataError("cannot write report file '" + cfg.report_file + "'");
        out << report.to_json();
    }
    return report;
}

std::string ReplayReport::to_text() const {
    std::ostringstream os;
    os << "days replayed: " << days_replayed << " (skipped " << days_skipped << "), symbols: "
       << symbols << "\n";
    os << "total-volume metrics (log-space ALE; RMSE/MAPE in shares):\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-26s %12s %14s %10s %6s\n", "model", "ALE", "RMSE",
                  "MAPE%", "n");
    os << buf;
    auto row = [&](const ModelMetrics& m) {
        std::snprintf(buf, sizeof(buf), "  %-26s %12.4f %14.1f %10.2f %6zu\n", m.model.c_str(),
                      m.metrics.ale, m.metrics.rmse, m.metrics.mape, m.n);
        os << buf;
    };
    for (const auto& m : total_volume) row(m);
    os << "remaining volume at mid-session:\n";
    row(remaining_midday);
    os << "close auction:\n";
    row(auction);
    return os.str();
}

std::string ReplayReport::to_json() const {
    ordered_json j;
    j["days_replayed"] = days_replayed;
    j["days_skipped"] = days_skipped;
    j["symbols"] = symbols;
    auto metrics_json = [](const ModelMetrics& m) {
        ordered_json o;
        o["model"] = m.model;
        o["ale"] = m.metrics.ale;
        o["rmse"] = m.metrics.rmse;
        o["mape"] = m.metrics.mape;
        o["n"] = m.n;
        return o;
    };
    j["total_volume"] = ordered_json::array();
    for (const auto& m : total_volume) j["total_volume"].push_back(metrics_json(m));
    j["remaining_midday"] = metrics_json(remaining_midday);
    j["auction"] = metrics_json(auction);
    return j.dump(2) + "\n";
}

void cmd_export_curves(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.out_dir.empty()) throw ConfigError("export-curves requires out_dir");
    auto frames = load_frames(cfg);
    std::filesystem::create_directories(cfg.out_dir);

    struct DayEntry {
        std::vector<double> curve;
        double gap = 0.0;
        double pct = 0.0;
    };
    std::vector<DayEntry> entries;
    for (const auto& [sym, frame] : frames) {
        for (std::size_t i = 0; i < frame.days.size(); ++i) {
            const int b = frame.bins_index[i];
            if (b < 0) continue;
            const auto& series = frame.bins[static_cast<std::size_t>(b)];
            if (!usable_curve_day(series)) continue;
            DayFeatures f = day_features(frame, i, cfg);
            if (!f.has_gap || !f.has_percentile) continue;
            entries.push_back({day_c_curve(series), f.gap_ratio, f.percentile});
        }
    }

    auto write_buckets = [&](const std::string& path, auto key) {
        // Rank-based quintiles: every day lands in exactly one bucket.
        std::vector<std::size_t> order(entries.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b2) {
            return key(entries[a]) < key(entries[b2]);
        });
        std::ofstream out(path);
        if (!out) throw DataError("cannot write '" + path + "'");
        out << "bucket,bin_index,c_value,u_value\n";
        if (entries.empty()) return;
        const std::size_t nbins = entries.front().curve.size();
        for (int q = 0; q < 5; ++q) {
            const std::size_t lo = entries.size() * q / 5;
            const std::size_t hi = entries.size() * (q + 1) / 5;
            if (lo == hi) continue;
            std::vector<double> avg(nbins, 0.0);
            for (std::size_t r = lo; r < hi; ++r) {
                for (std::size_t t = 0; t < nbins; ++t) avg[t] += entries[order[r]].curve[t];
            }
            for (double& v : avg) v /= static_cast<double>(hi - lo);
            double prev = 0.0;
            for (std::size_t t = 0; t < nbins; ++t) {
                out << 'q' << (q + 1) << ',' << t << ',' << fmt_double(avg[t]) << ','
                    << fmt_double(avg[t] - prev) << '\n';
                prev = avg[t];
            }
        }
    };
    write_buckets((std::filesystem::path(cfg.out_dir) / "curves_by_gap.csv").string(),
                  [](const DayEntry& e) { return e.gap; });
    write_buckets((std::filesystem::path(cfg.out_dir) / "curves_by_volume.csv").string(),
                  [](const DayEntry& e) { return e.pct; });

    // Fitted base curves per symbol when parameters are available, otherwise
    // freshly estimated historical curves.
    std::ofstream base((std::filesystem::path(cfg.out_dir) / "base_curves.csv").string());
    base << "symbol,bin_index,c_value,u_value\n";
    for (const auto& [sym, frame] : frames) {
        Curve c;
        try {
            if (!cfg.params_dir.empty()) {
                c = load_params(cfg.params_dir, sym).base_curve;
            } else {
                c = historical_curve(frame.bins, cfg.curve_window);
            }
        } catch (const std::exception&) {
            continue;
        }
        auto u = curve_to_u(c);
        for (std::size_t t = 0; t < c.values.size(); ++t) {
            base << sym << ',' << t << ',' << fmt_double(c.values[t]) << ','
                 << fmt_double(u[t]) << '\n';
        }
    }
}

SynthFiles cmd_synth(const RunConfig& cfg) {
    if (cfg.scenario_file.empty()) throw ConfigError("synth requires a scenario file");
    if (cfg.out_dir.empty()) throw ConfigError("synth requires out_dir");
    ScenarioSpec spec = load_scenario_file(cfg.scenario_file);
    BinGrid grid = cfg.grid;
    if (grid.bin_count() != spec.bin_count) {
        // The scenario pins the bin count; derive a matching grid.
        grid.bin_minutes = (grid.session_close - grid.session_open) / spec.bin_count;
        if (grid.bin_minutes <= 0 ||
            grid.bin_minutes * spec.bin_count != grid.session_close - grid.session_open) {
            throw ConfigError("scenario bin_count incompatible with the session length");
        }
    }
    auto out = generate(spec);
    return write_synth_files(out, spec, cfg.out_dir, grid);
}

} // namespace volquint
