#include "volquint/synth.hpp"

#include "volquint/auction.hpp"
#include "volquint/csv.hpp"
#include "volquint/errors.hpp"
#include "volquint/rng.hpp"
#include "volquint/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace volquint {

namespace {

// RNG stream assignments; counters are day-indexed (bin streams use
// day * bin_count + bin).
enum Stream : uint64_t {
    kArmaInnovation = 0,
    kGapDraw = 1,
    kCloseReturn = 2,
    kAuctionNoise = 3,
    kBinNoise = 4,
    kZeroBin = 5,
};

constexpr double kDailyReturnVol = 0.015;
constexpr double kAuctionFraction = 0.07;
constexpr double kGapClip = 1.5; // keeps planted curves inside the linear region
constexpr int kArmaBurnIn = 50;

double parse_number(const std::string& key, const std::string& value) {
    double v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || p != value.data() + value.size()) {
        throw ConfigError("scenario key '" + key + "': invalid number '" + value + "'");
    }
    return v;
}

} // namespace

CurveShape curve_shape_from_name(std::string_view name) {
    if (name == "uniform") return CurveShape::uniform;
    if (name == "u_shape") return CurveShape::u_shape;
    if (name == "inverted_j") return CurveShape::inverted_j;
    throw ConfigError("unknown curve_shape '" + std::string(name) + "'");
}

const char* curve_shape_name(CurveShape s) {
    switch (s) {
        case CurveShape::uniform: return "uniform";
        case CurveShape::u_shape: return "u_shape";
        case CurveShape::inverted_j: return "inverted_j";
    }
    return "uniform";
}

void ScenarioSpec::validate() const {
    if (n_days <= 0) throw ConfigError("n_days must be positive");
    if (sigma_log < 0.0) throw ConfigError("sigma_log must be non-negative");
    if (!(std::fabs(phi) < 1.0) || !(std::fabs(theta) < 1.0)) {
        throw ConfigError("ARMA parameters must satisfy |phi| < 1, |theta| < 1");
    }
    if (bin_noise < 0.0) throw ConfigError("bin_noise must be non-negative");
    if (zero_bin_prob < 0.0 || zero_bin_prob > 1.0) {
        throw ConfigError("zero_bin_prob must lie in [0, 1]");
    }
    if (expiry_multiplier <= 0.0) throw ConfigError("expiry_multiplier must be positive");
    if (bin_count <= 0) throw ConfigError("bin_count must be positive");
    if (symbol.empty()) throw ConfigError("symbol must not be empty");
}

void ScenarioSpec::apply(const std::string& key, const std::string& value) {
    if (key == "n_days") {
        n_days = static_cast<int>(parse_number(key, value));
    } else if (key == "mu_log") {
        mu_log = parse_number(key, value);
    } else if (key == "sigma_log") {
        sigma_log = parse_number(key, value);
    } else if (key == "phi") {
        phi = parse_number(key, value);
    } else if (key == "theta") {
        theta = parse_number(key, value);
    } else if (key == "beta_gap") {
        beta_gap = parse_number(key, value);
    } else if (key == "curve_shape") {
        curve_shape = curve_shape_from_name(value);
    } else if (key == "curve_gap_beta") {
        curve_gap_beta = parse_number(key, value);
    } else if (key == "bin_noise") {
        bin_noise = parse_number(key, value);
    } else if (key == "expiry_multiplier") {
        expiry_multiplier = parse_number(key, value);
    } else if (key == "zero_bin_prob") {
        zero_bin_prob = parse_number(key, value);
    } else if (key == "seed") {
        seed = static_cast<uint64_t>(parse_number(key, value));
    } else if (key == "bin_count") {
        bin_count = static_cast<int>(parse_number(key, value));
    } else if (key == "start_date") {
        start_date = Date::parse(value);
    } else if (key == "symbol") {
        symbol = value;
    } else {
        throw ConfigError("unknown scenario key '" + key + "'");
    }
}

ScenarioSpec load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    ScenarioSpec spec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("scenario file '" + path + "' line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        spec.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    spec.validate();
    return spec;
}

std::vector<double> shape_c_curve(CurveShape shape, int bins) {
    std::vector<double> u(static_cast<std::size_t>(bins), 0.0);
    const double n = static_cast<double>(bins);
    for (int t = 0; t < bins; ++t) {
        const double x = (t + 0.5) / n; // bin midpoint in [0, 1]
        switch (shape) {
            case CurveShape::uniform: u[t] = 1.0; break;
            case CurveShape::u_shape:
                // Smile: heavy open and close, trough mid-day.
                u[t] = 0.6 + 3.2 * (x - 0.5) * (x - 0.5);
                break;
            case CurveShape::inverted_j:
                // Heavy open, decaying through the day, modest close pickup.
                u[t] = 0.4 + 1.6 * std::exp(-4.0 * x) + 0.35 * x * x;
                break;
        }
    }
    double sum = 0.0;
    for (double v : u) sum += v;
    std::vector<double> c(u.size());
    double run = 0.0;
    for (std::size_t t = 0; t < u.size(); ++t) {
        run += u[t] / sum;
        c[t] = run;
    }
    c.back() = 1.0;
    return c;
}

std::vector<double> planted_curve_beta(const ScenarioSpec& spec) {
    std::vector<double> beta(static_cast<std::size_t>(spec.bin_count), 0.0);
    if (spec.bin_count == 1) return beta;
    for (int t = 0; t < spec.bin_count; ++t) {
        beta[t] = spec.curve_gap_beta *
                  (1.0 - static_cast<double>(t) / static_cast<double>(spec.bin_count - 1));
    }
    return beta;
}

SynthOutput generate(const ScenarioSpec& spec) {
    spec.validate();
    const CounterRng rng(spec.seed);
    const int nbins = spec.bin_count;
    const std::vector<double> base_c = shape_c_curve(spec.curve_shape, nbins);
    const std::vector<double> beta1 = planted_curve_beta(spec);

    std::vector<double> base_u(base_c.size());
    {
        double prev = 0.0;
        for (std::size_t t = 0; t < base_c.size(); ++t) {
            base_u[t] = base_c[t] - prev;
            prev = base_c[t];
        }
    }

    SynthOutput out;
    out.symbol = spec.symbol;
    out.days.reserve(spec.n_days);
    out.bins.reserve(spec.n_days);

    // ARMA path with burn-in so day 0 starts from the stationary regime.
    std::vector<double> y(static_cast<std::size_t>(spec.n_days), 0.0);
    {
        double y_prev = 0.0, eps_prev = 0.0;
        for (int t = -kArmaBurnIn; t < spec.n_days; ++t) {
            const double eps =
                spec.sigma_log * rng.normal(kArmaInnovation, static_cast<uint64_t>(t + kArmaBurnIn));
            const double y_t = spec.phi * y_prev + eps + spec.theta * eps_prev;
            if (t >= 0) y[static_cast<std::size_t>(t)] = y_t;
            y_prev = y_t;
            eps_prev = eps;
        }
    }

    Date date = spec.start_date;
    while (date.is_weekend()) date = date.plus_days(1);

    std::vector<double> closes;
    closes.reserve(static_cast<std::size_t>(spec.n_days) + 1);
    closes.push_back(100.0);

    out.gap_ratio.assign(static_cast<std::size_t>(spec.n_days), 0.0);
    out.continuous_log.assign(static_cast<std::size_t>(spec.n_days), 0.0);

    for (int t = 0; t < spec.n_days; ++t) {
        const double prev_close = closes.back();
        const double ret = kDailyReturnVol * rng.normal(kCloseReturn, static_cast<uint64_t>(t));
        const double close = prev_close * std::exp(ret);

        // Gap becomes active once the pipeline's volatility window can be
        // computed; the planted ratio uses the same trailing stdev the
        // loaders will compute, so recovery is exact up to rounding.
        double gap_ratio = 0.0;
        double open = prev_close;
        if (t >= 21) {
            const double vol20 = trailing_return_stdev(closes, 20);
            double g = rng.normal(kGapDraw, static_cast<uint64_t>(t));
            g = std::clamp(g, -kGapClip, kGapClip);
            gap_ratio = g;
            open = prev_close * (1.0 + g * vol20);
        }
        out.gap_ratio[static_cast<std::size_t>(t)] = gap_ratio;

        const bool expiry = is_triple_witching(date);

        const double x_cont = spec.mu_log + y[static_cast<std::size_t>(t)] +
                              spec.beta_gap * gap_ratio;
        const double continuous = std::exp(x_cont);
        out.continuous_log[static_cast<std::size_t>(t)] = x_cont;

        const double auction_noise =
            0.25 * spec.sigma_log * rng.normal(kAuctionNoise, static_cast<uint64_t>(t));
        double auction_frac = kAuctionFraction * std::exp(auction_noise) *
                              (expiry ? spec.expiry_multiplier : 1.0);
        auction_frac = std::min(auction_frac, 0.5);
        const double auction = continuous * auction_frac;

        DayRecord day;
        day.date = date;
        day.open_price = open;
        day.close_price = close;
        day.auction_volume = auction;
        day.total_volume = continuous + auction;
        day.flags.optexp = expiry;
        out.days.push_back(day);

        // Per-day c-curve: base + planted gap response, then differenced into
        // noisy bin weights normalized to the continuous total.
        std::vector<double> c(base_c.size());
        double run_max = 0.0;
        for (std::size_t b = 0; b < c.size(); ++b) {
            double v = base_c[b] + beta1[b] * gap_ratio;
            v = std::clamp(v, 0.0, 1.0);
            run_max = std::max(run_max, v);
            c[b] = run_max;
        }
        c.back() = 1.0;

        std::vector<double> w(c.size());
        double prev = 0.0;
        for (std::size_t b = 0; b < c.size(); ++b) {
            w[b] = c[b] - prev;
            prev = c[b];
        }
        for (std::size_t b = 0; b < w.size(); ++b) {
            const uint64_t ctr = static_cast<uint64_t>(t) * static_cast<uint64_t>(nbins) + b;
            if (spec.bin_noise > 0.0) {
                w[b] *= std::exp(spec.bin_noise * rng.normal(kBinNoise, ctr) -
                                 0.5 * spec.bin_noise * spec.bin_noise);
            }
            if (spec.zero_bin_prob > 0.0 && rng.uniform(kZeroBin, ctr) < spec.zero_bin_prob) {
                w[b] = 0.0;
            }
        }
        double wsum = 0.0;
        for (double v : w) wsum += v;
        if (!(wsum > 0.0)) {
            w[0] = 1.0;
            wsum = 1.0;
        }

        BinSeries series;
        series.date = date;
        series.volumes.resize(w.size());
        for (std::size_t b = 0; b < w.size(); ++b) {
            series.volumes[b] = continuous * (w[b] / wsum);
        }
        out.bins.push_back(std::move(series));

        closes.push_back(close);
        date = date.next_business_day();
    }
    return out;
}

CalibratedParams ground_truth(const ScenarioSpec& spec, double routing_threshold,
                              double kappa0) {
    spec.validate();
    CalibratedParams p;
    p.symbol = spec.symbol;
    p.bin_count = spec.bin_count;
    p.kappa0 = kappa0;
    p.arma.phi = spec.phi;
    p.arma.theta = spec.theta;
    p.special_names = {kGapPredictor};
    p.special_betas = {spec.beta_gap};
    p.base_curve.values = shape_c_curve(spec.curve_shape, spec.bin_count);
    p.base_curve.kind = CurveKind::c;
    p.curve_fitted = spec.curve_gap_beta != 0.0;
    p.curve_betas.predictor_names = {kGapPredictor};
    p.curve_betas.predictor_mean = {0.0};
    p.curve_betas.predictor_scale = {1.0};
    p.curve_betas.beta0 = p.base_curve.values;
    p.curve_betas.betas = {planted_curve_beta(spec)};
    p.auction.beta_expiry = std::log(spec.expiry_multiplier);
    p.route = spec.zero_bin_prob > routing_threshold ? ModelRoute::cumulative_model
                                                     : ModelRoute::bin_model;
    p.omega_sq.assign(static_cast<std::size_t>(spec.bin_count), 0.0);
    return p;
}

SynthFiles write_synth_files(const SynthOutput& out, const ScenarioSpec& spec,
                             const std::string& dir, const BinGrid& grid) {
    if (grid.bin_count() != spec.bin_count) {
        throw ConfigError("scenario bin_count does not match the bin grid");
    }
    std::filesystem::create_directories(dir);
    SynthFiles files;
    files.days_path = (std::filesystem::path(dir) / "days.csv").string();
    files.bins_path = (std::filesystem::path(dir) / "bins.csv").string();
    files.truth_path = (std::filesystem::path(dir) / "ground_truth.json").string();

    {
        std::ofstream f(files.days_path);
        if (!f) throw DataError("cannot write '" + files.days_path + "'");
        f << "symbol,date,open,close,total_volume,auction_volume,flags\n";
        for (const auto& d : out.days) {
            std::string flags;
            if (d.flags.earnings) flags += "earnings";
            if (d.flags.optexp) flags += flags.empty() ? "optexp" : "|optexp";
            if (d.flags.rebalance) flags += flags.empty() ? "rebalance" : "|rebalance";
            f << out.symbol << ',' << d.date.to_string() << ',' << fmt_double(d.open_price)
              << ',' << fmt_double(d.close_price) << ',' << fmt_double(d.total_volume) << ','
              << fmt_double(d.auction_volume) << ',' << flags << '\n';
        }
    }
    {
        std::ofstream f(files.bins_path);
        if (!f) throw DataError("cannot write '" + files.bins_path + "'");
        f << "symbol,date,bin_start,volume\n";
        for (const auto& series : out.bins) {
            for (std::size_t b = 0; b < series.volumes.size(); ++b) {
                f << out.symbol << ',' << series.date.to_string() << ','
                  << grid.bin_label(static_cast<int>(b)) << ','
                  << fmt_double(series.volumes[b]) << '\n';
            }
        }
    }
    {
        std::ofstream f(files.truth_path);
        if (!f) throw DataError("cannot write '" + files.truth_path + "'");
        f << params_to_json(ground_truth(spec));
    }
    return files;
}

} // namespace volquint
