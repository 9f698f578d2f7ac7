#pragma once

#include "volquint/marketdata.hpp"
#include "volquint/params.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace volquint {

enum class CurveShape { uniform, u_shape, inverted_j };

CurveShape curve_shape_from_name(std::string_view name);
const char* curve_shape_name(CurveShape s);

// Synthetic-market scenario. Everything is driven by a counter-based RNG so
// the same spec always produces byte-identical data.
struct ScenarioSpec {
    int n_days = 250;
    double mu_log = 13.815510557964274; // log(1e6)
    double sigma_log = 0.5;             // ARMA innovation stdev of daily logs
    double phi = 0.0;
    double theta = 0.0;
    double beta_gap = 0.0;      // daily log-volume response to the gap ratio
    CurveShape curve_shape = CurveShape::u_shape;
    double curve_gap_beta = 0.0; // planted beta_1(0), decaying linearly to 0
    double bin_noise = 0.0;      // lognormal sigma of per-bin weight noise
    double expiry_multiplier = 1.0;
    double zero_bin_prob = 0.0;
    uint64_t seed = 1;
    int bin_count = 39;
    Date start_date = Date(2020, 1, 2);
    std::string symbol = "SYN";

    void validate() const;
    void apply(const std::string& key, const std::string& value);
};

ScenarioSpec load_scenario_file(const std::string& path);

struct SynthOutput {
    std::string symbol;
    std::vector<DayRecord> days;
    std::vector<BinSeries> bins;
    // Ground truth per day, aligned with `days`.
    std::vector<double> gap_ratio;      // planted gap ratios (0 during warmup)
    std::vector<double> continuous_log; // X_t of the continuous session
};

// Base c-curve for a shape.
std::vector<double> shape_c_curve(CurveShape shape, int bins);

// Planted functional beta_1(t): curve_gap_beta * (1 - t / (T-1)).
std::vector<double> planted_curve_beta(const ScenarioSpec& spec);

SynthOutput generate(const ScenarioSpec& spec);

// The generating parameters in calibrator schema, for recovery comparisons.
CalibratedParams ground_truth(const ScenarioSpec& spec, double routing_threshold = 0.05,
                              double kappa0 = 10.0);

// Writes days.csv / bins.csv in the marketdata schemas plus a ground-truth
// sidecar; returns the paths written.
struct SynthFiles {
    std::string days_path;
    std::string bins_path;
    std::string truth_path;
};
SynthFiles write_synth_files(const SynthOutput& out, const ScenarioSpec& spec,
                             const std::string& dir, const BinGrid& grid);

} // namespace volquint
