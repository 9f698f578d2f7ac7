#pragma once

#include "volquint/marketdata.hpp"
#include "volquint/stats.hpp"

#include <cstdint>
#include <string>

namespace volquint {

// Run-wide settings. Defaults follow the model's standing choices: 20-day
// prior window, 180-day curve window, 10-minute bins over 09:30-16:00,
// kappa fraction 0.5, asymmetric (2, 1) L1 loss.
struct RunConfig {
    // Paths (CLI-supplied).
    std::string days_file;
    std::string bins_file;
    std::string params_dir;
    std::string out_dir;
    std::string report_file;
    std::string forecasts_file;
    std::string scenario_file;
    std::string calendar_file;

    BinGrid grid;

    int prior_window = 20;
    int curve_window = 180;
    int dispersion_days = 60;
    int percentile_window = 180;

    double kappa_fraction = 0.5;
    bool kappa_fraction_override = false; // allow values outside [0.3, 0.8]

    LossSpec loss;

    double routing_threshold = 0.05;
    double reconcile_tolerance = 0.005;
    bool total_includes_auction = true;
    bool exclude_expiry_from_auction_mean = false;

    int min_bins_for_variance = 6;
    double sigma0_floor = 0.0025;    // (0.05)^2 log-units
    double sample_var_floor = 0.0025;
    double omega_floor = 1e-4;       // (0.01)^2
    double grubbs_alpha = 0.05;
    bool smooth_betas = false;

    uint64_t seed = 1;

    double kappa0() const { return kappa_fraction * prior_window; }
    void validate() const; // throws ConfigError

    // Applies one `key = value` setting; unknown keys throw ConfigError.
    void apply(const std::string& key, const std::string& value);
};

// Flat key-value file: `key = value` lines, '#' comments, blank lines ignored.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

} // namespace volquint
