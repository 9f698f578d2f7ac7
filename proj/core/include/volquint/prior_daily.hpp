#pragma once

#include "volquint/stats.hpp"

#include <span>
#include <string>
#include <vector>

namespace volquint {

// ARMA(1,1) coefficients for the excess log-volume series. last_eps carries
// the running innovation for streaming diagnostics; forecasts reconstruct
// the innovation path from scratch for determinism.
struct ArmaParams {
    double phi = 0.0;
    double theta = 0.0;
    double last_eps = 0.0;

    void validate() const; // |phi| < 1, |theta| < 1
};

// Log-space belief about today's continuous volume before intraday data.
struct VolumePrior {
    double mu0 = 0.0;        // rolling mean + ARMA adjustment, log shares
    double sigma0_sq = 0.0;  // variance of the filtered window logs (floored)
    double multiplier = 1.0; // exp(sum of special-day betas * features)
    int source_window = 0;
    bool variance_floored = false;

    double log_mean() const;
    double mean_volume() const; // exp(log_mean())
};

struct ArmaFit {
    ArmaParams params;
    bool prior_only = false; // insufficient history, coefficients forced to 0
    double loss = 0.0;       // ALE at the optimum
    std::size_t n = 0;
};

// Grubbs-filtered mean of log volumes over the trailing window. `volumes`
// must hold exactly the window of daily volumes immediately preceding the
// target day, oldest first.
double rolling_log_mean(std::span<const double> window_volumes, double grubbs_alpha = 0.05);

// Innovation reconstruction for the excess series: eps[0] = y[0], then
// eps[t] = y[t] - (phi * y[t-1] + theta * eps[t-1]).
std::vector<double> arma_innovations(std::span<const double> y, double phi, double theta);

// One-step-ahead forecast phi * y_last + theta * eps_last.
double arma_forecast(std::span<const double> y, const ArmaParams& params);

// Deterministic two-stage grid search over (phi, theta) minimizing
// one-step-ahead ALE; prefers the origin on ties. Fewer than 60 observations
// yield the (0,0) prior-only fallback.
ArmaFit calibrate_arma(std::span<const double> y, const LossSpec& spec = {},
                       std::size_t burn_in = 10);

// ALE regression of excess log volume on special-day predictors (no
// intercept). Thin wrapper so callers fit through one entry point.
std::vector<double> special_day_regression(std::span<const double> y, const Matrix& predictors,
                                           const LossSpec& spec = {});

// Assembles the prior from the trailing window, the ARMA forecast on the
// excess series, and today's special-day features.
VolumePrior build_prior(std::span<const double> window_volumes,
                        std::span<const double> y_history, const ArmaParams& arma,
                        std::span<const double> betas, std::span<const double> today_features,
                        double grubbs_alpha = 0.05, double sigma0_floor = 0.0025);

} // namespace volquint
