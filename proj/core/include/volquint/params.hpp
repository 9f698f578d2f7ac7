#pragma once

#include "volquint/auction.hpp"
#include "volquint/bayes.hpp"
#include "volquint/prior_daily.hpp"
#include "volquint/ucurve.hpp"

#include <string>
#include <vector>

namespace volquint {

struct FitDiagnostics {
    std::size_t days = 0;
    std::size_t arma_obs = 0;
    double arma_loss = 0.0;
    std::size_t curve_days = 0;
    std::size_t special_rows = 0;
    std::size_t expiry_days = 0;
    double zero_bin_fraction = 0.0;
};

// Everything replay needs for one symbol, as produced by calibration.
struct CalibratedParams {
    int schema_version = 1;
    std::string symbol;
    int bin_count = 39;
    double kappa0 = 10.0;

    // Daily prior.
    int prior_window = 20;
    ArmaParams arma;
    bool arma_prior_only = false;
    std::vector<std::string> special_names;
    std::vector<double> special_betas;
    bool special_pooled = false;

    // Intraday curve.
    Curve base_curve;      // c-kind
    FunctionalBetas curve_betas;
    bool curve_fitted = false;

    // Close auction.
    AuctionModel auction;

    // Routing and cumulative-model dispersion.
    ModelRoute route = ModelRoute::cumulative_model;
    std::vector<double> omega_sq;

    FitDiagnostics diag;
};

std::string params_to_json(const CalibratedParams& p);
CalibratedParams params_from_json(const std::string& text);

void save_params(const std::string& dir, const CalibratedParams& p);
CalibratedParams load_params_file(const std::string& path);
CalibratedParams load_params(const std::string& dir, const std::string& symbol);

} // namespace volquint
