#pragma once

#include "volquint/bayes.hpp"
#include "volquint/dates.hpp"
#include "volquint/ucurve.hpp"

#include <optional>
#include <string>

namespace volquint {

// Snapshot of the assembled prediction after `as_of_bin` completed bins.
// Interval/participation helpers index bin boundaries: 0 is the open, and
// boundary b means "b bins have elapsed", so bin_count is the close.
struct Forecast {
    std::string symbol;
    Date date;
    int as_of_bin = 0;
    ModelRoute route = ModelRoute::bin_model;

    double total_log = 0.0;      // posterior mean of log continuous volume
    double total = 0.0;          // exp(total_log)
    double traded = 0.0;         // realized continuous volume so far
    double remaining = 0.0;      // exp(total_log) * (1 - c_hat)
    double posterior_var = 0.0;
    double auction = 0.0;        // predicted close-auction volume
    bool deficit = false;        // posterior total fell below traded volume
    Curve c_hat;                 // curve in force after this bin
};

// e^mu * (1 - c_hat), c_hat in [0, 1].
double remaining_volume(double mu_t, double c_hat_t);

// Expected volume between boundaries t1 <= t2: the full-day estimate
// (remaining + traded) times the c difference.
double interval_volume(const Forecast& f, int t1, int t2);

// rho = order / V(t1, t2); throws when the window has no liquidity.
double expected_participation(double order, const Forecast& f, int t1, int t2);

// Smallest boundary t >= t1 with rho * V(t1, t) >= order, or nullopt when the
// order cannot complete by the close at that participation rate.
std::optional<int> end_time(double order, double rho, const Forecast& f, int t1);

// Assemble a Forecast from the component snapshots. `curve` is the refreshed
// curve after the bin; auction_prediction comes from the auction model.
Forecast assemble(const std::string& symbol, const Date& date, const IntradayState& state,
                  const Curve& curve, double auction_prediction);

} // namespace volquint
