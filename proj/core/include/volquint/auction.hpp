#pragma once

#include "volquint/marketdata.hpp"

#include <optional>
#include <set>
#include <span>
#include <string>

namespace volquint {

// True iff `date` is the third Friday of March, June, September or December.
bool is_triple_witching(const Date& date);

// Option-expiration calendar: the triple-witching rule by default, or an
// explicit date list loaded from a `date,label` CSV (non-U.S. markets).
// A day's optexp flag also marks it as an expiry.
class ExpiryCalendar {
public:
    ExpiryCalendar() = default;
    static ExpiryCalendar from_csv(const std::string& path);

    bool is_expiry(const Date& date) const;
    bool is_expiry(const DayRecord& day) const;

private:
    std::optional<std::set<int32_t>> override_dates_;
};

struct AuctionModel {
    double beta_expiry = 0.0; // expiry-dummy coefficient on excess log auction volume
    bool flagged = false;     // no expiry days were available to fit
    int mean_window = 20;
    bool exclude_expiry_from_mean = false;

    double expiry_multiplier() const; // exp(beta_expiry)
};

// Rolling mean of log auction volume over the previous `window` usable days
// (zero-auction days are skipped; expiry days optionally excluded). Returns
// nullopt when no usable day exists.
std::optional<double> rolling_log_auction_mean(std::span<const DayRecord> history_before,
                                               int window, bool exclude_expiry,
                                               const ExpiryCalendar& calendar);

// Regression of excess log auction volume on the expiry dummy (no
// intercept): beta equals the mean excess over expiry days.
AuctionModel fit_auction_seasonality(std::span<const DayRecord> history,
                                     const ExpiryCalendar& calendar, int mean_window = 20,
                                     bool exclude_expiry_from_mean = false);

// exp(rolling log mean) * exp(beta * dummy). history_before must end strictly
// before `date`.
double predict_auction(const AuctionModel& model, std::span<const DayRecord> history_before,
                       const Date& date, const ExpiryCalendar& calendar);

// The 12-percent rule: min(0.12 * predicted auction, 0.12 * order).
double auction_allocation(double order_size, double predicted_auction);

} // namespace volquint
