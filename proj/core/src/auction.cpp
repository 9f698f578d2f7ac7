#include "volquint/auction.hpp"

#include "volquint/csv.hpp"
#include "volquint/errors.hpp"
#include "volquint/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace volquint {

bool is_triple_witching(const Date& date) {
    const int m = date.month();
    if (m != 3 && m != 6 && m != 9 && m != 12) return false;
    if (date.weekday() != 4) return false; // Friday
    const int dom = date.day();
    return dom >= 15 && dom <= 21; // third Friday
}

ExpiryCalendar ExpiryCalendar::from_csv(const std::string& path) {
    CsvReader csv(path);
    const std::size_t c_date = csv.column("date");
    ExpiryCalendar cal;
    cal.override_dates_.emplace();
    while (csv.next()) {
        Date d;
        try {
            d = Date::parse(csv.field(c_date));
        } catch (const DataError& e) {
            throw DataError("file '" + path + "' line " + std::to_string(csv.line()) + ": " +
                            e.what());
        }
        cal.override_dates_->insert(d.serial());
    }
    return cal;
}

bool ExpiryCalendar::is_expiry(const Date& date) const {
    if (override_dates_) return override_dates_->count(date.serial()) > 0;
    return is_triple_witching(date);
}

bool ExpiryCalendar::is_expiry(const DayRecord& day) const {
    return day.flags.optexp || is_expiry(day.date);
}

double AuctionModel::expiry_multiplier() const { return std::exp(beta_expiry); }

std::optional<double> rolling_log_auction_mean(std::span<const DayRecord> history_before,
                                               int window, bool exclude_expiry,
                                               const ExpiryCalendar& calendar) {
    std::vector<double> logs;
    for (auto it = history_before.rbegin();
         it != history_before.rend() && logs.size() < static_cast<std::size_t>(window); ++it) {
        if (!(it->auction_volume > 0.0)) continue; // halts / data gaps
        if (exclude_expiry && calendar.is_expiry(*it)) continue;
        logs.push_back(std::log(it->auction_volume));
    }
    if (logs.empty()) return std::nullopt;
    return mean(logs);
}

AuctionModel fit_auction_seasonality(std::span<const DayRecord> history,
                                     const ExpiryCalendar& calendar, int mean_window,
                                     bool exclude_expiry_from_mean) {
    if (history.size() < 60) {
        throw CalibrationError("fit_auction_seasonality: fewer than 60 days");
    }
    AuctionModel model;
    model.mean_window = mean_window;
    model.exclude_expiry_from_mean = exclude_expiry_from_mean;

    // Excess log auction volume on expiry days; the no-intercept dummy
    // regression reduces to this group mean.
    std::vector<double> excess_on_expiry;
    for (std::size_t i = 1; i < history.size(); ++i) {
        const DayRecord& day = history[i];
        if (!calendar.is_expiry(day)) continue;
        if (!(day.auction_volume > 0.0)) continue;
        auto mu = rolling_log_auction_mean(history.subspan(0, i), mean_window,
                                           exclude_expiry_from_mean, calendar);
        if (!mu) continue;
        excess_on_expiry.push_back(std::log(day.auction_volume) - *mu);
    }

    if (excess_on_expiry.empty()) {
        model.flagged = true;
        return model;
    }
    model.beta_expiry = mean(excess_on_expiry);
    return model;
}

double predict_auction(const AuctionModel& model, std::span<const DayRecord> history_before,
                       const Date& date, const ExpiryCalendar& calendar) {
    if (!history_before.empty() && history_before.back().date >= date) {
        throw std::invalid_argument("predict_auction: history must end before the target date");
    }
    auto mu = rolling_log_auction_mean(history_before, model.mean_window,
                                       model.exclude_expiry_from_mean, calendar);
    if (!mu) return 0.0;
    const double dummy = calendar.is_expiry(date) ? 1.0 : 0.0;
    return std::exp(*mu) * std::exp(model.beta_expiry * dummy);
}

double auction_allocation(double order_size, double predicted_auction) {
    if (order_size < 0.0 || predicted_auction < 0.0) {
        throw std::invalid_argument("auction_allocation: inputs must be non-negative");
    }
    return std::min(0.12 * predicted_auction, 0.12 * order_size);
}

} // namespace volquint
