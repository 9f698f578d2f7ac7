#include "volquint/forecast.hpp"

#include "volquint/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace volquint {

double remaining_volume(double mu_t, double c_hat_t) {
    if (c_hat_t < 0.0 || c_hat_t > 1.0) {
        throw std::invalid_argument("remaining_volume: c_hat must lie in [0, 1]");
    }
    return std::exp(mu_t) * (1.0 - c_hat_t);
}

double interval_volume(const Forecast& f, int t1, int t2) {
    if (t1 > t2) throw std::invalid_argument("interval_volume: t1 must not exceed t2");
    const double day_estimate = f.remaining + f.traded;
    return day_estimate * (f.c_hat.at_boundary(t2) - f.c_hat.at_boundary(t1));
}

double expected_participation(double order, const Forecast& f, int t1, int t2) {
    const double v = interval_volume(f, t1, t2);
    if (!(v > 0.0)) throw std::invalid_argument("no liquidity in window");
    return order / v;
}

std::optional<int> end_time(double order, double rho, const Forecast& f, int t1) {
    if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("end_time: rho must be in (0, 1]");
    if (order < 0.0) throw std::invalid_argument("end_time: negative order");
    const int close = static_cast<int>(f.c_hat.values.size());
    for (int t = t1; t <= close; ++t) {
        if (rho * interval_volume(f, t1, t) >= order) return t;
    }
    return std::nullopt;
}

Forecast assemble(const std::string& symbol, const Date& date, const IntradayState& state,
                  const Curve& curve, double auction_prediction) {
    curve.validate();
    Forecast f;
    f.symbol = symbol;
    f.date = date;
    f.as_of_bin = state.bins_seen();
    f.route = state.route();

    const GaussianPosterior post = state.posterior();
    f.total_log = post.mu_p;
    f.total = std::exp(post.mu_p);
    f.posterior_var = post.sigma_p_sq;
    f.traded = state.cum_volume();
    f.remaining = remaining_volume(post.mu_p, curve.at_boundary(f.as_of_bin));
    f.auction = auction_prediction;
    f.c_hat = curve;
    // The posterior can land below what has already printed when the curve
    // misestimates the traded fraction; surface it instead of clamping.
    f.deficit = f.total < f.traded;
    return f;
}

} // namespace volquint
