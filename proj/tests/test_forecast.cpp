#include "volquint/forecast.hpp"

#include "volquint/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace volquint;

namespace {

Curve uniform_c(int bins) {
    Curve c;
    c.kind = CurveKind::c;
    for (int t = 1; t <= bins; ++t) c.values.push_back(static_cast<double>(t) / bins);
    c.values.back() = 1.0;
    return c;
}

Forecast make_forecast(double total, double traded, int as_of, const Curve& c) {
    Forecast f;
    f.symbol = "T";
    f.date = Date(2021, 1, 4);
    f.as_of_bin = as_of;
    f.total_log = std::log(total);
    f.total = total;
    f.traded = traded;
    f.c_hat = c;
    f.remaining = remaining_volume(f.total_log, c.at_boundary(as_of));
    return f;
}

} // namespace

TEST_CASE("remaining volume formula") {
    CHECK(remaining_volume(std::log(1e6), 0.4) == doctest::Approx(600'000.0).epsilon(1e-12));
    CHECK(remaining_volume(std::log(1e6), 1.0) == 0.0);
    CHECK(remaining_volume(std::log(1e6), 0.0) == doctest::Approx(1e6).epsilon(1e-12));
    CHECK_THROWS_AS(remaining_volume(10.0, 1.5), std::invalid_argument);
}

TEST_CASE("interval volume uses the full-day estimate") {
    auto c = uniform_c(39);
    // Before the open: remaining equals the whole estimate.
    auto f = make_forecast(1e6, 0.0, 0, c);

    CHECK(interval_volume(f, 3, 3) == 0.0);
    CHECK(interval_volume(f, 0, 39) == doctest::Approx(1e6).epsilon(1e-9));
    // First ten bins of the uniform curve.
    const double opening = interval_volume(f, 0, 10);
    CHECK(opening == doctest::Approx(1e6 * 10.0 / 39.0).epsilon(1e-9));
    CHECK_THROWS_AS(interval_volume(f, 5, 3), std::invalid_argument);
    CHECK_THROWS_AS(interval_volume(f, 0, 40), std::invalid_argument);

    // Day estimate 1e6 with a c difference of 0.25 -> 250k.
    Curve shaped;
    shaped.kind = CurveKind::c;
    shaped.values = {0.25, 0.5, 0.75, 1.0};
    auto g = make_forecast(1e6, 0.0, 0, shaped);
    CHECK(interval_volume(g, 1, 2) == doctest::Approx(250'000.0).epsilon(1e-9));
}

TEST_CASE("interval volume is additive across adjacent windows") {
    auto c = uniform_c(39);
    auto f = make_forecast(2.5e6, 4e5, 7, c);
    for (int t1 = 0; t1 < 35; t1 += 3) {
        for (int t2 = t1; t2 < 37; t2 += 2) {
            for (int t3 = t2; t3 <= 39; t3 += 5) {
                const double lhs = interval_volume(f, t1, t2) + interval_volume(f, t2, t3);
                const double rhs = interval_volume(f, t1, t3);
                CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(rhs)));
            }
        }
    }
}

TEST_CASE("expected participation") {
    auto c = uniform_c(39);
    auto f = make_forecast(1e6, 0.0, 0, c);
    const double v = interval_volume(f, 0, 20);
    CHECK(expected_participation(0.1 * v, f, 0, 20) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(expected_participation(v, f, 0, 20) == doctest::Approx(1.0).epsilon(1e-12));
    // Linearity in the order size.
    CHECK(expected_participation(2.0 * 0.1 * v, f, 0, 20) ==
          doctest::Approx(0.2).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(expected_participation(10.0, f, 5, 5),
                         doctest::Contains("no liquidity"), std::invalid_argument);
}

TEST_CASE("end time scans the grid") {
    auto c = uniform_c(39);
    auto f = make_forecast(1e6, 0.0, 0, c);

    // rho = 0.1, order 25k on a 1e6 uniform day: need c >= 0.25, reached
    // after the 10th bin (boundary 10 of 39).
    auto t2 = end_time(25'000.0, 0.1, f, 0);
    REQUIRE(t2.has_value());
    CHECK(*t2 == 10);

    // Exactly the close boundary.
    const double full = interval_volume(f, 0, 39);
    auto close = end_time(0.1 * full, 0.1, f, 0);
    REQUIRE(close.has_value());
    CHECK(*close == 39);

    // More than the day can offer at that participation.
    CHECK_FALSE(end_time(0.1 * full * 1.01, 0.1, f, 0).has_value());
    CHECK_THROWS_AS(end_time(10.0, 0.0, f, 0), std::invalid_argument);
    CHECK_THROWS_AS(end_time(10.0, 1.5, f, 0), std::invalid_argument);
}

TEST_CASE("end time is consistent with expected participation") {
    auto c = uniform_c(39);
    auto f = make_forecast(1.3e6, 2e5, 5, c);
    const double rho = 0.17;
    for (double order : {1e4, 5e4, 1.2e5}) {
        auto t2 = end_time(order, rho, f, 5);
        if (!t2) continue;
        const double achieved = expected_participation(order, f, 5, *t2);
        CHECK(achieved <= rho + 1e-12);
        if (*t2 > 6) {
            // One boundary earlier the order would not have fit.
            CHECK(expected_participation(order, f, 5, *t2 - 1) > rho);
        }
    }
}

TEST_CASE("assemble flags a posterior that falls below traded volume") {
    VolumePrior prior;
    prior.mu0 = std::log(1000.0);
    prior.sigma0_sq = 0.04;
    // Uninformative dispersion pins the posterior at the (tiny) prior while
    // volume keeps printing.
    std::vector<double> omega(10, 1e9);
    IntradayState state(prior, ModelRoute::cumulative_model, omega);
    auto c = uniform_c(10);
    for (int j = 0; j < 5; ++j) state.observe_bin(j, 10'000.0, 0.1, 0.1 * (j + 1));

    auto f = assemble("T", Date(2021, 1, 4), state, c, 0.0);
    CHECK(f.traded == doctest::Approx(50'000.0));
    CHECK(f.total < f.traded);
    CHECK(f.deficit);
    CHECK(f.remaining >= 0.0);
}

TEST_CASE("before the first bin the forecast is the prior") {
    VolumePrior prior;
    prior.mu0 = std::log(1e6);
    prior.sigma0_sq = 0.04;
    IntradayState state(prior, ModelRoute::bin_model, {});
    auto c = uniform_c(39);
    auto f = assemble("T", Date(2021, 1, 4), state, c, 70'000.0);
    CHECK(f.as_of_bin == 0);
    CHECK(f.total == doctest::Approx(1e6).epsilon(1e-12));
    CHECK(f.remaining == doctest::Approx(f.total).epsilon(1e-12)); // c(0) = 0
    CHECK(f.traded == 0.0);
    CHECK(f.auction == doctest::Approx(70'000.0));
    CHECK_FALSE(f.deficit);
}

TEST_CASE("remaining plus traded equals the total when the curve matches") {
    // When c-hat equals the realized traded fraction, the remaining-volume
    // formula decomposes the posterior total exactly.
    auto c = uniform_c(10);
    const double total = 2e6;
    for (int b = 0; b <= 10; ++b) {
        const double traded = total * c.at_boundary(b);
        auto f = make_forecast(total, traded, b, c);
        CHECK(f.remaining + f.traded == doctest::Approx(total).epsilon(1e-12));
        CHECK_FALSE(f.deficit);
    }
}
