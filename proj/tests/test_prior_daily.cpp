#include "volquint/prior_daily.hpp"

#include "volquint/errors.hpp"
#include "volquint/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace volquint;

TEST_CASE("rolling log mean on constant and arithmetic windows") {
    std::vector<double> constant(20, 1e6);
    CHECK(rolling_log_mean(constant) == doctest::Approx(std::log(1e6)).epsilon(1e-12));

    // logs 1..20 -> mean 10.5.
    std::vector<double> expseq;
    for (int i = 1; i <= 20; ++i) expseq.push_back(std::exp(static_cast<double>(i)));
    CHECK(rolling_log_mean(expseq) == doctest::Approx(10.5).epsilon(1e-12));
}

TEST_CASE("rolling log mean shrugs off a 100x outlier day") {
    CounterRng rng(21);
    std::vector<double> window;
    for (int i = 0; i < 20; ++i) {
        window.push_back(1e6 * std::exp(0.1 * rng.normal(0, static_cast<uint64_t>(i))));
    }
    std::vector<double> clean = window;
    window[10] *= 100.0;

    const double with_outlier = rolling_log_mean(window);
    const double outlier_free = rolling_log_mean(clean);
    CHECK(std::fabs(with_outlier - outlier_free) < 0.05);
    // Unfiltered mean would shift by ln(100)/20 ~ 0.23.
    std::vector<double> logs;
    for (double v : window) logs.push_back(std::log(v));
    CHECK(std::fabs(mean(logs) - outlier_free) > 0.15);
}

TEST_CASE("arma forecast substitution and null model") {
    // phi = 0.7, theta = -0.3, y_last = 1, eps_last = 1 -> 0.4.
    // A one-point history makes eps[0] = y[0] = 1.
    ArmaParams params{0.7, -0.3, 0.0};
    std::vector<double> y{1.0};
    CHECK(arma_forecast(y, params) == doctest::Approx(0.4).epsilon(1e-12));

    ArmaParams null_params{0.0, 0.0, 0.0};
    std::vector<double> anything{0.3, -0.2, 0.9};
    CHECK(arma_forecast(anything, null_params) == 0.0);

    CHECK_THROWS_AS(arma_forecast(std::vector<double>{}, params), std::invalid_argument);
    CHECK_THROWS_AS(arma_forecast(y, ArmaParams{1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("AR component decays a unit impulse geometrically") {
    // With theta = 0 a unit innovation at t echoes as phi, phi^2, ...
    const double phi = 0.6;
    std::vector<double> y{0.0, 1.0}; // shock arrives at the second step
    for (int k = 0; k < 4; ++k) {
        ArmaParams params{phi, 0.0, 0.0};
        const double next = arma_forecast(y, params);
        CHECK(next == doctest::Approx(phi * y.back()).epsilon(1e-12));
        y.push_back(next);
    }
    // Forecast path after the shock: phi, phi^2, phi^3 ...
    CHECK(y[2] == doctest::Approx(phi).epsilon(1e-12));
    CHECK(y[3] == doctest::Approx(phi * phi).epsilon(1e-12));
    CHECK(y[4] == doctest::Approx(phi * phi * phi).epsilon(1e-12));
}

TEST_CASE("MA component reacts for exactly one step") {
    const double theta = -0.3;
    ArmaParams params{0.0, theta, 0.0};
    // After a single unit shock the one-step forecast is theta; the step
    // after (shock absorbed, innovation back to zero) it returns to 0.
    std::vector<double> y{1.0};
    CHECK(arma_forecast(y, params) == doctest::Approx(theta).epsilon(1e-12));
    y.push_back(theta); // realized exactly as forecast, so eps_2 = 0
    CHECK(arma_forecast(y, params) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("arma calibration recovers planted coefficients") {
    auto y = oracles::arma_path(2000, 0.7, -0.3, 0.4, /*seed=*/101);
    auto fit = calibrate_arma(y);
    CHECK_FALSE(fit.prior_only);
    CHECK(std::fabs(fit.params.phi - 0.7) < 0.1);
    CHECK(std::fabs(fit.params.theta - (-0.3)) < 0.15);
    CHECK(std::fabs(fit.params.phi) < 0.95);
}

TEST_CASE("arma calibration on white noise stays near the origin") {
    auto y = oracles::arma_path(2000, 0.0, 0.0, 0.4, /*seed=*/202);
    auto fit = calibrate_arma(y);
    CHECK(std::fabs(fit.params.phi) <= 0.1);
    CHECK(std::fabs(fit.params.theta) <= 0.1);
}

TEST_CASE("arma calibration degenerate inputs") {
    std::vector<double> zeros(100, 0.0);
    auto fit = calibrate_arma(zeros);
    CHECK(fit.params.phi == 0.0);
    CHECK(fit.params.theta == 0.0);

    std::vector<double> tiny(10, 0.1);
    auto fallback = calibrate_arma(tiny);
    CHECK(fallback.prior_only);
    CHECK(fallback.params.phi == 0.0);
}

TEST_CASE("arma forecast of the zero sequence is zero for any parameters") {
    std::vector<double> zeros(50, 0.0);
    for (double phi : {-0.8, 0.0, 0.5, 0.9}) {
        for (double theta : {-0.5, 0.0, 0.4}) {
            CHECK(arma_forecast(zeros, ArmaParams{phi, theta, 0.0}) == 0.0);
        }
    }
}

TEST_CASE("special day regression recovers a planted gap beta") {
    CounterRng rng(33);
    const std::size_t n = 700;
    Matrix X(n, 1);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double g = rng.normal(0, i);
        X(i, 0) = g;
        y[i] = 0.3 * g + 0.25 * rng.normal(1, i);
    }
    auto betas = special_day_regression(y, X);
    CHECK(betas[0] == doctest::Approx(0.3).epsilon(0.05 / 0.3));
}

TEST_CASE("special day regression: zero dummies and earnings group mean") {
    const std::size_t n = 200;

    // All-zero predictors are rank deficient by construction.
    Matrix zeros(n, 1);
    std::vector<double> y(n, 0.0);
    CHECK_THROWS_AS(special_day_regression(y, zeros), CalibrationError);

    // Earnings dummy with y = ln 2 on earnings days recovers beta = ln 2
    // exactly under a symmetric loss (dummy OLS equals the group mean).
    Matrix dummy(n, 1);
    std::vector<double> y2(n, 0.0);
    for (std::size_t i = 0; i < n; i += 10) {
        dummy(i, 0) = 1.0;
        y2[i] = std::log(2.0);
    }
    LossSpec sym{1.0, 1.0, 2};
    auto betas = special_day_regression(y2, dummy, sym);
    CHECK(betas[0] == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("build_prior reduces to the geometric mean") {
    CounterRng rng(44);
    std::vector<double> window;
    for (int i = 0; i < 20; ++i) {
        window.push_back(1e6 * std::exp(0.3 * rng.normal(0, static_cast<uint64_t>(i))));
    }
    auto prior = build_prior(window, {}, ArmaParams{}, {}, {});
    auto filtered = grubbs_filter([&] {
        std::vector<double> logs;
        for (double v : window) logs.push_back(std::log(v));
        return logs;
    }());
    std::vector<double> kept_volumes;
    for (double lg : filtered.kept) kept_volumes.push_back(std::exp(lg));
    // exp(mean(log .)) over the same filtered window, bit for bit.
    CHECK(prior.mean_volume() == geometric_mean(kept_volumes));
    CHECK(prior.multiplier == 1.0);
}

TEST_CASE("build_prior applies the gap multiplier") {
    std::vector<double> window(20, 1e6);
    std::vector<double> betas{0.3};
    std::vector<double> features{2.0};
    auto prior = build_prior(window, {}, ArmaParams{}, betas, features);
    CHECK(prior.multiplier == doctest::Approx(std::exp(0.6)).epsilon(1e-12));
    CHECK(prior.multiplier == doctest::Approx(1.8221).epsilon(1e-4));
    CHECK(prior.mean_volume() ==
          doctest::Approx(1e6 * std::exp(0.6)).epsilon(1e-9));
    CHECK(prior.multiplier > 0.0);
}

TEST_CASE("build_prior floors a degenerate variance") {
    std::vector<double> window(20, 1e6);
    auto prior = build_prior(window, {}, ArmaParams{}, {}, {});
    CHECK(prior.variance_floored);
    CHECK(prior.sigma0_sq == doctest::Approx(0.0025));
}

TEST_CASE("multiplier stays positive for extreme features") {
    std::vector<double> window(20, 1e6);
    std::vector<double> betas{0.5, -0.4};
    for (double g : {-30.0, -1.0, 0.0, 4.0, 50.0}) {
        std::vector<double> features{g, -g};
        auto prior = build_prior(window, {}, ArmaParams{}, betas, features);
        CHECK(prior.multiplier > 0.0);
        CHECK(std::isfinite(prior.multiplier));
    }
}
