#pragma once

// Independent oracles used by the unit and acceptance suites. Everything here
// is deliberately brute force (grid integration, direct enumeration,
// closed-form text-book solutions) and shares no code with the library paths
// it checks.

#include "volquint/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace oracles {

inline double mean_of(std::span<const double> xs) {
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// ---------------------------------------------------------------------------
// Grid integration of Bayes' rule for the known-variance normal model.
// posterior(mu) ~ exp(-n (xbar - mu)^2 / (2 sigma^2)) * exp(-(mu - mu0)^2 / (2 sigma0^2))
// ---------------------------------------------------------------------------
struct PosteriorMoments {
    double mean = 0;
    double variance = 0;
};

inline PosteriorMoments grid_known_variance(double mu0, double var0,
                                            std::span<const double> obs, double sigma_sq,
                                            std::size_t points = 20001) {
    const double n = static_cast<double>(obs.size());
    const double xbar = mean_of(obs);
    // Closed-form center only guides the integration range; moments come from
    // the numeric integral itself.
    const double prec = n / sigma_sq + 1.0 / var0;
    const double center = (n * xbar / sigma_sq + mu0 / var0) / prec;
    const double spread = std::sqrt(1.0 / prec);
    const double lo = center - 12.0 * spread;
    const double hi = center + 12.0 * spread;
    const double h = (hi - lo) / static_cast<double>(points - 1);

    double z = 0, m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < points; ++i) {
        const double mu = lo + h * static_cast<double>(i);
        double log_post = -n * (xbar - mu) * (xbar - mu) / (2.0 * sigma_sq) -
                          (mu - mu0) * (mu - mu0) / (2.0 * var0);
        const double w = (i == 0 || i + 1 == points) ? 0.5 : 1.0; // trapezoid
        const double p = w * std::exp(log_post);
        z += p;
        m1 += p * mu;
        m2 += p * mu * mu;
    }
    PosteriorMoments out;
    out.mean = m1 / z;
    out.variance = m2 / z - out.mean * out.mean;
    return out;
}

// ---------------------------------------------------------------------------
// 2-D grid integration for the normal-gamma model: posterior over (mu,
// lambda) proportional to likelihood(obs | mu, lambda) * NG(mu, lambda |
// mu0, kappa0, alpha0, beta0). Returns marginal moments of mu.
// ---------------------------------------------------------------------------
struct NormalGammaMoments {
    double mean_mu = 0;
    double var_mu = 0;
    double mean_lambda = 0;
};

inline NormalGammaMoments grid_normal_gamma(double mu0, double kappa0, double alpha0,
                                            double beta0, std::span<const double> obs,
                                            std::size_t mu_points = 801,
                                            std::size_t lambda_points = 1201) {
    const double n = static_cast<double>(obs.size());
    const double xbar = mean_of(obs);
    double ss = 0;
    for (double x : obs) ss += (x - xbar) * (x - xbar);

    // For fixed lambda the joint kernel is Gaussian in mu with center
    // independent of lambda and width 1 / sqrt((kappa0 + n) lambda), so each
    // lambda slice gets its own mu window. This keeps the heavy lambda->0
    // tail of the marginal fully covered. Slice geometry is plain algebra on
    // the exponent, not a conjugacy assumption.
    const double mu_center = (n * xbar + kappa0 * mu0) / (n + kappa0);

    // Log-spaced lambda grid: the transformed integrand decays exponentially
    // at both ends, where the trapezoid rule converges spectrally. The plain
    // linear grid loses digits to the fractional-power behavior at the
    // lambda -> 0 boundary.
    const double alpha_n = alpha0 + n / 2.0;
    const double beta_n =
        beta0 + 0.5 * ss + kappa0 * n * (xbar - mu0) * (xbar - mu0) / (2.0 * (kappa0 + n));
    const double lambda_peak = alpha_n / beta_n;
    const double t_lo = std::log(lambda_peak) - 45.0 / std::max(0.5, alpha_n - 1.0) - 2.0;
    const double t_hi = std::log((alpha_n + 40.0 * std::sqrt(alpha_n) + 40.0) / beta_n);
    const double ht = (t_hi - t_lo) / static_cast<double>(lambda_points - 1);

    double z = 0, m1 = 0, m2 = 0, ml = 0;
    for (std::size_t j = 0; j < lambda_points; ++j) {
        const double t = t_lo + ht * static_cast<double>(j);
        const double lambda = std::exp(t);
        const double wj = ((j == 0 || j + 1 == lambda_points) ? 0.5 : 1.0) * lambda; // jacobian
        const double sigma_mu = 1.0 / std::sqrt((n + kappa0) * lambda);
        const double mu_lo = mu_center - 12.0 * sigma_mu;
        const double hmu = 24.0 * sigma_mu / static_cast<double>(mu_points - 1);

        // log-kernel pieces independent of mu.
        const double base = (0.5 * n + alpha0 - 0.5) * std::log(lambda) - beta0 * lambda -
                            0.5 * lambda * ss;
        double sz = 0, sm1 = 0, sm2 = 0;
        for (std::size_t i = 0; i < mu_points; ++i) {
            const double mu = mu_lo + hmu * static_cast<double>(i);
            const double lk = base -
                              0.5 * lambda * n * (mu - xbar) * (mu - xbar) -
                              0.5 * kappa0 * lambda * (mu - mu0) * (mu - mu0);
            const double wi = (i == 0 || i + 1 == mu_points) ? 0.5 : 1.0;
            const double p = wi * std::exp(lk);
            sz += p;
            sm1 += p * mu;
            sm2 += p * mu * mu;
        }
        const double slice = sz * hmu * wj * ht;
        z += slice;
        m1 += sm1 * hmu * wj * ht;
        m2 += sm2 * hmu * wj * ht;
        ml += slice * lambda;
    }
    NormalGammaMoments out;
    out.mean_mu = m1 / z;
    out.var_mu = m2 / z - out.mean_mu * out.mean_mu;
    out.mean_lambda = ml / z;
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form OLS through a different factorization than the library path.
// ---------------------------------------------------------------------------
std::vector<double> ols_reference(std::span<const double> y, std::size_t rows, std::size_t cols,
                                  std::span<const double> X_rowmajor);

// Empirical tau-quantile (linear interpolation between order statistics).
inline double quantile_reference(std::vector<double> xs, double tau) {
    std::sort(xs.begin(), xs.end());
    const double pos = tau * (static_cast<double>(xs.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

// ARMA(1,1) path generator used as the calibration-recovery oracle.
inline std::vector<double> arma_path(std::size_t n, double phi, double theta, double sigma,
                                     uint64_t seed, std::size_t burn = 50) {
    volquint::CounterRng rng(seed);
    std::vector<double> y;
    y.reserve(n);
    double y_prev = 0, eps_prev = 0;
    for (std::size_t t = 0; t < n + burn; ++t) {
        const double eps = sigma * rng.normal(/*stream=*/11, t);
        const double y_t = phi * y_prev + eps + theta * eps_prev;
        if (t >= burn) y.push_back(y_t);
        y_prev = y_t;
        eps_prev = eps;
    }
    return y;
}

} // namespace oracles
