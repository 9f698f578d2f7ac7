#pragma once

#include "volquint/marketdata.hpp"
#include "volquint/prior_daily.hpp"

#include <optional>
#include <span>
#include <vector>

namespace volquint {

struct GaussianPosterior {
    double mu_p = 0.0;
    double sigma_p_sq = 0.0;
    bool variance_floored = false;
};

// Conjugate prior/posterior for (mean, precision) of a normal likelihood.
struct NormalGammaParams {
    double mu = 0.0;
    double kappa = 1.0; // effective prior sample size
    double alpha = 1.0;
    double beta = 1.0;

    void validate() const; // kappa, alpha, beta strictly positive
    // Marginal Student-t moments of the mean.
    double marginal_mean() const { return mu; }
    double marginal_variance() const; // beta / (kappa * (alpha - 1)), alpha > 1
};

enum class ModelRoute { bin_model, cumulative_model };

const char* route_name(ModelRoute r);
ModelRoute route_from_name(std::string_view name);

// x(j) = log(v_j / u_hat_j). Zero-volume bins are the caller's business (the
// state machine skips them); u_hat must be positive.
double bin_observation(double v_j, double u_hat_j);

// Unknown-variance posterior mean: convex blend (mu0*kappa0 + n*xbar)/(kappa0+n).
double update_unknown_variance(double prior_mu, double kappa0, std::span<const double> obs);

// Known-variance posterior with sigma^2 = sample_var (floored).
GaussianPosterior update_known_variance(double prior_mu, double prior_var,
                                        std::span<const double> obs, double sample_var,
                                        double var_floor = 0.0025);

// Exact conjugate normal-gamma update for n observations.
NormalGammaParams normal_gamma_update(const NormalGammaParams& prior,
                                      std::span<const double> obs);

// z(i) = log(V_i / c_hat_i). Requires positive cumulative volume and c_hat.
double cumulative_observation(double cum_volume, double c_hat);

// Per-bin dispersion of the cumulative-model prediction error across days:
// population variance of z(n) - X over days with a valid z at bin n. Bins
// with fewer than min_days valid observations are marked uninformative
// (very large value) so the posterior falls back to the prior.
std::vector<double> dispersion_profile(const std::vector<std::vector<double>>& z_by_day,
                                       std::span<const double> log_totals,
                                       double floor_sq = 1e-4, std::size_t min_days = 20);

inline constexpr double kUninformativeDispersion = 1e6;

// Precision-weighted blend of the prior and a single cumulative observation.
GaussianPosterior update_cumulative(double prior_mu, double prior_var, double z_n,
                                    double omega_sq_n, double omega_floor = 1e-4);

// Liquid symbols keep the per-bin model; noisy/sparse ones go cumulative.
ModelRoute route_symbol(std::span<const BinSeries> window, double zero_bin_threshold = 0.05,
                        std::size_t min_days = 20);

struct IntradayConfig {
    double kappa0 = 10.0;               // effective prior sample size
    int min_bins_for_variance = 6;      // switch to the known-variance form here
    double sample_var_floor = 0.0025;   // (0.05)^2
    double omega_floor = 1e-4;          // (0.01)^2
    double zero_bin_reroute = 0.05;     // intraday re-route threshold
    std::size_t grubbs_cap = 2;         // max intraday x(j) removals
    double grubbs_alpha = 0.05;
};

// Sequential per-day state: feed bins in order, read the posterior after
// each. Owns the route (including the intraday re-route to the cumulative
// model when too many bins print zero).
class IntradayState {
public:
    IntradayState(const VolumePrior& prior, ModelRoute route, std::vector<double> omega_sq,
                  IntradayConfig cfg = {});

    // Observe completed bin j with continuous volume v. u_hat_j / c_hat_j are
    // the curve estimates that were in force before the bin printed.
    void observe_bin(int j, double v, double u_hat_j, double c_hat_j);

    GaussianPosterior posterior() const;
    double mu() const { return posterior().mu_p; }

    ModelRoute route() const { return route_; }
    bool rerouted() const { return rerouted_; }
    int bins_seen() const { return bins_seen_; }
    int zero_bins() const { return zero_bins_; }
    double cum_volume() const { return cum_volume_; }
    std::span<const double> bin_estimates() const { return xs_; }

private:
    VolumePrior prior_;
    ModelRoute route_;
    bool rerouted_ = false;
    std::vector<double> omega_sq_;
    IntradayConfig cfg_;

    std::vector<double> xs_; // valid bin observations (bin route)
    int bins_seen_ = 0;
    int zero_bins_ = 0;
    double cum_volume_ = 0.0;
    std::optional<double> last_z_;
    int last_z_bin_ = -1;
};

} // namespace volquint
