#include "volquint/bayes.hpp"

#include "volquint/errors.hpp"
#include "volquint/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace volquint {

void NormalGammaParams::validate() const {
    if (!(kappa > 0.0) || !(alpha > 0.0) || !(beta > 0.0)) {
        throw std::invalid_argument("normal-gamma parameters must be strictly positive");
    }
}

double NormalGammaParams::marginal_variance() const {
    if (!(alpha > 1.0)) throw std::invalid_argument("marginal variance needs alpha > 1");
    return beta / (kappa * (alpha - 1.0));
}

const char* route_name(ModelRoute r) {
    return r == ModelRoute::bin_model ? "bin_model" : "cumulative_model";
}

ModelRoute route_from_name(std::string_view name) {
    if (name == "bin_model") return ModelRoute::bin_model;
    if (name == "cumulative_model") return ModelRoute::cumulative_model;
    throw ConfigError("unknown route '" + std::string(name) + "'");
}

double bin_observation(double v_j, double u_hat_j) {
    if (!(u_hat_j > 0.0)) throw std::invalid_argument("bin_observation: u_hat must be positive");
    if (!(v_j > 0.0)) throw std::invalid_argument("bin_observation: zero-volume bin is skipped");
    return std::log(v_j / u_hat_j);
}

double update_unknown_variance(double prior_mu, double kappa0, std::span<const double> obs) {
    if (!(kappa0 > 0.0)) throw std::invalid_argument("kappa0 must be positive");
    const double n = static_cast<double>(obs.size());
    if (obs.empty()) return prior_mu;
    const double xbar = mean(obs);
    return (prior_mu * kappa0 + n * xbar) / (kappa0 + n);
}

GaussianPosterior update_known_variance(double prior_mu, double prior_var,
                                        std::span<const double> obs, double sample_var,
                                        double var_floor) {
    if (!(prior_var > 0.0)) throw std::invalid_argument("prior variance must be positive");
    GaussianPosterior post;
    if (obs.empty()) {
        post.mu_p = prior_mu;
        post.sigma_p_sq = prior_var;
        return post;
    }
    double var = sample_var;
    if (var < var_floor) {
        var = var_floor;
        post.variance_floored = true;
    }
    const double n = static_cast<double>(obs.size());
    const double xbar = mean(obs);
    const double prec = n / var + 1.0 / prior_var;
    post.mu_p = (n * xbar / var + prior_mu / prior_var) / prec;
    post.sigma_p_sq = 1.0 / prec;
    return post;
}

NormalGammaParams normal_gamma_update(const NormalGammaParams& prior,
                                      std::span<const double> obs) {
    prior.validate();
    if (obs.empty()) return prior;
    const double n = static_cast<double>(obs.size());
    const double xbar = mean(obs);
    double ss = 0.0;
    for (double x : obs) ss += (x - xbar) * (x - xbar);

    NormalGammaParams post;
    post.mu = (prior.mu * prior.kappa + n * xbar) / (prior.kappa + n);
    post.kappa = prior.kappa + n;
    post.alpha = prior.alpha + n / 2.0;
    post.beta = prior.beta + 0.5 * ss +
                prior.kappa * n * (xbar - prior.mu) * (xbar - prior.mu) /
                    (2.0 * (prior.kappa + n));
    return post;
}

double cumulative_observation(double cum_volume, double c_hat) {
    if (!(c_hat > 0.0)) throw std::invalid_argument("cumulative_observation: c_hat must be positive");
    if (!(cum_volume > 0.0)) {
        throw std::invalid_argument("cumulative_observation: zero cumulative volume is deferred");
    }
    return std::log(cum_volume / c_hat);
}

std::vector<double> dispersion_profile(const std::vector<std::vector<double>>& z_by_day,
                                       std::span<const double> log_totals, double floor_sq,
                                       std::size_t min_days) {
    if (z_by_day.size() != log_totals.size()) {
        throw std::invalid_argument("dispersion_profile: day count mismatch");
    }
    if (z_by_day.size() < min_days) {
        throw CalibrationError("dispersion_profile: fewer than " + std::to_string(min_days) +
                               " days");
    }
    const std::size_t nbins = z_by_day.front().size();
    std::vector<double> omega(nbins, kUninformativeDispersion);
    std::vector<double> diffs;
    for (std::size_t t = 0; t < nbins; ++t) {
        diffs.clear();
        for (std::size_t i = 0; i < z_by_day.size(); ++i) {
            if (z_by_day[i].size() != nbins) {
                throw std::invalid_argument("dispersion_profile: ragged z series");
            }
            const double z = z_by_day[i][t];
            if (std::isfinite(z)) diffs.push_back(z - log_totals[i]);
        }
        if (diffs.size() >= min_days) {
            omega[t] = std::max(population_variance(diffs), floor_sq);
        }
    }
    return omega;
}

GaussianPosterior update_cumulative(double prior_mu, double prior_var, double z_n,
                                    double omega_sq_n, double omega_floor) {
    if (!(prior_var > 0.0)) throw std::invalid_argument("prior variance must be positive");
    GaussianPosterior post;
    double omega = omega_sq_n;
    if (omega < omega_floor) {
        omega = omega_floor;
        post.variance_floored = true;
    }
    const double prec = 1.0 / prior_var + 1.0 / omega;
    post.mu_p = (prior_mu / prior_var + z_n / omega) / prec;
    post.sigma_p_sq = 1.0 / prec;
    return post;
}

ModelRoute route_symbol(std::span<const BinSeries> window, double zero_bin_threshold,
                        std::size_t min_days) {
    if (window.size() < min_days) return ModelRoute::cumulative_model;
    std::size_t zeros = 0, total = 0;
    for (const auto& day : window) {
        zeros += day.zero_bins();
        total += day.volumes.size();
    }
    if (total == 0) return ModelRoute::cumulative_model;
    const double frac = static_cast<double>(zeros) / static_cast<double>(total);
    return frac > zero_bin_threshold ? ModelRoute::cumulative_model : ModelRoute::bin_model;
}

IntradayState::IntradayState(const VolumePrior& prior, ModelRoute route,
                             std::vector<double> omega_sq, IntradayConfig cfg)
    : prior_(prior), route_(route), omega_sq_(std::move(omega_sq)), cfg_(cfg) {
    if (!(prior_.sigma0_sq > 0.0)) {
        throw std::invalid_argument("IntradayState: prior variance must be positive");
    }
}

void IntradayState::observe_bin(int j, double v, double u_hat_j, double c_hat_j) {
    if (j != bins_seen_) {
        throw std::invalid_argument("IntradayState: bins must be observed in order");
    }
    if (v < 0.0) throw std::invalid_argument("IntradayState: negative bin volume");
    ++bins_seen_;
    cum_volume_ += v;

    if (v == 0.0) {
        ++zero_bins_;
    } else if (route_ == ModelRoute::bin_model && u_hat_j > 0.0) {
        // A zero-width curve bin carries no usable profile information;
        // the print still counts toward the cumulative observation below.
        xs_.push_back(bin_observation(v, u_hat_j));
    }

    if (cum_volume_ > 0.0 && c_hat_j > 0.0) {
        last_z_ = cumulative_observation(cum_volume_, c_hat_j);
        last_z_bin_ = j;
    }

    // Too many zero prints intraday: fall back to the cumulative model for
    // the remainder of the day.
    if (route_ == ModelRoute::bin_model && bins_seen_ > 0) {
        const double frac = static_cast<double>(zero_bins_) / static_cast<double>(bins_seen_);
        if (frac > cfg_.zero_bin_reroute) {
            route_ = ModelRoute::cumulative_model;
            rerouted_ = true;
        }
    }
}

GaussianPosterior IntradayState::posterior() const {
    const double mu0 = prior_.log_mean();
    const double var0 = prior_.sigma0_sq;

    if (route_ == ModelRoute::cumulative_model) {
        if (!last_z_) return {mu0, var0, false};
        const double omega =
            last_z_bin_ < static_cast<int>(omega_sq_.size())
                ? omega_sq_[static_cast<std::size_t>(last_z_bin_)]
                : kUninformativeDispersion;
        return update_cumulative(mu0, var0, *last_z_, omega, cfg_.omega_floor);
    }

    if (xs_.empty()) return {mu0, var0, false};

    // Intraday Grubbs pass so a single anomalous print cannot dominate xbar.
    auto filtered = grubbs_filter(xs_, cfg_.grubbs_alpha, cfg_.grubbs_cap);
    const auto& obs = filtered.kept;
    const int n = static_cast<int>(obs.size());

    if (n < cfg_.min_bins_for_variance) {
        GaussianPosterior post;
        post.mu_p = update_unknown_variance(mu0, cfg_.kappa0, obs);
        // Mean-scale contraction of the normal-gamma posterior.
        post.sigma_p_sq = var0 * cfg_.kappa0 / (cfg_.kappa0 + static_cast<double>(n));
        return post;
    }
    const double sample_var = population_variance(obs);
    return update_known_variance(mu0, var0, obs, sample_var, cfg_.sample_var_floor);
}

} // namespace volquint
