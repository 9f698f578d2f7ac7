#include "volquint/prior_daily.hpp"

#include "volquint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace volquint {

void ArmaParams::validate() const {
    if (!(std::fabs(phi) < 1.0)) throw std::invalid_argument("ARMA phi must satisfy |phi| < 1");
    if (!(std::fabs(theta) < 1.0)) {
        throw std::invalid_argument("ARMA theta must satisfy |theta| < 1");
    }
}

double VolumePrior::log_mean() const { return mu0 + std::log(multiplier); }
double VolumePrior::mean_volume() const { return std::exp(log_mean()); }

double rolling_log_mean(std::span<const double> window_volumes, double grubbs_alpha) {
    if (window_volumes.empty()) throw CalibrationError("rolling_log_mean: empty window");
    std::vector<double> logs;
    logs.reserve(window_volumes.size());
    for (double v : window_volumes) {
        if (!(v > 0.0)) throw std::invalid_argument("rolling_log_mean: non-positive volume");
        logs.push_back(std::log(v));
    }
    auto filtered = grubbs_filter(logs, grubbs_alpha);
    return mean(filtered.kept);
}

std::vector<double> arma_innovations(std::span<const double> y, double phi, double theta) {
    std::vector<double> eps(y.size(), 0.0);
    if (y.empty()) return eps;
    eps[0] = y[0]; // y_hat for the first point is 0 by convention
    for (std::size_t t = 1; t < y.size(); ++t) {
        const double y_hat = phi * y[t - 1] + theta * eps[t - 1];
        eps[t] = y[t] - y_hat;
    }
    return eps;
}

double arma_forecast(std::span<const double> y, const ArmaParams& params) {
    if (y.empty()) throw std::invalid_argument("arma_forecast: empty history");
    params.validate();
    auto eps = arma_innovations(y, params.phi, params.theta);
    return params.phi * y.back() + params.theta * eps.back();
}

namespace {

double one_step_ale(std::span<const double> y, double phi, double theta, const LossSpec& spec,
                    std::size_t burn_in) {
    double loss = 0.0;
    double eps_prev = y[0]; // eps[0] with y_hat[0] = 0
    for (std::size_t t = 1; t < y.size(); ++t) {
        const double y_hat = phi * y[t - 1] + theta * eps_prev;
        const double eps = y[t] - y_hat;
        if (t >= burn_in) loss += ale_point(y_hat - y[t], spec);
        eps_prev = eps;
    }
    return loss;
}

struct Candidate {
    double phi, theta;
};

double snap2(double x) { return std::round(x * 100.0) / 100.0; }

// Candidates sorted so the origin-nearest point is evaluated first; combined
// with strict-improvement updates this makes ties resolve toward (0,0).
void sort_near_origin_first(std::vector<Candidate>& out) {
    std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
        const double sx = std::fabs(x.phi) + std::fabs(x.theta);
        const double sy = std::fabs(y.phi) + std::fabs(y.theta);
        if (sx != sy) return sx < sy;
        if (x.phi != y.phi) return x.phi < y.phi;
        return x.theta < y.theta;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Candidate& x, const Candidate& y) {
                              return x.phi == y.phi && x.theta == y.theta;
                          }),
              out.end());
}

std::vector<Candidate> grid(double lo, double hi, double step, double bound) {
    std::vector<Candidate> out;
    const int n = static_cast<int>(std::lround((hi - lo) / step));
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            double a = snap2(std::clamp(lo + step * i, -bound, bound));
            double b = snap2(std::clamp(lo + step * j, -bound, bound));
            out.push_back({a, b});
        }
    }
    sort_near_origin_first(out);
    return out;
}

} // namespace

ArmaFit calibrate_arma(std::span<const double> y, const LossSpec& spec, std::size_t burn_in) {
    spec.validate();
    ArmaFit fit;
    fit.n = y.size();
    if (y.size() < 60) {
        fit.prior_only = true;
        return fit;
    }

    const double bound = 0.94;
    auto evaluate = [&](const std::vector<Candidate>& cands, Candidate best, double best_loss) {
        for (const auto& c : cands) {
            const double loss = one_step_ale(y, c.phi, c.theta, spec, burn_in);
            if (loss < best_loss) {
                best_loss = loss;
                best = c;
            }
        }
        return std::pair{best, best_loss};
    };

    auto coarse = grid(-0.90, 0.90, 0.05, bound);
    auto [best, best_loss] =
        evaluate(coarse, {0.0, 0.0}, one_step_ale(y, 0.0, 0.0, spec, burn_in));

    std::vector<Candidate> fine;
    for (int i = -4; i <= 4; ++i) {
        for (int j = -4; j <= 4; ++j) {
            fine.push_back({snap2(std::clamp(best.phi + 0.01 * i, -bound, bound)),
                            snap2(std::clamp(best.theta + 0.01 * j, -bound, bound))});
        }
    }
    sort_near_origin_first(fine);
    std::tie(best, best_loss) = evaluate(fine, best, best_loss);

    fit.params.phi = best.phi;
    fit.params.theta = best.theta;
    fit.params.last_eps = arma_innovations(y, best.phi, best.theta).back();
    fit.loss = best_loss;
    return fit;
}

std::vector<double> special_day_regression(std::span<const double> y, const Matrix& predictors,
                                           const LossSpec& spec) {
    if (y.size() < 60) throw CalibrationError("special_day_regression: fewer than 60 rows");
    return ale_regression(y, predictors, spec);
}

VolumePrior build_prior(std::span<const double> window_volumes,
                        std::span<const double> y_history, const ArmaParams& arma,
                        std::span<const double> betas, std::span<const double> today_features,
                        double grubbs_alpha, double sigma0_floor) {
    if (betas.size() != today_features.size()) {
        throw std::invalid_argument("build_prior: betas/features length mismatch");
    }
    VolumePrior prior;
    prior.source_window = static_cast<int>(window_volumes.size());

    std::vector<double> logs;
    logs.reserve(window_volumes.size());
    for (double v : window_volumes) {
        if (!(v > 0.0)) throw std::invalid_argument("build_prior: non-positive volume");
        logs.push_back(std::log(v));
    }
    auto filtered = grubbs_filter(logs, grubbs_alpha);

    prior.mu0 = mean(filtered.kept);
    if (!y_history.empty() && (arma.phi != 0.0 || arma.theta != 0.0)) {
        prior.mu0 += arma_forecast(y_history, arma);
    }

    double var = filtered.kept.size() >= 2 ? sample_variance(filtered.kept) : 0.0;
    if (var < sigma0_floor) {
        var = sigma0_floor;
        prior.variance_floored = true;
    }
    prior.sigma0_sq = var;

    double exponent = 0.0;
    for (std::size_t k = 0; k < betas.size(); ++k) exponent += betas[k] * today_features[k];
    prior.multiplier = std::exp(exponent);
    return prior;
}

} // namespace volquint
