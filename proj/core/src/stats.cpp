#include "volquint/stats.hpp"

#include "volquint/errors.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace volquint {

void LossSpec::validate() const {
    if (!(over_weight > 0.0) || !(under_weight > 0.0)) {
        throw std::invalid_argument("LossSpec weights must be positive");
    }
    if (exponent != 1 && exponent != 2) {
        throw std::invalid_argument("LossSpec exponent must be 1 or 2");
    }
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean of empty span");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("sample_variance needs n >= 2");
    double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

double population_variance(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("population_variance of empty span");
    double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size());
}

double sample_stdev(std::span<const double> xs) { return std::sqrt(sample_variance(xs)); }

double geometric_mean(std::span<const double> volumes) {
    if (volumes.empty()) throw std::invalid_argument("geometric_mean of empty list");
    double s = 0.0;
    for (double v : volumes) {
        if (!(v > 0.0)) throw std::invalid_argument("geometric_mean requires positive inputs");
        s += std::log(v);
    }
    return std::exp(s / static_cast<double>(volumes.size()));
}

double normal_quantile(double p) {
    static const boost::math::normal_distribution<double> unit(0.0, 1.0);
    return boost::math::quantile(unit, p);
}

LogNormalFit lognormal_fit(std::span<const double> volumes) {
    if (volumes.size() < 3) throw std::invalid_argument("lognormal_fit needs n >= 3");
    std::vector<double> logs;
    logs.reserve(volumes.size());
    for (double v : volumes) {
        if (!(v > 0.0)) throw std::invalid_argument("lognormal_fit requires positive inputs");
        logs.push_back(std::log(v));
    }
    LogNormalFit fit;
    fit.n = logs.size();
    fit.mu = mean(logs);
    fit.sigma = std::sqrt(sample_variance(logs));

    std::sort(logs.begin(), logs.end());
    fit.qq_points.reserve(logs.size());
    const double n = static_cast<double>(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) {
        double p = (static_cast<double>(i) + 0.5) / n;
        double z = fit.sigma > 0.0 ? (logs[i] - fit.mu) / fit.sigma : 0.0;
        fit.qq_points.emplace_back(normal_quantile(p), z);
    }
    return fit;
}

double qq_correlation(const LogNormalFit& fit) {
    const auto& pts = fit.qq_points;
    if (pts.size() < 3) return 0.0;
    double mx = 0, my = 0;
    for (auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= pts.size();
    my /= pts.size();
    double sxy = 0, sxx = 0, syy = 0;
    for (auto& [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if (sxx <= 0 || syy <= 0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

GrubbsResult grubbs_filter(std::span<const double> values, double alpha,
                           std::size_t max_removals) {
    GrubbsResult res;
    res.kept.assign(values.begin(), values.end());
    if (values.size() < 7) return res;

    const std::size_t cap = max_removals > 0
                                ? max_removals
                                : static_cast<std::size_t>(
                                      std::ceil(0.10 * static_cast<double>(values.size())));

    while (res.removed.size() < cap && res.kept.size() >= 3) {
        const std::size_t n = res.kept.size();
        const double m = mean(res.kept);
        const double s = std::sqrt(sample_variance(res.kept));
        if (!(s > 1e-15)) break; // constant series: nothing to test

        std::size_t worst = 0;
        double dev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = std::fabs(res.kept[i] - m);
            if (d > dev) {
                dev = d;
                worst = i;
            }
        }
        const double g = dev / s;

        const double nd = static_cast<double>(n);
        boost::math::students_t_distribution<double> tdist(nd - 2.0);
        const double t = boost::math::quantile(tdist, 1.0 - alpha / (2.0 * nd));
        const double crit = ((nd - 1.0) / std::sqrt(nd)) * std::sqrt(t * t / (nd - 2.0 + t * t));

        if (g <= crit) break;
        res.removed.push_back(res.kept[worst]);
        res.kept.erase(res.kept.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    return res;
}

double ale_point(double d, const LossSpec& spec) {
    const double w = d > 0.0 ? spec.over_weight : spec.under_weight;
    const double a = std::fabs(d);
    return spec.exponent == 1 ? w * a : w * a * a;
}

double ale(std::span<const double> est_log, std::span<const double> true_log,
           const LossSpec& spec) {
    spec.validate();
    if (est_log.size() != true_log.size()) {
        throw std::invalid_argument("ale: length mismatch");
    }
    if (est_log.empty()) throw std::invalid_argument("ale: empty input");
    double total = 0.0;
    for (std::size_t i = 0; i < est_log.size(); ++i) {
        total += ale_point(est_log[i] - true_log[i], spec);
    }
    return total;
}

MetricReport report_metrics(std::span<const double> est_log, std::span<const double> true_log,
                            const LossSpec& spec) {
    if (est_log.size() != true_log.size()) {
        throw std::invalid_argument("report_metrics: length mismatch");
    }
    MetricReport r;
    r.ale = ale(est_log, true_log, spec);
    double se = 0.0, ape = 0.0;
    for (std::size_t i = 0; i < est_log.size(); ++i) {
        double e = std::exp(est_log[i]);
        double t = std::exp(true_log[i]);
        se += (e - t) * (e - t);
        ape += std::fabs(e - t) / t;
    }
    const double n = static_cast<double>(est_log.size());
    r.rmse = std::sqrt(se / n);
    r.mape = 100.0 * ape / n;
    return r;
}

namespace {

Eigen::MatrixXd to_eigen(const Matrix& X) {
    Eigen::MatrixXd M(static_cast<Eigen::Index>(X.rows), static_cast<Eigen::Index>(X.cols));
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t c = 0; c < X.cols; ++c) {
            M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = X(r, c);
        }
    }
    return M;
}

std::vector<double> weighted_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& w) {
    Eigen::MatrixXd Xw = w.asDiagonal() * X;
    Eigen::MatrixXd A = X.transpose() * Xw;
    Eigen::VectorXd b = X.transpose() * (w.asDiagonal() * y);
    Eigen::VectorXd beta = A.ldlt().solve(b);
    return std::vector<double>(beta.data(), beta.data() + beta.size());
}

double regression_loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const std::vector<double>& beta, const LossSpec& spec) {
    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(beta.data(),
                                                          static_cast<Eigen::Index>(beta.size()));
    Eigen::VectorXd d = X * b - y;
    double total = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i) total += ale_point(d(i), spec);
    return total;
}

} // namespace

std::vector<double> ols(std::span<const double> y, const Matrix& X) {
    if (X.rows != y.size()) throw std::invalid_argument("ols: row mismatch");
    if (X.rows < X.cols) throw CalibrationError("ols: underdetermined design");
    Eigen::MatrixXd M = to_eigen(X);
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(y.data(),
                                                          static_cast<Eigen::Index>(y.size()));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M.transpose() * M);
    if (lu.rank() < static_cast<Eigen::Index>(X.cols)) {
        throw CalibrationError("rank-deficient design");
    }
    Eigen::VectorXd beta = lu.solve(M.transpose() * v);
    return std::vector<double>(beta.data(), beta.data() + beta.size());
}

std::vector<double> ale_regression(std::span<const double> y, const Matrix& X,
                                   const LossSpec& spec) {
    spec.validate();
    if (X.rows != y.size()) throw std::invalid_argument("ale_regression: row mismatch");
    if (X.rows < X.cols + 2) throw CalibrationError("ale_regression: too few rows");

    Eigen::MatrixXd M = to_eigen(X);
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(y.data(),
                                                          static_cast<Eigen::Index>(y.size()));
    {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M.transpose() * M);
        if (lu.rank() < static_cast<Eigen::Index>(X.cols)) {
            throw CalibrationError("rank-deficient design");
        }
    }

    // OLS start, then iteratively reweighted least squares. For p = 2 the
    // weights are the asymmetry factors alone; for p = 1 they additionally
    // carry the 1/|r| first-order term (Schlossmacher), floored to keep the
    // system well conditioned.
    const std::size_t max_iter = 200;
    const double tol = 1e-8;
    const double r_floor = 1e-8;

    Eigen::VectorXd ones = Eigen::VectorXd::Ones(v.size());
    std::vector<double> beta = weighted_ls(M, v, ones);
    std::vector<double> best = beta;
    double best_loss = regression_loss(M, v, best, spec);

    bool irls_converged = false;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(
            beta.data(), static_cast<Eigen::Index>(beta.size()));
        Eigen::VectorXd d = M * b - v;
        Eigen::VectorXd w(d.size());
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            double base = d(i) > 0.0 ? spec.over_weight : spec.under_weight;
            w(i) = spec.exponent == 2 ? base : base / std::max(std::fabs(d(i)), r_floor);
        }
        std::vector<double> next = weighted_ls(M, v, w);
        double delta = 0.0;
        for (std::size_t k = 0; k < beta.size(); ++k) {
            delta = std::max(delta, std::fabs(next[k] - beta[k]));
        }
        beta = std::move(next);
        const double loss = regression_loss(M, v, beta, spec);
        if (loss < best_loss) {
            best_loss = loss;
            best = beta;
        }
        if (delta < tol) {
            irls_converged = true;
            break;
        }
    }

    // IRLS can cycle around the p = 1 kink; finish with a deterministic
    // compass search on the exact objective from the best iterate.
    if (!irls_converged || spec.exponent == 1) {
        double scale = 1.0;
        for (double b : best) scale = std::max(scale, std::fabs(b));
        double step = 1e-2 * scale;
        std::vector<double> trial = best;
        std::size_t evals = 0;
        while (step > 1e-9 && evals < 200000) {
            bool improved = false;
            for (std::size_t k = 0; k < best.size(); ++k) {
                for (double dir : {1.0, -1.0}) {
                    trial[k] = best[k] + dir * step;
                    const double loss = regression_loss(M, v, trial, spec);
                    ++evals;
                    if (loss < best_loss) {
                        best_loss = loss;
                        best[k] = trial[k];
                        improved = true;
                    } else {
                        trial[k] = best[k];
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
    }
    if (!std::isfinite(best_loss)) throw CalibrationError("ale_regression failed to converge");
    return best;
}

} // namespace volquint
