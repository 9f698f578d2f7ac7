#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace volquint {

// Asymmetric logarithmic error settings. The weight applies to the signed
// log-space difference d = estimate - truth: overestimates (d > 0) are
// penalized over_weight-fold, underestimates under_weight-fold.
struct LossSpec {
    double over_weight = 2.0;
    double under_weight = 1.0;
    int exponent = 1; // 1 or 2

    void validate() const;
};

struct LogNormalFit {
    double mu = 0.0;    // mean of log values
    double sigma = 0.0; // sample stdev of log values
    std::size_t n = 0;
    // (standard-normal quantile, standardized sorted log value), sorted by
    // the theoretical quantile; ready for a QQ plot.
    std::vector<std::pair<double, double>> qq_points;
};

struct MetricReport {
    double ale = 0.0;  // log space
    double rmse = 0.0; // physical space
    double mape = 0.0; // physical space, percent
};

struct GrubbsResult {
    std::vector<double> kept;    // input order preserved
    std::vector<double> removed; // removal order
};

// Tiny row-major dense matrix used for regression designs.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);     // n-1 denominator
double population_variance(std::span<const double> xs); // n denominator
double sample_stdev(std::span<const double> xs);

// exp(mean(log v)); the median of the fitted log-normal. All inputs must be
// strictly positive.
double geometric_mean(std::span<const double> volumes);

// Normal fit of log(volumes) with QQ diagnostic points. Requires n >= 3.
LogNormalFit lognormal_fit(std::span<const double> volumes);

// Pearson correlation of the QQ points; close to 1 for a good normal fit.
double qq_correlation(const LogNormalFit& fit);

// Iterative two-sided Grubbs outlier filter. Samples smaller than 7 pass
// through untouched. max_removals = 0 means the default cap of ceil(n/10).
GrubbsResult grubbs_filter(std::span<const double> values, double alpha = 0.05,
                           std::size_t max_removals = 0);

// Sum of w(d) * |d|^p over paired log values, d = est - true.
double ale(std::span<const double> est_log, std::span<const double> true_log,
           const LossSpec& spec = {});

double ale_point(double d, const LossSpec& spec);

// ALE in log space alongside RMSE/MAPE on the exponentiated values.
MetricReport report_metrics(std::span<const double> est_log, std::span<const double> true_log,
                            const LossSpec& spec = {});

// Minimizes sum w(r) * |r|^p over beta for r = X beta - y. Symmetric weights
// with p = 2 reduce to ordinary least squares. Deterministic; throws
// CalibrationError on rank-deficient designs or non-convergence.
std::vector<double> ale_regression(std::span<const double> y, const Matrix& X,
                                   const LossSpec& spec = {});

// Plain OLS solve (used as the ale_regression starting point and by the
// per-bin functional regression).
std::vector<double> ols(std::span<const double> y, const Matrix& X);

// Standard-normal quantile (wrapped so callers do not need boost headers).
double normal_quantile(double p);

} // namespace volquint
