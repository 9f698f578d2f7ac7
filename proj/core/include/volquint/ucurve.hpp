#pragma once

#include "volquint/marketdata.hpp"
#include "volquint/stats.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace volquint {

enum class CurveKind { u, c };

// Intraday volume profile. c-kind curves are cumulative fractions ending at
// exactly 1; u-kind curves are per-bin fractions summing to 1.
struct Curve {
    std::vector<double> values;
    CurveKind kind = CurveKind::c;

    void validate() const; // throws std::invalid_argument on broken invariants
    // c value at a bin boundary: boundary 0 is the open (0.0), boundary
    // bin_count is the close (1.0 for valid curves).
    double at_boundary(int boundary) const;
};

// Per-bin regression coefficients of the c-curve on scalar day predictors.
// Predictors are standardized with the calibration-sample mean/scale stored
// here; raw_beta undoes the scaling for reporting.
struct FunctionalBetas {
    std::vector<double> beta0;              // per-bin intercepts (diagnostic)
    std::vector<std::vector<double>> betas; // [predictor][bin], standardized units
    std::vector<std::string> predictor_names;
    std::vector<double> predictor_mean;
    std::vector<double> predictor_scale;
    std::vector<int> degenerate_bins; // bins whose fit was rank deficient

    std::size_t bin_count() const { return beta0.size(); }
    std::vector<double> raw_beta(std::size_t k) const;
    int predictor_index(std::string_view name) const; // -1 when absent
};

// True per-day c-curve from bin volumes; empty result when the day total is
// zero.
std::vector<double> day_c_curve(const BinSeries& day);

// Whether a day participates in curve fitting (nonzero total, at most half
// of its bins empty).
bool usable_curve_day(const BinSeries& day);

// Average c-curve over the trailing `window` usable days. Needs at least
// `min_usable` of them.
Curve historical_curve(std::span<const BinSeries> days, int window = 180,
                       std::size_t min_usable = 20);

// Independent per-bin least squares of day curves on (standardized)
// predictors. Rank-deficient bins get zero betas and are recorded.
FunctionalBetas fit_functional_regression(const std::vector<std::vector<double>>& day_curves,
                                          const Matrix& predictors,
                                          std::vector<std::string> predictor_names,
                                          bool smooth_betas = false);

// base(t) + sum_k beta_k(t) * standardized predictor, then clipped to [0,1],
// made monotone by running max, and pinned to end at exactly 1.
Curve predict_curve(const Curve& base, const FunctionalBetas& betas,
                    std::span<const double> predictors_raw);

// predict_curve with every predictor at its calibration mean except the
// volume percentile, which is set to `percentile`.
Curve update_curve_for_volume(const Curve& base, const FunctionalBetas& betas,
                              double percentile);

std::vector<double> curve_to_u(const Curve& c);

// CSV export: bin_index,c_value,u_value
void write_curve_csv(std::ostream& out, const Curve& c);

inline constexpr const char* kGapPredictor = "gap_ratio";
inline constexpr const char* kVolumePercentilePredictor = "volume_percentile";

} // namespace volquint
