#include "volquint/ucurve.hpp"

#include "volquint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace volquint {

void Curve::validate() const {
    if (values.empty()) throw std::invalid_argument("empty curve");
    if (kind == CurveKind::c) {
        double prev = 0.0;
        for (double v : values) {
            if (v < 0.0) throw std::invalid_argument("c-curve has negative value");
            if (v < prev) throw std::invalid_argument("c-curve not monotone");
            prev = v;
        }
        if (std::fabs(values.back() - 1.0) > 1e-9) {
            throw std::invalid_argument("c-curve does not end at 1");
        }
    } else {
        double sum = 0.0;
        for (double v : values) {
            if (v < 0.0) throw std::invalid_argument("u-curve has negative value");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-9) throw std::invalid_argument("u-curve does not sum to 1");
    }
}

double Curve::at_boundary(int boundary) const {
    if (kind != CurveKind::c) throw std::invalid_argument("at_boundary needs a c-curve");
    if (boundary < 0 || boundary > static_cast<int>(values.size())) {
        throw std::invalid_argument("bin boundary outside session");
    }
    return boundary == 0 ? 0.0 : values[static_cast<std::size_t>(boundary - 1)];
}

std::vector<double> FunctionalBetas::raw_beta(std::size_t k) const {
    std::vector<double> out = betas.at(k);
    const double scale = predictor_scale.at(k);
    if (scale > 0.0) {
        for (double& b : out) b /= scale;
    }
    return out;
}

int FunctionalBetas::predictor_index(std::string_view name) const {
    for (std::size_t k = 0; k < predictor_names.size(); ++k) {
        if (predictor_names[k] == name) return static_cast<int>(k);
    }
    return -1;
}

std::vector<double> day_c_curve(const BinSeries& day) {
    const double total = day.total();
    if (!(total > 0.0)) return {};
    std::vector<double> c(day.volumes.size());
    double run = 0.0;
    for (std::size_t i = 0; i < day.volumes.size(); ++i) {
        run += day.volumes[i];
        c[i] = run / total;
    }
    return c;
}

bool usable_curve_day(const BinSeries& day) {
    if (!(day.total() > 0.0)) return false;
    return day.zero_bins() * 2 <= day.volumes.size();
}

namespace {

// Running max, then renormalize so the curve ends at exactly 1.
void repair_monotone(std::vector<double>& c) {
    double run = 0.0;
    for (double& v : c) {
        v = std::clamp(v, 0.0, 1.0);
        run = std::max(run, v);
        v = run;
    }
    const double last = c.back();
    if (last > 0.0 && last != 1.0) {
        for (double& v : c) v /= last;
    }
    c.back() = 1.0;
}

} // namespace

Curve historical_curve(std::span<const BinSeries> days, int window, std::size_t min_usable) {
    std::vector<const BinSeries*> usable;
    for (const auto& d : days) {
        if (usable_curve_day(d)) usable.push_back(&d);
    }
    if (usable.size() > static_cast<std::size_t>(window)) {
        usable.erase(usable.begin(),
                     usable.end() - static_cast<std::ptrdiff_t>(window));
    }
    if (usable.size() < min_usable) {
        throw CalibrationError("historical_curve: only " + std::to_string(usable.size()) +
                               " usable days, need " + std::to_string(min_usable));
    }
    const std::size_t nbins = usable.front()->volumes.size();
    std::vector<double> avg(nbins, 0.0);
    for (const BinSeries* d : usable) {
        auto c = day_c_curve(*d);
        if (c.size() != nbins) throw CalibrationError("historical_curve: bin count mismatch");
        for (std::size_t i = 0; i < nbins; ++i) avg[i] += c[i];
    }
    for (double& v : avg) v /= static_cast<double>(usable.size());
    repair_monotone(avg);

    Curve out;
    out.values = std::move(avg);
    out.kind = CurveKind::c;
    out.validate();
    return out;
}

FunctionalBetas fit_functional_regression(const std::vector<std::vector<double>>& day_curves,
                                          const Matrix& predictors,
                                          std::vector<std::string> predictor_names,
                                          bool smooth_betas) {
    const std::size_t n = day_curves.size();
    const std::size_t k = predictors.cols;
    if (predictors.rows != n) {
        throw std::invalid_argument("fit_functional_regression: row mismatch");
    }
    if (predictor_names.size() != k) {
        throw std::invalid_argument("fit_functional_regression: predictor name mismatch");
    }
    if (n < 40) throw CalibrationError("fit_functional_regression: fewer than 40 days");
    const std::size_t nbins = day_curves.front().size();
    for (const auto& c : day_curves) {
        if (c.size() != nbins) {
            throw std::invalid_argument("fit_functional_regression: ragged curves");
        }
    }

    FunctionalBetas out;
    out.predictor_names = std::move(predictor_names);
    out.predictor_mean.assign(k, 0.0);
    out.predictor_scale.assign(k, 1.0);
    out.beta0.assign(nbins, 0.0);
    out.betas.assign(k, std::vector<double>(nbins, 0.0));

    // Standardize predictors on the calibration sample.
    Matrix X(n, k + 1);
    for (std::size_t i = 0; i < n; ++i) X(i, 0) = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = predictors(i, j);
        out.predictor_mean[j] = mean(col);
        double sd = n >= 2 ? std::sqrt(sample_variance(col)) : 0.0;
        out.predictor_scale[j] = sd > 1e-12 ? sd : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            X(i, j + 1) = (col[i] - out.predictor_mean[j]) / out.predictor_scale[j];
        }
    }

    std::vector<double> y(n);
    for (std::size_t t = 0; t < nbins; ++t) {
        for (std::size_t i = 0; i < n; ++i) y[i] = day_curves[i][t];
        try {
            auto beta = ols(y, X);
            out.beta0[t] = beta[0];
            for (std::size_t j = 0; j < k; ++j) out.betas[j][t] = beta[j + 1];
        } catch (const CalibrationError&) {
            out.beta0[t] = mean(y);
            out.degenerate_bins.push_back(static_cast<int>(t));
        }
    }

    if (smooth_betas) {
        auto smooth = [](std::vector<double>& b) {
            if (b.size() < 3) return;
            std::vector<double> s(b.size());
            for (std::size_t t = 0; t < b.size(); ++t) {
                double acc = b[t];
                double cnt = 1.0;
                if (t > 0) {
                    acc += b[t - 1];
                    cnt += 1.0;
                }
                if (t + 1 < b.size()) {
                    acc += b[t + 1];
                    cnt += 1.0;
                }
                s[t] = acc / cnt;
            }
            b = std::move(s);
        };
        for (auto& b : out.betas) smooth(b);
    }
    return out;
}

Curve predict_curve(const Curve& base, const FunctionalBetas& betas,
                    std::span<const double> predictors_raw) {
    if (base.kind != CurveKind::c) throw std::invalid_argument("predict_curve needs a c-curve");
    if (predictors_raw.size() != betas.betas.size()) {
        throw std::invalid_argument("predict_curve: predictor count mismatch");
    }
    if (!betas.beta0.empty() && betas.bin_count() != base.values.size()) {
        throw std::invalid_argument("predict_curve: bin count mismatch");
    }

    std::vector<double> c = base.values;
    for (std::size_t k = 0; k < betas.betas.size(); ++k) {
        const double x = (predictors_raw[k] - betas.predictor_mean[k]) / betas.predictor_scale[k];
        if (x == 0.0) continue;
        const auto& b = betas.betas[k];
        for (std::size_t t = 0; t < c.size(); ++t) c[t] += b[t] * x;
    }
    repair_monotone(c);

    Curve out;
    out.values = std::move(c);
    out.kind = CurveKind::c;
    out.validate();
    return out;
}

Curve update_curve_for_volume(const Curve& base, const FunctionalBetas& betas,
                              double percentile) {
    if (percentile < 0.0 || percentile > 1.0) {
        throw std::invalid_argument("percentile must lie in [0, 1]");
    }
    std::vector<double> raw(betas.betas.size());
    for (std::size_t k = 0; k < raw.size(); ++k) raw[k] = betas.predictor_mean[k];
    const int idx = betas.predictor_index(kVolumePercentilePredictor);
    if (idx >= 0) raw[static_cast<std::size_t>(idx)] = percentile;
    return predict_curve(base, betas, raw);
}

std::vector<double> curve_to_u(const Curve& c) {
    if (c.kind == CurveKind::u) return c.values;
    std::vector<double> u(c.values.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        u[i] = c.values[i] - prev;
        prev = c.values[i];
    }
    return u;
}

void write_curve_csv(std::ostream& out, const Curve& c) {
    const Curve* cc = &c;
    Curve tmp;
    if (c.kind == CurveKind::u) {
        tmp.kind = CurveKind::c;
        tmp.values.resize(c.values.size());
        double run = 0.0;
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            run += c.values[i];
            tmp.values[i] = run;
        }
        cc = &tmp;
    }
    auto u = curve_to_u(*cc);
    out << "bin_index,c_value,u_value\n";
    for (std::size_t i = 0; i < cc->values.size(); ++i) {
        out << i << ',' << cc->values[i] << ',' << u[i] << '\n';
    }
}

} // namespace volquint
