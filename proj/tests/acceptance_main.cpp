// Acceptance suite: runs every stated criterion at its pinned tolerance and
// prints one PASS/FAIL line each. Exit status is nonzero when any fail.

#include "volquint/harness.hpp"
#include "volquint/rng.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace volquint;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// --- 1. Conjugacy oracle -----------------------------------------------------
Outcome conjugacy_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    CounterRng rng(1001);
    double worst_mean = 0, worst_var = 0;

    // 50 known-variance cases (Eqs. 4-5) against 1-D grid integration.
    for (int c = 0; c < 50; ++c) {
        const double mu0 = 8.0 + 4.0 * rng.uniform(0, c);
        const double var0 = 0.2 + 1.5 * rng.uniform(1, c);
        const double sigma_sq = 0.3 + 2.0 * rng.uniform(2, c);
        const int n = 1 + static_cast<int>(rng.uniform(3, c) * 8.0);
        std::vector<double> obs;
        for (int i = 0; i < n; ++i) {
            obs.push_back(mu0 + 1.5 * rng.normal(4, static_cast<uint64_t>(c * 16 + i)));
        }
        auto post = update_known_variance(mu0, var0, obs, sigma_sq, /*var_floor=*/1e-12);
        auto grid = oracles::grid_known_variance(mu0, var0, obs, sigma_sq);
        worst_mean = std::max(worst_mean,
                              std::fabs(post.mu_p - grid.mean) / std::fabs(grid.mean));
        worst_var = std::max(worst_var,
                             std::fabs(post.sigma_p_sq - grid.variance) / grid.variance);
    }

    // 50 normal-gamma cases (Eqs. 6, 41-42) against 2-D grid integration.
    for (int c = 0; c < 50; ++c) {
        NormalGammaParams prior;
        prior.mu = 9.0 + 3.0 * rng.uniform(10, c);
        prior.kappa = 0.5 + 9.5 * rng.uniform(11, c);
        prior.alpha = 1.5 + 2.5 * rng.uniform(12, c);
        prior.beta = 0.5 + 2.5 * rng.uniform(13, c);
        const int n = 2 + static_cast<int>(rng.uniform(14, c) * 6.0);
        std::vector<double> obs;
        for (int i = 0; i < n; ++i) {
            obs.push_back(prior.mu + rng.normal(15, static_cast<uint64_t>(c * 16 + i)));
        }
        auto post = normal_gamma_update(prior, obs);
        auto grid = oracles::grid_normal_gamma(prior.mu, prior.kappa, prior.alpha, prior.beta,
                                               obs);
        worst_mean = std::max(worst_mean, std::fabs(post.marginal_mean() - grid.mean_mu) /
                                              std::fabs(grid.mean_mu));
        worst_var = std::max(worst_var, std::fabs(post.marginal_variance() - grid.var_mu) /
                                            grid.var_mu);
    }

    const double secs = seconds_since(t0);
    Outcome out;
    out.pass = worst_mean <= 1e-6 && worst_var <= 1e-5 && secs < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "100 cases: max rel err mean %.2e (<=1e-6), var %.2e (<=1e-5), %.1fs (<10s)",
                  worst_mean, worst_var, secs);
    out.detail = buf;
    return out;
}

// --- 2. Appendix identity ----------------------------------------------------
Outcome appendix_identity() {
    CounterRng rng(1002);
    double worst = 0;
    for (int c = 0; c < 1000; ++c) {
        const std::size_t n = 2 + c % 60;
        std::vector<double> xs;
        for (std::size_t i = 0; i < n; ++i) {
            xs.push_back(10.0 + 5.0 * rng.normal(static_cast<uint64_t>(c), i));
        }
        const double mu = 20.0 * rng.normal(5000 + static_cast<uint64_t>(c), 0);
        double lhs = 0;
        for (double x : xs) lhs += (x - mu) * (x - mu);
        const double rhs = n * population_variance(xs) + n * (mean(xs) - mu) * (mean(xs) - mu);
        worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(lhs)));
    }
    Outcome out;
    out.pass = worst <= 1e-10;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "1000 samples: max rel deviation %.2e (<=1e-10)", worst);
    out.detail = buf;
    return out;
}

// --- 3. ALE properties -------------------------------------------------------
Outcome ale_properties() {
    LossSpec spec;
    CounterRng rng(1003);
    bool ratio_exact = true;
    double worst_shift = 0;
    for (int c = 0; c < 200; ++c) {
        const double x = 10.0 + rng.normal(0, c);
        const double d = std::fabs(rng.normal(1, c)) + 1e-3;
        std::vector<double> base{x}, over{x + d};
        const double hi = ale(over, base, spec);
        const double lo = ale(base, over, spec);
        if (hi / lo != 2.0) ratio_exact = false;
        const double shift = 5.0 * rng.normal(2, c);
        std::vector<double> est{x + d + shift}, truth{x + shift};
        worst_shift = std::max(worst_shift, std::fabs(ale(est, truth, spec) - hi));
    }

    // Symmetric squared loss equals the OLS oracle.
    const std::size_t n = 200;
    Matrix X(n, 3);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = rng.normal(3, i);
        X(i, 2) = rng.normal(4, i);
        y[i] = 1.0 - 0.7 * X(i, 1) + 0.2 * X(i, 2) + 0.5 * rng.normal(5, i);
    }
    auto beta = ale_regression(y, X, LossSpec{1.0, 1.0, 2});
    auto ref = oracles::ols_reference(y, n, 3, X.data);
    double worst_beta = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        worst_beta = std::max(worst_beta, std::fabs(beta[k] - ref[k]));
    }

    Outcome out;
    out.pass = ratio_exact && worst_shift <= 1e-12 && worst_beta <= 1e-8;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "penalty ratio exact=%s, translation dev %.1e (<=1e-12), OLS gap %.1e (<=1e-8)",
                  ratio_exact ? "yes" : "no", worst_shift, worst_beta);
    out.detail = buf;
    return out;
}

// --- 4. ARMA recovery --------------------------------------------------------
Outcome arma_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    int hits = 0;
    for (int seed = 0; seed < 100; ++seed) {
        auto y = oracles::arma_path(2000, 0.7, -0.3, 0.4, 40000 + seed);
        auto fit = calibrate_arma(y);
        if (std::fabs(fit.params.phi - 0.7) <= 0.1 &&
            std::fabs(fit.params.theta + 0.3) <= 0.15) {
            ++hits;
        }
    }
    const double secs = seconds_since(t0);
    Outcome out;
    out.pass = hits >= 90 && secs < 60.0;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%d/100 seeds within (0.10, 0.15), %.1fs (<60s)", hits,
                  secs);
    out.detail = buf;
    return out;
}

// --- 5. Curve validity under adversarial inputs ------------------------------
Outcome curve_validity() {
    CounterRng rng(1005);
    Curve base;
    base.kind = CurveKind::c;
    base.values = shape_c_curve(CurveShape::u_shape, 39);

    FunctionalBetas betas;
    betas.predictor_names = {kGapPredictor, kVolumePercentilePredictor};
    betas.predictor_mean = {0.0, 0.5};
    betas.predictor_scale = {1.0, 0.3};
    betas.beta0.assign(39, 0.0);
    betas.betas.assign(2, std::vector<double>(39, 0.0));

    std::size_t checked = 0;
    for (int draw = 0; draw < 10000; ++draw) {
        for (int t = 0; t < 39; ++t) {
            betas.betas[0][t] = 5.0 * rng.normal(0, static_cast<uint64_t>(draw) * 39 + t);
            betas.betas[1][t] = 5.0 * rng.normal(1, static_cast<uint64_t>(draw) * 39 + t);
        }
        const double g = 10.0 * rng.normal(2, draw);
        const double pct = rng.uniform(3, draw);
        Curve c = predict_curve(base, betas, std::vector<double>{g, pct});
        if (c.values.size() != 39) return {false, "wrong bin count"};
        double prev = 0, usum = 0;
        for (double v : c.values) {
            if (v < prev || v < 0.0 || v > 1.0) return {false, "monotonicity/bounds broken"};
            usum += v - prev;
            prev = v;
        }
        if (c.values.back() != 1.0) return {false, "curve does not end at exactly 1"};
        if (std::fabs(usum - 1.0) > 1e-9) return {false, "u-curve sum off"};
        ++checked;
    }
    Outcome out;
    out.pass = checked == 10000;
    out.detail = "10000 adversarial draws: monotone, bounded, c(T)=1, sum(u)=1 +/- 1e-9";
    return out;
}

// --- 6. Functional-regression recovery ---------------------------------------
Outcome functional_recovery() {
    ScenarioSpec spec;
    spec.n_days = 560; // 500 usable fitting days after the warmup
    spec.sigma_log = 0.3;
    spec.curve_shape = CurveShape::u_shape;
    spec.curve_gap_beta = 0.05;
    spec.bin_noise = 0.05;
    spec.seed = 606;

    auto data = generate(spec);
    auto truth = planted_curve_beta(spec);

    std::vector<std::vector<double>> curves;
    Matrix predictors(0, 1);
    std::vector<double> gaps;
    for (std::size_t i = 0; i < data.days.size(); ++i) {
        if (data.gap_ratio[i] == 0.0 && i < 22) continue; // warmup days
        auto c = day_c_curve(data.bins[i]);
        if (c.empty()) continue;
        curves.push_back(std::move(c));
        gaps.push_back(data.gap_ratio[i]);
    }
    while (curves.size() > 500) {
        curves.erase(curves.begin());
        gaps.erase(gaps.begin());
    }
    predictors = Matrix(curves.size(), 1);
    for (std::size_t i = 0; i < gaps.size(); ++i) predictors(i, 0) = gaps[i];

    auto fit = fit_functional_regression(curves, predictors, {kGapPredictor});
    auto raw = fit.raw_beta(0);
    double worst = 0;
    for (std::size_t t = 0; t < raw.size(); ++t) {
        worst = std::max(worst, std::fabs(raw[t] - truth[t]));
    }
    const double early = (raw[0] + raw[1] + raw[2]) / 3.0;
    const double late = (raw[30] + raw[31] + raw[32]) / 3.0;

    Outcome out;
    out.pass = curves.size() == 500 && worst <= 0.01 && early > late;
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "n=%zu days: max pointwise |beta - truth| %.4f (<=0.01), early>late %s",
                  curves.size(), worst, early > late ? "yes" : "no");
    out.detail = buf;
    return out;
}

// --- 7. Bayesian convergence -------------------------------------------------
Outcome bayesian_convergence() {
    const fs::path dir = fs::temp_directory_path() / "vq_accept_bayes";
    fs::remove_all(dir);
    fs::create_directories(dir);

    ScenarioSpec spec;
    spec.n_days = 460; // 260 calibration days + 200 replay days
    spec.sigma_log = 1.0;
    spec.bin_noise = 0.1;
    spec.curve_shape = CurveShape::u_shape;
    spec.seed = 707;

    BinGrid grid = BinGrid::from_session("09:30-16:00", 10);
    auto files = write_synth_files(generate(spec), spec, dir.string(), grid);
    RunConfig cfg;
    cfg.days_file = files.days_path;
    cfg.bins_file = files.bins_path;
    cfg.grid = grid;
    auto frames = load_frames(cfg);
    const auto& frame = frames.at("SYN");
    auto params = calibrate_symbol(frame, cfg, ExpiryCalendar{});

    int improved = 0, replayed = 0;
    for (std::size_t day = frame.days.size() - 200; day < frame.days.size(); ++day) {
        DayOpen open{frame.days[day].date, frame.days[day].open_price, frame.days[day].flags};
        DayReplay replay(params, cfg, ExpiryCalendar{}, std::span(frame.days.data(), day),
                         std::span(frame.continuous.data(), day), open);
        const auto& bins = frame.bins[static_cast<std::size_t>(frame.bins_index[day])];
        const double truth = std::log(frame.continuous[day]);
        double err5 = 0;
        Forecast f = replay.current();
        for (int t = 0; t < 39; ++t) {
            f = replay.step(bins.volumes[static_cast<std::size_t>(t)]);
            if (f.as_of_bin == 5) err5 = std::fabs(f.total_log - truth);
        }
        improved += std::fabs(f.total_log - truth) < err5;
        ++replayed;
    }

    // Noiseless equality of the two routes.
    const double X = std::log(1.7e6);
    VolumePrior prior;
    prior.mu0 = X;
    prior.sigma0_sq = 0.0025;
    std::vector<double> u(39, 1.0 / 39.0), omega(39, 1e-4);
    IntradayState bin_state(prior, ModelRoute::bin_model, omega);
    IntradayState cum_state(prior, ModelRoute::cumulative_model, omega);
    double c = 0;
    double worst_gap = 0;
    for (int j = 0; j < 39; ++j) {
        c += u[j];
        bin_state.observe_bin(j, 1.7e6 * u[j], u[j], c);
        cum_state.observe_bin(j, 1.7e6 * u[j], u[j], c);
        worst_gap = std::max(worst_gap, std::fabs(bin_state.posterior().mu_p -
                                                  cum_state.posterior().mu_p));
    }

    fs::remove_all(dir);
    Outcome out;
    const double frac = 100.0 * improved / std::max(1, replayed);
    out.pass = replayed == 200 && improved >= 190 && worst_gap < 1e-12;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "|mu(39)-X*| < |mu(5)-X*| on %d/200 days (%.1f%%, need >=95%%); "
                  "noiseless route gap %.1e (<1e-12)",
                  improved, frac, worst_gap);
    out.detail = buf;
    return out;
}

// --- 8. Ensemble dominance ---------------------------------------------------
Outcome ensemble_dominance() {
    const fs::path dir = fs::temp_directory_path() / "vq_accept_ens";
    fs::remove_all(dir);
    fs::create_directories(dir);

    ScenarioSpec spec;
    spec.n_days = 330; // 280 calibration days + 50 paired replay days
    spec.sigma_log = 0.4;
    spec.phi = 0.7;
    spec.theta = -0.3;
    spec.beta_gap = 0.3;
    spec.curve_shape = CurveShape::u_shape;
    spec.curve_gap_beta = 0.04;
    spec.bin_noise = 0.15;
    spec.seed = 808;

    BinGrid grid = BinGrid::from_session("09:30-16:00", 10);
    auto files = write_synth_files(generate(spec), spec, dir.string(), grid);
    RunConfig cfg;
    cfg.days_file = files.days_path;
    cfg.bins_file = files.bins_path;
    cfg.grid = grid;
    auto frames = load_frames(cfg);
    const auto& frame = frames.at("SYN");
    auto params = calibrate_symbol(frame, cfg, ExpiryCalendar{});

    std::vector<double> gm, gm_arma, quintet, truth;
    for (std::size_t day = frame.days.size() - 50; day < frame.days.size(); ++day) {
        DayOpen open{frame.days[day].date, frame.days[day].open_price, frame.days[day].flags};
        DayReplay replay(params, cfg, ExpiryCalendar{}, std::span(frame.days.data(), day),
                         std::span(frame.continuous.data(), day), open);
        const auto& bins = frame.bins[static_cast<std::size_t>(frame.bins_index[day])];
        Forecast f = replay.current();
        for (double v : bins.volumes) f = replay.step(v);
        gm.push_back(replay.gm_log());
        gm_arma.push_back(replay.gm_arma_log());
        quintet.push_back(f.total_log);
        truth.push_back(std::log(frame.continuous[day]));
    }
    const double ale_gm = ale(gm, truth);
    const double ale_arma = ale(gm_arma, truth);
    const double ale_quintet = ale(quintet, truth);

    fs::remove_all(dir);
    Outcome out;
    out.pass = ale_quintet <= ale_arma && ale_arma <= ale_gm;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "50-day ALE: quintet %.3f <= gm+arma %.3f <= gm %.3f (paired seeds)",
                  ale_quintet, ale_arma, ale_gm);
    out.detail = buf;
    return out;
}

// --- 9. Auction seasonality --------------------------------------------------
Outcome auction_seasonality() {
    const fs::path dir = fs::temp_directory_path() / "vq_accept_auct";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // A calm daily level keeps the auction excess dominated by the planted
    // seasonality rather than day-to-day volume noise.
    ScenarioSpec spec;
    spec.n_days = 1600;
    spec.sigma_log = 0.05;
    spec.expiry_multiplier = 3.0;
    spec.seed = 909;

    BinGrid grid = BinGrid::from_session("09:30-16:00", 10);
    auto files = write_synth_files(generate(spec), spec, dir.string(), grid);
    RunConfig cfg;
    cfg.days_file = files.days_path;
    cfg.bins_file = files.bins_path;
    cfg.grid = grid;
    auto frames = load_frames(cfg);
    auto params = calibrate_symbol(frames.at("SYN"), cfg, ExpiryCalendar{});
    const double eta = std::exp(params.auction.beta_expiry);

    int bad_years = 0;
    for (int year = 2010; year <= 2030; ++year) {
        int hits = 0;
        for (Date d(year, 1, 1); d.year() == year; d = d.plus_days(1)) {
            hits += is_triple_witching(d);
        }
        bad_years += hits != 4;
    }

    CounterRng rng(1009);
    bool allocation_ok = true;
    for (int i = 0; i < 1000; ++i) {
        const double order = 2e6 * rng.uniform(0, i);
        const double pred = 4e6 * rng.uniform(1, i);
        if (auction_allocation(order, pred) > 0.12 * order + 1e-9) allocation_ok = false;
    }

    fs::remove_all(dir);
    Outcome out;
    out.pass = std::fabs(eta - 3.0) <= 0.15 && bad_years == 0 && allocation_ok;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "eta_a %.3f (3 +/- 0.15); witching 4/yr for 2010-2030 %s; alloc <= 12%% %s",
                  eta, bad_years == 0 ? "yes" : "NO", allocation_ok ? "yes" : "NO");
    out.detail = buf;
    return out;
}

// --- 10. GM/AM relation --------------------------------------------------------
Outcome gm_am_relation() {
    CounterRng rng(1010);
    double worst = 0;
    for (double sigma : {0.5, 1.0}) {
        std::vector<double> v;
        v.reserve(10000);
        for (int i = 0; i < 10000; ++i) {
            v.push_back(std::exp(10.0 + sigma * rng.normal(static_cast<uint64_t>(sigma * 10),
                                                           static_cast<uint64_t>(i))));
        }
        const double ratio = mean(v) / geometric_mean(v);
        const double expected = std::exp(sigma * sigma / 2.0);
        worst = std::max(worst, std::fabs(ratio / expected - 1.0));
    }
    Outcome out;
    out.pass = worst <= 0.05;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "AM/GM vs exp(sigma^2/2): worst rel dev %.3f (<=0.05)",
                  worst);
    out.detail = buf;
    return out;
}

// --- 11. No-lookahead canary ---------------------------------------------------
Outcome no_lookahead() {
    const fs::path dir = fs::temp_directory_path() / "vq_accept_canary";
    fs::remove_all(dir);
    fs::create_directories(dir);

    ScenarioSpec spec;
    spec.n_days = 300;
    spec.sigma_log = 0.4;
    spec.phi = 0.7;
    spec.theta = -0.3;
    spec.beta_gap = 0.3;
    spec.curve_gap_beta = 0.04;
    spec.bin_noise = 0.15;
    spec.seed = 1111;

    BinGrid grid = BinGrid::from_session("09:30-16:00", 10);
    auto files = write_synth_files(generate(spec), spec, dir.string(), grid);
    RunConfig cfg;
    cfg.days_file = files.days_path;
    cfg.bins_file = files.bins_path;
    cfg.grid = grid;
    auto frames = load_frames(cfg);
    const auto& frame = frames.at("SYN");
    auto params = calibrate_symbol(frame, cfg, ExpiryCalendar{});

    bool all_equal = true;
    for (int cut : {0, 7, 20, 38}) {
        auto run = [&](bool corrupt) {
            auto days = frame.days;
            auto continuous = frame.continuous;
            const std::size_t day = 290;
            auto bins = frame.bins[static_cast<std::size_t>(frame.bins_index[day])];
            if (corrupt) {
                for (std::size_t t = static_cast<std::size_t>(cut); t < bins.volumes.size();
                     ++t) {
                    bins.volumes[t] = bins.volumes[t] * 9.0 + 777.0;
                }
                for (std::size_t i = day + 1; i < days.size(); ++i) {
                    days[i].total_volume *= 5.0;
                    continuous[i] *= 5.0;
                }
            }
            DayOpen open{days[290].date, days[290].open_price, days[290].flags};
            DayReplay replay(params, cfg, ExpiryCalendar{}, std::span(days.data(), 290),
                             std::span(continuous.data(), 290), open);
            std::ostringstream os;
            os << forecast_to_json(replay.current()) << '\n';
            for (int t = 0; t < cut; ++t) {
                os << forecast_to_json(replay.step(bins.volumes[static_cast<std::size_t>(t)]))
                   << '\n';
            }
            return os.str();
        };
        if (run(false) != run(true)) all_equal = false;
    }

    fs::remove_all(dir);
    Outcome out;
    out.pass = all_equal;
    out.detail = all_equal ? "forecasts at or before bin n are byte-identical for n in {0,7,20,38}"
                           : "forecast changed before the corruption point";
    return out;
}

// --- 12. End-to-end determinism -------------------------------------------------
Outcome end_to_end_determinism(const std::string& scenario_path) {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path root = fs::temp_directory_path() / "vq_accept_e2e";
    fs::remove_all(root);

    auto one_run = [&](const std::string& tag) {
        const fs::path dir = root / tag;
        fs::create_directories(dir);
        RunConfig cfg;
        cfg.scenario_file = scenario_path;
        cfg.out_dir = (dir / "data").string();
        auto files = cmd_synth(cfg);

        RunConfig run;
        run.days_file = files.days_path;
        run.bins_file = files.bins_path;
        run.params_dir = (dir / "params").string();
        run.report_file = (dir / "report.json").string();
        run.forecasts_file = (dir / "forecasts.jsonl").string();
        auto outcome = cmd_calibrate(run);
        if (!outcome.failed.empty()) return std::string("CALIBRATION FAILED");

        auto days = load_days(files.days_path);
        const auto& recs = days.begin()->second;
        const Date from = recs[recs.size() - 60].date;
        const Date to = recs.back().date;
        cmd_replay(run, from, to);

        std::string blob;
        for (const auto& name :
             {std::string("data/days.csv"), std::string("data/bins.csv"),
              std::string("params/") + days.begin()->first + ".json",
              std::string("report.json"), std::string("forecasts.jsonl")}) {
            blob += slurp(dir / name);
            blob += '\x1f';
        }
        return blob;
    };

    const std::string a = one_run("run1");
    const std::string b = one_run("run2");
    const double secs = seconds_since(t0);
    fs::remove_all(root);

    Outcome out;
    out.pass = !a.empty() && a == b && a != "CALIBRATION FAILED" && secs < 120.0;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "two full calibrate+replay runs byte-identical: %s, %.1fs (<120s)",
                  a == b ? "yes" : "NO", secs);
    out.detail = buf;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::string scenario = "scenarios/default.scenario";
#ifdef VOLQUINT_SOURCE_DIR
    scenario = std::string(VOLQUINT_SOURCE_DIR) + "/scenarios/default.scenario";
#endif
    if (argc > 1) scenario = argv[1];

    struct Criterion {
        const char* name;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> criteria = {
        {"01 conjugacy-oracle", conjugacy_oracle},
        {"02 appendix-identity", appendix_identity},
        {"03 ale-properties", ale_properties},
        {"04 arma-recovery", arma_recovery},
        {"05 curve-validity", curve_validity},
        {"06 functional-regression-recovery", functional_recovery},
        {"07 bayesian-convergence", bayesian_convergence},
        {"08 ensemble-dominance", ensemble_dominance},
        {"09 auction-seasonality", auction_seasonality},
        {"10 gm-am-relation", gm_am_relation},
        {"11 no-lookahead-canary", no_lookahead},
        {"12 end-to-end-determinism", [&] { return end_to_end_determinism(scenario); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s: %s\n", out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str());
        std::fflush(stdout);
        failures += !out.pass;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
