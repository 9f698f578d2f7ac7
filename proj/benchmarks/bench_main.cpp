#include "volquint/harness.hpp"
#include "volquint/rng.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <filesystem>
#include <vector>

using namespace volquint;

namespace {

std::vector<double> arma_series(std::size_t n) {
    CounterRng rng(77);
    std::vector<double> y;
    y.reserve(n);
    double y_prev = 0, eps_prev = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double eps = 0.4 * rng.normal(0, t);
        y_prev = 0.7 * y_prev + eps - 0.3 * eps_prev;
        eps_prev = eps;
        y.push_back(y_prev);
    }
    return y;
}

void BM_CalibrateArma(benchmark::State& state) {
    auto y = arma_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto fit = calibrate_arma(y);
        benchmark::DoNotOptimize(fit.params.phi);
    }
}
BENCHMARK(BM_CalibrateArma)->Arg(500)->Arg(2000);

void BM_GrubbsFilter(benchmark::State& state) {
    CounterRng rng(5);
    std::vector<double> xs;
    for (int i = 0; i < state.range(0); ++i) xs.push_back(rng.normal(0, i));
    xs[3] += 9.0;
    for (auto _ : state) {
        auto res = grubbs_filter(xs);
        benchmark::DoNotOptimize(res.kept.size());
    }
}
BENCHMARK(BM_GrubbsFilter)->Arg(20)->Arg(180);

void BM_PredictCurve(benchmark::State& state) {
    Curve base;
    base.kind = CurveKind::c;
    base.values = shape_c_curve(CurveShape::u_shape, 39);
    FunctionalBetas betas;
    betas.predictor_names = {kGapPredictor, kVolumePercentilePredictor};
    betas.predictor_mean = {0.0, 0.5};
    betas.predictor_scale = {1.0, 0.3};
    betas.beta0.assign(39, 0.0);
    betas.betas.assign(2, std::vector<double>(39, 0.01));
    std::vector<double> x{1.2, 0.8};
    for (auto _ : state) {
        auto c = predict_curve(base, betas, x);
        benchmark::DoNotOptimize(c.values[0]);
    }
}
BENCHMARK(BM_PredictCurve);

void BM_IntradayPosterior(benchmark::State& state) {
    VolumePrior prior;
    prior.mu0 = std::log(1e6);
    prior.sigma0_sq = 0.04;
    CounterRng rng(9);
    std::vector<double> vols(39);
    for (int j = 0; j < 39; ++j) {
        vols[j] = std::exp(std::log(1e6 / 39.0) + 0.2 * rng.normal(0, j));
    }
    for (auto _ : state) {
        IntradayState s(prior, ModelRoute::bin_model, {});
        for (int j = 0; j < 39; ++j) {
            s.observe_bin(j, vols[j], 1.0 / 39.0, (j + 1) / 39.0);
            benchmark::DoNotOptimize(s.posterior().mu_p);
        }
    }
}
BENCHMARK(BM_IntradayPosterior);

void BM_ReplayDay(benchmark::State& state) {
    const auto dir = std::filesystem::temp_directory_path() / "vq_bench";
    std::filesystem::create_directories(dir);
    ScenarioSpec spec;
    spec.n_days = 300;
    spec.sigma_log = 0.4;
    spec.phi = 0.7;
    spec.theta = -0.3;
    spec.beta_gap = 0.3;
    spec.bin_noise = 0.15;
    spec.curve_gap_beta = 0.04;
    spec.seed = 1;
    BinGrid grid = BinGrid::from_session("09:30-16:00", 10);
    auto files = write_synth_files(generate(spec), spec, dir.string(), grid);
    RunConfig cfg;
    cfg.days_file = files.days_path;
    cfg.bins_file = files.bins_path;
    cfg.grid = grid;
    auto frames = load_frames(cfg);
    const auto& frame = frames.at("SYN");
    auto params = calibrate_symbol(frame, cfg, ExpiryCalendar{});
    const std::size_t day = frame.days.size() - 1;
    const auto& bins = frame.bins[static_cast<std::size_t>(frame.bins_index[day])];

    for (auto _ : state) {
        DayOpen open{frame.days[day].date, frame.days[day].open_price, frame.days[day].flags};
        DayReplay replay(params, cfg, ExpiryCalendar{}, std::span(frame.days.data(), day),
                         std::span(frame.continuous.data(), day), open);
        for (double v : bins.volumes) {
            benchmark::DoNotOptimize(replay.step(v).total);
        }
    }
    std::filesystem::remove_all(dir);
}
BENCHMARK(BM_ReplayDay);

} // namespace

BENCHMARK_MAIN();
