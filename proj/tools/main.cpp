#include "volquint/errors.hpp"
#include "volquint/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

// Exit codes: 0 success, 1 data error, 2 calibration failure, 3 config error.
constexpr int kOk = 0;
constexpr int kDataError = 1;
constexpr int kCalibrationError = 2;
constexpr int kConfigError = 3;

struct CommonOpts {
    std::string config_file;
    int bin_minutes = 10;
    std::string session = "09:30-16:00";
    std::vector<std::string> overrides; // key=value pairs
    std::vector<CLI::Option*> grid_opts; // one per subcommand carrying them
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_file, "flat key=value config file");
    opts.grid_opts.push_back(
        cmd->add_option("--bin-minutes", opts.bin_minutes, "intraday bin size in minutes")
            ->capture_default_str());
    opts.grid_opts.push_back(
        cmd->add_option("--session", opts.session, "trading session, e.g. 09:30-16:00")
            ->capture_default_str());
    cmd->add_option("--set", opts.overrides, "extra config overrides as key=value");
}

volquint::RunConfig make_config(const CommonOpts& opts) {
    volquint::RunConfig cfg;
    if (!opts.config_file.empty()) cfg = volquint::load_config_file(opts.config_file, cfg);
    // CLI grid flags override the config file only when explicitly passed.
    bool grid_on_cli = false;
    for (const auto* o : opts.grid_opts) grid_on_cli |= o->count() > 0;
    if (grid_on_cli || opts.config_file.empty()) {
        cfg.grid = volquint::BinGrid::from_session(opts.session, opts.bin_minutes);
    }
    for (const auto& kv : opts.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw volquint::ConfigError("--set expects key=value, got '" + kv + "'");
        }
        cfg.apply(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"intraday volume forecasting: calibrate, replay, export, synth"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* calibrate = app.add_subcommand("calibrate", "fit per-symbol model parameters");
    std::string days_file, bins_file, out_dir;
    calibrate->add_option("--days", days_file, "daily records CSV")->required();
    calibrate->add_option("--bins", bins_file, "intraday bins CSV")->required();
    calibrate->add_option("--out", out_dir, "output directory for parameter files")->required();
    std::string calendar_file;
    calibrate->add_option("--calendar", calendar_file, "expiry calendar override CSV");
    add_common(calibrate, opts);

    auto* replay = app.add_subcommand("replay", "bin-by-bin out-of-sample replay");
    std::string params_dir, from_str, to_str, report_file, forecasts_file;
    replay->add_option("--days", days_file, "daily records CSV")->required();
    replay->add_option("--bins", bins_file, "intraday bins CSV")->required();
    replay->add_option("--params", params_dir, "calibrated parameter directory")->required();
    replay->add_option("--from", from_str, "first replay date (YYYY-MM-DD)")->required();
    replay->add_option("--to", to_str, "last replay date (YYYY-MM-DD)")->required();
    replay->add_option("--report", report_file, "metric report JSON path");
    replay->add_option("--forecasts", forecasts_file, "per-bin forecast JSONL path");
    replay->add_option("--calendar", calendar_file, "expiry calendar override CSV");
    add_common(replay, opts);

    auto* exportc = app.add_subcommand("export-curves", "bucketized curve CSVs for plotting");
    exportc->add_option("--days", days_file, "daily records CSV")->required();
    exportc->add_option("--bins", bins_file, "intraday bins CSV")->required();
    exportc->add_option("--params", params_dir, "calibrated parameter directory");
    exportc->add_option("--out", out_dir, "output directory")->required();
    add_common(exportc, opts);

    auto* synth = app.add_subcommand("synth", "generate a synthetic data set");
    std::string scenario_file;
    uint64_t seed = 0;
    bool seed_set = false;
    synth->add_option("--spec", scenario_file, "scenario file (key = value)")->required();
    synth->add_option("--out", out_dir, "output directory")->required();
    auto* seed_opt = synth->add_option("--seed", seed, "override the scenario seed");
    add_common(synth, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }
    seed_set = seed_opt->count() > 0;

    try {
        volquint::RunConfig cfg = make_config(opts);
        cfg.days_file = days_file;
        cfg.bins_file = bins_file;
        cfg.params_dir = params_dir;
        cfg.out_dir = out_dir;
        cfg.report_file = report_file;
        cfg.forecasts_file = forecasts_file;
        cfg.scenario_file = scenario_file;
        cfg.calendar_file = calendar_file;

        if (calibrate->parsed()) {
            cfg.params_dir = out_dir;
            auto outcome = volquint::cmd_calibrate(cfg);
            for (const auto& sym : outcome.succeeded) {
                std::cout << "calibrated " << sym << "\n";
            }
            for (const auto& [sym, reason] : outcome.failed) {
                std::cerr << "FAILED " << sym << ": " << reason << "\n";
            }
            if (!outcome.failed.empty()) return kCalibrationError;
        } else if (replay->parsed()) {
            auto from = volquint::Date::parse(from_str);
            auto to = volquint::Date::parse(to_str);
            auto report = volquint::cmd_replay(cfg, from, to);
            std::cout << report.to_text();
        } else if (exportc->parsed()) {
            volquint::cmd_export_curves(cfg);
            std::cout << "curves exported to " << out_dir << "\n";
        } else if (synth->parsed()) {
            if (seed_set) {
                // Late override: regenerate the spec with the CLI seed.
                auto spec = volquint::load_scenario_file(scenario_file);
                spec.seed = seed;
                volquint::BinGrid grid = cfg.grid;
                if (grid.bin_count() != spec.bin_count) {
                    grid.bin_minutes =
                        (grid.session_close - grid.session_open) / spec.bin_count;
                }
                auto out = volquint::generate(spec);
                auto files = volquint::write_synth_files(out, spec, out_dir, grid);
                std::cout << "wrote " << files.days_path << ", " << files.bins_path << ", "
                          << files.truth_path << "\n";
            } else {
                auto files = volquint::cmd_synth(cfg);
                std::cout << "wrote " << files.days_path << ", " << files.bins_path << ", "
                          << files.truth_path << "\n";
            }
        }
        return kOk;
    } catch (const volquint::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const volquint::CalibrationError& e) {
        std::cerr << "calibration error: " << e.what() << "\n";
        return kCalibrationError;
    } catch (const volquint::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
}
