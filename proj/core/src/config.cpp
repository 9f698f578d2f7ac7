#include "volquint/config.hpp"

#include "volquint/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace volquint {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& value) {
    double v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || p != value.data() + value.size()) {
        throw ConfigError("config key '" + key + "': invalid number '" + value + "'");
    }
    return v;
}

int to_int(const std::string& key, const std::string& value) {
    int v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || p != value.data() + value.size()) {
        throw ConfigError("config key '" + key + "': invalid integer '" + value + "'");
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config key '" + key + "': invalid boolean '" + value + "'");
}

} // namespace

void RunConfig::validate() const {
    grid.validate();
    if (prior_window <= 0 || curve_window <= 0 || dispersion_days <= 0 ||
        percentile_window <= 0) {
        throw ConfigError("window lengths must be positive");
    }
    if (!kappa_fraction_override && (kappa_fraction < 0.3 || kappa_fraction > 0.8)) {
        throw ConfigError("kappa_fraction must lie in [0.3, 0.8] "
                          "(set kappa_fraction_override = true to force)");
    }
    if (!(kappa_fraction > 0.0)) throw ConfigError("kappa_fraction must be positive");
    try {
        loss.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (routing_threshold < 0.0 || routing_threshold > 1.0) {
        throw ConfigError("routing_threshold must lie in [0, 1]");
    }
    if (reconcile_tolerance < 0.0) throw ConfigError("reconcile_tolerance must be non-negative");
    if (min_bins_for_variance < 2) throw ConfigError("min_bins_for_variance must be at least 2");
}

void RunConfig::apply(const std::string& key, const std::string& value) {
    if (key == "days_file") {
        days_file = value;
    } else if (key == "bins_file") {
        bins_file = value;
    } else if (key == "params_dir") {
        params_dir = value;
    } else if (key == "out_dir") {
        out_dir = value;
    } else if (key == "report_file") {
        report_file = value;
    } else if (key == "forecasts_file") {
        forecasts_file = value;
    } else if (key == "scenario_file") {
        scenario_file = value;
    } else if (key == "calendar_file") {
        calendar_file = value;
    } else if (key == "session") {
        grid = BinGrid::from_session(value, grid.bin_minutes);
    } else if (key == "bin_minutes") {
        grid.bin_minutes = to_int(key, value);
    } else if (key == "prior_window") {
        prior_window = to_int(key, value);
    } else if (key == "curve_window") {
        curve_window = to_int(key, value);
    } else if (key == "dispersion_days") {
        dispersion_days = to_int(key, value);
    } else if (key == "percentile_window") {
        percentile_window = to_int(key, value);
    } else if (key == "kappa_fraction") {
        kappa_fraction = to_double(key, value);
    } else if (key == "kappa_fraction_override") {
        kappa_fraction_override = to_bool(key, value);
    } else if (key == "over_weight") {
        loss.over_weight = to_double(key, value);
    } else if (key == "under_weight") {
        loss.under_weight = to_double(key, value);
    } else if (key == "loss_exponent") {
        loss.exponent = to_int(key, value);
    } else if (key == "routing_threshold") {
        routing_threshold = to_double(key, value);
    } else if (key == "reconcile_tolerance") {
        reconcile_tolerance = to_double(key, value);
    } else if (key == "total_includes_auction") {
        total_includes_auction = to_bool(key, value);
    } else if (key == "exclude_expiry_from_auction_mean") {
        exclude_expiry_from_auction_mean = to_bool(key, value);
    } else if (key == "min_bins_for_variance") {
        min_bins_for_variance = to_int(key, value);
    } else if (key == "sigma0_floor") {
        sigma0_floor = to_double(key, value);
    } else if (key == "sample_var_floor") {
        sample_var_floor = to_double(key, value);
    } else if (key == "omega_floor") {
        omega_floor = to_double(key, value);
    } else if (key == "grubbs_alpha") {
        grubbs_alpha = to_double(key, value);
    } else if (key == "smooth_betas") {
        smooth_betas = to_bool(key, value);
    } else if (key == "seed") {
        seed = static_cast<uint64_t>(to_double(key, value));
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config file '" + path + "' line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        base.apply(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return base;
}

} // namespace volquint
