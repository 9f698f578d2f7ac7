#include "volquint/params.hpp"

#include "volquint/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace volquint {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json betas_to_json(const FunctionalBetas& b) {
    ordered_json j;
    j["beta0"] = b.beta0;
    j["betas"] = b.betas;
    j["predictor_names"] = b.predictor_names;
    j["predictor_mean"] = b.predictor_mean;
    j["predictor_scale"] = b.predictor_scale;
    j["degenerate_bins"] = b.degenerate_bins;
    return j;
}

FunctionalBetas betas_from_json(const ordered_json& j) {
    FunctionalBetas b;
    b.beta0 = j.at("beta0").get<std::vector<double>>();
    b.betas = j.at("betas").get<std::vector<std::vector<double>>>();
    b.predictor_names = j.at("predictor_names").get<std::vector<std::string>>();
    b.predictor_mean = j.at("predictor_mean").get<std::vector<double>>();
    b.predictor_scale = j.at("predictor_scale").get<std::vector<double>>();
    b.degenerate_bins = j.at("degenerate_bins").get<std::vector<int>>();
    return b;
}

} // namespace

std::string params_to_json(const CalibratedParams& p) {
    ordered_json j;
    j["schema_version"] = p.schema_version;
    j["symbol"] = p.symbol;
    j["bin_count"] = p.bin_count;
    j["kappa0"] = p.kappa0;

    ordered_json prior;
    prior["window"] = p.prior_window;
    prior["arma"] = {{"phi", p.arma.phi}, {"theta", p.arma.theta}, {"last_eps", p.arma.last_eps}};
    prior["arma_prior_only"] = p.arma_prior_only;
    prior["special_names"] = p.special_names;
    prior["special_betas"] = p.special_betas;
    prior["special_pooled"] = p.special_pooled;
    j["prior"] = prior;

    ordered_json curve;
    curve["fitted"] = p.curve_fitted;
    curve["base_c"] = p.base_curve.values;
    curve["functional"] = betas_to_json(p.curve_betas);
    j["curve"] = curve;

    ordered_json auction;
    auction["beta_expiry"] = p.auction.beta_expiry;
    auction["flagged"] = p.auction.flagged;
    auction["mean_window"] = p.auction.mean_window;
    auction["exclude_expiry_from_mean"] = p.auction.exclude_expiry_from_mean;
    j["auction"] = auction;

    j["route"] = route_name(p.route);
    j["omega_sq"] = p.omega_sq;

    ordered_json diag;
    diag["days"] = p.diag.days;
    diag["arma_obs"] = p.diag.arma_obs;
    diag["arma_loss"] = p.diag.arma_loss;
    diag["curve_days"] = p.diag.curve_days;
    diag["special_rows"] = p.diag.special_rows;
    diag["expiry_days"] = p.diag.expiry_days;
    diag["zero_bin_fraction"] = p.diag.zero_bin_fraction;
    j["diagnostics"] = diag;

    return j.dump(2) + "\n";
}

CalibratedParams params_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid parameter JSON: ") + e.what());
    }
    try {
        CalibratedParams p;
        p.schema_version = j.at("schema_version").get<int>();
        if (p.schema_version != 1) {
            throw DataError("unsupported parameter schema version " +
                            std::to_string(p.schema_version));
        }
        p.symbol = j.at("symbol").get<std::string>();
        p.bin_count = j.at("bin_count").get<int>();
        p.kappa0 = j.at("kappa0").get<double>();

        const auto& prior = j.at("prior");
        p.prior_window = prior.at("window").get<int>();
        p.arma.phi = prior.at("arma").at("phi").get<double>();
        p.arma.theta = prior.at("arma").at("theta").get<double>();
        p.arma.last_eps = prior.at("arma").at("last_eps").get<double>();
        p.arma_prior_only = prior.at("arma_prior_only").get<bool>();
        p.special_names = prior.at("special_names").get<std::vector<std::string>>();
        p.special_betas = prior.at("special_betas").get<std::vector<double>>();
        p.special_pooled = prior.at("special_pooled").get<bool>();

        const auto& curve = j.at("curve");
        p.curve_fitted = curve.at("fitted").get<bool>();
        p.base_curve.values = curve.at("base_c").get<std::vector<double>>();
        p.base_curve.kind = CurveKind::c;
        p.curve_betas = betas_from_json(curve.at("functional"));

        const auto& auction = j.at("auction");
        p.auction.beta_expiry = auction.at("beta_expiry").get<double>();
        p.auction.flagged = auction.at("flagged").get<bool>();
        p.auction.mean_window = auction.at("mean_window").get<int>();
        p.auction.exclude_expiry_from_mean = auction.at("exclude_expiry_from_mean").get<bool>();

        p.route = route_from_name(j.at("route").get<std::string>());
        p.omega_sq = j.at("omega_sq").get<std::vector<double>>();

        const auto& diag = j.at("diagnostics");
        p.diag.days = diag.at("days").get<std::size_t>();
        p.diag.arma_obs = diag.at("arma_obs").get<std::size_t>();
        p.diag.arma_loss = diag.at("arma_loss").get<double>();
        p.diag.curve_days = diag.at("curve_days").get<std::size_t>();
        p.diag.special_rows = diag.at("special_rows").get<std::size_t>();
        p.diag.expiry_days = diag.at("expiry_days").get<std::size_t>();
        p.diag.zero_bin_fraction = diag.at("zero_bin_fraction").get<double>();
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid parameter JSON: ") + e.what());
    }
}

void save_params(const std::string& dir, const CalibratedParams& p) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / (p.symbol + ".json");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write parameter file '" + path.string() + "'");
    out << params_to_json(p);
}

CalibratedParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open parameter file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return params_from_json(text);
}

CalibratedParams load_params(const std::string& dir, const std::string& symbol) {
    const auto path = std::filesystem::path(dir) / (symbol + ".json");
    if (!std::filesystem::exists(path)) {
        throw DataError("no calibrated parameters for symbol '" + symbol + "' in " + dir);
    }
    return load_params_file(path.string());
}

} // namespace volquint
