#include "specdecay/config.hpp"

#include <cmath>
#include <set>

#include "specdecay/extremes.hpp"
#include "specdecay/lattice.hpp"

namespace specdecay {

namespace {

const std::set<std::string> kExperiments = {"ids", "wasserstein", "extremes", "free-ids",
                                            "spectrum"};
const std::set<std::string> kLawKinds = {"pareto", "uniform", "gaussian"};
const std::set<std::string> kKnownKeys = {
    "L",          "alpha",       "curve_points", "d",
    "delta",      "dense_limit", "diagonal_only", "experiment",
    "law",        "norm",        "override_infinite_variance", "resolution",
    "seed",       "trials"};

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("config: bad value for key \"") + key + "\"");
    }
}

std::int64_t default_cross_check_half_side(int d) {
    if (d == 1) return 5000;
    if (d == 2) return 60;
    return 8;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!kKnownKeys.contains(key))
            throw ConfigError("config: unknown key \"" + key + "\"");
    }
    ExperimentConfig cfg;
    cfg.experiment = get_or<std::string>(j, "experiment", cfg.experiment);
    if (!kExperiments.contains(cfg.experiment))
        throw ConfigError("config: unknown experiment \"" + cfg.experiment + "\"");
    cfg.d = get_or<int>(j, "d", cfg.d);
    cfg.alpha = get_or<double>(j, "alpha", cfg.alpha);
    cfg.delta = get_or<double>(j, "delta", cfg.delta);
    cfg.trials = get_or<std::int64_t>(j, "trials", cfg.trials);
    cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
    cfg.norm = get_or<std::string>(j, "norm", cfg.norm);
    cfg.resolution = get_or<int>(j, "resolution", cfg.resolution);
    cfg.curve_points = get_or<int>(j, "curve_points", cfg.curve_points);
    cfg.dense_limit = get_or<std::int64_t>(j, "dense_limit", cfg.dense_limit);
    cfg.override_infinite_variance =
        get_or<bool>(j, "override_infinite_variance", cfg.override_infinite_variance);
    cfg.diagonal_only = get_or<bool>(j, "diagonal_only", cfg.diagonal_only);

    if (j.contains("L")) {
        const auto& l = j.at("L");
        cfg.half_sides.clear();
        if (l.is_array()) {
            for (const auto& v : l) cfg.half_sides.push_back(v.get<std::int64_t>());
        } else if (l.is_number()) {
            cfg.half_sides.push_back(l.get<std::int64_t>());
        } else {
            throw ConfigError("config: \"L\" must be an integer or an array of integers");
        }
    } else if (cfg.experiment == "free-ids") {
        cfg.half_sides = {default_cross_check_half_side(cfg.d)};
    }

    if (j.contains("law")) {
        const auto& lj = j.at("law");
        if (!lj.is_object()) throw ConfigError("config: \"law\" must be an object");
        cfg.law.kind = get_or<std::string>(lj, "kind", std::string("uniform"));
        if (!kLawKinds.contains(cfg.law.kind))
            throw ConfigError("config: unknown law kind \"" + cfg.law.kind + "\"");
        if (cfg.law.kind == "pareto") {
            if (lj.contains("delta")) {
                cfg.law.delta = get_or<double>(lj, "delta", cfg.delta);
                if (cfg.experiment == "extremes" && j.contains("delta") &&
                    cfg.law.delta != cfg.delta)
                    throw ConfigError(
                        "config: law.delta conflicts with the scaling delta for extremes");
            } else {
                cfg.law.delta = cfg.delta;
            }
        }
        cfg.law.a = get_or<double>(lj, "a", cfg.law.a);
        cfg.law.b = get_or<double>(lj, "b", cfg.law.b);
        cfg.law.mean = get_or<double>(lj, "mean", cfg.law.mean);
        cfg.law.sd = get_or<double>(lj, "sd", cfg.law.sd);
    } else if (cfg.experiment == "extremes") {
        cfg.law.kind = "pareto";
        cfg.law.delta = cfg.delta;
    }
    return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json law_j;
    law_j["kind"] = law.kind;
    if (law.kind == "pareto") {
        law_j["delta"] = law.delta;
    } else if (law.kind == "uniform") {
        law_j["a"] = law.a;
        law_j["b"] = law.b;
    } else {
        law_j["mean"] = law.mean;
        law_j["sd"] = law.sd;
    }
    return nlohmann::json{{"experiment", experiment},
                          {"d", d},
                          {"L", half_sides},
                          {"alpha", alpha},
                          {"delta", delta},
                          {"law", law_j},
                          {"trials", trials},
                          {"seed", seed},
                          {"norm", norm},
                          {"resolution", resolution},
                          {"curve_points", curve_points},
                          {"dense_limit", dense_limit},
                          {"override_infinite_variance", override_infinite_variance},
                          {"diagonal_only", diagonal_only}};
}

SiteDistribution ExperimentConfig::make_law() const {
    try {
        if (law.kind == "pareto") return SiteDistribution::pareto_symmetric(law.delta);
        if (law.kind == "uniform") return SiteDistribution::uniform(law.a, law.b);
        if (law.kind == "gaussian") return SiteDistribution::gaussian(law.mean, law.sd);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: invalid law parameters: ") + e.what());
    }
    throw ConfigError("config: unknown law kind \"" + law.kind + "\"");
}

NormKind ExperimentConfig::norm_kind() const {
    try {
        return norm_kind_from_string(norm);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

void ExperimentConfig::validate() const {
    if (!kExperiments.contains(experiment))
        throw ConfigError("config: unknown experiment \"" + experiment + "\"");
    if (d < 1) throw ConfigError("config: d must be >= 1");
    if (half_sides.empty()) throw ConfigError("config: L must be non-empty");
    for (std::int64_t l : half_sides)
        if (l < 0) throw ConfigError("config: L entries must be >= 0");
    if (trials < 1) throw ConfigError("config: trials must be >= 1");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw ConfigError("config: alpha must be finite and >= 0");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw ConfigError("config: delta must be finite and > 0");
    if (resolution < 1) throw ConfigError("config: resolution must be >= 1");
    if (curve_points < 2) throw ConfigError("config: curve_points must be >= 2");
    if (dense_limit < 1) throw ConfigError("config: dense_limit must be >= 1");
    (void)norm_kind();
    const SiteDistribution dist = make_law();

    const auto site_count = [&](std::int64_t l) {
        try {
            return LatticeCube(l, d, NormKind::Sup).site_count();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    };

    if (experiment == "ids") {
        if (!dist.finite_second_moment() && !override_infinite_variance)
            throw ConfigError(
                "config: the site law has an infinite second moment, outside the scope "
                "of the ids experiment; set override_infinite_variance to force the run");
        if (d >= 2)
            for (std::int64_t l : half_sides)
                if (site_count(l) > dense_limit)
                    throw ConfigError(
                        "config: ids with d >= 2 needs (2L+1)^d <= dense_limit for the "
                        "dense eigensolver");
    }
    if (experiment == "wasserstein" || experiment == "spectrum") {
        if (d >= 2)
            for (std::int64_t l : half_sides)
                if (site_count(l) > dense_limit)
                    throw ConfigError(
                        "config: d >= 2 needs (2L+1)^d <= dense_limit for the dense "
                        "eigensolver");
    }
    if (experiment == "extremes") {
        if (law.kind != "pareto")
            throw ConfigError("config: extremes requires the pareto site law");
        if (law.delta != delta)
            throw ConfigError("config: extremes requires law.delta == delta");
        const ScalingRegime regime(d, alpha, delta); // throws ConfigError out of scope
        for (std::int64_t l : half_sides) {
            if (regime.regime() == Regime::Critical && l < 1)
                throw ConfigError("config: critical regime requires L >= 1");
            if (!diagonal_only && d >= 2 && site_count(l) > dense_limit)
                throw ConfigError(
                    "config: extremes with full solves and d >= 2 needs (2L+1)^d <= "
                    "dense_limit; set diagonal_only or shrink L");
        }
    }
    if (experiment == "free-ids" || (experiment == "ids" && d >= 2)) {
        if (d >= 2 && resolution < 1024)
            throw ConfigError("config: resolution must be >= 1024 for d >= 2");
    }
    if (experiment == "free-ids")
        for (std::int64_t l : half_sides) site_count(l);
}

} // namespace specdecay
