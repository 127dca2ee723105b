#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "specdecay/errors.hpp"
#include "specdecay/sampling.hpp"

namespace specdecay {

/// Site law selection as it appears in configuration files.
struct LawConfig {
    std::string kind = "uniform"; // "pareto" | "uniform" | "gaussian"
    double delta = 1.0;           // pareto
    double a = 0.0;               // uniform
    double b = 1.0;               // uniform
    double mean = 0.0;            // gaussian
    double sd = 1.0;              // gaussian
};

/// Fully resolved run description. Parsing fills experiment-dependent
/// defaults, so the canonical JSON echo of a config is self-contained.
struct ExperimentConfig {
    std::string experiment = "ids"; // ids | wasserstein | extremes | free-ids | spectrum
    int d = 1;
    std::vector<std::int64_t> half_sides = {100}; // JSON key "L"
    double alpha = 1.0;
    double delta = 1.0;
    LawConfig law;
    std::int64_t trials = 100;
    std::uint64_t seed = 1;
    std::string norm = "sup";
    int resolution = 2048;
    int curve_points = 512;
    std::int64_t dense_limit = 4096;
    bool override_infinite_variance = false;
    bool diagonal_only = false;

    /// Parses a JSON object, applying defaults for missing keys. The
    /// "experiment" key may be preset by the caller (CLI subcommand).
    static ExperimentConfig from_json(const nlohmann::json& j);

    /// Canonical form: every field explicit, keys sorted by nlohmann.
    [[nodiscard]] nlohmann::json to_json() const;

    /// Rejects invalid or out-of-scope combinations with ConfigError.
    void validate() const;

    [[nodiscard]] SiteDistribution make_law() const;
    [[nodiscard]] NormKind norm_kind() const;
};

} // namespace specdecay
