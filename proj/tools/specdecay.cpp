#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specdecay/experiments.hpp"
#include "specdecay/io.hpp"
#include "specdecay/version.hpp"

namespace {

using specdecay::ConfigError;

/// Shared flag values for one subcommand; only flags the user actually
/// passed override the config file.
struct CliOptions {
    std::string config_path;
    std::string out_dir;
    int d = 1;
    std::vector<std::int64_t> half_sides;
    double alpha = 1.0;
    double delta = 1.0;
    std::string law;
    std::int64_t trials = 100;
    std::uint64_t seed = 1;
    std::string norm = "sup";
    int resolution = 2048;
    int curve_points = 512;
    std::int64_t dense_limit = 4096;
    bool override_infinite_variance = false;
    bool diagonal_only = false;
};

nlohmann::json parse_law_string(const std::string& text) {
    std::vector<std::string> parts;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ':')) parts.push_back(token);
    if (parts.empty()) throw ConfigError("law: empty specification");
    nlohmann::json law;
    law["kind"] = parts[0];
    const auto number = [&](std::size_t i) {
        try {
            return std::stod(parts.at(i));
        } catch (const std::exception&) {
            throw ConfigError("law: bad numeric parameter in \"" + text + "\"");
        }
    };
    if (parts[0] == "pareto") {
        if (parts.size() > 2) throw ConfigError("law: expected pareto[:delta]");
        if (parts.size() == 2) law["delta"] = number(1);
    } else if (parts[0] == "uniform") {
        if (parts.size() != 3) throw ConfigError("law: expected uniform:a:b");
        law["a"] = number(1);
        law["b"] = number(2);
    } else if (parts[0] == "gaussian") {
        if (parts.size() != 3) throw ConfigError("law: expected gaussian:mean:sd");
        law["mean"] = number(1);
        law["sd"] = number(2);
    } else {
        throw ConfigError("law: unknown kind \"" + parts[0] + "\"");
    }
    return law;
}

void attach_options(CLI::App* sub, CliOptions& opts) {
    sub->add_option("--config", opts.config_path, "JSON config file")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("-d,--d", opts.d, "lattice dimension");
    sub->add_option("-L,--L", opts.half_sides, "cube half sides");
    sub->add_option("--alpha", opts.alpha, "decay exponent alpha");
    sub->add_option("--delta", opts.delta, "tail exponent delta");
    sub->add_option("--law", opts.law,
                    "site law: pareto[:delta] | uniform:a:b | gaussian:mean:sd");
    sub->add_option("--trials", opts.trials, "number of trials");
    sub->add_option("--seed", opts.seed, "master seed");
    sub->add_option("--norm", opts.norm, "site norm: sup | euclidean | l1");
    sub->add_option("--resolution", opts.resolution, "free IDS grid resolution");
    sub->add_option("--curve-points", opts.curve_points, "points per output curve");
    sub->add_option("--dense-limit", opts.dense_limit, "dense eigensolver size limit");
    sub->add_flag("--override-infinite-variance", opts.override_infinite_variance,
                  "run ids even if the law has infinite second moment");
    sub->add_flag("--diagonal-only", opts.diagonal_only,
                  "extremes: skip the operator solve, potential extremes only");
}

nlohmann::json assemble(const CLI::App* sub, const CliOptions& opts,
                        const std::string& experiment) {
    nlohmann::json base;
    if (!opts.config_path.empty()) {
        const std::string text = specdecay::read_text_file(opts.config_path);
        try {
            base = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config: invalid JSON: ") + e.what());
        }
        if (!base.is_object()) throw ConfigError("config: expected a JSON object");
    }
    base["experiment"] = experiment;
    if (sub->count("--d") > 0) base["d"] = opts.d;
    if (sub->count("--L") > 0) base["L"] = opts.half_sides;
    if (sub->count("--alpha") > 0) base["alpha"] = opts.alpha;
    if (sub->count("--delta") > 0) base["delta"] = opts.delta;
    if (sub->count("--law") > 0) base["law"] = parse_law_string(opts.law);
    if (sub->count("--trials") > 0) base["trials"] = opts.trials;
    if (sub->count("--seed") > 0) base["seed"] = opts.seed;
    if (sub->count("--norm") > 0) base["norm"] = opts.norm;
    if (sub->count("--resolution") > 0) base["resolution"] = opts.resolution;
    if (sub->count("--curve-points") > 0) base["curve_points"] = opts.curve_points;
    if (sub->count("--dense-limit") > 0) base["dense_limit"] = opts.dense_limit;
    if (sub->count("--override-infinite-variance") > 0)
        base["override_infinite_variance"] = true;
    if (sub->count("--diagonal-only") > 0) base["diagonal_only"] = true;
    return base;
}

void report(const specdecay::RunArtifacts& artifacts) {
    std::cout << "wrote " << artifacts.config_path.string() << "\n";
    std::cout << "wrote " << artifacts.trials_path.string() << "\n";
    std::cout << "wrote " << artifacts.curves_path.string() << "\n";
    std::cout << "wrote " << artifacts.summary_path.string() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("spectral experiments for lattice operators with decaying "
                             "random potential (v") +
                 specdecay::kVersion + ")"};
    app.require_subcommand(1);
    const std::vector<std::string> experiments = {"ids", "wasserstein", "extremes",
                                                  "free-ids", "spectrum"};
    std::vector<CliOptions> opts(experiments.size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < experiments.size(); ++i) {
        CLI::App* sub = app.add_subcommand(experiments[i]);
        attach_options(sub, opts[i]);
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
        for (std::size_t i = 0; i < experiments.size(); ++i) {
            if (!subs[i]->parsed()) continue;
            if (opts[i].out_dir.empty())
                throw ConfigError("config: --out <dir> is required");
            const nlohmann::json base = assemble(subs[i], opts[i], experiments[i]);
            const auto config = specdecay::ExperimentConfig::from_json(base);
            config.validate();
            const auto artifacts =
                specdecay::run_experiment(config, std::filesystem::path(opts[i].out_dir));
            report(artifacts);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const specdecay::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
