#include "specdecay/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "specdecay/eigensolve.hpp"
#include "specdecay/extremes.hpp"
#include "specdecay/io.hpp"
#include "specdecay/lattice.hpp"
#include "specdecay/operators.hpp"
#include "specdecay/parallel.hpp"
#include "specdecay/spectra.hpp"
#include "specdecay/version.hpp"

namespace specdecay {

namespace {

void standard_preamble(CsvWriter& csv, const ExperimentConfig& config) {
    csv.comment(std::string(kArtifactName) + " v" + kVersion);
    csv.comment("config " + config.to_json().dump());
}

RunArtifacts finalize(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                      const CsvWriter& trials, const CsvWriter& curves,
                      nlohmann::json summary_body) {
    std::filesystem::create_directories(out_dir);
    RunArtifacts artifacts;
    artifacts.config_path = out_dir / "config.json";
    artifacts.trials_path = out_dir / "trials.csv";
    artifacts.curves_path = out_dir / "curves.csv";
    artifacts.summary_path = out_dir / "summary.json";

    const nlohmann::json config_json = config.to_json();
    write_text_file(artifacts.config_path, config_json.dump(2) + "\n");
    write_text_file(artifacts.trials_path, trials.str());
    write_text_file(artifacts.curves_path, curves.str());

    nlohmann::json summary;
    summary["version"] = kVersion;
    summary["config"] = config_json;
    for (auto& [key, value] : summary_body.items()) summary[key] = std::move(value);
    write_text_file(artifacts.summary_path, summary.dump(2) + "\n");
    artifacts.summary = std::move(summary);
    return artifacts;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
    std::vector<double> xs(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        xs[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    return xs;
}

struct SpectralRun {
    std::vector<std::vector<double>> spectra; // per trial, ascending
    std::vector<std::vector<double>> potentials;
};

/// Samples `trials` potentials on the cube and solves every perturbed
/// operator for its full spectrum, in parallel over trials.
SpectralRun solve_trials(const ExperimentConfig& config, std::span<const double> weights,
                         const SymmetricOperator& laplacian, const SiteDistribution& law) {
    SpectralRun run;
    run.spectra.assign(static_cast<std::size_t>(config.trials), {});
    run.potentials.assign(static_cast<std::size_t>(config.trials), {});
    EigensolveOptions opts;
    opts.dense_limit = static_cast<std::size_t>(config.dense_limit);
    chunked_parallel_for(config.trials, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            const StreamSpec stream{config.seed, static_cast<std::uint64_t>(t)};
            std::vector<double> v = sample_potential(weights, law, stream);
            const SymmetricOperator h = build_hamiltonian(laplacian, v);
            run.spectra[static_cast<std::size_t>(t)] = eigenvalues_symmetric(h, opts);
            run.potentials[static_cast<std::size_t>(t)] = std::move(v);
        }
    });
    return run;
}

SampleMeta make_meta(const ExperimentConfig& config, std::int64_t half_side,
                     std::int64_t trial, const SiteDistribution& law) {
    SampleMeta meta;
    meta.half_side = half_side;
    meta.dim = config.d;
    meta.alpha = config.alpha;
    meta.law = law.label();
    meta.master_seed = config.seed;
    meta.trial_index = static_cast<std::uint64_t>(trial);
    return meta;
}

} // namespace

RunArtifacts run_ids(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    config.validate();
    const SiteDistribution law = config.make_law();
    const NormKind norm = config.norm_kind();

    std::optional<FreeIds> model;
    if (config.d >= 2) model.emplace(config.d, config.resolution);
    const auto model_cdf = [&](double e) {
        return config.d == 1 ? free_ids(1, e) : model->value_from_grid(e);
    };

    CsvWriter trials_csv;
    standard_preamble(trials_csv, config);
    trials_csv.header({"L", "trial", "ks_free", "w2", "w2_bound", "w2_holds"});
    CsvWriter curves_csv;
    standard_preamble(curves_csv, config);
    curves_csv.header({"L", "E", "ids_empirical", "ids_free"});

    nlohmann::json per_l = nlohmann::json::array();
    bool all_hold = true;
    const double span = 2.0 * static_cast<double>(config.d) + 1.0;
    const std::vector<double> grid = uniform_grid(-span, span, config.curve_points);

    for (std::int64_t l : config.half_sides) {
        const LatticeCube cube(l, config.d, norm);
        const std::vector<double> weights = DecayProfile{config.alpha, {}}.weights(cube);
        const SymmetricOperator laplacian = build_laplacian(cube);
        const std::vector<double> free_spec = laplacian_spectrum_exact(cube);
        const SpectralRun run = solve_trials(config, weights, laplacian, law);

        const auto n = static_cast<std::size_t>(cube.site_count());
        std::vector<double> pooled;
        pooled.reserve(n * static_cast<std::size_t>(config.trials));
        double max_ks = 0.0;
        double sum_ks = 0.0;
        double sum_w2 = 0.0;
        bool l_holds = true;
        const SpectralSample reference{free_spec, SampleMeta{}};
        for (std::int64_t t = 0; t < config.trials; ++t) {
            const auto& spec = run.spectra[static_cast<std::size_t>(t)];
            const auto& v = run.potentials[static_cast<std::size_t>(t)];
            pooled.insert(pooled.end(), spec.begin(), spec.end());
            const EmpiricalCDF emp{spec};
            const double ks = ks_distance(emp, model_cdf);
            const SpectralSample sample{spec, make_meta(config, l, t, law)};
            const WassersteinCertificate cert =
                wasserstein_bound_certificate(sample, reference, v);
            max_ks = std::max(max_ks, ks);
            sum_ks += ks;
            sum_w2 += cert.w2;
            l_holds = l_holds && cert.holds;
            trials_csv.field(l);
            trials_csv.field(t);
            trials_csv.field(ks);
            trials_csv.field(cert.w2);
            trials_csv.field(cert.bound);
            trials_csv.field(std::int64_t{cert.holds ? 1 : 0});
            trials_csv.end_row();
        }
        const EmpiricalCDF pooled_cdf{std::move(pooled)};
        for (double e : grid) {
            curves_csv.field(l);
            curves_csv.field(e);
            curves_csv.field(pooled_cdf(e));
            curves_csv.field(model_cdf(e));
            curves_csv.end_row();
        }
        all_hold = all_hold && l_holds;
        per_l.push_back({{"L", l},
                         {"max_ks", max_ks},
                         {"mean_ks", sum_ks / static_cast<double>(config.trials)},
                         {"mean_w2", sum_w2 / static_cast<double>(config.trials)},
                         {"w2_bounds_hold", l_holds}});
    }
    nlohmann::json body;
    body["per_L"] = std::move(per_l);
    body["w2_bounds_hold"] = all_hold;
    return finalize(config, out_dir, trials_csv, curves_csv, std::move(body));
}

RunArtifacts run_wasserstein(const ExperimentConfig& config,
                             const std::filesystem::path& out_dir) {
    config.validate();
    const SiteDistribution law = config.make_law();
    const NormKind norm = config.norm_kind();

    CsvWriter trials_csv;
    standard_preamble(trials_csv, config);
    trials_csv.header(
        {"L", "trial", "hw_lhs", "hw_rhs", "hw_holds", "w2", "w2_bound", "w2_holds"});
    CsvWriter curves_csv;
    standard_preamble(curves_csv, config);
    curves_csv.header({"L", "E", "cdf_perturbed", "cdf_free"});

    nlohmann::json per_l = nlohmann::json::array();
    bool all_hold = true;
    const double span = 2.0 * static_cast<double>(config.d) + 1.0;
    const std::vector<double> grid = uniform_grid(-span, span, config.curve_points);

    for (std::int64_t l : config.half_sides) {
        const LatticeCube cube(l, config.d, norm);
        const std::vector<double> weights = DecayProfile{config.alpha, {}}.weights(cube);
        const SymmetricOperator laplacian = build_laplacian(cube);
        const std::vector<double> free_spec = laplacian_spectrum_exact(cube);
        const SpectralRun run = solve_trials(config, weights, laplacian, law);

        const SpectralSample reference{free_spec, SampleMeta{}};
        std::vector<double> pooled;
        bool l_holds = true;
        for (std::int64_t t = 0; t < config.trials; ++t) {
            const auto& spec = run.spectra[static_cast<std::size_t>(t)];
            const auto& v = run.potentials[static_cast<std::size_t>(t)];
            pooled.insert(pooled.end(), spec.begin(), spec.end());
            const SymmetricOperator diff = SymmetricOperator::diagonal(v);
            const InequalityCertificate hw =
                hoffman_wielandt_certificate(spec, free_spec, diff);
            const SpectralSample sample{spec, make_meta(config, l, t, law)};
            const WassersteinCertificate wb =
                wasserstein_bound_certificate(sample, reference, v);
            l_holds = l_holds && hw.holds && wb.holds;
            trials_csv.field(l);
            trials_csv.field(t);
            trials_csv.field(hw.lhs);
            trials_csv.field(hw.rhs);
            trials_csv.field(std::int64_t{hw.holds ? 1 : 0});
            trials_csv.field(wb.w2);
            trials_csv.field(wb.bound);
            trials_csv.field(std::int64_t{wb.holds ? 1 : 0});
            trials_csv.end_row();
        }
        const EmpiricalCDF pooled_cdf{std::move(pooled)};
        const EmpiricalCDF free_cdf{free_spec};
        for (double e : grid) {
            curves_csv.field(l);
            curves_csv.field(e);
            curves_csv.field(pooled_cdf(e));
            curves_csv.field(free_cdf(e));
            curves_csv.end_row();
        }
        all_hold = all_hold && l_holds;
        per_l.push_back({{"L", l}, {"certificates_hold", l_holds}});
    }
    nlohmann::json body;
    body["per_L"] = std::move(per_l);
    body["certificates_hold"] = all_hold;
    return finalize(config, out_dir, trials_csv, curves_csv, std::move(body));
}

RunArtifacts run_extremes(const ExperimentConfig& config,
                          const std::filesystem::path& out_dir) {
    config.validate();

    CsvWriter trials_csv;
    standard_preamble(trials_csv, config);
    trials_csv.header({"L", "trial", "E_max", "E_min", "diag_max", "diag_min", "gamma_L"});
    CsvWriter curves_csv;
    standard_preamble(curves_csv, config);
    curves_csv.header({"L", "side", "x", "ecdf", "ecdf_diag", "exact_cdf", "limit_cdf"});

    nlohmann::json per_l = nlohmann::json::array();
    for (std::int64_t l : config.half_sides) {
        ExtremeExperimentSpec spec;
        spec.dim = config.d;
        spec.alpha = config.alpha;
        spec.delta = config.delta;
        spec.half_side = l;
        spec.norm = config.norm_kind();
        spec.trials = config.trials;
        spec.master_seed = config.seed;
        spec.diagonal_only = config.diagonal_only;
        spec.solver.dense_limit = static_cast<std::size_t>(config.dense_limit);
        spec.curve_points = config.curve_points;
        const ExtremeExperimentResult result = run_extreme_experiment(spec);

        for (const ExtremeTrialRecord& rec : result.records) {
            trials_csv.field(l);
            trials_csv.field(rec.trial);
            trials_csv.field(rec.e_max);
            trials_csv.field(rec.e_min);
            trials_csv.field(rec.diag_max);
            trials_csv.field(rec.diag_min);
            trials_csv.field(result.gamma);
            trials_csv.end_row();
        }
        const auto emit_curve = [&](const char* side, const ExtremeCurve& curve) {
            for (std::size_t i = 0; i < curve.x.size(); ++i) {
                curves_csv.field(l);
                curves_csv.field(std::string_view(side));
                curves_csv.field(curve.x[i]);
                curves_csv.field(curve.ecdf.empty() ? std::optional<double>{}
                                                    : std::optional<double>{curve.ecdf[i]});
                curves_csv.field(curve.ecdf_diag[i]);
                curves_csv.field(curve.exact[i]);
                curves_csv.field(curve.limit[i]);
                curves_csv.end_row();
            }
        };
        emit_curve("max", result.max_curve);
        emit_curve("min", result.min_curve);

        nlohmann::json ks = nlohmann::json::array();
        for (const KsEntry& entry : result.ks)
            ks.push_back({{"curve", entry.curve},
                          {"reference", entry.reference},
                          {"distance", entry.distance}});
        per_l.push_back({{"L", l},
                         {"regime", to_string(result.regime)},
                         {"gamma", result.gamma},
                         {"b_partial", result.b_partial_at_l},
                         {"b_estimate",
                          {{"value", result.b_est.value},
                           {"error_proxy", result.b_est.error_proxy},
                           {"L_star", result.b_est.l_star}}},
                         {"ks", std::move(ks)}});
    }
    nlohmann::json body;
    body["per_L"] = std::move(per_l);
    return finalize(config, out_dir, trials_csv, curves_csv, std::move(body));
}

RunArtifacts run_free_ids(const ExperimentConfig& config,
                          const std::filesystem::path& out_dir) {
    config.validate();
    const FreeIds model(config.d, config.resolution);
    const std::int64_t l_cross = config.half_sides.front();
    const LatticeCube cube(l_cross, config.d);
    const std::vector<double> finite_spec = laplacian_spectrum_exact(cube);
    const EmpiricalCDF finite_cdf{finite_spec};

    CsvWriter trials_csv;
    standard_preamble(trials_csv, config);
    trials_csv.header({"trial"});
    CsvWriter curves_csv;
    standard_preamble(curves_csv, config);
    curves_csv.header({"E", "ids_free", "ids_finite_L", "abs_gap"});

    double max_gap = 0.0;
    const auto& grid_e = model.grid_energies();
    const auto& grid_v = model.grid_values();
    for (std::size_t i = 0; i < grid_e.size(); ++i) {
        const double fin = finite_cdf(grid_e[i]);
        const double gap = std::abs(grid_v[i] - fin);
        max_gap = std::max(max_gap, gap);
        curves_csv.field(grid_e[i]);
        curves_csv.field(grid_v[i]);
        curves_csv.field(fin);
        curves_csv.field(gap);
        curves_csv.end_row();
    }

    double symmetry_dev = 0.0;
    const double span = 2.0 * static_cast<double>(config.d);
    for (double e : uniform_grid(-span, span, 1000))
        symmetry_dev = std::max(symmetry_dev,
                                std::abs(model.value(e) + model.value(-e) - 1.0));

    nlohmann::json body;
    body["L_cross"] = l_cross;
    body["max_abs_gap"] = max_gap;
    body["symmetry_max_abs_dev"] = symmetry_dev;
    return finalize(config, out_dir, trials_csv, curves_csv, std::move(body));
}

RunArtifacts run_spectrum(const ExperimentConfig& config,
                          const std::filesystem::path& out_dir) {
    config.validate();
    const SiteDistribution law = config.make_law();
    const NormKind norm = config.norm_kind();

    CsvWriter trials_csv;
    standard_preamble(trials_csv, config);
    trials_csv.header({"L", "trial", "e_min", "e_max", "trace", "trace_square"});
    CsvWriter curves_csv;
    standard_preamble(curves_csv, config);
    curves_csv.header({"L", "trial", "k", "lambda", "lambda_free"});

    nlohmann::json per_l = nlohmann::json::array();
    for (std::int64_t l : config.half_sides) {
        const LatticeCube cube(l, config.d, norm);
        const std::vector<double> weights = DecayProfile{config.alpha, {}}.weights(cube);
        const SymmetricOperator laplacian = build_laplacian(cube);
        const std::vector<double> free_spec = laplacian_spectrum_exact(cube);
        const SpectralRun run = solve_trials(config, weights, laplacian, law);
        for (std::int64_t t = 0; t < config.trials; ++t) {
            const auto& spec = run.spectra[static_cast<std::size_t>(t)];
            const auto& v = run.potentials[static_cast<std::size_t>(t)];
            const SymmetricOperator h =
                build_hamiltonian(laplacian, v); // cheap rebuild for traces
            trials_csv.field(l);
            trials_csv.field(t);
            trials_csv.field(spec.front());
            trials_csv.field(spec.back());
            trials_csv.field(h.trace());
            trials_csv.field(h.trace_square());
            trials_csv.end_row();
            for (std::size_t k = 0; k < spec.size(); ++k) {
                curves_csv.field(l);
                curves_csv.field(t);
                curves_csv.field(static_cast<std::int64_t>(k));
                curves_csv.field(spec[k]);
                curves_csv.field(free_spec[k]);
                curves_csv.end_row();
            }
        }
        per_l.push_back({{"L", l}, {"trials", config.trials}});
    }
    nlohmann::json body;
    body["per_L"] = std::move(per_l);
    return finalize(config, out_dir, trials_csv, curves_csv, std::move(body));
}

RunArtifacts run_experiment(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir) {
    config.validate();
    if (config.experiment == "ids") return run_ids(config, out_dir);
    if (config.experiment == "wasserstein") return run_wasserstein(config, out_dir);
    if (config.experiment == "extremes") return run_extremes(config, out_dir);
    if (config.experiment == "free-ids") return run_free_ids(config, out_dir);
    if (config.experiment == "spectrum") return run_spectrum(config, out_dir);
    throw ConfigError("run_experiment: unknown experiment \"" + config.experiment + "\"");
}

} // namespace specdecay
