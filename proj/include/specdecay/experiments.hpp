#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "specdecay/config.hpp"

namespace specdecay {

/// Output of one experiment run: the canonical artifact paths plus the
/// parsed summary for in-process consumers (tests, the CLI report).
struct RunArtifacts {
    std::filesystem::path config_path;
    std::filesystem::path trials_path;
    std::filesystem::path curves_path;
    std::filesystem::path summary_path;
    nlohmann::json summary;
};

RunArtifacts run_ids(const ExperimentConfig& config, const std::filesystem::path& out_dir);
RunArtifacts run_wasserstein(const ExperimentConfig& config,
                             const std::filesystem::path& out_dir);
RunArtifacts run_extremes(const ExperimentConfig& config,
                          const std::filesystem::path& out_dir);
RunArtifacts run_free_ids(const ExperimentConfig& config,
                          const std::filesystem::path& out_dir);
RunArtifacts run_spectrum(const ExperimentConfig& config,
                          const std::filesystem::path& out_dir);

/// Validates and dispatches on config.experiment.
RunArtifacts run_experiment(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir);

} // namespace specdecay
