#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specdecay/lattice.hpp"

namespace specdecay {

/// Distribution of a single site variable, evaluated through closed forms.
///
/// survival(t) is computed directly, never as 1 - cdf(t), so that far tails
/// keep full relative accuracy. sample(u) inverts the cdf at u in (0, 1).
class SiteDistribution {
public:
    enum class Kind { ParetoSymmetric, Uniform, Gaussian };

    /// Symmetric power-law tail: density (delta/2)|x|^(-1-delta) on |x| > 1.
    static SiteDistribution pareto_symmetric(double delta);
    static SiteDistribution uniform(double a, double b);
    static SiteDistribution gaussian(double mean, double sd);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double cdf(double t) const;
    [[nodiscard]] double survival(double t) const;
    [[nodiscard]] double sample(double u) const;
    /// E[X^2]; +infinity when the second moment diverges.
    [[nodiscard]] double second_moment() const;
    [[nodiscard]] bool finite_second_moment() const;
    /// Short human-readable tag such as "pareto(delta=3)".
    [[nodiscard]] std::string label() const;

    [[nodiscard]] double delta() const;
    [[nodiscard]] double lower() const;
    [[nodiscard]] double upper() const;
    [[nodiscard]] double mean() const;
    [[nodiscard]] double sd() const;

private:
    SiteDistribution(Kind kind, double p1, double p2) : kind_(kind), p1_(p1), p2_(p2) {}

    Kind kind_;
    double p1_;
    double p2_;
};

/// Deterministic counter-based stream: every variate is a pure function of
/// (master_seed, trial_index, site_rank), so trials can be generated in any
/// order, in parallel, with identical results.
struct StreamSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
};

std::uint64_t stream_word(const StreamSpec& stream, std::uint64_t site_rank);

/// Uniform variate in the open interval (0, 1); never returns 0, 1/2-ties
/// are impossible by construction of the 53-bit mapping.
double stream_unit(const StreamSpec& stream, std::uint64_t site_rank);

/// Polynomial envelope (1 + |n|)^(-alpha) in the cube's norm, or explicit
/// per-site weights overriding the formula.
struct DecayProfile {
    double alpha = 0.0;
    std::optional<std::vector<double>> custom_weights;

    /// Weights in canonical site order; validates custom weights if present.
    [[nodiscard]] std::vector<double> weights(const LatticeCube& cube) const;
};

/// Potential vector V(n) = weight(n) * X_n in canonical site order.
std::vector<double> sample_potential(std::span<const double> weights,
                                     const SiteDistribution& law,
                                     const StreamSpec& stream);

std::vector<double> sample_potential(const LatticeCube& cube, const DecayProfile& profile,
                                     const SiteDistribution& law, const StreamSpec& stream);

} // namespace specdecay
