#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specdecay/eigensolve.hpp"
#include "specdecay/errors.hpp"
#include "specdecay/lattice.hpp"
#include "specdecay/sampling.hpp"

namespace specdecay {

enum class Regime { SubCritical, Critical, Ergodic };

std::string to_string(Regime regime);

/// Admissible exponent pair (alpha, delta) in dimension d and the matching
/// normalization Gamma_L of the extreme eigenvalues.
///
/// Classification: alpha = 0 is ergodic, alpha*delta = d is critical,
/// 0 < alpha*delta < d is sub-critical; alpha*delta > d is rejected.
class ScalingRegime {
public:
    ScalingRegime(int dim, double alpha, double delta);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double delta() const noexcept { return delta_; }
    [[nodiscard]] Regime regime() const noexcept { return regime_; }

    /// Gamma_L: (2L+1)^((d - alpha delta)/delta) sub-critical and ergodic,
    /// (ln(2L+1))^(1/delta) critical (needs L >= 1).
    [[nodiscard]] double gamma(std::int64_t half_side) const;

    /// Gamma_L^delta without the outer root, used by partial-sum constants.
    [[nodiscard]] double gamma_pow_delta(std::int64_t half_side) const;

private:
    int dim_;
    double alpha_;
    double delta_;
    Regime regime_;
};

/// Finite-volume constant b_L = Gamma_L^(-delta) sum_n (1+|n|)^(-alpha delta)
/// over the cube of half side L. Sup norm runs over shells in O(L); other
/// norms enumerate the cube.
double b_partial(const ScalingRegime& regime, std::int64_t half_side,
                 NormKind norm = NormKind::Sup);

struct BEstimate {
    double value = 0.0;
    /// |b(L*) - b(L*/2)|, a convergence proxy, not a rigorous error bound.
    double error_proxy = 0.0;
    std::int64_t l_star = 0;
};

/// Companion estimate of the limiting constant b at a large reference volume
/// L* (default 10^6 for d = 1 sup norm, 10^3 otherwise).
BEstimate b_estimate(const ScalingRegime& regime, NormKind norm = NormKind::Sup,
                     std::int64_t l_star = 0);

/// Exact distribution of max_n V(n)/Gamma_L over the cube: the product of
/// per-site factors F((1+|n|)^alpha Gamma_L x), accumulated in log space.
double exact_diagonal_max_cdf(const ScalingRegime& regime, std::int64_t half_side,
                              const SiteDistribution& law, double x,
                              NormKind norm = NormKind::Sup);

/// Exact distribution of min_n V(n)/Gamma_L: one minus the product of
/// survival factors, accumulated in log space.
double exact_diagonal_min_cdf(const ScalingRegime& regime, std::int64_t half_side,
                              const SiteDistribution& law, double x,
                              NormKind norm = NormKind::Sup);

/// Limiting laws of the normalized extremes: exp(-b/(2 x^delta)) on x > 0
/// for the maximum, 1 - exp(-b/(2|x|^delta)) on x < 0 for the minimum.
double limit_max_cdf(double b, double delta, double x);
double limit_min_cdf(double b, double delta, double x);

/// x with limit_max_cdf(b, delta, x) = q, for q in (0, 1).
double limit_max_quantile(double b, double delta, double q);
double limit_min_quantile(double b, double delta, double q);

struct ExtremeExperimentSpec {
    int dim = 1;
    double alpha = 1.0;
    double delta = 1.0;
    std::int64_t half_side = 100;
    NormKind norm = NormKind::Sup;
    std::int64_t trials = 1000;
    std::uint64_t master_seed = 1;
    /// Skip the Laplacian: extremes of the potential alone.
    bool diagonal_only = false;
    EigensolveOptions solver{};
    int curve_points = 512;
};

struct ExtremeTrialRecord {
    std::int64_t trial = 0;
    double diag_max = 0.0;
    double diag_min = 0.0;
    std::optional<double> e_max;
    std::optional<double> e_min;
};

struct KsEntry {
    std::string curve;     // e.g. "diag_max", "e_min"
    std::string reference; // "exact", "limit_b_partial", "limit_b_estimate"
    double distance = 0.0;
};

struct ExtremeCurve {
    std::vector<double> x;
    std::vector<double> ecdf;      // normalized operator extremes; empty if diagonal_only
    std::vector<double> ecdf_diag; // normalized potential extremes
    std::vector<double> exact;     // finite-volume product law
    std::vector<double> limit;     // limiting law at b = b_partial(L)
};

struct ExtremeExperimentResult {
    ExtremeExperimentSpec spec;
    Regime regime = Regime::SubCritical;
    double gamma = 0.0;
    double b_partial_at_l = 0.0;
    BEstimate b_est;
    std::vector<ExtremeTrialRecord> records;
    std::vector<KsEntry> ks;
    ExtremeCurve max_curve;
    ExtremeCurve min_curve;
};

/// Samples the potential (and optionally the full operator) over many trials
/// and compares every normalized extreme against the exact finite-volume law
/// and the limiting law. Every trial with an operator solve is checked
/// against the perturbation bound |E_extreme - diag_extreme| <= 2d; a
/// violation aborts the run with NumericalError.
ExtremeExperimentResult run_extreme_experiment(const ExtremeExperimentSpec& spec);

} // namespace specdecay
