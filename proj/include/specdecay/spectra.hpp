#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "specdecay/operators.hpp"

namespace specdecay {

/// Eigenvalue list of one sampled operator plus the data needed to cite it.
struct SampleMeta {
    std::int64_t half_side = 0;
    int dim = 1;
    double alpha = 0.0;
    std::string law;
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
};

struct SpectralSample {
    std::vector<double> eigenvalues; // ascending
    SampleMeta meta;
};

/// Right-continuous step function x -> #{support <= x} / normalizer.
class EmpiricalCDF {
public:
    explicit EmpiricalCDF(std::vector<double> support);
    EmpiricalCDF(std::vector<double> support, std::int64_t normalizer);

    [[nodiscard]] double operator()(double x) const;
    /// Left limit F(x-).
    [[nodiscard]] double left_limit(double x) const;
    [[nodiscard]] std::int64_t count_at_or_below(double x) const;
    [[nodiscard]] const std::vector<double>& support() const noexcept { return support_; }
    [[nodiscard]] std::int64_t normalizer() const noexcept { return normalizer_; }

private:
    std::vector<double> support_; // ascending
    std::int64_t normalizer_;
};

/// Number of sample eigenvalues <= energy.
std::int64_t counting_function(const SpectralSample& sample, double energy);

/// p-Wasserstein distance between two equal-size empirical measures, via the
/// sorted (monotone) coupling: ((1/N) sum |a_(i) - b_(i)|^p)^(1/p), p >= 1.
double wasserstein_p(const EmpiricalCDF& a, const EmpiricalCDF& b, double p);

struct InequalityCertificate {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Checks sum_j (a_j - b_j)^2 <= tr(diff^2) for ascending spectra a, b of
/// operators differing by diff (Hoffman-Wielandt, optimal pairing is sorted).
InequalityCertificate hoffman_wielandt_certificate(std::span<const double> spectrum_a,
                                                   std::span<const double> spectrum_b,
                                                   const SymmetricOperator& diff);

struct WassersteinCertificate {
    double w2 = 0.0;
    double bound = 0.0;
    bool holds = false;
};

/// Checks W2(spec(H), spec(H0)) <= ((1/N) sum v_n^2)^(1/2) for H = H0 + diag(v).
WassersteinCertificate wasserstein_bound_certificate(const SpectralSample& perturbed,
                                                     const SpectralSample& reference,
                                                     std::span<const double> potential);

/// Integrated density of states of the free lattice Laplacian on Z^d.
///
/// d = 1 is the closed form 1 - acos(E/2)/pi. For d >= 2 the one-dimensional
/// band measure is discretized into `resolution` cells carrying their exact
/// probability mass at their center of mass, and the d-fold sum is built by
/// repeated convolution of those atoms; value() then has error well below
/// 1e-5 at resolution 1024.
class FreeIds {
public:
    FreeIds(int dim, int resolution = 2048);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] int resolution() const noexcept { return resolution_; }
    /// N0(E); exactly 0 below -2d and 1 above 2d.
    [[nodiscard]] double value(double energy) const;
    /// Linear interpolation of the cached table; cheaper than value() for
    /// d >= 2 and accurate to a few 1e-6 at the default resolution.
    [[nodiscard]] double value_from_grid(double energy) const;
    /// Cached uniform table on [-2d, 2d] with resolution + 1 nodes.
    [[nodiscard]] const std::vector<double>& grid_energies() const noexcept { return grid_e_; }
    [[nodiscard]] const std::vector<double>& grid_values() const noexcept { return grid_v_; }

private:
    [[nodiscard]] double convolved_value(double energy) const;

    int dim_;
    int resolution_;
    std::vector<double> atom_mass_;   // cell masses of the 1-d band measure
    std::vector<double> atom_center_; // matching centers of mass
    // Tabulated level-(d-1) cdf used by the top convolution when d >= 3.
    std::vector<double> lower_e_;
    std::vector<double> lower_v_;
    std::vector<double> grid_e_;
    std::vector<double> grid_v_;
};

/// Convenience wrapper over FreeIds / the d = 1 closed form.
double free_ids(int dim, double energy, int resolution = 2048);

/// Kolmogorov-Smirnov distance sup_x |F_emp(x) - model(x)| against a
/// continuous reference cdf, evaluated at the jump points of F_emp.
double ks_distance(const EmpiricalCDF& empirical,
                   const std::function<double(double)>& model_cdf);

} // namespace specdecay
