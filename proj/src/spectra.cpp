#include "specdecay/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specdecay {

EmpiricalCDF::EmpiricalCDF(std::vector<double> support)
    : EmpiricalCDF(std::move(support), 0) {}

EmpiricalCDF::EmpiricalCDF(std::vector<double> support, std::int64_t normalizer)
    : support_(std::move(support)), normalizer_(normalizer) {
    if (support_.empty()) throw std::invalid_argument("EmpiricalCDF: empty support");
    for (double v : support_)
        if (!std::isfinite(v))
            throw std::invalid_argument("EmpiricalCDF: support must be finite");
    std::sort(support_.begin(), support_.end());
    if (normalizer_ == 0) normalizer_ = static_cast<std::int64_t>(support_.size());
    if (normalizer_ < static_cast<std::int64_t>(support_.size()))
        throw std::invalid_argument("EmpiricalCDF: normalizer below support size");
}

double EmpiricalCDF::operator()(double x) const {
    return static_cast<double>(count_at_or_below(x)) / static_cast<double>(normalizer_);
}

double EmpiricalCDF::left_limit(double x) const {
    const auto it = std::lower_bound(support_.begin(), support_.end(), x);
    return static_cast<double>(it - support_.begin()) / static_cast<double>(normalizer_);
}

std::int64_t EmpiricalCDF::count_at_or_below(double x) const {
    const auto it = std::upper_bound(support_.begin(), support_.end(), x);
    return static_cast<std::int64_t>(it - support_.begin());
}

std::int64_t counting_function(const SpectralSample& sample, double energy) {
    const auto& ev = sample.eigenvalues;
    const auto it = std::upper_bound(ev.begin(), ev.end(), energy);
    return static_cast<std::int64_t>(it - ev.begin());
}

double wasserstein_p(const EmpiricalCDF& a, const EmpiricalCDF& b, double p) {
    if (!(p >= 1.0)) throw std::domain_error("wasserstein_p: requires p >= 1");
    if (a.support().size() != b.support().size() || a.normalizer() != b.normalizer())
        throw std::invalid_argument("wasserstein_p: measures must have equal size");
    const auto& xs = a.support();
    const auto& ys = b.support();
    const double n = static_cast<double>(a.normalizer());
    double acc = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double d = xs[i] - ys[i];
            acc += d * d;
        }
        return std::sqrt(acc / n);
    }
    if (p == 1.0) {
        for (std::size_t i = 0; i < xs.size(); ++i) acc += std::abs(xs[i] - ys[i]);
        return acc / n;
    }
    for (std::size_t i = 0; i < xs.size(); ++i)
        acc += std::pow(std::abs(xs[i] - ys[i]), p);
    return std::pow(acc / n, 1.0 / p);
}

InequalityCertificate hoffman_wielandt_certificate(std::span<const double> spectrum_a,
                                                   std::span<const double> spectrum_b,
                                                   const SymmetricOperator& diff) {
    if (spectrum_a.size() != spectrum_b.size() || spectrum_a.size() != diff.dim())
        throw std::invalid_argument("hoffman_wielandt_certificate: dimension mismatch");
    InequalityCertificate cert;
    for (std::size_t i = 0; i < spectrum_a.size(); ++i) {
        const double d = spectrum_a[i] - spectrum_b[i];
        cert.lhs += d * d;
    }
    cert.rhs = diff.trace_square();
    cert.holds = cert.lhs <= cert.rhs + 1e-9 * (1.0 + cert.rhs);
    return cert;
}

WassersteinCertificate wasserstein_bound_certificate(const SpectralSample& perturbed,
                                                     const SpectralSample& reference,
                                                     std::span<const double> potential) {
    const std::size_t n = perturbed.eigenvalues.size();
    if (n == 0 || reference.eigenvalues.size() != n || potential.size() != n)
        throw std::invalid_argument("wasserstein_bound_certificate: dimension mismatch");
    WassersteinCertificate cert;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = perturbed.eigenvalues[i] - reference.eigenvalues[i];
        acc += d * d;
    }
    cert.w2 = std::sqrt(acc / static_cast<double>(n));
    double v2 = 0.0;
    for (double v : potential) v2 += v * v;
    cert.bound = std::sqrt(v2 / static_cast<double>(n));
    cert.holds = cert.w2 <= cert.bound + 1e-9;
    return cert;
}

namespace {

/// One-dimensional band cdf: P(2 cos(theta) <= y) for uniform theta, i.e.
/// the arcsine-type law on [-2, 2].
double band_cdf_1d(double y) {
    if (y <= -2.0) return 0.0;
    if (y >= 2.0) return 1.0;
    return 1.0 - std::acos(0.5 * y) / std::numbers::pi;
}

/// Antiderivative of y * density(y): integral used for cell centers of mass.
double band_moment_1d(double y) {
    const double c = std::clamp(y, -2.0, 2.0);
    return -std::sqrt(std::max(0.0, 4.0 - c * c)) / std::numbers::pi;
}

double interp_table(const std::vector<double>& xs, const std::vector<double>& vs, double x) {
    if (x <= xs.front()) return 0.0;
    if (x >= xs.back()) return 1.0;
    const double step = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    const double t = (x - xs.front()) / step;
    const auto k = static_cast<std::size_t>(t);
    const std::size_t j = std::min(k, xs.size() - 2);
    const double frac = t - static_cast<double>(j);
    return vs[j] + frac * (vs[j + 1] - vs[j]);
}

std::vector<double> uniform_nodes(double lo, double hi, std::size_t count) {
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i)
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return xs;
}

} // namespace

FreeIds::FreeIds(int dim, int resolution) : dim_(dim), resolution_(resolution) {
    if (dim < 1) throw std::invalid_argument("FreeIds: dim must be >= 1");
    if (dim == 1) {
        if (resolution < 1) throw std::invalid_argument("FreeIds: resolution must be >= 1");
    } else if (resolution < 1024) {
        throw std::invalid_argument("FreeIds: resolution must be >= 1024 for dim >= 2");
    }
    if (dim >= 2) {
        const auto r = static_cast<std::size_t>(resolution);
        atom_mass_.resize(r);
        atom_center_.resize(r);
        double prev_cdf = 0.0;
        double prev_mom = band_moment_1d(-2.0);
        for (std::size_t j = 0; j < r; ++j) {
            const double edge = -2.0 + 4.0 * static_cast<double>(j + 1) / static_cast<double>(r);
            const double cdf = band_cdf_1d(edge);
            const double mom = band_moment_1d(edge);
            atom_mass_[j] = cdf - prev_cdf;
            atom_center_[j] = (mom - prev_mom) / atom_mass_[j];
            prev_cdf = cdf;
            prev_mom = mom;
        }
        // Tables for levels 2..dim-1 feed the top-level convolution.
        for (int level = 2; level < dim; ++level) {
            const double span = 2.0 * static_cast<double>(level);
            const std::size_t nodes = static_cast<std::size_t>(level) * r + 1;
            std::vector<double> xs = uniform_nodes(-span, span, nodes);
            std::vector<double> vs(nodes);
            for (std::size_t k = 0; k < nodes; ++k) {
                double acc = 0.0;
                if (level == 2) {
                    for (std::size_t j = 0; j < r; ++j)
                        acc += atom_mass_[j] * band_cdf_1d(xs[k] - atom_center_[j]);
                } else {
                    for (std::size_t j = 0; j < r; ++j)
                        acc += atom_mass_[j] *
                               interp_table(lower_e_, lower_v_, xs[k] - atom_center_[j]);
                }
                vs[k] = acc;
            }
            lower_e_ = std::move(xs);
            lower_v_ = std::move(vs);
        }
    }
    const double span = 2.0 * static_cast<double>(dim);
    grid_e_ = uniform_nodes(-span, span, static_cast<std::size_t>(resolution) + 1);
    grid_v_.resize(grid_e_.size());
    for (std::size_t i = 0; i < grid_e_.size(); ++i) grid_v_[i] = value(grid_e_[i]);
}

double FreeIds::convolved_value(double energy) const {
    double acc = 0.0;
    if (dim_ == 2) {
        for (std::size_t j = 0; j < atom_mass_.size(); ++j)
            acc += atom_mass_[j] * band_cdf_1d(energy - atom_center_[j]);
    } else {
        for (std::size_t j = 0; j < atom_mass_.size(); ++j)
            acc += atom_mass_[j] * interp_table(lower_e_, lower_v_, energy - atom_center_[j]);
    }
    return std::clamp(acc, 0.0, 1.0);
}

double FreeIds::value(double energy) const {
    const double span = 2.0 * static_cast<double>(dim_);
    if (energy <= -span) return 0.0;
    if (energy >= span) return 1.0;
    if (dim_ == 1) return band_cdf_1d(energy);
    return convolved_value(energy);
}

double FreeIds::value_from_grid(double energy) const {
    return interp_table(grid_e_, grid_v_, energy);
}

double free_ids(int dim, double energy, int resolution) {
    if (dim == 1) {
        if (energy <= -2.0) return 0.0;
        if (energy >= 2.0) return 1.0;
        return band_cdf_1d(energy);
    }
    const FreeIds ids(dim, resolution);
    return ids.value(energy);
}

double ks_distance(const EmpiricalCDF& empirical,
                   const std::function<double(double)>& model_cdf) {
    const auto& xs = empirical.support();
    const double n = static_cast<double>(empirical.normalizer());
    double dist = 0.0;
    std::size_t i = 0;
    while (i < xs.size()) {
        std::size_t j = i;
        while (j + 1 < xs.size() && xs[j + 1] == xs[i]) ++j;
        const double model = model_cdf(xs[i]);
        const double before = static_cast<double>(i) / n;
        const double after = static_cast<double>(j + 1) / n;
        dist = std::max(dist, std::max(after - model, model - before));
        i = j + 1;
    }
    return std::max(dist, 0.0);
}

} // namespace specdecay
