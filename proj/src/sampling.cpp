#include "specdecay/sampling.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace specdecay {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

/// Inverse of the standard normal cdf: rational initial guess (Acklam) plus
/// one Halley refinement against the erfc-based cdf, accurate to ~1e-15.
double probit(double u) {
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x;
    if (u < p_low) {
        const double q = std::sqrt(-2.0 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u <= 1.0 - p_low) {
        const double q = u - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-u));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = 0.5 * std::erfc(-x / kSqrt2) - u;
    const double f = e * kSqrt2Pi * std::exp(0.5 * x * x);
    return x - f / (1.0 + 0.5 * x * f);
}

} // namespace

SiteDistribution SiteDistribution::pareto_symmetric(double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("pareto_symmetric: delta must be > 0");
    return SiteDistribution(Kind::ParetoSymmetric, delta, 0.0);
}

SiteDistribution SiteDistribution::uniform(double a, double b) {
    if (!(a <= b)) throw std::invalid_argument("uniform: requires a <= b");
    return SiteDistribution(Kind::Uniform, a, b);
}

SiteDistribution SiteDistribution::gaussian(double mean, double sd) {
    if (!(sd > 0.0)) throw std::invalid_argument("gaussian: sd must be > 0");
    return SiteDistribution(Kind::Gaussian, mean, sd);
}

double SiteDistribution::cdf(double t) const {
    switch (kind_) {
        case Kind::ParetoSymmetric:
            if (t <= -1.0) return 0.5 * std::pow(-t, -p1_);
            if (t < 1.0) return 0.5;
            return 1.0 - 0.5 * std::pow(t, -p1_);
        case Kind::Uniform:
            if (t < p1_) return 0.0;
            if (t >= p2_) return 1.0;
            return (t - p1_) / (p2_ - p1_);
        case Kind::Gaussian:
            return 0.5 * std::erfc((p1_ - t) / (p2_ * kSqrt2));
    }
    throw std::logic_error("SiteDistribution: bad kind");
}

double SiteDistribution::survival(double t) const {
    switch (kind_) {
        case Kind::ParetoSymmetric:
            if (t >= 1.0) return 0.5 * std::pow(t, -p1_);
            if (t > -1.0) return 0.5;
            return 1.0 - 0.5 * std::pow(-t, -p1_);
        case Kind::Uniform:
            if (t < p1_) return 1.0;
            if (t >= p2_) return 0.0;
            return (p2_ - t) / (p2_ - p1_);
        case Kind::Gaussian:
            return 0.5 * std::erfc((t - p1_) / (p2_ * kSqrt2));
    }
    throw std::logic_error("SiteDistribution: bad kind");
}

double SiteDistribution::sample(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("SiteDistribution::sample: u must lie in (0, 1)");
    switch (kind_) {
        case Kind::ParetoSymmetric:
            // u = 1/2 cannot occur for stream variates; map it to the positive
            // branch so the inverse is total on (0, 1).
            if (u < 0.5) return -std::pow(2.0 * u, -1.0 / p1_);
            return std::pow(2.0 * (1.0 - u), -1.0 / p1_);
        case Kind::Uniform:
            return p1_ + u * (p2_ - p1_);
        case Kind::Gaussian:
            return p1_ + p2_ * probit(u);
    }
    throw std::logic_error("SiteDistribution: bad kind");
}

double SiteDistribution::second_moment() const {
    switch (kind_) {
        case Kind::ParetoSymmetric:
            if (p1_ <= 2.0) return std::numeric_limits<double>::infinity();
            return p1_ / (p1_ - 2.0);
        case Kind::Uniform:
            return (p1_ * p1_ + p1_ * p2_ + p2_ * p2_) / 3.0;
        case Kind::Gaussian:
            return p1_ * p1_ + p2_ * p2_;
    }
    throw std::logic_error("SiteDistribution: bad kind");
}

bool SiteDistribution::finite_second_moment() const {
    return std::isfinite(second_moment());
}

std::string SiteDistribution::label() const {
    std::ostringstream out;
    switch (kind_) {
        case Kind::ParetoSymmetric:
            out << "pareto(delta=" << p1_ << ")";
            break;
        case Kind::Uniform:
            out << "uniform(" << p1_ << "," << p2_ << ")";
            break;
        case Kind::Gaussian:
            out << "gaussian(mean=" << p1_ << ",sd=" << p2_ << ")";
            break;
    }
    return out.str();
}

double SiteDistribution::delta() const {
    if (kind_ != Kind::ParetoSymmetric)
        throw std::logic_error("SiteDistribution::delta: not a pareto law");
    return p1_;
}

double SiteDistribution::lower() const {
    if (kind_ != Kind::Uniform) throw std::logic_error("SiteDistribution::lower: not uniform");
    return p1_;
}

double SiteDistribution::upper() const {
    if (kind_ != Kind::Uniform) throw std::logic_error("SiteDistribution::upper: not uniform");
    return p2_;
}

double SiteDistribution::mean() const {
    if (kind_ != Kind::Gaussian) throw std::logic_error("SiteDistribution::mean: not gaussian");
    return p1_;
}

double SiteDistribution::sd() const {
    if (kind_ != Kind::Gaussian) throw std::logic_error("SiteDistribution::sd: not gaussian");
    return p2_;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t stream_word(const StreamSpec& stream, std::uint64_t site_rank) {
    std::uint64_t h = splitmix64(stream.master_seed);
    h = splitmix64(h ^ stream.trial_index);
    return splitmix64(h ^ site_rank);
}

double stream_unit(const StreamSpec& stream, std::uint64_t site_rank) {
    const std::uint64_t w = stream_word(stream, site_rank);
    return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> DecayProfile::weights(const LatticeCube& cube) const {
    const auto n = static_cast<std::size_t>(cube.site_count());
    if (custom_weights) {
        if (custom_weights->size() != n)
            throw std::invalid_argument("DecayProfile: custom_weights size mismatch");
        for (double w : *custom_weights)
            if (!std::isfinite(w))
                throw std::invalid_argument("DecayProfile: custom_weights must be finite");
        return *custom_weights;
    }
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("DecayProfile: alpha must be finite and >= 0");
    std::vector<double> out(n);
    cube.for_each_site([&](std::int64_t rank, std::span<const int> coords) {
        const double r = site_norm(coords, cube.norm());
        out[static_cast<std::size_t>(rank)] = std::pow(1.0 + r, -alpha);
    });
    return out;
}

std::vector<double> sample_potential(std::span<const double> weights,
                                     const SiteDistribution& law,
                                     const StreamSpec& stream) {
    std::vector<double> v(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i)
        v[i] = weights[i] * law.sample(stream_unit(stream, i));
    return v;
}

std::vector<double> sample_potential(const LatticeCube& cube, const DecayProfile& profile,
                                     const SiteDistribution& law, const StreamSpec& stream) {
    const std::vector<double> w = profile.weights(cube);
    return sample_potential(w, law, stream);
}

} // namespace specdecay
