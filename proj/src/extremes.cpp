#include "specdecay/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "specdecay/operators.hpp"
#include "specdecay/parallel.hpp"
#include "specdecay/spectra.hpp"

namespace specdecay {

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::SubCritical: return "sub_critical";
        case Regime::Critical: return "critical";
        case Regime::Ergodic: return "ergodic";
    }
    throw std::logic_error("unknown regime");
}

ScalingRegime::ScalingRegime(int dim, double alpha, double delta)
    : dim_(dim), alpha_(alpha), delta_(delta), regime_(Regime::SubCritical) {
    if (dim < 1) throw ConfigError("ScalingRegime: dim must be >= 1");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw ConfigError("ScalingRegime: delta must be finite and > 0");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw ConfigError("ScalingRegime: alpha must be finite and >= 0");
    const double product = alpha * delta;
    const double d = static_cast<double>(dim);
    if (product > d * (1.0 + 1e-12))
        throw ConfigError("ScalingRegime: alpha * delta > dim is outside scope");
    if (alpha == 0.0)
        regime_ = Regime::Ergodic;
    else if (std::abs(product - d) <= 1e-12 * d)
        regime_ = Regime::Critical;
    else
        regime_ = Regime::SubCritical;
}

double ScalingRegime::gamma(std::int64_t half_side) const {
    return std::pow(gamma_pow_delta(half_side), 1.0 / delta_);
}

double ScalingRegime::gamma_pow_delta(std::int64_t half_side) const {
    if (half_side < 0) throw std::invalid_argument("gamma: half_side must be >= 0");
    const double side = static_cast<double>(2 * half_side + 1);
    switch (regime_) {
        case Regime::SubCritical:
            return std::pow(side, static_cast<double>(dim_) - alpha_ * delta_);
        case Regime::Critical:
            if (half_side < 1)
                throw ConfigError("gamma: critical regime requires half_side >= 1");
            return std::log(side);
        case Regime::Ergodic: {
            double acc = 1.0;
            for (int i = 0; i < dim_; ++i) acc *= side;
            return acc;
        }
    }
    throw std::logic_error("unknown regime");
}

namespace {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double value) {
        const double y = value - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

/// Per-radius factors of the diagonal law: multiplicity and scale
/// (1+r)^alpha * Gamma_L, grouped by sup-norm shell when possible.
struct DiagonalLawTerms {
    std::vector<double> multiplicity;
    std::vector<double> scale_over_gamma; // (1 + |n|)^alpha
};

DiagonalLawTerms diagonal_law_terms(const ScalingRegime& regime, std::int64_t half_side,
                                    NormKind norm) {
    DiagonalLawTerms terms;
    if (norm == NormKind::Sup) {
        terms.multiplicity.reserve(static_cast<std::size_t>(half_side) + 1);
        terms.scale_over_gamma.reserve(static_cast<std::size_t>(half_side) + 1);
        for (std::int64_t r = 0; r <= half_side; ++r) {
            terms.multiplicity.push_back(
                static_cast<double>(shell_count(regime.dim(), r)));
            terms.scale_over_gamma.push_back(
                std::pow(1.0 + static_cast<double>(r), regime.alpha()));
        }
        return terms;
    }
    const LatticeCube cube(half_side, regime.dim(), norm);
    terms.multiplicity.assign(static_cast<std::size_t>(cube.site_count()), 1.0);
    terms.scale_over_gamma.resize(static_cast<std::size_t>(cube.site_count()));
    cube.for_each_site([&](std::int64_t rank, std::span<const int> coords) {
        terms.scale_over_gamma[static_cast<std::size_t>(rank)] =
            std::pow(1.0 + site_norm(coords, norm), regime.alpha());
    });
    return terms;
}

double product_cdf_from_terms(const DiagonalLawTerms& terms, const SiteDistribution& law,
                              double gamma, double x, bool max_side) {
    KahanSum log_product;
    for (std::size_t i = 0; i < terms.multiplicity.size(); ++i) {
        const double t = x * gamma * terms.scale_over_gamma[i];
        // log F = log1p(-S) keeps accuracy when the factor is close to 1.
        const double complement = max_side ? law.survival(t) : law.cdf(t);
        // A factor that underflows to 0 settles the whole product; bail out
        // before -inf poisons the compensated sum.
        if (complement >= 1.0) return max_side ? 0.0 : 1.0;
        log_product.add(terms.multiplicity[i] * std::log1p(-complement));
    }
    const double log_m = log_product.sum;
    if (max_side) return std::clamp(std::exp(log_m), 0.0, 1.0);
    return std::clamp(-std::expm1(log_m), 0.0, 1.0);
}

std::int64_t default_l_star(const ScalingRegime& regime, NormKind norm) {
    return (norm == NormKind::Sup && regime.dim() == 1) ? 1000000 : 1000;
}

} // namespace

double b_partial(const ScalingRegime& regime, std::int64_t half_side, NormKind norm) {
    if (half_side < 0) throw std::invalid_argument("b_partial: half_side must be >= 0");
    const double exponent = -regime.alpha() * regime.delta();
    KahanSum sum;
    if (norm == NormKind::Sup) {
        for (std::int64_t r = 0; r <= half_side; ++r)
            sum.add(static_cast<double>(shell_count(regime.dim(), r)) *
                    std::pow(1.0 + static_cast<double>(r), exponent));
    } else {
        const LatticeCube cube(half_side, regime.dim(), norm);
        cube.for_each_site([&](std::int64_t, std::span<const int> coords) {
            sum.add(std::pow(1.0 + site_norm(coords, norm), exponent));
        });
    }
    return sum.sum / regime.gamma_pow_delta(half_side);
}

BEstimate b_estimate(const ScalingRegime& regime, NormKind norm, std::int64_t l_star) {
    if (l_star == 0) l_star = default_l_star(regime, norm);
    if (l_star < 2) throw std::invalid_argument("b_estimate: l_star must be >= 2");
    BEstimate est;
    est.l_star = l_star;
    est.value = b_partial(regime, l_star, norm);
    est.error_proxy = std::abs(est.value - b_partial(regime, l_star / 2, norm));
    return est;
}

double exact_diagonal_max_cdf(const ScalingRegime& regime, std::int64_t half_side,
                              const SiteDistribution& law, double x, NormKind norm) {
    const DiagonalLawTerms terms = diagonal_law_terms(regime, half_side, norm);
    return product_cdf_from_terms(terms, law, regime.gamma(half_side), x, true);
}

double exact_diagonal_min_cdf(const ScalingRegime& regime, std::int64_t half_side,
                              const SiteDistribution& law, double x, NormKind norm) {
    const DiagonalLawTerms terms = diagonal_law_terms(regime, half_side, norm);
    return product_cdf_from_terms(terms, law, regime.gamma(half_side), x, false);
}

double limit_max_cdf(double b, double delta, double x) {
    if (!(b > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("limit_max_cdf: b and delta must be > 0");
    if (x <= 0.0) return 0.0;
    return std::exp(-0.5 * b * std::pow(x, -delta));
}

double limit_min_cdf(double b, double delta, double x) {
    if (!(b > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("limit_min_cdf: b and delta must be > 0");
    if (x >= 0.0) return 1.0;
    return -std::expm1(-0.5 * b * std::pow(-x, -delta));
}

double limit_max_quantile(double b, double delta, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("limit_max_quantile: q must lie in (0, 1)");
    return std::pow(-0.5 * b / std::log(q), 1.0 / delta);
}

double limit_min_quantile(double b, double delta, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("limit_min_quantile: q must lie in (0, 1)");
    return -std::pow(-0.5 * b / std::log1p(-q), 1.0 / delta);
}

namespace {

std::vector<double> uniform_grid(double lo, double hi, int points) {
    std::vector<double> xs(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        xs[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    return xs;
}

} // namespace

ExtremeExperimentResult run_extreme_experiment(const ExtremeExperimentSpec& spec) {
    const ScalingRegime regime(spec.dim, spec.alpha, spec.delta);
    if (spec.trials < 1) throw ConfigError("run_extreme_experiment: trials must be >= 1");
    if (spec.curve_points < 2)
        throw ConfigError("run_extreme_experiment: curve_points must be >= 2");
    if (regime.regime() == Regime::Critical && spec.half_side < 1)
        throw ConfigError("run_extreme_experiment: critical regime requires half_side >= 1");

    const LatticeCube cube(spec.half_side, spec.dim, spec.norm);
    const SiteDistribution law = SiteDistribution::pareto_symmetric(spec.delta);
    const DecayProfile profile{spec.alpha, std::nullopt};
    const std::vector<double> weights = profile.weights(cube);
    const double gamma = regime.gamma(spec.half_side);
    const double two_d = 2.0 * static_cast<double>(spec.dim);

    ExtremeExperimentResult result;
    result.spec = spec;
    result.regime = regime.regime();
    result.gamma = gamma;
    result.b_partial_at_l = b_partial(regime, spec.half_side, spec.norm);
    result.b_est = b_estimate(regime, spec.norm);

    std::optional<SymmetricOperator> laplacian;
    if (!spec.diagonal_only) {
        if (spec.dim >= 2 && cube.site_count() > static_cast<std::int64_t>(spec.solver.dense_limit))
            throw ConfigError(
                "run_extreme_experiment: full solve for dim >= 2 needs site count "
                "<= solver.dense_limit; use diagonal_only or shrink the cube");
        laplacian = build_laplacian(cube);
    }

    result.records.assign(static_cast<std::size_t>(spec.trials), ExtremeTrialRecord{});
    chunked_parallel_for(spec.trials, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            const StreamSpec stream{spec.master_seed, static_cast<std::uint64_t>(t)};
            const std::vector<double> v = sample_potential(weights, law, stream);
            ExtremeTrialRecord rec;
            rec.trial = t;
            const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
            rec.diag_min = *lo;
            rec.diag_max = *hi;
            if (laplacian) {
                const SymmetricOperator h = build_hamiltonian(*laplacian, v);
                const auto [e_min, e_max] = extreme_eigenvalues(h, spec.solver);
                if (std::abs(e_max - rec.diag_max) > two_d ||
                    std::abs(e_min - rec.diag_min) > two_d) {
                    std::ostringstream msg;
                    msg << "run_extreme_experiment: perturbation bound violated at trial "
                        << t << ": |E - diag| exceeds " << two_d;
                    throw NumericalError(msg.str());
                }
                rec.e_min = e_min;
                rec.e_max = e_max;
            }
            result.records[static_cast<std::size_t>(t)] = rec;
        }
    });

    const auto normalized = [&](auto&& take) {
        std::vector<double> xs;
        xs.reserve(result.records.size());
        for (const ExtremeTrialRecord& rec : result.records) xs.push_back(take(rec) / gamma);
        std::sort(xs.begin(), xs.end());
        return xs;
    };
    const EmpiricalCDF diag_max_cdf(normalized([](const auto& r) { return r.diag_max; }));
    const EmpiricalCDF diag_min_cdf(normalized([](const auto& r) { return r.diag_min; }));
    std::optional<EmpiricalCDF> e_max_cdf;
    std::optional<EmpiricalCDF> e_min_cdf;
    if (!spec.diagonal_only) {
        e_max_cdf.emplace(normalized([](const auto& r) { return *r.e_max; }));
        e_min_cdf.emplace(normalized([](const auto& r) { return *r.e_min; }));
    }

    const DiagonalLawTerms terms = diagonal_law_terms(regime, spec.half_side, spec.norm);
    const auto exact_max = [&](double x) {
        return product_cdf_from_terms(terms, law, gamma, x, true);
    };
    const auto exact_min = [&](double x) {
        return product_cdf_from_terms(terms, law, gamma, x, false);
    };
    const double b_ref = result.b_partial_at_l;
    const double b_est = result.b_est.value;
    const double delta = spec.delta;
    const auto limit_max_ref = [&](double x) { return limit_max_cdf(b_ref, delta, x); };
    const auto limit_min_ref = [&](double x) { return limit_min_cdf(b_ref, delta, x); };

    const auto add_ks = [&](const std::string& curve, const EmpiricalCDF& cdf, bool max_side) {
        const auto exact = max_side ? std::function<double(double)>(exact_max)
                                    : std::function<double(double)>(exact_min);
        result.ks.push_back({curve, "exact", ks_distance(cdf, exact)});
        result.ks.push_back(
            {curve, "limit_b_partial",
             ks_distance(cdf, [&](double x) {
                 return max_side ? limit_max_cdf(b_ref, delta, x) : limit_min_cdf(b_ref, delta, x);
             })});
        result.ks.push_back(
            {curve, "limit_b_estimate",
             ks_distance(cdf, [&](double x) {
                 return max_side ? limit_max_cdf(b_est, delta, x) : limit_min_cdf(b_est, delta, x);
             })});
    };
    add_ks("diag_max", diag_max_cdf, true);
    add_ks("diag_min", diag_min_cdf, false);
    if (e_max_cdf) add_ks("e_max", *e_max_cdf, true);
    if (e_min_cdf) add_ks("e_min", *e_min_cdf, false);

    result.max_curve.x = uniform_grid(limit_max_quantile(b_ref, delta, 0.001),
                                      limit_max_quantile(b_ref, delta, 0.999),
                                      spec.curve_points);
    result.min_curve.x = uniform_grid(limit_min_quantile(b_ref, delta, 0.001),
                                      limit_min_quantile(b_ref, delta, 0.999),
                                      spec.curve_points);
    for (double x : result.max_curve.x) {
        result.max_curve.ecdf_diag.push_back(diag_max_cdf(x));
        if (e_max_cdf) result.max_curve.ecdf.push_back((*e_max_cdf)(x));
        result.max_curve.exact.push_back(exact_max(x));
        result.max_curve.limit.push_back(limit_max_ref(x));
    }
    for (double x : result.min_curve.x) {
        result.min_curve.ecdf_diag.push_back(diag_min_cdf(x));
        if (e_min_cdf) result.min_curve.ecdf.push_back((*e_min_cdf)(x));
        result.min_curve.exact.push_back(exact_min(x));
        result.min_curve.limit.push_back(limit_min_ref(x));
    }
    return result;
}

} // namespace specdecay
