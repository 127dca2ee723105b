#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "specdecay/eigensolve.hpp"
#include "specdecay/lattice.hpp"
#include "specdecay/operators.hpp"
#include "specdecay/sampling.hpp"

using namespace specdecay;

namespace {

double max_abs_gap(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> random_values(std::size_t n, std::uint64_t seed, double scale) {
    const StreamSpec stream{seed, 0};
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = scale * (2.0 * stream_unit(stream, i) - 1.0);
    return v;
}

SymmetricOperator random_tridiagonal(std::size_t n, std::uint64_t seed) {
    auto diag = random_values(n, seed, 2.0);
    auto off = random_values(n - 1, seed + 1, 1.5);
    return SymmetricOperator::tridiagonal(std::move(diag), std::move(off));
}

SymmetricOperator random_dense(std::size_t n, std::uint64_t seed) {
    auto lower = random_values(n * (n + 1) / 2, seed, 1.0);
    return SymmetricOperator::dense_lower(n, std::move(lower));
}

} // namespace

TEST_CASE("diagonal operators return their sorted diagonal") {
    const auto op = SymmetricOperator::diagonal({3.0, -1.0, 2.0});
    CHECK(eigenvalues_symmetric(op) == std::vector<double>{-1.0, 2.0, 3.0});
}

TEST_CASE("two-by-two closed forms") {
    const auto coupled = SymmetricOperator::dense_lower(2, {2.0, 1.0, 2.0});
    const auto spec = eigenvalues_symmetric(coupled);
    CHECK(spec[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spec[1] == doctest::Approx(3.0).epsilon(1e-14));
    const auto hopping = SymmetricOperator::tridiagonal({0.0, 0.0}, {1.0});
    const auto hs = eigenvalues_symmetric(hopping);
    CHECK(hs[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(hs[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("iterated spectra match the closed form for the line") {
    for (std::int64_t l : {1, 10, 100}) {
        const LatticeCube cube(l, 1);
        const auto computed = eigenvalues_symmetric(build_laplacian(cube));
        const auto exact = laplacian_spectrum_exact(cube);
        CHECK(max_abs_gap(computed, exact) <= 1e-10);
    }
}

TEST_CASE("reduced dense spectra match the closed form for the plane") {
    for (std::int64_t l : {1, 2}) {
        const LatticeCube cube(l, 2);
        const auto computed = eigenvalues_symmetric(build_laplacian(cube));
        const auto exact = laplacian_spectrum_exact(cube);
        CHECK(max_abs_gap(computed, exact) <= 1e-10);
    }
}

TEST_CASE("spectra preserve trace and squared trace") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto op = random_dense(40, seed);
        const auto spec = eigenvalues_symmetric(op);
        double sum = 0.0;
        double sum2 = 0.0;
        for (double x : spec) {
            sum += x;
            sum2 += x * x;
        }
        CHECK(sum == doctest::Approx(op.trace()).epsilon(1e-10).scale(40.0));
        CHECK(sum2 == doctest::Approx(op.trace_square()).epsilon(1e-10).scale(40.0));
    }
}

TEST_CASE("sturm counts agree with the sorted spectrum") {
    for (std::uint64_t seed : {5, 6, 7}) {
        const auto op = random_tridiagonal(200, seed * 10);
        const auto spec = eigenvalues_symmetric(op);
        // Midpoints between neighbours have an unambiguous count.
        for (std::size_t k = 0; k + 1 < spec.size(); k += 7) {
            const double mid = 0.5 * (spec[k] + spec[k + 1]);
            if (spec[k + 1] - spec[k] < 1e-8) continue;
            CHECK(count_at_or_below(op, mid) == static_cast<std::int64_t>(k) + 1);
        }
        CHECK(count_at_or_below(op, spec.front() - 1.0) == 0);
        CHECK(count_at_or_below(op, spec.back() + 1.0) ==
              static_cast<std::int64_t>(spec.size()));
        // At an eigenvalue the tolerance shift must include it.
        CHECK(count_at_or_below(op, spec[10]) >= 11);
    }
}

TEST_CASE("sturm count on the line at the band centre") {
    const auto lap = build_laplacian(LatticeCube(100, 1));
    CHECK(count_at_or_below(lap, 0.0) == 101);
    CHECK(count_at_or_below(lap, -2.0) == 0);
    CHECK(count_at_or_below(lap, 2.0) == 201);
}

TEST_CASE("count_at_or_below requires banded storage") {
    const auto dense = SymmetricOperator::dense_lower(2, {0.0, 1.0, 0.0});
    CHECK_THROWS_AS((void)count_at_or_below(dense, 0.0), std::invalid_argument);
    const auto diag = SymmetricOperator::diagonal({-1.0, 1.0});
    CHECK(count_at_or_below(diag, 0.0) == 1);
}

TEST_CASE("extreme eigenvalues via bisection match the closed form") {
    const LatticeCube cube(50, 1);
    const auto [lo, hi] = extreme_eigenvalues(build_laplacian(cube));
    const double edge = 2.0 * std::cos(std::acos(-1.0) / 102.0);
    CHECK(std::abs(hi - edge) <= 1e-10);
    CHECK(std::abs(lo + edge) <= 1e-10);
}

TEST_CASE("extreme eigenvalues for diagonal, dense and sparse storage") {
    const auto diag = SymmetricOperator::diagonal({0.5, -3.0, 2.0});
    CHECK(extreme_eigenvalues(diag) == std::pair{-3.0, 2.0});
    const auto dense = SymmetricOperator::dense_lower(2, {2.0, 1.0, 2.0});
    const auto [dl, dh] = extreme_eigenvalues(dense);
    CHECK(dl == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dh == doctest::Approx(3.0).epsilon(1e-12));
    const auto lap2 = build_laplacian(LatticeCube(1, 2));
    const auto [sl, sh] = extreme_eigenvalues(lap2);
    CHECK(sh == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sl == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("bisection extremes agree with the full tridiagonal solve") {
    for (std::uint64_t seed : {11, 12, 13, 14}) {
        const auto op = random_tridiagonal(300, seed * 100);
        const auto spec = eigenvalues_symmetric(op);
        const auto [lo, hi] = extreme_eigenvalues(op);
        CHECK(std::abs(lo - spec.front()) <= 1e-9);
        CHECK(std::abs(hi - spec.back()) <= 1e-9);
    }
}

TEST_CASE("diagonal perturbation shifts eigenvalues by at most the hopping norm") {
    const LatticeCube cube(50, 1);
    const auto lap = build_laplacian(cube);
    const auto weights = DecayProfile{0.5, {}}.weights(cube);
    const auto law = SiteDistribution::pareto_symmetric(1.0);
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        auto v = sample_potential(weights, law, StreamSpec{77, trial});
        const auto spec = eigenvalues_symmetric(build_hamiltonian(lap, v));
        std::sort(v.begin(), v.end());
        // ||hopping|| <= 2d = 2; sorted spectra pair off within that bound.
        for (std::size_t k = 0; k < v.size(); ++k)
            CHECK(std::abs(spec[k] - v[k]) <= 2.0);
    }
}

TEST_CASE("exhausted sweep budget raises NonConvergenceError") {
    EigensolveOptions opts;
    opts.max_sweeps = 0;
    const auto lap = build_laplacian(LatticeCube(5, 1));
    CHECK_THROWS_AS((void)eigenvalues_symmetric(lap, opts), NonConvergenceError);
    CHECK_THROWS_AS((void)eigenvalues_symmetric(lap, opts), NumericalError);
}

TEST_CASE("single-site operators are returned directly") {
    const auto op = SymmetricOperator::tridiagonal({4.0}, {});
    CHECK(eigenvalues_symmetric(op) == std::vector<double>{4.0});
    const auto [lo, hi] = extreme_eigenvalues(op);
    CHECK(lo == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(hi == doctest::Approx(4.0).epsilon(1e-10));
}
