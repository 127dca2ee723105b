#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "specdecay/lattice.hpp"

using namespace specdecay;

TEST_CASE("enumeration is lexicographic from (-L,...,-L) to (L,...,L)") {
    const LatticeCube cube(1, 2);
    const auto sites = cube.enumerate_sites();
    const std::vector<std::vector<int>> expected = {
        {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 0},
        {0, 1},   {1, -1}, {1, 0},  {1, 1}};
    CHECK(sites == expected);
    CHECK(cube.site_count() == 9);
    CHECK(cube.site(4) == std::vector<int>{0, 0});
}

TEST_CASE("site and rank are inverse bijections") {
    const LatticeCube cube(2, 3);
    REQUIRE(cube.site_count() == 125);
    for (std::int64_t r = 0; r < cube.site_count(); ++r) {
        const auto coords = cube.site(r);
        CHECK(cube.rank(coords) == r);
    }
    std::int64_t seen = 0;
    cube.for_each_site([&](std::int64_t rank, std::span<const int> coords) {
        CHECK(rank == seen);
        CHECK(cube.site(rank) == std::vector<int>(coords.begin(), coords.end()));
        ++seen;
    });
    CHECK(seen == cube.site_count());
}

TEST_CASE("strides locate axis neighbours") {
    const LatticeCube cube(1, 3);
    CHECK(cube.stride(0) == 9);
    CHECK(cube.stride(1) == 3);
    CHECK(cube.stride(2) == 1);
    const std::vector<int> origin = {0, 0, 0};
    for (int axis = 0; axis < 3; ++axis) {
        std::vector<int> shifted = origin;
        shifted[static_cast<std::size_t>(axis)] = 1;
        CHECK(cube.rank(shifted) - cube.rank(origin) == cube.stride(axis));
    }
}

TEST_CASE("site_norm matches the three norms") {
    const std::vector<int> site = {3, -4};
    CHECK(site_norm(site, NormKind::Sup) == 4.0);
    CHECK(site_norm(site, NormKind::Euclidean) == 5.0);
    CHECK(site_norm(site, NormKind::L1) == 7.0);
    const std::vector<int> origin = {0, 0, 0};
    for (auto n : {NormKind::Sup, NormKind::Euclidean, NormKind::L1})
        CHECK(site_norm(origin, n) == 0.0);
}

TEST_CASE("shell counts against brute-force enumeration") {
    const LatticeCube cube(2, 3);
    std::map<std::int64_t, std::int64_t> brute;
    cube.for_each_site([&](std::int64_t, std::span<const int> coords) {
        ++brute[static_cast<std::int64_t>(site_norm(coords, NormKind::Sup))];
    });
    const auto counts = cube.shell_counts();
    REQUIRE(counts.size() == 3);
    CHECK(counts[0] == 1);
    CHECK(counts[1] == 26);
    CHECK(counts[2] == 98);
    for (std::size_t r = 0; r < counts.size(); ++r)
        CHECK(counts[r] == brute[static_cast<std::int64_t>(r)]);
}

TEST_CASE("shell counts sum to the site count") {
    for (int d = 1; d <= 4; ++d) {
        for (std::int64_t l : {0, 1, 2, 5}) {
            const LatticeCube cube(l, d);
            std::int64_t total = 0;
            for (std::int64_t c : cube.shell_counts()) total += c;
            CHECK(total == cube.site_count());
        }
    }
    CHECK(shell_count(2, 3) == 24); // ring of width one in the plane
    CHECK(shell_count(1, 7) == 2);
}

TEST_CASE("shell counts require the sup norm") {
    const LatticeCube cube(2, 2, NormKind::Euclidean);
    CHECK_THROWS_AS((void)cube.shell_counts(), std::invalid_argument);
}

TEST_CASE("constructor rejects bad arguments and oversized cubes") {
    CHECK_THROWS_AS(LatticeCube(-1, 1), std::invalid_argument);
    CHECK_THROWS_AS(LatticeCube(1, 0), std::invalid_argument);
    // (2*20000+1)^3 overflows the default 2^31 site budget.
    CHECK_THROWS_AS(LatticeCube(20000, 3), std::invalid_argument);
    CHECK_THROWS_AS(LatticeCube(2, 1, NormKind::Sup, 4), std::invalid_argument);
    CHECK_NOTHROW(LatticeCube(2, 1, NormKind::Sup, 5));
}

TEST_CASE("rank rejects sites outside the cube") {
    const LatticeCube cube(1, 2);
    const std::vector<int> outside = {2, 0};
    CHECK_THROWS_AS((void)cube.rank(outside), std::out_of_range);
    const std::vector<int> wrong_dim = {0};
    CHECK_THROWS_AS((void)cube.rank(wrong_dim), std::invalid_argument);
    CHECK_THROWS_AS((void)cube.site(9), std::out_of_range);
}

TEST_CASE("norm names round trip") {
    for (auto n : {NormKind::Sup, NormKind::Euclidean, NormKind::L1})
        CHECK(norm_kind_from_string(to_string(n)) == n);
    CHECK_THROWS_AS(norm_kind_from_string("manhattan"), std::invalid_argument);
}
