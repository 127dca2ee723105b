#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace specdecay {

/// Norm used to measure the distance of a lattice site from the origin.
enum class NormKind { Sup, Euclidean, L1 };

NormKind norm_kind_from_string(const std::string& name);
std::string to_string(NormKind norm);

/// Distance of an integer site from the origin under the given norm.
double site_norm(std::span<const int> site, NormKind norm);

/// Number of sites on the sup-norm shell of radius r in dimension d:
/// (2r+1)^d - (2r-1)^d for r >= 1, and 1 for r = 0.
std::int64_t shell_count(int dim, std::int64_t radius);

/// Centered cube {-L..L}^d of the integer lattice with a canonical site order.
///
/// Sites are enumerated lexicographically in (n_1, ..., n_d), each coordinate
/// running -L..L, so rank 0 is (-L,...,-L) and the last rank is (L,...,L).
/// All matrix, potential and weight layouts in this project use that order.
class LatticeCube {
public:
    static constexpr std::int64_t kDefaultMaxSites = std::int64_t{1} << 31;

    LatticeCube(std::int64_t half_side, int dim, NormKind norm = NormKind::Sup,
                std::int64_t max_sites = kDefaultMaxSites);

    [[nodiscard]] std::int64_t half_side() const noexcept { return half_side_; }
    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] NormKind norm() const noexcept { return norm_; }
    [[nodiscard]] std::int64_t side() const noexcept { return 2 * half_side_ + 1; }
    [[nodiscard]] std::int64_t site_count() const noexcept { return site_count_; }

    /// Row-major stride of coordinate axis i in the canonical order: side^(d-1-i).
    [[nodiscard]] std::int64_t stride(int axis) const;

    /// Coordinates of the site with the given canonical rank.
    [[nodiscard]] std::vector<int> site(std::int64_t rank) const;

    /// Canonical rank of a site; throws std::out_of_range if outside the cube.
    [[nodiscard]] std::int64_t rank(std::span<const int> site) const;

    /// All sites in canonical order. Intended for small cubes; large traversals
    /// should use for_each_site to avoid materializing the list.
    [[nodiscard]] std::vector<std::vector<int>> enumerate_sites() const;

    /// Visits every site in canonical order as fn(rank, coords).
    template <typename Fn>
    void for_each_site(Fn&& fn) const {
        std::vector<int> coords(static_cast<std::size_t>(dim_),
                                static_cast<int>(-half_side_));
        const int lo = static_cast<int>(-half_side_);
        const int hi = static_cast<int>(half_side_);
        for (std::int64_t rank = 0; rank < site_count_; ++rank) {
            fn(rank, std::span<const int>(coords));
            for (int axis = dim_ - 1; axis >= 0; --axis) {
                if (coords[static_cast<std::size_t>(axis)] < hi) {
                    ++coords[static_cast<std::size_t>(axis)];
                    break;
                }
                coords[static_cast<std::size_t>(axis)] = lo;
            }
        }
    }

    /// Site counts per sup-norm shell radius 0..L; requires sup norm.
    [[nodiscard]] std::vector<std::int64_t> shell_counts() const;

private:
    std::int64_t half_side_;
    int dim_;
    NormKind norm_;
    std::int64_t site_count_;
};

} // namespace specdecay
