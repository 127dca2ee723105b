#include "specdecay/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace specdecay {

NormKind norm_kind_from_string(const std::string& name) {
    if (name == "sup") return NormKind::Sup;
    if (name == "euclidean") return NormKind::Euclidean;
    if (name == "l1") return NormKind::L1;
    throw std::invalid_argument("unknown norm kind: " + name);
}

std::string to_string(NormKind norm) {
    switch (norm) {
        case NormKind::Sup: return "sup";
        case NormKind::Euclidean: return "euclidean";
        case NormKind::L1: return "l1";
    }
    throw std::invalid_argument("unknown norm kind");
}

double site_norm(std::span<const int> site, NormKind norm) {
    if (site.empty()) throw std::invalid_argument("site_norm: empty site");
    switch (norm) {
        case NormKind::Sup: {
            std::int64_t m = 0;
            for (int c : site) m = std::max(m, std::abs(static_cast<std::int64_t>(c)));
            return static_cast<double>(m);
        }
        case NormKind::Euclidean: {
            double s = 0.0;
            for (int c : site) s += static_cast<double>(c) * static_cast<double>(c);
            return std::sqrt(s);
        }
        case NormKind::L1: {
            std::int64_t s = 0;
            for (int c : site) s += std::abs(static_cast<std::int64_t>(c));
            return static_cast<double>(s);
        }
    }
    throw std::invalid_argument("unknown norm kind");
}

namespace {

std::int64_t checked_pow(std::int64_t base, int exponent, std::int64_t limit) {
    std::int64_t acc = 1;
    for (int i = 0; i < exponent; ++i) {
        if (acc > limit / base) return -1;
        acc *= base;
    }
    return acc <= limit ? acc : -1;
}

} // namespace

std::int64_t shell_count(int dim, std::int64_t radius) {
    if (dim < 1) throw std::invalid_argument("shell_count: dim must be >= 1");
    if (radius < 0) throw std::invalid_argument("shell_count: radius must be >= 0");
    if (radius == 0) return 1;
    const std::int64_t limit = std::int64_t{1} << 62;
    const std::int64_t outer = checked_pow(2 * radius + 1, dim, limit);
    const std::int64_t inner = checked_pow(2 * radius - 1, dim, limit);
    if (outer < 0 || inner < 0) throw std::overflow_error("shell_count: overflow");
    return outer - inner;
}

LatticeCube::LatticeCube(std::int64_t half_side, int dim, NormKind norm,
                         std::int64_t max_sites)
    : half_side_(half_side), dim_(dim), norm_(norm), site_count_(0) {
    if (half_side < 0) throw std::invalid_argument("LatticeCube: half_side must be >= 0");
    if (dim < 1) throw std::invalid_argument("LatticeCube: dim must be >= 1");
    if (max_sites < 1) throw std::invalid_argument("LatticeCube: max_sites must be >= 1");
    site_count_ = checked_pow(side(), dim, max_sites);
    if (site_count_ < 0)
        throw std::invalid_argument("LatticeCube: site count exceeds max_sites");
}

std::int64_t LatticeCube::stride(int axis) const {
    if (axis < 0 || axis >= dim_) throw std::out_of_range("LatticeCube::stride: bad axis");
    std::int64_t acc = 1;
    for (int i = axis + 1; i < dim_; ++i) acc *= side();
    return acc;
}

std::vector<int> LatticeCube::site(std::int64_t rank) const {
    if (rank < 0 || rank >= site_count_)
        throw std::out_of_range("LatticeCube::site: rank out of range");
    std::vector<int> coords(static_cast<std::size_t>(dim_));
    for (int axis = dim_ - 1; axis >= 0; --axis) {
        coords[static_cast<std::size_t>(axis)] =
            static_cast<int>(rank % side() - half_side_);
        rank /= side();
    }
    return coords;
}

std::int64_t LatticeCube::rank(std::span<const int> site) const {
    if (static_cast<int>(site.size()) != dim_)
        throw std::invalid_argument("LatticeCube::rank: wrong dimension");
    std::int64_t acc = 0;
    for (int c : site) {
        if (c < -half_side_ || c > half_side_)
            throw std::out_of_range("LatticeCube::rank: site outside cube");
        acc = acc * side() + (c + half_side_);
    }
    return acc;
}

std::vector<std::vector<int>> LatticeCube::enumerate_sites() const {
    std::vector<std::vector<int>> sites;
    sites.reserve(static_cast<std::size_t>(site_count_));
    for_each_site([&](std::int64_t, std::span<const int> coords) {
        sites.emplace_back(coords.begin(), coords.end());
    });
    return sites;
}

std::vector<std::int64_t> LatticeCube::shell_counts() const {
    if (norm_ != NormKind::Sup)
        throw std::invalid_argument("LatticeCube::shell_counts: requires sup norm");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(half_side_) + 1);
    for (std::int64_t r = 0; r <= half_side_; ++r)
        counts[static_cast<std::size_t>(r)] = shell_count(dim_, r);
    return counts;
}

} // namespace specdecay
