#include "specdecay/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specdecay {

SymmetricOperator SymmetricOperator::diagonal(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("diagonal: empty matrix");
    SymmetricOperator op(Storage::Diagonal, values.size());
    op.diag_ = std::move(values);
    return op;
}

SymmetricOperator SymmetricOperator::tridiagonal(std::vector<double> diag,
                                                 std::vector<double> off) {
    if (diag.empty()) throw std::invalid_argument("tridiagonal: empty matrix");
    if (off.size() + 1 != diag.size())
        throw std::invalid_argument("tridiagonal: off-diagonal must have n - 1 entries");
    SymmetricOperator op(Storage::Tridiagonal, diag.size());
    op.diag_ = std::move(diag);
    op.off_ = std::move(off);
    return op;
}

SymmetricOperator SymmetricOperator::dense_lower(std::size_t n, std::vector<double> lower) {
    if (n == 0) throw std::invalid_argument("dense_lower: empty matrix");
    if (lower.size() != n * (n + 1) / 2)
        throw std::invalid_argument("dense_lower: packed triangle must have n(n+1)/2 entries");
    SymmetricOperator op(Storage::Dense, n);
    op.lower_ = std::move(lower);
    return op;
}

SymmetricOperator SymmetricOperator::sparse_unit(std::size_t n, std::vector<double> diag,
                                                 std::vector<Edge> edges) {
    if (n == 0) throw std::invalid_argument("sparse_unit: empty matrix");
    if (diag.size() != n)
        throw std::invalid_argument("sparse_unit: diagonal must have n entries");
    for (const Edge& e : edges) {
        if (e.first < 0 || e.second < 0 || static_cast<std::size_t>(e.first) >= n ||
            static_cast<std::size_t>(e.second) >= n || e.first >= e.second)
            throw std::invalid_argument("sparse_unit: edges must satisfy 0 <= i < j < n");
    }
    SymmetricOperator op(Storage::Sparse, n);
    op.diag_ = std::move(diag);
    op.edges_ = std::move(edges);
    return op;
}

const std::vector<double>& SymmetricOperator::diag() const {
    if (storage_ == Storage::Dense)
        throw std::logic_error("SymmetricOperator::diag: dense storage");
    return diag_;
}

const std::vector<double>& SymmetricOperator::offdiag() const {
    if (storage_ != Storage::Tridiagonal)
        throw std::logic_error("SymmetricOperator::offdiag: not tridiagonal");
    return off_;
}

const std::vector<double>& SymmetricOperator::lower() const {
    if (storage_ != Storage::Dense)
        throw std::logic_error("SymmetricOperator::lower: not dense");
    return lower_;
}

const std::vector<SymmetricOperator::Edge>& SymmetricOperator::edges() const {
    if (storage_ != Storage::Sparse)
        throw std::logic_error("SymmetricOperator::edges: not sparse");
    return edges_;
}

double SymmetricOperator::entry(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("SymmetricOperator::entry");
    if (i < j) std::swap(i, j);
    switch (storage_) {
        case Storage::Diagonal:
            return i == j ? diag_[i] : 0.0;
        case Storage::Tridiagonal:
            if (i == j) return diag_[i];
            return i - j == 1 ? off_[j] : 0.0;
        case Storage::Dense:
            return lower_[i * (i + 1) / 2 + j];
        case Storage::Sparse: {
            if (i == j) return diag_[i];
            for (const Edge& e : edges_)
                if (static_cast<std::size_t>(e.first) == j &&
                    static_cast<std::size_t>(e.second) == i)
                    return 1.0;
            return 0.0;
        }
    }
    throw std::logic_error("SymmetricOperator: bad storage");
}

double SymmetricOperator::trace() const {
    double t = 0.0;
    if (storage_ == Storage::Dense) {
        for (std::size_t i = 0; i < n_; ++i) t += lower_[i * (i + 1) / 2 + i];
    } else {
        for (double v : diag_) t += v;
    }
    return t;
}

double SymmetricOperator::trace_square() const {
    double t = 0.0;
    switch (storage_) {
        case Storage::Diagonal:
            for (double v : diag_) t += v * v;
            return t;
        case Storage::Tridiagonal:
            for (double v : diag_) t += v * v;
            for (double v : off_) t += 2.0 * v * v;
            return t;
        case Storage::Dense:
            for (std::size_t i = 0; i < n_; ++i) {
                const std::size_t row = i * (i + 1) / 2;
                t += lower_[row + i] * lower_[row + i];
                for (std::size_t j = 0; j < i; ++j) t += 2.0 * lower_[row + j] * lower_[row + j];
            }
            return t;
        case Storage::Sparse:
            for (double v : diag_) t += v * v;
            return t + 2.0 * static_cast<double>(edges_.size());
    }
    throw std::logic_error("SymmetricOperator: bad storage");
}

std::vector<double> SymmetricOperator::to_dense_full(std::size_t dense_limit) const {
    if (n_ > dense_limit)
        throw std::invalid_argument("to_dense_full: dimension exceeds dense_limit");
    std::vector<double> a(n_ * n_, 0.0);
    switch (storage_) {
        case Storage::Diagonal:
            for (std::size_t i = 0; i < n_; ++i) a[i * n_ + i] = diag_[i];
            break;
        case Storage::Tridiagonal:
            for (std::size_t i = 0; i < n_; ++i) a[i * n_ + i] = diag_[i];
            for (std::size_t i = 0; i + 1 < n_; ++i) {
                a[i * n_ + i + 1] = off_[i];
                a[(i + 1) * n_ + i] = off_[i];
            }
            break;
        case Storage::Dense:
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j <= i; ++j) {
                    const double v = lower_[i * (i + 1) / 2 + j];
                    a[i * n_ + j] = v;
                    a[j * n_ + i] = v;
                }
            break;
        case Storage::Sparse:
            for (std::size_t i = 0; i < n_; ++i) a[i * n_ + i] = diag_[i];
            for (const Edge& e : edges_) {
                const auto i = static_cast<std::size_t>(e.first);
                const auto j = static_cast<std::size_t>(e.second);
                a[i * n_ + j] = 1.0;
                a[j * n_ + i] = 1.0;
            }
            break;
    }
    return a;
}

SymmetricOperator SymmetricOperator::with_added_diagonal(std::span<const double> values) const {
    if (values.size() != n_)
        throw std::invalid_argument("with_added_diagonal: dimension mismatch");
    SymmetricOperator op(storage_, n_);
    op.off_ = off_;
    op.edges_ = edges_;
    if (storage_ == Storage::Dense) {
        op.lower_ = lower_;
        for (std::size_t i = 0; i < n_; ++i) op.lower_[i * (i + 1) / 2 + i] += values[i];
    } else {
        op.diag_ = diag_;
        for (std::size_t i = 0; i < n_; ++i) op.diag_[i] += values[i];
    }
    return op;
}

SymmetricOperator build_laplacian(const LatticeCube& cube) {
    const auto n = static_cast<std::size_t>(cube.site_count());
    if (cube.dim() == 1)
        return SymmetricOperator::tridiagonal(std::vector<double>(n, 0.0),
                                              std::vector<double>(n > 0 ? n - 1 : 0, 1.0));
    std::vector<SymmetricOperator::Edge> edges;
    edges.reserve(n * static_cast<std::size_t>(cube.dim()));
    const std::int64_t hi = cube.half_side();
    for (int axis = 0; axis < cube.dim(); ++axis) {
        const std::int64_t step = cube.stride(axis);
        cube.for_each_site([&](std::int64_t rank, std::span<const int> coords) {
            if (coords[static_cast<std::size_t>(axis)] < hi)
                edges.emplace_back(static_cast<std::int32_t>(rank),
                                   static_cast<std::int32_t>(rank + step));
        });
    }
    std::sort(edges.begin(), edges.end());
    return SymmetricOperator::sparse_unit(n, std::vector<double>(n, 0.0), std::move(edges));
}

SymmetricOperator build_hamiltonian(const SymmetricOperator& laplacian,
                                    std::span<const double> potential) {
    return laplacian.with_added_diagonal(potential);
}

std::vector<double> laplacian_spectrum_exact(const LatticeCube& cube) {
    const std::int64_t m = cube.side();
    std::vector<double> axis(static_cast<std::size_t>(m));
    for (std::int64_t k = 1; k <= m; ++k)
        axis[static_cast<std::size_t>(k - 1)] =
            2.0 * std::cos(std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(m + 1));
    std::vector<double> spectrum;
    spectrum.reserve(static_cast<std::size_t>(cube.site_count()));
    std::vector<std::size_t> idx(static_cast<std::size_t>(cube.dim()), 0);
    for (std::int64_t count = 0; count < cube.site_count(); ++count) {
        double s = 0.0;
        for (std::size_t i : idx) s += axis[i];
        spectrum.push_back(s);
        for (int a = cube.dim() - 1; a >= 0; --a) {
            auto& k = idx[static_cast<std::size_t>(a)];
            if (k + 1 < static_cast<std::size_t>(m)) {
                ++k;
                break;
            }
            k = 0;
        }
    }
    std::sort(spectrum.begin(), spectrum.end());
    return spectrum;
}

} // namespace specdecay
