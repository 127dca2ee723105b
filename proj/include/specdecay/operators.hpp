#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "specdecay/lattice.hpp"

namespace specdecay {

/// Real symmetric matrix in the cheapest storage that represents it exactly.
///
/// Storage kinds:
///   Diagonal     diagonal entries only
///   Tridiagonal  diagonal plus first off-diagonal
///   Dense        packed lower triangle, row-major: a(i,j) for j <= i
///   Sparse       diagonal plus unit off-diagonal entries at listed (i, j) pairs
///
/// Sparse edges are stored once with i < j and stand for a symmetric pair of
/// entries equal to 1 (the hopping pattern of the lattice Laplacian).
class SymmetricOperator {
public:
    enum class Storage { Diagonal, Tridiagonal, Dense, Sparse };
    using Edge = std::pair<std::int32_t, std::int32_t>;

    static SymmetricOperator diagonal(std::vector<double> values);
    static SymmetricOperator tridiagonal(std::vector<double> diag, std::vector<double> off);
    static SymmetricOperator dense_lower(std::size_t n, std::vector<double> lower);
    static SymmetricOperator sparse_unit(std::size_t n, std::vector<double> diag,
                                         std::vector<Edge> edges);

    [[nodiscard]] std::size_t dim() const noexcept { return n_; }
    [[nodiscard]] Storage storage() const noexcept { return storage_; }

    [[nodiscard]] const std::vector<double>& diag() const;
    [[nodiscard]] const std::vector<double>& offdiag() const;
    [[nodiscard]] const std::vector<double>& lower() const;
    [[nodiscard]] const std::vector<Edge>& edges() const;

    /// Entry a(i, j) regardless of storage kind; O(edges) for Sparse.
    [[nodiscard]] double entry(std::size_t i, std::size_t j) const;

    [[nodiscard]] double trace() const;
    /// Sum of squares of all entries, i.e. tr(A^2) = ||A||_F^2.
    [[nodiscard]] double trace_square() const;

    /// Full n*n row-major copy; refuses n > dense_limit.
    [[nodiscard]] std::vector<double> to_dense_full(std::size_t dense_limit = 4096) const;

    /// Same pattern with the given vector added to the diagonal.
    [[nodiscard]] SymmetricOperator with_added_diagonal(std::span<const double> values) const;

private:
    SymmetricOperator(Storage storage, std::size_t n) : storage_(storage), n_(n) {}

    Storage storage_;
    std::size_t n_;
    std::vector<double> diag_;
    std::vector<double> off_;
    std::vector<double> lower_;
    std::vector<Edge> edges_;
};

/// Adjacency part of the lattice Laplacian on the cube, zero boundary
/// conditions, no diagonal term: tridiagonal for d = 1, sparse for d >= 2.
SymmetricOperator build_laplacian(const LatticeCube& cube);

/// Laplacian plus site potential on the diagonal, preserving sparsity.
SymmetricOperator build_hamiltonian(const SymmetricOperator& laplacian,
                                    std::span<const double> potential);

/// Closed-form spectrum of the cube Laplacian, ascending:
/// sums over axes of 2 cos(pi k / (2L + 2)) with k = 1..2L+1 per axis.
std::vector<double> laplacian_spectrum_exact(const LatticeCube& cube);

} // namespace specdecay
