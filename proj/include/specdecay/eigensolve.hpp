#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specdecay/errors.hpp"
#include "specdecay/operators.hpp"

namespace specdecay {

/// Raised when an iterative spectral computation exceeds its sweep budget.
class NonConvergenceError : public NumericalError {
public:
    NonConvergenceError(const std::string& what, std::size_t index)
        : NumericalError(what), index_(index) {}
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

struct EigensolveOptions {
    /// Absolute accuracy target, relative to (||op|| + 1).
    double tol = 2.220446049250313e-16;
    /// Largest dimension accepted for the dense reduction path.
    std::size_t dense_limit = 4096;
    /// Implicit-shift sweeps allowed per eigenvalue before giving up.
    int max_sweeps = 30;
};

/// All eigenvalues, ascending. Tridiagonal and diagonal input go straight to
/// the tridiagonal iteration; dense and sparse input are reduced first by
/// Householder reflections, then solved by implicit-shift QL.
std::vector<double> eigenvalues_symmetric(const SymmetricOperator& op,
                                          const EigensolveOptions& options = {});

/// Number of eigenvalues <= energy for a tridiagonal (or diagonal) operator,
/// by Sturm counting at energy + eta with eta = 2^-40 (1 + |energy|).
std::int64_t count_at_or_below(const SymmetricOperator& op, double energy);

/// Smallest and largest eigenvalue. Tridiagonal input is resolved by Sturm
/// bisection inside Gershgorin brackets to ~1e-11 absolute accuracy without
/// computing the full spectrum; other storage falls back to the full solve.
std::pair<double, double> extreme_eigenvalues(const SymmetricOperator& op,
                                              const EigensolveOptions& options = {});

namespace detail {

/// Eigenvalues of the tridiagonal matrix (diag, off) by implicit-shift QL;
/// results overwrite diag, ascending. off is workspace and is destroyed.
void tridiagonal_eigenvalues(std::vector<double>& diag, std::vector<double>& off,
                             double tol, int max_sweeps);

/// Householder reduction of a full symmetric matrix (row-major, destroyed)
/// to tridiagonal form (diag, off).
void householder_tridiagonalize(std::vector<double>& a, std::size_t n,
                                std::vector<double>& diag, std::vector<double>& off);

/// Number of eigenvalues strictly below x, by the LDL^T inertia count with
/// the standard pivot floor to survive zero pivots.
std::int64_t sturm_count_below(std::span<const double> diag, std::span<const double> off,
                               double x);

} // namespace detail

} // namespace specdecay
