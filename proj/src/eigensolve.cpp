#include "specdecay/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specdecay {

namespace detail {

void tridiagonal_eigenvalues(std::vector<double>& diag, std::vector<double>& off,
                             double tol, int max_sweeps) {
    const auto n = static_cast<std::int64_t>(diag.size());
    if (n == 0) return;
    if (static_cast<std::int64_t>(off.size()) + 1 != n)
        throw std::invalid_argument("tridiagonal_eigenvalues: off must have n - 1 entries");
    const double eps = std::max(tol, std::numeric_limits<double>::epsilon());
    std::vector<double>& d = diag;
    std::vector<double> e(off.begin(), off.end());
    e.push_back(0.0);
    for (std::int64_t l = 0; l < n; ++l) {
        int iter = 0;
        std::int64_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == max_sweeps)
                    throw NonConvergenceError(
                        "tridiagonal_eigenvalues: sweep budget exhausted",
                        static_cast<std::size_t>(l));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                std::int64_t i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        // Rotation annihilated early; split here and rescan.
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    off.assign(static_cast<std::size_t>(n - 1), 0.0);
}

void householder_tridiagonalize(std::vector<double>& a, std::size_t n,
                                std::vector<double>& diag, std::vector<double>& off) {
    if (a.size() != n * n)
        throw std::invalid_argument("householder_tridiagonalize: bad matrix size");
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };
    diag.assign(n, 0.0);
    off.assign(n > 0 ? n - 1 : 0, 0.0);
    if (n == 0) return;
    std::vector<double> e(n, 0.0);
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = at(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (std::size_t k = 0; k <= j; ++k)
                        at(j, k) -= f * e[k] + g * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
    }
    for (std::size_t i = 0; i < n; ++i) diag[i] = at(i, i);
    for (std::size_t i = 1; i < n; ++i) off[i - 1] = e[i];
}

std::int64_t sturm_count_below(std::span<const double> diag, std::span<const double> off,
                               double x) {
    const std::size_t n = diag.size();
    if (n == 0) return 0;
    if (off.size() + 1 != n)
        throw std::invalid_argument("sturm_count_below: off must have n - 1 entries");
    double max_off2 = 1.0;
    for (double b : off) max_off2 = std::max(max_off2, b * b);
    const double pivmin = std::numeric_limits<double>::min() * max_off2;
    std::int64_t count = 0;
    double q = diag[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(q) <= pivmin) q = -pivmin;
        q = diag[i] - x - off[i - 1] * off[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

} // namespace detail

std::vector<double> eigenvalues_symmetric(const SymmetricOperator& op,
                                          const EigensolveOptions& options) {
    switch (op.storage()) {
        case SymmetricOperator::Storage::Diagonal: {
            std::vector<double> d = op.diag();
            std::sort(d.begin(), d.end());
            return d;
        }
        case SymmetricOperator::Storage::Tridiagonal: {
            std::vector<double> d = op.diag();
            std::vector<double> e = op.offdiag();
            detail::tridiagonal_eigenvalues(d, e, options.tol, options.max_sweeps);
            return d;
        }
        case SymmetricOperator::Storage::Dense:
        case SymmetricOperator::Storage::Sparse: {
            std::vector<double> a = op.to_dense_full(options.dense_limit);
            std::vector<double> d;
            std::vector<double> e;
            detail::householder_tridiagonalize(a, op.dim(), d, e);
            detail::tridiagonal_eigenvalues(d, e, options.tol, options.max_sweeps);
            return d;
        }
    }
    throw std::logic_error("eigenvalues_symmetric: bad storage");
}

std::int64_t count_at_or_below(const SymmetricOperator& op, double energy) {
    const double eta = std::ldexp(1.0 + std::abs(energy), -40);
    const double shifted = energy + eta;
    switch (op.storage()) {
        case SymmetricOperator::Storage::Diagonal: {
            std::int64_t c = 0;
            for (double v : op.diag())
                if (v < shifted) ++c;
            return c;
        }
        case SymmetricOperator::Storage::Tridiagonal:
            return detail::sturm_count_below(op.diag(), op.offdiag(), shifted);
        default:
            throw std::invalid_argument(
                "count_at_or_below: requires tridiagonal or diagonal storage");
    }
}

namespace {

std::pair<double, double> tridiagonal_extremes(std::span<const double> diag,
                                               std::span<const double> off) {
    const std::size_t n = diag.size();
    double lo = diag[0];
    double hi = diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(off[i - 1]);
        if (i + 1 < n) radius += std::abs(off[i]);
        lo = std::min(lo, diag[i] - radius);
        hi = std::max(hi, diag[i] + radius);
    }
    const double width_tol =
        std::max(1e-11, 8.0 * std::numeric_limits<double>::epsilon() *
                            std::max(std::abs(lo), std::abs(hi)));
    auto bisect = [&](std::int64_t target) {
        // Smallest x with count_below(x) >= target; bracket is [lo, hi].
        double a = lo;
        double b = hi + width_tol;
        for (int iter = 0; iter < 200 && b - a > width_tol; ++iter) {
            const double mid = 0.5 * (a + b);
            if (detail::sturm_count_below(diag, off, mid) >= target)
                b = mid;
            else
                a = mid;
        }
        return 0.5 * (a + b);
    };
    return {bisect(1), bisect(static_cast<std::int64_t>(n))};
}

} // namespace

std::pair<double, double> extreme_eigenvalues(const SymmetricOperator& op,
                                              const EigensolveOptions& options) {
    switch (op.storage()) {
        case SymmetricOperator::Storage::Diagonal: {
            const auto [lo, hi] = std::minmax_element(op.diag().begin(), op.diag().end());
            return {*lo, *hi};
        }
        case SymmetricOperator::Storage::Tridiagonal:
            return tridiagonal_extremes(op.diag(), op.offdiag());
        default: {
            const std::vector<double> spec = eigenvalues_symmetric(op, options);
            return {spec.front(), spec.back()};
        }
    }
}

} // namespace specdecay
