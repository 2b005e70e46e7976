#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <string>

#include "sniep5/config.hpp"
#include "sniep5/errors.hpp"
#include "sniep5/matrix.hpp"
#include "sniep5/spectrum.hpp"

namespace sniep5 {

/// Eigenpairs of a SymMatrix, values descending, vectors[k] paired with values[k].
struct EigenDecomposition {
    int order = 0;
    std::array<double, 5> values{};
    std::array<std::array<double, 5>, 5> vectors{};
};

namespace detail {

inline double offdiag_frobenius(const double a[5][5], int n) {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) s += 2.0 * a[p][q] * a[p][q];
    return std::sqrt(s);
}

} // namespace detail

/// Cyclic-by-row Jacobi. Stops when the off-diagonal Frobenius norm drops
/// below 1e-14 of the input norm; hard cap of 50 sweeps.
inline EigenDecomposition jacobi_eigen(const SymMatrix& m) {
    const int n = m.order();
    double a[5][5] = {};
    double v[5][5] = {};
    for (int i = 0; i < n; ++i) {
        v[i][i] = 1.0;
        for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
    }

    double frob = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) frob += a[i][j] * a[i][j];
    frob = std::sqrt(frob);
    const double stop = 1e-14 * frob;

    bool converged = detail::offdiag_frobenius(a, n) <= stop;
    for (int sweep = 0; sweep < 50 && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p][q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double h = t * apq;
                a[p][p] -= h;
                a[q][q] += h;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a[i][p];
                    const double aiq = a[i][q];
                    a[i][p] = aip - s * (aiq + aip * tau);
                    a[p][i] = a[i][p];
                    a[i][q] = aiq + s * (aip - aiq * tau);
                    a[q][i] = a[i][q];
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v[i][p];
                    const double viq = v[i][q];
                    v[i][p] = vip - s * (viq + vip * tau);
                    v[i][q] = viq + s * (vip - viq * tau);
                }
            }
        }
        converged = detail::offdiag_frobenius(a, n) <= stop;
    }
    if (!converged)
        throw NoConvergenceError("Jacobi did not converge in 50 sweeps");

    std::array<int, 5> idx{};
    std::iota(idx.begin(), idx.begin() + n, 0);
    std::stable_sort(idx.begin(), idx.begin() + n,
                     [&a](int l, int r) { return a[l][l] > a[r][r]; });

    EigenDecomposition out;
    out.order = n;
    for (int k = 0; k < n; ++k) {
        const int j = idx[static_cast<std::size_t>(k)];
        out.values[static_cast<std::size_t>(k)] = a[j][j];
        for (int i = 0; i < n; ++i)
            out.vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = v[i][j];
    }
    return out;
}

/// Perron value plus a nonnegative unit eigenvector.
struct PerronPair {
    int order = 0;
    double value = 0.0;
    std::array<double, 5> vector{};
};

/// Largest eigenpair of a nonnegative matrix. Under a degenerate top value
/// the candidates are tried in column order and the first one that
/// sign-normalizes to a nonnegative vector wins.
inline PerronPair perron_vector(const SymMatrix& m, const Config& cfg = {}) {
    if (m.min_entry() < 0.0)
        throw PreconditionError("perron_vector requires a nonnegative matrix");
    const EigenDecomposition eig = jacobi_eigen(m);
    const int n = eig.order;
    const double top = eig.values[0];
    const double tie_tol = 1e-10 * std::max(1.0, std::abs(top));

    for (int k = 0; k < n && eig.values[static_cast<std::size_t>(k)] >= top - tie_tol; ++k) {
        std::array<double, 5> vec = eig.vectors[static_cast<std::size_t>(k)];
        int imax = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(vec[static_cast<std::size_t>(i)]) >
                std::abs(vec[static_cast<std::size_t>(imax)]))
                imax = i;
        if (vec[static_cast<std::size_t>(imax)] < 0.0)
            for (int i = 0; i < n; ++i) vec[static_cast<std::size_t>(i)] = -vec[static_cast<std::size_t>(i)];
        bool nonneg = true;
        for (int i = 0; i < n; ++i) {
            double& e = vec[static_cast<std::size_t>(i)];
            if (std::abs(e) < cfg.tol_entry) e = 0.0;
            if (e < 0.0) nonneg = false;
        }
        if (nonneg)
            return PerronPair{n, eig.values[static_cast<std::size_t>(k)], vec};
    }
    throw NotPerronLikeError("no nonnegative eigenvector among the top eigenvalue candidates");
}

/// Max deviation between computed eigenvalues and sorted targets.
inline double verify(const SymMatrix& m, std::span<const double> sorted_targets) {
    if (m.order() != static_cast<int>(sorted_targets.size()))
        throw DomainError("target count does not match matrix order");
    const EigenDecomposition eig = jacobi_eigen(m);
    double res = 0.0;
    for (int i = 0; i < eig.order; ++i)
        res = std::max(res, std::abs(eig.values[static_cast<std::size_t>(i)] -
                                     sorted_targets[static_cast<std::size_t>(i)]));
    return res;
}

inline double verify(const SymMatrix& m, const Spectrum5& target) {
    if (m.order() != 5) throw DomainError("verify expects a 5x5 matrix");
    return verify(m, std::span<const double>(target.values()));
}

} // namespace sniep5
