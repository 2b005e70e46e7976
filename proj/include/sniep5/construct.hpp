#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sniep5/config.hpp"
#include "sniep5/eig.hpp"
#include "sniep5/errors.hpp"
#include "sniep5/matrix.hpp"
#include "sniep5/region.hpp"
#include "sniep5/spectrum.hpp"

namespace sniep5 {

enum class Method { Zero, Suleimanova, LoewySplit, ExplicitA, ExplicitB };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::Zero: return "Zero";
        case Method::Suleimanova: return "Suleimanova";
        case Method::LoewySplit: return "LoewySplit";
        case Method::ExplicitA: return "ExplicitA";
        default: return "ExplicitB";
    }
}

/// Self-verified realization: the matrix, the targets, and the eigensolver's
/// account of how close it got.
struct Certificate {
    Method method;
    SymMatrix matrix;
    Spectrum5 target;
    std::array<double, 5> achieved;
    double residual;
};

/// Index split of {3,4,5} (positions within the sorted spectrum, 1-based).
struct Partition {
    std::vector<int> k1;
    std::vector<int> k2;
};

/// Rank-one coupling of two realizations that shifts the Perron roots by
/// +-eps and keeps everything else. The coupling strength makes the 2x2
/// Perron subproblem have roots alpha1+eps, beta1-eps; the spectrum
/// postcondition is checked rather than trusted.
inline SymMatrix fiedler_glue(const SymMatrix& block_a, double alpha1, std::span<const double> u,
                              const SymMatrix& block_b, double beta1, std::span<const double> v,
                              double eps, const Config& cfg = {}) {
    const int m = block_a.order();
    const int n = block_b.order();
    if (m + n > SymMatrix::max_order)
        throw DomainError("glued order exceeds " + std::to_string(SymMatrix::max_order));
    if (static_cast<int>(u.size()) != m || static_cast<int>(v.size()) != n)
        throw DomainError("Perron vector length does not match block order");
    if (alpha1 < beta1 - cfg.tol_entry)
        throw GluePreconditionError("fiedler_glue requires alpha1 >= beta1");
    if (eps < -cfg.tol_entry)
        throw GluePreconditionError("fiedler_glue requires eps >= 0");
    eps = std::max(eps, 0.0);
    const double rho = std::sqrt(std::max(0.0, eps * (alpha1 - beta1 + eps)));

    SymMatrix c(m + n);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) c.set(i, j, block_a(i, j));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) c.set(m + i, m + j, block_b(i, j));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            c.set(i, m + j, rho * u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)]);

    std::vector<double> want;
    want.reserve(static_cast<std::size_t>(m + n));
    want.push_back(alpha1 + eps);
    want.push_back(beta1 - eps);
    const EigenDecomposition ea = jacobi_eigen(block_a);
    for (int i = 1; i < m; ++i) want.push_back(ea.values[static_cast<std::size_t>(i)]);
    const EigenDecomposition eb = jacobi_eigen(block_b);
    for (int i = 1; i < n; ++i) want.push_back(eb.values[static_cast<std::size_t>(i)]);
    std::sort(want.begin(), want.end(), std::greater<double>());
    if (verify(c, std::span<const double>(want)) > cfg.tol_eig)
        throw VerificationError("fiedler_glue spectrum check failed");
    return c;
}

/// Realizes lambda1 >= 0 >= lambda2 >= ... >= lambdan with nonnegative sum
/// by iterated gluing: start from the 1x1 block [sum] and absorb the tail
/// most-negative-first, each step a glue against a fresh 1x1 zero block.
inline SymMatrix suleimanova_realize(std::span<const double> lams, const Config& cfg = {}) {
    const int n = static_cast<int>(lams.size());
    if (n < 1 || n > SymMatrix::max_order)
        throw DomainError("suleimanova_realize handles 1 to 5 eigenvalues");
    double sum = 0.0;
    for (double l : lams) sum += l;
    if (sum < -cfg.tol_geom)
        throw PreconditionError("suleimanova_realize requires a nonnegative sum");
    if (lams[0] < -cfg.tol_geom)
        throw PreconditionError("suleimanova_realize requires lambda1 >= 0");
    for (int i = 1; i < n; ++i) {
        if (lams[static_cast<std::size_t>(i)] > cfg.tol_geom)
            throw PreconditionError("suleimanova_realize requires lambda2..n <= 0");
        if (lams[static_cast<std::size_t>(i)] > lams[static_cast<std::size_t>(i - 1)] + cfg.tol_geom)
            throw PreconditionError("suleimanova_realize requires a descending sequence");
    }

    SymMatrix m(1);
    m.set(0, 0, std::max(sum, 0.0));
    const SymMatrix zero1 = SymMatrix::zero(1);
    const std::array<double, 1> unit{1.0};
    for (int j = n - 1; j >= 1; --j) {
        const double eps = std::max(0.0, -lams[static_cast<std::size_t>(j)]);
        const PerronPair pp = perron_vector(m, cfg);
        m = fiedler_glue(m, pp.value,
                         std::span<const double>(pp.vector.data(), static_cast<std::size_t>(pp.order)),
                         zero1, 0.0, std::span<const double>(unit), eps, cfg);
    }
    std::vector<double> want(lams.begin(), lams.end());
    std::sort(want.begin(), want.end(), std::greater<double>());
    if (verify(m, std::span<const double>(want)) > cfg.tol_eig)
        throw VerificationError("suleimanova_realize spectrum check failed");
    return m;
}

namespace detail {

inline double partition_sum(std::span<const double> lams, const std::vector<int>& k) {
    double s = 0.0;
    for (int i : k) s += lams[static_cast<std::size_t>(i - 1)];
    return s;
}

/// Core of the Loewy split for a descending sequence with lambda2 >= 0 and
/// nonnegative sum. Kept generic (sum may be positive) so the delta branch,
/// unreachable for trace-zero inputs, stays exercisable.
inline SymMatrix split_realize(std::span<const double> lams, const Partition& part,
                               const Config& cfg) {
    const int n = static_cast<int>(lams.size());
    if (n < 4 || n > SymMatrix::max_order)
        throw DomainError("split_realize handles 4 or 5 eigenvalues");
    std::vector<int> all(part.k1);
    all.insert(all.end(), part.k2.begin(), part.k2.end());
    std::sort(all.begin(), all.end());
    std::vector<int> expect(static_cast<std::size_t>(n - 2));
    for (int i = 0; i < n - 2; ++i) expect[static_cast<std::size_t>(i)] = i + 3;
    if (all != expect)
        throw PreconditionError("partition must split {3.." + std::to_string(n) + "}");
    const double l1 = lams[0];
    const double l2 = lams[1];
    if (l2 < -cfg.tol_geom)
        throw PreconditionError("split_realize requires lambda2 >= 0");
    const double s1 = partition_sum(lams, part.k1);
    const double s2 = partition_sum(lams, part.k2);
    if (l1 < -s1 - cfg.tol_geom || -s1 < -s2 - cfg.tol_geom)
        throw PreconditionError("partition sums must satisfy lambda1 >= -sum K1 >= -sum K2");

    const double eps = l1 + s1;
    const double shift = (l1 - eps >= l2 + eps) ? eps : 0.5 * (l1 - l2);
    std::vector<double> la{l1 - shift};
    for (int i : part.k1) la.push_back(lams[static_cast<std::size_t>(i - 1)]);
    std::vector<double> lb{l2 + shift};
    for (int i : part.k2) lb.push_back(lams[static_cast<std::size_t>(i - 1)]);
    std::sort(la.begin() + 1, la.end(), std::greater<double>());
    std::sort(lb.begin() + 1, lb.end(), std::greater<double>());

    const SymMatrix a = suleimanova_realize(la, cfg);
    const SymMatrix b = suleimanova_realize(lb, cfg);
    const PerronPair pa = perron_vector(a, cfg);
    const PerronPair pb = perron_vector(b, cfg);
    return fiedler_glue(a, pa.value, std::span<const double>(pa.vector.data(), static_cast<std::size_t>(pa.order)),
                        b, pb.value, std::span<const double>(pb.vector.data(), static_cast<std::size_t>(pb.order)),
                        shift, cfg);
}

} // namespace detail

/// Partition choice for the split construction, per d-regime with a role
/// swap when x is small.
inline Partition loewy_partition_select(const NormalizedSpectrum& n, const Config& cfg = {}) {
    if (!(n.x() > 0.0) || n.y() > 0.0)
        throw PreconditionError("loewy_partition_select applies when x > 0 and y <= 0");
    if (!theorem2_check(n.region_point(), cfg).realizable)
        throw PreconditionError("loewy_partition_select requires a realizable point");
    Partition p;
    if (n.d() <= -0.5) {
        p.k1 = {3, 5};
        p.k2 = {4};
    } else if (n.x() > 2.0 * n.d() + 1.0) {
        p.k1 = {3, 4};
        p.k2 = {5};
    } else {
        p.k1 = {5};
        p.k2 = {3, 4};
    }
    const auto t = n.tuple();
    const double s1 = detail::partition_sum(std::span<const double>(t), p.k1);
    const double s2 = detail::partition_sum(std::span<const double>(t), p.k2);
    if (1.0 < -s1 - cfg.tol_geom || -s1 < -s2 - cfg.tol_geom)
        throw PreconditionError("selected partition violates the sum ordering");
    return p;
}

/// Realizes the normalized spectrum through the two-block split: Suleimanova
/// realizations of {lambda1-eps} u K1 and {lambda2+eps} u K2, glued back.
inline SymMatrix loewy_realize(const NormalizedSpectrum& n, const Partition& part,
                               const Config& cfg = {}) {
    const auto t = n.tuple();
    SymMatrix m = detail::split_realize(std::span<const double>(t), part, cfg);
    if (verify(m, std::span<const double>(t)) > cfg.tol_eig)
        throw VerificationError("loewy_realize spectrum check failed");
    return m;
}

/// Explicit family A(x): realizes (1, x, 0, d-x, -d-1) on segment OJ.
inline SymMatrix matrix_A(double x, double d, const Config& cfg = {}) {
    if (d < -0.5 - cfg.tol_geom || d > cfg.tol_geom)
        throw PreconditionError("matrix_A requires d in [-1/2, 0]");
    if (x < -cfg.tol_geom || x > 2.0 * d + 1.0 + cfg.tol_geom)
        throw PreconditionError("matrix_A requires x in [0, 2d+1]");
    d = std::clamp(d, -0.5, 0.0);
    x = std::clamp(x, 0.0, 2.0 * d + 1.0);
    const double f1 = std::sqrt(std::max(0.0, 0.5 * (x + 1.0) * (d + 1.0 - x)));
    const double g1 = std::sqrt(std::max(0.0, x * (x - d)));
    SymMatrix m(5);
    m.set(0, 2, f1);
    m.set(0, 4, f1);
    m.set(1, 4, g1);
    m.set(2, 3, g1);
    m.set(2, 4, -d);
    const std::array<double, 5> want{1.0, x, 0.0, d - x, -d - 1.0};
    if (verify(m, std::span<const double>(want)) > cfg.tol_eig)
        throw VerificationError("matrix_A spectrum check failed");
    return m;
}

/// Explicit family B(x,y): realizes (1, x, y, d-x-y, -d-1) for y > 0 inside
/// triangle OBJ, provided s3 >= 0.
inline SymMatrix matrix_B(double x, double y, double d, const Config& cfg = {}) {
    const double tol = cfg.tol_geom;
    if (d < -0.5 - tol || d > tol)
        throw PreconditionError("matrix_B requires d in (-1/2, 0]");
    if (!(y > 0.0))
        throw PreconditionError("matrix_B requires y > 0");
    if (y > x + tol || x + y > 2.0 * d + 1.0 + tol)
        throw PreconditionError("matrix_B requires (x, y) inside triangle OBJ");
    const double s3 = eval_s3(RegionPoint{d, x, y});
    if (s3 < -tol)
        throw PreconditionError("matrix_B requires s3 >= 0");
    const double u2 = 0.5 * ((d - x) * (x + y) + d + 1.0);
    if (u2 <= cfg.tol_entry * cfg.tol_entry)
        throw DegenerateUError("matrix_B coupling entry u is degenerate");
    const double u = std::sqrt(u2);
    const double v2 = (x + y) * (x + 1.0) * (x - d) * (x - d - 1.0) * (x + y + 1.0) *
                      (x + y - d - 1.0);
    const double v = std::sqrt(std::max(0.0, v2));
    SymMatrix m(5);
    m.set(0, 2, u);
    m.set(0, 4, u);
    m.set_clamped(1, 3, (d + 1.0) * y / (2.0 * u2), cfg);
    m.set(1, 4, v / (2.0 * u2));
    m.set(2, 3, v / (2.0 * u2));
    m.set_clamped(2, 4, std::max(s3, 0.0) / (6.0 * u2), cfg);
    const std::array<double, 5> want{1.0, x, y, d - x - y, -d - 1.0};
    if (verify(m, std::span<const double>(want)) > cfg.tol_eig)
        throw VerificationError("matrix_B spectrum check failed");
    return m;
}

/// Wraps a claimed realization into a Certificate, recomputing the spectrum.
inline Certificate certify(Method method, const SymMatrix& m, const Spectrum5& target,
                           const Config& cfg = {}) {
    if (m.order() != 5) throw DomainError("certificates cover 5x5 matrices");
    const EigenDecomposition eig = jacobi_eigen(m);
    double res = 0.0;
    for (int i = 0; i < 5; ++i)
        res = std::max(res, std::abs(eig.values[static_cast<std::size_t>(i)] -
                                     target[i]));
    if (res > cfg.tol_eig)
        throw VerificationError("certificate residual " + std::to_string(res) +
                                " exceeds tolerance");
    return Certificate{method, m, target, eig.values, res};
}

struct ConstructResult {
    /// For the all-zero spectrum there is no normalized region point, so the
    /// verdict carries realizable=true with no region label.
    Verdict verdict;
    std::optional<Certificate> certificate;
};

/// Decides realizability and, when the answer is yes, builds a matrix:
/// x <= 0 goes through the iterated glue, x > 0 >= y through the split,
/// and the interior y > 0 case through the explicit family B.
inline ConstructResult construct(const Spectrum5& s, const Config& cfg = {}) {
    ConstructResult out;
    if (s.is_zero()) {
        out.verdict.realizable = true;
        out.certificate = certify(Method::Zero, SymMatrix::zero(5), s, cfg);
        return out;
    }

    std::optional<NormalizedSpectrum> n;
    try {
        n = normalize(s, cfg);
    } catch (const NotPerronDominantError&) {
        out.verdict.failed_condition = "lambda1 must dominate: |lambda5| > lambda1";
        return out;
    } catch (const NonPositiveLeadingError&) {
        out.verdict.failed_condition = "largest eigenvalue must be positive";
        return out;
    }

    const Verdict v2 = theorem2_check(n->region_point(), cfg);
    const Verdict v3 = theorem3_check(*n, cfg);
    if (v2.realizable != v3.realizable)
        throw VerificationError("geometric and power-sum criteria disagree");
    out.verdict = v2;
    if (!v2.realizable) return out;

    Method method;
    std::optional<SymMatrix> normalized;
    if (n->x() <= 0.0) {
        method = Method::Suleimanova;
        const auto t = n->tuple();
        normalized = suleimanova_realize(std::span<const double>(t), cfg);
    } else if (n->y() <= 0.0) {
        method = Method::LoewySplit;
        normalized = loewy_realize(*n, loewy_partition_select(*n, cfg), cfg);
    } else {
        method = Method::ExplicitB;
        normalized = matrix_B(n->x(), n->y(), n->d(), cfg);
    }
    const SymMatrix m = denormalize_matrix(*normalized, n->scale());
    if (std::abs(m.trace()) > 5.0 * cfg.tol_entry * std::max(1.0, m.max_abs()))
        throw VerificationError("constructed matrix has nonzero trace");
    out.certificate = certify(method, m, s, cfg);
    return out;
}

} // namespace sniep5
