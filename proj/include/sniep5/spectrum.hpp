#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>

#include "sniep5/config.hpp"
#include "sniep5/errors.hpp"
#include "sniep5/matrix.hpp"

namespace sniep5 {

/// Coordinates (d, x, y) in which all region geometry is expressed.
/// Corresponds to the tuple (1, x, y, d-x-y, -d-1).
struct RegionPoint {
    double d = 0.0;
    double x = 0.0;
    double y = 0.0;
};

/// Five eigenvalue targets, sorted non-increasing, summing to zero.
class Spectrum5 {
public:
    const std::array<double, 5>& values() const { return v_; }
    double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

    bool is_zero() const {
        return v_[0] == 0.0 && v_[1] == 0.0 && v_[2] == 0.0 && v_[3] == 0.0 && v_[4] == 0.0;
    }

    friend Spectrum5 validate_and_sort(std::span<const double> raw, const Config& cfg);

private:
    Spectrum5() = default;
    std::array<double, 5> v_{};
};

/// Validates finiteness and zero trace, sorts descending.
inline Spectrum5 validate_and_sort(std::span<const double> raw, const Config& cfg = {}) {
    if (raw.size() != 5)
        throw DomainError("expected 5 eigenvalues, got " + std::to_string(raw.size()));
    Spectrum5 s;
    double sum = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        if (!std::isfinite(raw[i]))
            throw NonFiniteError("eigenvalue " + std::to_string(i) + " is not finite");
        s.v_[i] = raw[i];
        sum += raw[i];
    }
    std::sort(s.v_.begin(), s.v_.end(), std::greater<double>());
    const double tol = cfg.tol_sum * std::max(1.0, std::abs(s.v_[0]));
    if (std::abs(sum) > tol)
        throw NonZeroTraceError("spectrum sum " + std::to_string(sum) + " is not zero");
    return s;
}

/// The canonical form (1, x, y, d-x-y, -d-1) with the scale lambda1 divided out.
class NormalizedSpectrum {
public:
    double x() const { return x_; }
    double y() const { return y_; }
    double d() const { return d_; }
    double scale() const { return scale_; }

    RegionPoint region_point() const { return RegionPoint{d_, x_, y_}; }

    /// Entries of the reconstructed tuple (1, x, y, d-x-y, -d-1).
    std::array<double, 5> tuple() const { return {1.0, x_, y_, d_ - x_ - y_, -d_ - 1.0}; }

    friend NormalizedSpectrum normalize(const Spectrum5& s, const Config& cfg);
    friend NormalizedSpectrum from_region_point(const RegionPoint& p, const Config& cfg);

private:
    NormalizedSpectrum(double x, double y, double d, double scale, const Config& cfg)
        : x_(x), y_(y), d_(d), scale_(scale) {
        const std::array<double, 5> t = tuple();
        for (int i = 0; i + 1 < 5; ++i)
            if (t[static_cast<std::size_t>(i)] < t[static_cast<std::size_t>(i + 1)] - cfg.tol_geom)
                throw NotOrderedError("normalized tuple is not non-increasing at position " +
                                      std::to_string(i));
        if (d_ > cfg.tol_geom)
            throw NotPerronDominantError("d = " + std::to_string(d_) +
                                         " > 0 means lambda5 < -lambda1");
        if (d_ < -0.75 - cfg.tol_geom)
            throw DomainError("d = " + std::to_string(d_) + " below -3/4");
    }

    double x_, y_, d_, scale_;
};

/// Divides out lambda1. The all-zero spectrum is handled by the construction
/// dispatcher, not here.
inline NormalizedSpectrum normalize(const Spectrum5& s, const Config& cfg = {}) {
    const double l1 = s[0];
    if (l1 <= 0.0) {
        if (s.is_zero())
            throw NonPositiveLeadingError("all-zero spectrum has no normalized form");
        throw NonPositiveLeadingError("leading eigenvalue " + std::to_string(l1) +
                                      " is not positive");
    }
    if (std::abs(s[4]) > l1 * (1.0 + cfg.tol_geom))
        throw NotPerronDominantError("|lambda5| = " + std::to_string(std::abs(s[4])) +
                                     " exceeds lambda1 = " + std::to_string(l1));
    const double x = s[1] / l1;
    const double y = s[2] / l1;
    const double d = (s[1] + s[2] + s[3]) / l1;
    return NormalizedSpectrum(x, y, d, l1, cfg);
}

/// Builds the normalized spectrum (scale 1) from region coordinates,
/// rejecting tuples that are not non-increasing.
inline NormalizedSpectrum from_region_point(const RegionPoint& p, const Config& cfg = {}) {
    if (!std::isfinite(p.d) || !std::isfinite(p.x) || !std::isfinite(p.y))
        throw NonFiniteError("region point is not finite");
    return NormalizedSpectrum(p.x, p.y, p.d, 1.0, cfg);
}

namespace detail {

/// Deterministic integer power by repeated multiplication.
inline double ipow(double base, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= base;
    return r;
}

} // namespace detail

/// s_k = 1 + x^k + y^k + (d-x-y)^k + (-d-1)^k.
inline double power_sum(const NormalizedSpectrum& n, int k) {
    if (k < 1) throw DomainError("power_sum requires k >= 1");
    const auto t = n.tuple();
    double s = 0.0;
    for (double l : t) s += detail::ipow(l, k);
    return s;
}

/// Same power sum evaluated directly from region coordinates (no ordering
/// requirement); used by the scan oracles over raw grid points.
inline double power_sum(const RegionPoint& p, int k) {
    if (k < 1) throw DomainError("power_sum requires k >= 1");
    return 1.0 + detail::ipow(p.x, k) + detail::ipow(p.y, k) +
           detail::ipow(p.d - p.x - p.y, k) + detail::ipow(-p.d - 1.0, k);
}

/// Multiplies every entry by scale; the spectrum scales linearly.
inline SymMatrix denormalize_matrix(const SymMatrix& m, double scale) {
    if (!(scale > 0.0)) throw DomainError("scale must be positive");
    return m.scaled(scale);
}

} // namespace sniep5
