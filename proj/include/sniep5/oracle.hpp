#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
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

/// Outcome of a brute-force scan. Violations are normalized against the
/// stated tolerance by the producing op; pass means max_violation stayed
/// within it.
struct ScanReport {
    std::string claim;
    int resolution = 0;
    double tolerance = 0.0;
    double max_violation = 0.0;
    long checked = 0;
    std::vector<std::array<double, 3>> violations;

    bool pass() const { return max_violation <= tolerance; }
};

/// Deterministic cross-platform uniform source: std::mt19937_64 (a fully
/// specified algorithm) with the top 53 bits mapped to [0, 1). The raw
/// 64-bit seed goes straight into the engine. Distribution classes from
/// <random> are avoided because their output is implementation-defined.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {
        return static_cast<double>(gen_() >> 11) * (1.0 / 9007199254740992.0);
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 gen_;
};

/// Random element of the sample space: zero diagonal, off-diagonal entries
/// i.i.d. uniform [0,1], filled in row-major upper-triangle order.
inline SymMatrix random_realizable_matrix(std::uint64_t seed) {
    PortableRng rng(seed);
    SymMatrix m(5);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) m.set(i, j, rng.uniform());
    return m;
}

namespace detail {

/// How far the point sits outside the realizability region; 0 when inside.
inline double region_violation(const RegionPoint& p, const Config& cfg) {
    double worst = 0.0;
    worst = std::max(worst, p.y - p.x);
    worst = std::max(worst, p.y - (-p.x + 2.0 * p.d + 1.0));
    worst = std::max(worst, 0.5 * (p.d - p.x) - p.y);
    if (p.d > -0.5) worst = std::max(worst, p.x - (p.d + 1.0));
    if (p.d > d_star) {
        const double f = eval_f(p.d, cfg);
        const double p1 = eval_p1_p2(p.d, cfg).p1;
        if (p.x >= f && p.x <= p1)
            worst = std::max(worst, p.y - eval_h(p.x, p.d, cfg));
    }
    return worst;
}

} // namespace detail

/// Samples trace-zero symmetric nonnegative matrices and checks that every
/// spectrum passes both realizability criteria. Trial t uses seed + t.
inline ScanReport mc_necessity(int trials, std::uint64_t seed, const Config& cfg = {}) {
    if (trials < 1) throw DomainError("mc_necessity requires trials >= 1");
    ScanReport rep;
    rep.claim = "necessity: sampled nonnegative matrix spectra satisfy both criteria";
    rep.resolution = trials;
    rep.tolerance = cfg.tol_geom;
    for (int t = 0; t < trials; ++t) {
        const SymMatrix m = random_realizable_matrix(seed + static_cast<std::uint64_t>(t));
        const EigenDecomposition eig = jacobi_eigen(m);
        if (!(eig.values[0] > 0.0)) continue;
        const Spectrum5 s =
            validate_and_sort(std::span<const double>(eig.values.data(), 5), cfg);
        const NormalizedSpectrum n = normalize(s, cfg);
        ++rep.checked;
        const Verdict v2 = theorem2_check(n.region_point(), cfg);
        const Verdict v3 = theorem3_check(n, cfg);
        double bad = 0.0;
        if (!v2.realizable)
            bad = std::max(bad, detail::region_violation(n.region_point(), cfg));
        if (!v3.realizable) {
            bad = std::max(bad, -eval_s3(n.region_point()));
            bad = std::max(bad, n.x() - n.d() - 1.0);
        }
        if (!v2.realizable || !v3.realizable) {
            rep.max_violation = std::max(rep.max_violation, bad);
            if (rep.violations.size() < 32)
                rep.violations.push_back({n.d(), n.x(), n.y()});
        }
    }
    return rep;
}

/// Closed-form extrema of s_k over triangle OBJ, split by parity of k.
struct Lemma1Extremes {
    Point min_at, max_at;
    double min_value = 0.0, max_value = 0.0;
};

inline Lemma1Extremes lemma1_table(double d, int k) {
    if (k < 2) throw DomainError("lemma1_table requires k >= 2");
    Lemma1Extremes e;
    const double at_O = 1.0 + detail::ipow(d, k) + detail::ipow(-d - 1.0, k);
    const double at_B = 1.0 + 2.0 * detail::ipow(d + 0.5, k) + 2.0 * detail::ipow(-d - 1.0, k);
    const double at_J = 1.0 + detail::ipow(2.0 * d + 1.0, k) + 2.0 * detail::ipow(-d - 1.0, k);
    if (k % 2 == 0) {
        e.min_at = Point{0.0, 0.0};
        e.min_value = at_O;
        e.max_at = Point{2.0 * d + 1.0, 0.0};
        e.max_value = at_J;
    } else {
        e.min_at = Point{d + 0.5, d + 0.5};
        e.min_value = at_B;
        e.max_at = Point{0.0, 0.0};
        e.max_value = at_O;
    }
    return e;
}

namespace detail {

/// Barycentric grid over triangle OBJ at the given d; visits corners exactly.
template <class Fn>
void scan_obj(double d, int resolution, Fn&& fn) {
    const Point O{0.0, 0.0};
    const Point B{d + 0.5, d + 0.5};
    const Point J{2.0 * d + 1.0, 0.0};
    const double n = resolution;
    for (int i = 0; i <= resolution; ++i) {
        for (int j = 0; j <= resolution - i; ++j) {
            const double a = i / n;
            const double b = j / n;
            const double c = 1.0 - a - b;
            fn(a * O.x + b * B.x + c * J.x, a * O.y + b * B.y + c * J.y);
        }
    }
}

} // namespace detail

/// Grid check of the power-sum extrema table: empirical min/max of s_k over
/// triangle OBJ against the closed forms. Deviations are reported relative
/// to their own tolerance, so the report tolerance is 1.
inline ScanReport grid_scan_lemma1(double d, int k, int resolution, const Config& cfg = {}) {
    if (d < -0.5 - cfg.tol_geom || d > cfg.tol_geom)
        throw DomainError("grid_scan_lemma1 requires d in [-1/2, 0]");
    if (k < 2) throw DomainError("grid_scan_lemma1 requires k >= 2");
    if (resolution < 50) throw DomainError("grid_scan_lemma1 requires resolution >= 50");
    d = std::clamp(d, -0.5, 0.0);

    double min_v = 0.0, max_v = 0.0;
    Point min_at, max_at;
    bool first = true;
    detail::scan_obj(d, resolution, [&](double x, double y) {
        const double s = power_sum(RegionPoint{d, x, y}, k);
        if (first || s < min_v) {
            min_v = s;
            min_at = {x, y};
        }
        if (first || s > max_v) {
            max_v = s;
            max_at = {x, y};
        }
        first = false;
    });

    const Lemma1Extremes table = lemma1_table(d, k);
    const double val_tol = 1e-6 + 8.0 * k / resolution;

    ScanReport rep;
    rep.claim = "power-sum extrema over OBJ match the closed-form table (k=" +
                std::to_string(k) + ")";
    rep.resolution = resolution;
    rep.tolerance = 1.0;
    rep.checked = static_cast<long>(resolution + 1) * (resolution + 2) / 2;
    auto record = [&rep](double dev, double tol, double x, double y) {
        const double scaled = dev / tol;
        if (scaled > rep.max_violation) rep.max_violation = scaled;
        if (scaled > 1.0 && rep.violations.size() < 32) rep.violations.push_back({x, y, dev});
    };
    record(std::abs(min_v - table.min_value), val_tol, min_at.x, min_at.y);
    record(std::abs(max_v - table.max_value), val_tol, max_at.x, max_at.y);
    // Location check. Normally the grid extremum must land within two cells
    // of the claimed vertex. When the extremum ties along a whole edge (odd
    // k at d = 0 flattens the power sum on OJ) the argmax is arbitrary, so
    // attaining the extreme value at the claimed vertex is what counts.
    const double arg_tol = 2.0 / resolution;
    auto location_dev = [&](const Point& got, const Point& want, double extreme) {
        const double arg =
            std::max(std::abs(got.x - want.x), std::abs(got.y - want.y)) / arg_tol;
        const double val =
            std::abs(power_sum(RegionPoint{d, want.x, want.y}, k) - extreme) / val_tol;
        return std::min(arg, val);
    };
    record(location_dev(min_at, table.min_at, min_v), 1.0, table.min_at.x, table.min_at.y);
    record(location_dev(max_at, table.max_at, max_v), 1.0, table.max_at.x, table.max_at.y);
    return rep;
}

/// Grid check of the s3 sign law over triangle OBJ: nonnegative everywhere
/// for d <= d_star, and matching membership in the curved shape OHIJ beyond,
/// up to a band of 2/resolution around the curve.
inline ScanReport grid_scan_lemma2(double d, int resolution, const Config& cfg = {}) {
    if (d < -0.5 - cfg.tol_geom || d > cfg.tol_geom)
        throw DomainError("grid_scan_lemma2 requires d in [-1/2, 0]");
    if (resolution < 50) throw DomainError("grid_scan_lemma2 requires resolution >= 50");
    d = std::clamp(d, -0.5, 0.0);

    ScanReport rep;
    rep.resolution = resolution;
    if (d <= d_star) {
        rep.claim = "s3 is nonnegative over the whole triangle OBJ";
        rep.tolerance = cfg.tol_geom;
        detail::scan_obj(d, resolution, [&](double x, double y) {
            ++rep.checked;
            const double s3 = eval_s3(RegionPoint{d, x, y});
            if (-s3 > rep.max_violation) {
                rep.max_violation = -s3;
                if (-s3 > rep.tolerance && rep.violations.size() < 32)
                    rep.violations.push_back({x, y, s3});
            }
        });
        return rep;
    }

    rep.claim = "s3 >= 0 exactly on the curved shape OHIJ";
    rep.tolerance = 2.0 / resolution;
    const double f = eval_f(d, cfg);
    detail::scan_obj(d, resolution, [&](double x, double y) {
        ++rep.checked;
        const double s3 = eval_s3(RegionPoint{d, x, y});
        const bool nonneg = s3 >= -cfg.tol_geom;
        const bool member = x <= f || y <= eval_h(x, d, cfg) + cfg.tol_geom;
        if (nonneg == member) return;
        double dist = rep.tolerance + 1.0;
        if (x > d) dist = std::abs(y - eval_h(x, d, cfg));
        if (dist > rep.max_violation) {
            rep.max_violation = dist;
            if (dist > rep.tolerance && rep.violations.size() < 32)
                rep.violations.push_back({x, y, s3});
        }
    });
    return rep;
}

} // namespace sniep5
