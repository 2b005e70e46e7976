#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sniep5/config.hpp"
#include "sniep5/errors.hpp"
#include "sniep5/spectrum.hpp"

namespace sniep5 {

/// Right endpoint of the middle d-regime, (-3+sqrt(5))/4.
inline const double d_star = (-3.0 + std::sqrt(5.0)) / 4.0;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Named points of the region geometry at a fixed d. H and I exist only
/// for d >= d_star.
struct VertexTable {
    double d = 0.0;
    Point A, B, C, D, E, F, G, J, O;
    std::optional<Point> H, I;
};

enum class RegionLabel { none, ABC, ABFG, P };

inline const char* to_string(RegionLabel l) {
    switch (l) {
        case RegionLabel::ABC: return "ABC";
        case RegionLabel::ABFG: return "ABFG";
        case RegionLabel::P: return "P";
        default: return "none";
    }
}

struct Verdict {
    bool realizable = false;
    RegionLabel region_label = RegionLabel::none;
    std::string failed_condition;
};

namespace detail {

/// Plain bisection; assumes fn(lo) <= 0 <= fn(hi) or the reverse.
template <class Fn>
double bisect(Fn&& fn, double lo, double hi) {
    double flo = fn(lo);
    if (flo == 0.0) return lo;
    const bool rising = flo < 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = fn(mid);
        if ((fm <= 0.0) == rising)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Newton-polishes a closed-form cubic root; falls back to bisection on
/// [lo, hi] when the closed form strays outside the bracket.
template <class Fn, class Dfn>
double polish_root(double x0, Fn&& fn, Dfn&& dfn, double lo, double hi) {
    if (!std::isfinite(x0) || x0 < lo - 1e-8 || x0 > hi + 1e-8)
        return bisect(fn, lo, hi);
    const double x = std::clamp(x0, lo, hi);
    const double der = dfn(x);
    if (std::abs(der) > 1e-12) {
        const double step = fn(x) / der;
        if (std::isfinite(step) && std::abs(step) < 1e-6) return x - step;
    }
    return bisect(fn, lo, hi);
}

} // namespace detail

/// r(d) on [-1, 0]. The direct formula cancels catastrophically as d -> 0,
/// so the conjugate-rationalized form takes over for |d| < 0.25.
inline double eval_r(double d, const Config& cfg = {}) {
    if (d < -1.0 - cfg.tol_geom || d > cfg.tol_geom)
        throw DomainError("eval_r requires d in [-1, 0], got " + std::to_string(d));
    d = std::clamp(d, -1.0, 0.0);
    const double q = (d + 1.0) * (8.0 * d * d + 27.0 * d + 27.0);
    const double root = std::sqrt(std::max(0.0, q));
    const double s27 = 3.0 * std::sqrt(3.0);
    if (d > -0.25) {
        const double d5 = d * d * d * d * d;
        return 16.0 * d5 / (4.0 * d * d + 27.0 * d + 27.0 + s27 * root);
    }
    return 4.0 * d * d * d + 27.0 * d * d + 27.0 * d + s27 * (-d) * root;
}

/// The three cubics whose roots shape the boundary.
struct CubicValues {
    double h3 = 0.0;
    double h4 = 0.0;
    double h5 = 0.0;
};

inline CubicValues cubic_diagnostics(double x, double d) {
    CubicValues c;
    c.h3 = x * x * x + d * x * x - d * d * x - 4.0 * d - 4.0 * d * d - d * d * d;
    c.h4 = 8.0 * x * x * x - 16.0 * d * x * x + 8.0 * d * d * x + 4.0 * d + 4.0 * d * d;
    const double w = 2.0 * d + 1.0;
    c.h5 = -4.0 * w * x * x + 4.0 * w * w * x - 8.0 * d * d * (d + 1.0);
    return c;
}

/// Real root of h4 tracked by the Cardano-type closed form; equals the
/// curve endpoint x-coordinate H for d >= d_star. Continuous extension 0
/// at d = 0.
inline double eval_f(double d, const Config& cfg = {}) {
    if (d < -1.0 - cfg.tol_geom || d > cfg.tol_geom)
        throw DomainError("eval_f requires d in [-1, 0], got " + std::to_string(d));
    d = std::clamp(d, -1.0, 0.0);
    if (d == 0.0) return 0.0;
    const double r = eval_r(d, cfg);
    const double cr = std::cbrt(r);
    const double c4 = std::cbrt(4.0);
    const double x0 = (2.0 / 3.0) * d - c4 * d * d / (3.0 * cr) - cr / (3.0 * c4);
    const double dd = d;
    auto h4 = [dd](double x) { return cubic_diagnostics(x, dd).h4; };
    auto dh4 = [dd](double x) { return 24.0 * x * x - 32.0 * dd * x + 8.0 * dd * dd; };
    return detail::polish_root(x0, h4, dh4, 0.0, 1.0);
}

/// g(d) = sqrt((d - d_star)(d + 3/4 + sqrt(5)/4) / (2d + 1)), real for d >= d_star.
inline double eval_g(double d, const Config& cfg = {}) {
    if (d < d_star - cfg.tol_geom || d > cfg.tol_geom)
        throw DomainError("eval_g requires d in [d_star, 0], got " + std::to_string(d));
    const double a = d - d_star;
    const double b = d - (-3.0 - std::sqrt(5.0)) / 4.0;
    const double den = 2.0 * d + 1.0;
    return std::sqrt(std::max(0.0, a * b / den));
}

/// Roots p1 >= p2 of h5, written as d + 1/2 +- g(d).
struct P1P2 {
    double p1 = 0.0;
    double p2 = 0.0;
};

inline P1P2 eval_p1_p2(double d, const Config& cfg = {}) {
    const double g = eval_g(d, cfg);
    return P1P2{d + 0.5 + g, d + 0.5 - g};
}

/// Upper root of s3 viewed as a quadratic in y; the curve HI is y = h(x).
inline double eval_h(double t, double d, const Config& cfg = {}) {
    if (std::abs(t - d) <= cfg.tol_geom && std::abs(d) <= cfg.tol_geom)
        return 0.0;
    if (t <= d)
        throw DomainError("eval_h requires t > d");
    const double h3 = cubic_diagnostics(t, d).h3;
    const double rad = h3 / (t - d);
    if (rad < -cfg.tol_geom)
        throw DomainError("eval_h radicand negative at t = " + std::to_string(t));
    return -0.5 * (t - d) + 0.5 * std::sqrt(std::max(0.0, rad));
}

/// Single real root of h3; always <= d/3 < 0.
inline double eval_x3(double d, const Config& cfg = {}) {
    if (d < -1.0 - cfg.tol_geom || d >= 0.0)
        throw DomainError("eval_x3 requires d in [-1, 0), got " + std::to_string(d));
    d = std::max(d, -1.0);
    const double r = eval_r(d, cfg);
    const double cr = std::cbrt(r);
    const double c4 = std::cbrt(4.0);
    const double c2 = std::cbrt(2.0);
    const double x0 = -d / 3.0 + 2.0 * c4 * d * d / (3.0 * cr) + c2 * cr / 3.0;
    const double dd = d;
    auto h3 = [dd](double x) { return cubic_diagnostics(x, dd).h3; };
    auto dh3 = [dd](double x) { return 3.0 * x * x + 2.0 * dd * x - dd * dd; };
    return detail::polish_root(x0, h3, dh3, -5.0, d / 3.0);
}

/// s3 as the quadratic-in-y expansion from the region coordinates.
inline double eval_s3(const RegionPoint& p) {
    const double d = p.d, x = p.x, y = p.y;
    return 3.0 * (d - x) * y * y + 3.0 * (2.0 * d * x - d * d - x * x) * y +
           3.0 * (d * x * x - d * d * x - d - d * d);
}

inline VertexTable vertices(double d, const Config& cfg = {}) {
    if (d < -0.75 - cfg.tol_geom || d > cfg.tol_geom)
        throw DomainError("vertices requires d in [-3/4, 0], got " + std::to_string(d));
    VertexTable t;
    t.d = d;
    t.A = {d / 3.0, d / 3.0};
    t.B = {d + 0.5, d + 0.5};
    t.C = {3.0 * d + 2.0, -d - 1.0};
    t.D = {1.0, 2.0 * d};
    t.E = {1.0, d / 2.0 - 0.5};
    t.F = {d + 1.0, d};
    t.G = {d + 1.0, -0.5};
    t.J = {2.0 * d + 1.0, 0.0};
    t.O = {0.0, 0.0};
    if (d >= d_star) {
        const double f = eval_f(d, cfg);
        const P1P2 p = eval_p1_p2(d, cfg);
        t.H = Point{f, f};
        t.I = Point{p.p1, p.p2};
    }
    return t;
}

inline bool in_triangle_ABC(const RegionPoint& p, const Config& cfg = {}) {
    const double tol = cfg.tol_geom;
    return p.y <= p.x + tol && p.y <= -p.x + 2.0 * p.d + 1.0 + tol &&
           p.y >= 0.5 * (p.d - p.x) - tol;
}

inline bool in_quadrangle_ABFG(const RegionPoint& p, const Config& cfg = {}) {
    return in_triangle_ABC(p, cfg) && p.x <= p.d + 1.0 + cfg.tol_geom;
}

inline bool in_shape_P(const RegionPoint& p, const Config& cfg = {}) {
    if (!in_quadrangle_ABFG(p, cfg)) return false;
    const double tol = cfg.tol_geom;
    const double f = eval_f(p.d, cfg);
    const double p1 = eval_p1_p2(p.d, cfg).p1;
    if (p.x >= f - tol && p.x <= p1 + tol)
        return p.y <= eval_h(p.x, p.d, cfg) + tol;
    return true;
}

namespace detail {

inline RegionLabel regime_label(double d) {
    if (d <= -0.5) return RegionLabel::ABC;
    if (d <= d_star) return RegionLabel::ABFG;
    return RegionLabel::P;
}

inline std::string triangle_failure(const RegionPoint& p, const Config& cfg) {
    const double tol = cfg.tol_geom;
    if (p.y > p.x + tol) return "y <= x fails";
    if (p.y > -p.x + 2.0 * p.d + 1.0 + tol) return "y <= -x + 2d + 1 fails";
    if (p.y < 0.5 * (p.d - p.x) - tol) return "y >= (d - x)/2 fails";
    return "";
}

inline std::string region_failure(const RegionPoint& p, RegionLabel reg, const Config& cfg) {
    std::string why = triangle_failure(p, cfg);
    if (!why.empty()) return why;
    if (reg != RegionLabel::ABC && p.x > p.d + 1.0 + cfg.tol_geom)
        return "x <= d + 1 fails (lambda2 + lambda5 > 0)";
    if (reg == RegionLabel::P) return "y <= h(x) fails (s3 < 0)";
    return "region membership fails";
}

} // namespace detail

/// Geometric realizability test: triangle ABC for d <= -1/2, quadrangle
/// ABFG up to d_star, shape P beyond. At the two seam values both
/// applicable predicates are evaluated and must agree.
inline Verdict theorem2_check(const RegionPoint& p, const Config& cfg = {}) {
    if (p.d < -0.75 - cfg.tol_geom || p.d > cfg.tol_geom)
        throw DomainError("theorem2_check requires d in [-3/4, 0], got " + std::to_string(p.d));
    const RegionLabel reg = detail::regime_label(p.d);
    bool inside = false;
    switch (reg) {
        case RegionLabel::ABC:
            inside = in_triangle_ABC(p, cfg);
            if (p.d == -0.5 && inside != in_quadrangle_ABFG(p, cfg))
                throw VerificationError("ABC and ABFG disagree at d = -1/2");
            break;
        case RegionLabel::ABFG:
            inside = in_quadrangle_ABFG(p, cfg);
            if (p.d == d_star && inside != in_shape_P(p, cfg))
                throw VerificationError("ABFG and P disagree at d = d_star");
            break;
        default:
            inside = in_shape_P(p, cfg);
            break;
    }
    Verdict v;
    v.realizable = inside;
    v.region_label = inside ? reg : RegionLabel::none;
    if (!inside) v.failed_condition = detail::region_failure(p, reg, cfg);
    return v;
}

/// Power-sum realizability test: s1 = 0 (by construction), s3 >= 0, and
/// lambda2 + lambda5 <= 0.
inline Verdict theorem3_check(const NormalizedSpectrum& n, const Config& cfg = {}) {
    Verdict v;
    const double s3 = eval_s3(n.region_point());
    const double mn = n.x() + (-n.d() - 1.0);
    if (s3 < -cfg.tol_geom) {
        v.failed_condition = "s3 >= 0 fails";
    } else if (mn > cfg.tol_geom) {
        v.failed_condition = "lambda2 + lambda5 <= 0 fails";
    } else {
        v.realizable = true;
        v.region_label = detail::regime_label(n.d());
    }
    return v;
}

/// Closed boundary polygon of the realizability region, counterclockwise,
/// with the HI edge discretized into `samples` curve points.
struct BoundaryPolyline {
    double d = 0.0;
    std::vector<Point> vertices;
    std::vector<std::pair<std::string, Point>> labels;
};

inline BoundaryPolyline boundary_polyline(double d, int samples, const Config& cfg = {}) {
    if (d < -0.75 - cfg.tol_geom || d > cfg.tol_geom)
        throw DomainError("boundary_polyline requires d in [-3/4, 0], got " + std::to_string(d));
    if (samples < 2)
        throw DomainError("boundary_polyline requires samples >= 2");
    const VertexTable vt = vertices(d, cfg);
    BoundaryPolyline out;
    out.d = d;
    for (const auto& [name, pt] :
         std::initializer_list<std::pair<const char*, Point>>{{"A", vt.A},
                                                              {"B", vt.B},
                                                              {"C", vt.C},
                                                              {"D", vt.D},
                                                              {"E", vt.E},
                                                              {"F", vt.F},
                                                              {"G", vt.G},
                                                              {"J", vt.J},
                                                              {"O", vt.O}})
        out.labels.emplace_back(name, pt);
    if (vt.H) out.labels.emplace_back("H", *vt.H);
    if (vt.I) out.labels.emplace_back("I", *vt.I);

    std::vector<Point> raw;
    if (d <= -0.5) {
        raw = {vt.A, vt.C, vt.B};
    } else if (d < d_star) {
        raw = {vt.A, vt.G, vt.F, vt.B};
    } else {
        raw = {vt.A, vt.G, vt.F};
        const double f = vt.H->x;
        const double p1 = vt.I->x;
        for (int j = samples - 1; j >= 0; --j) {
            const double t = static_cast<double>(j) / (samples - 1);
            const double x = f + (p1 - f) * t;
            raw.push_back(Point{x, eval_h(x, d, cfg)});
        }
    }

    const double close = 1e-12;
    auto same = [close](const Point& a, const Point& b) {
        return std::abs(a.x - b.x) <= close && std::abs(a.y - b.y) <= close;
    };
    for (const Point& p : raw)
        if (out.vertices.empty() || !same(out.vertices.back(), p))
            out.vertices.push_back(p);
    while (out.vertices.size() > 1 && same(out.vertices.front(), out.vertices.back()))
        out.vertices.pop_back();

    // When the curve degenerates onto a straight edge (d = 0 flattens HI
    // onto y = 0) the arc samples add no geometry; drop straight-through
    // vertices, treating the polygon as closed.
    auto redundant = [&](const Point& a, const Point& b, const Point& c) {
        const double ux = b.x - a.x, uy = b.y - a.y;
        const double vx = c.x - b.x, vy = c.y - b.y;
        const double cross = ux * vy - uy * vx;
        const double len = std::hypot(ux, uy) * std::hypot(vx, vy);
        return std::abs(cross) <= 1e-12 * len && ux * vx + uy * vy > 0.0;
    };
    bool pruned = out.vertices.size() > 3;
    while (pruned) {
        pruned = false;
        const std::size_t n = out.vertices.size();
        if (n <= 3) break;
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = out.vertices[(i + n - 1) % n];
            const Point& c = out.vertices[(i + 1) % n];
            if (redundant(a, out.vertices[i], c)) {
                out.vertices.erase(out.vertices.begin() + static_cast<std::ptrdiff_t>(i));
                pruned = true;
                break;
            }
        }
    }
    return out;
}

} // namespace sniep5
