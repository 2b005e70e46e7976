#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <span>
#include <sstream>
#include <string>

#include "json.hpp"

#include "sniep5/config.hpp"
#include "sniep5/construct.hpp"
#include "sniep5/errors.hpp"
#include "sniep5/matrix.hpp"
#include "sniep5/oracle.hpp"
#include "sniep5/region.hpp"
#include "sniep5/spectrum.hpp"

namespace sniep5 {

inline nlohmann::json to_json(const Spectrum5& s) {
    return nlohmann::json{{"eigenvalues", s.values()}};
}

inline nlohmann::json to_json(const NormalizedSpectrum& n) {
    return nlohmann::json{{"x", n.x()}, {"y", n.y()}, {"d", n.d()}, {"scale", n.scale()}};
}

inline nlohmann::json to_json(const SymMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.order(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.order(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"matrix", std::move(rows)}};
}

inline nlohmann::json to_json(const Certificate& c) {
    return nlohmann::json{{"method", to_string(c.method)},
                          {"matrix", to_json(c.matrix)["matrix"]},
                          {"target", c.target.values()},
                          {"achieved", c.achieved},
                          {"residual", c.residual}};
}

inline nlohmann::json to_json(const Verdict& v) {
    nlohmann::json j{{"realizable", v.realizable}, {"region", to_string(v.region_label)}};
    if (!v.failed_condition.empty()) j["failed_condition"] = v.failed_condition;
    return j;
}

inline nlohmann::json to_json(const BoundaryPolyline& b) {
    nlohmann::json verts = nlohmann::json::array();
    for (const Point& p : b.vertices) verts.push_back({p.x, p.y});
    nlohmann::json labels = nlohmann::json::object();
    for (const auto& [name, p] : b.labels) labels[name] = {p.x, p.y};
    return nlohmann::json{{"d", b.d}, {"vertices", std::move(verts)}, {"labels", std::move(labels)}};
}

inline nlohmann::json to_json(const ScanReport& r) {
    nlohmann::json viols = nlohmann::json::array();
    for (const auto& v : r.violations) viols.push_back({v[0], v[1], v[2]});
    return nlohmann::json{{"claim", r.claim},
                          {"resolution", r.resolution},
                          {"checked", r.checked},
                          {"tolerance", r.tolerance},
                          {"max_violation", r.max_violation},
                          {"pass", r.pass()},
                          {"violations", std::move(viols)}};
}

namespace detail {

/// Locale-independent shortest-exact double formatting ('.' decimal point).
inline std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

} // namespace detail

/// Two-column CSV of the polygon vertices.
inline std::string to_csv(const BoundaryPolyline& b) {
    std::string out = "x,y\n";
    for (const Point& p : b.vertices) {
        out += detail::format_double(p.x);
        out += ',';
        out += detail::format_double(p.y);
        out += '\n';
    }
    return out;
}

/// Reads {"eigenvalues": [5 numbers]}. Malformed content raises DomainError.
inline std::array<double, 5> parse_spectrum_json(const std::string& content) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("bad spectrum JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("eigenvalues") || !j["eigenvalues"].is_array() ||
        j["eigenvalues"].size() != 5)
        throw DomainError("spectrum JSON must contain an 'eigenvalues' array of 5 numbers");
    std::array<double, 5> out{};
    for (int i = 0; i < 5; ++i) {
        const auto& e = j["eigenvalues"][static_cast<std::size_t>(i)];
        if (!e.is_number()) throw DomainError("eigenvalue entries must be numbers");
        out[static_cast<std::size_t>(i)] = e.get<double>();
    }
    return out;
}

namespace detail {

inline std::array<std::array<double, 5>, 5> parse_matrix_rows(const std::string& content) {
    std::array<std::array<double, 5>, 5> rows{};
    std::size_t pos = 0;
    while (pos < content.size() && std::isspace(static_cast<unsigned char>(content[pos]))) ++pos;
    if (pos < content.size() && content[pos] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(content);
        } catch (const nlohmann::json::exception& e) {
            throw DomainError(std::string("bad matrix JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array() ||
            j["matrix"].size() != 5)
            throw DomainError("matrix JSON must contain a 'matrix' array of 5 rows");
        for (int i = 0; i < 5; ++i) {
            const auto& row = j["matrix"][static_cast<std::size_t>(i)];
            if (!row.is_array() || row.size() != 5)
                throw DomainError("matrix rows must hold 5 numbers");
            for (int k = 0; k < 5; ++k) {
                const auto& e = row[static_cast<std::size_t>(k)];
                if (!e.is_number()) throw DomainError("matrix entries must be numbers");
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = e.get<double>();
            }
        }
        return rows;
    }
    std::istringstream in(content);
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k)
            if (!(in >> rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]))
                throw DomainError("matrix text must hold 25 whitespace-separated numbers");
    double extra;
    if (in >> extra) throw DomainError("matrix text holds more than 25 numbers");
    return rows;
}

} // namespace detail

/// Parses a 5x5 matrix from JSON ({"matrix": [[...]]}) or plain whitespace
/// text, then enforces the realization-output invariants: symmetry and
/// nonnegativity within tol_entry, trace zero within 5 x tol_entry (scaled
/// by the matrix magnitude). Format problems raise DomainError; property
/// problems raise MatrixPropertyError.
inline SymMatrix parse_matrix(const std::string& content, const Config& cfg = {}) {
    const auto rows = detail::parse_matrix_rows(content);
    double max_abs = 1.0;
    for (const auto& r : rows)
        for (double v : r) {
            if (!std::isfinite(v)) throw NonFiniteError("matrix entry is not finite");
            max_abs = std::max(max_abs, std::abs(v));
        }
    SymMatrix m(5);
    double trace = 0.0;
    for (int i = 0; i < 5; ++i) {
        trace += rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        for (int j = i; j < 5; ++j) {
            const double a = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const double b = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (std::abs(a - b) > cfg.tol_entry * max_abs)
                throw MatrixPropertyError("matrix is not symmetric at (" + std::to_string(i) +
                                          "," + std::to_string(j) + ")");
            if (a < -cfg.tol_entry * max_abs)
                throw MatrixPropertyError("matrix entry (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") is negative");
            m.set(i, j, std::max(a, 0.0));
        }
    }
    if (std::abs(trace) > 5.0 * cfg.tol_entry * max_abs)
        throw MatrixPropertyError("matrix trace " + std::to_string(trace) + " is not zero");
    return m;
}

} // namespace sniep5
