#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "sniep5/config.hpp"
#include "sniep5/errors.hpp"

namespace sniep5 {

/// Dense symmetric matrix of order 1..5. Symmetry is exact by construction:
/// set() writes both (i,j) and (j,i). Entries are expected nonnegative for
/// realization outputs; intermediate glue blocks may carry a positive diagonal.
class SymMatrix {
public:
    static constexpr int max_order = 5;

    explicit SymMatrix(int order) : order_(order) {
        if (order < 1 || order > max_order)
            throw DomainError("SymMatrix order must be in [1, 5], got " + std::to_string(order));
        a_.fill(0.0);
    }

    static SymMatrix zero(int order) { return SymMatrix(order); }

    int order() const { return order_; }

    double operator()(int i, int j) const { return a_[idx(i, j)]; }

    void set(int i, int j, double v) {
        a_[idx(i, j)] = v;
        a_[idx(j, i)] = v;
    }

    /// Set with floating-point dust removal: values in [-tol_entry, 0) become 0,
    /// anything below -tol_entry is a construction bug.
    void set_clamped(int i, int j, double v, const Config& cfg = {}) {
        if (v < 0.0) {
            if (v < -cfg.tol_entry)
                throw VerificationError("matrix entry " + std::to_string(v) +
                                        " below clamping threshold at (" + std::to_string(i) +
                                        "," + std::to_string(j) + ")");
            v = 0.0;
        }
        set(i, j, v);
    }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < order_; ++i) t += (*this)(i, i);
        return t;
    }

    double min_entry() const {
        double m = a_[0];
        for (int i = 0; i < order_; ++i)
            for (int j = 0; j < order_; ++j) m = std::min(m, (*this)(i, j));
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < order_; ++i)
            for (int j = 0; j < order_; ++j) m = std::max(m, std::abs((*this)(i, j)));
        return m;
    }

    /// Scale every entry; eigenvalues scale linearly with the matrix.
    SymMatrix scaled(double s) const {
        SymMatrix out(order_);
        for (int i = 0; i < order_; ++i)
            for (int j = i; j < order_; ++j) out.set(i, j, (*this)(i, j) * s);
        return out;
    }

    bool operator==(const SymMatrix& rhs) const {
        if (order_ != rhs.order_) return false;
        for (int i = 0; i < order_; ++i)
            for (int j = 0; j < order_; ++j)
                if ((*this)(i, j) != rhs(i, j)) return false;
        return true;
    }

private:
    int idx(int i, int j) const {
        if (i < 0 || i >= order_ || j < 0 || j >= order_)
            throw DomainError("SymMatrix index out of range");
        return i * max_order + j;
    }

    int order_;
    std::array<double, max_order * max_order> a_;
};

} // namespace sniep5
