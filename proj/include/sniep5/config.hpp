#pragma once

namespace sniep5 {

/// Numerical tolerances shared across the library. The underlying
/// inequalities are exact; these provide the floating-point closure margins.
struct Config {
    double tol_sum = 1e-12;      ///< zero-trace check, relative to max(1, |lambda1|)
    double tol_geom = 1e-9;      ///< region membership / ordering slack
    double tol_entry = 1e-12;    ///< matrix entry clamping threshold
    double tol_eig = 1e-8;       ///< certificate residual bound
    double tol_eig_res = 1e-11;  ///< eigensolver residual, relative to max(1, norm)
};

} // namespace sniep5
