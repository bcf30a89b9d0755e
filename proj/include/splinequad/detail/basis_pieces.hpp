#pragma once

// Closed-form pieces of the non-normalized C1 quintic B-splines in local
// cell coordinates. `s` is the distance from the knot where the piece has its
// high-order zero; `h` is the knot spacing.
//
// For basis index i decoded as (k, r), i = 4(k-1) + r:
//   r = 1: cell k-1 -> edge_quartic(t - x_{k-2}),  cell k -> edge_quintic(x_k - t)
//   r = 2: cell k-1 -> edge_quintic(t - x_{k-2}),  cell k -> edge_quartic(x_k - t)
//   r = 3: cell k   -> interior_low(t - x_{k-1}, x_k - t)
//   r = 4: cell k   -> interior_high(t - x_{k-1}, x_k - t)

namespace splinequad::detail {

/// s^4 (10h - 9s) / (4h^6)
template <class Real>
Real edge_quartic(const Real& s, const Real& h) {
    const Real h2 = h * h;
    const Real h6 = h2 * h2 * h2;
    const Real s2 = s * s;
    return s2 * s2 * (Real(10) * h - Real(9) * s) / (Real(4) * h6);
}

/// s^5 / (4h^6)
template <class Real>
Real edge_quintic(const Real& s, const Real& h) {
    const Real h2 = h * h;
    const Real h6 = h2 * h2 * h2;
    const Real s2 = s * s;
    return s2 * s2 * s / (Real(4) * h6);
}

/// 10 u^2 v^3 / h^6
template <class Real>
Real interior_low(const Real& u, const Real& v, const Real& h) {
    const Real h2 = h * h;
    const Real h6 = h2 * h2 * h2;
    return Real(10) * u * u * v * v * v / h6;
}

/// 10 u^3 v^2 / h^6
template <class Real>
Real interior_high(const Real& u, const Real& v, const Real& h) {
    const Real h2 = h * h;
    const Real h6 = h2 * h2 * h2;
    return Real(10) * u * u * u * v * v / h6;
}

}  // namespace splinequad::detail
