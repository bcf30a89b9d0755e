#pragma once

// Closed-form recursion for the Gaussian rule of C1 quintic splines on a
// uniform grid, written against an arbitrary real type so the same code runs
// in long double (production) and in multiprecision (oracles).
//
// All node positions are offsets from the left knot of their cell.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "splinequad/detail/basis_pieces.hpp"
#include "splinequad/errors.hpp"

namespace splinequad::detail {

/// Residues of the two basis functions straddling x_{k-1}: `first` for
/// D_{4k-3}, `second` for D_{4k-2}.
template <class Real>
struct Residues {
    Real first;
    Real second;
};

/// q0 + q1 x + q2 x^2
template <class Real>
struct Quadratic {
    Real q0;
    Real q1;
    Real q2;
};

template <class Real>
struct RootPair {
    Real lo;
    Real hi;
};

template <class Real>
struct CellSolution {
    Real offset_lo;
    Real offset_hi;
    Real weight_lo;
    Real weight_hi;
};

template <class Real>
struct MiddleOddSolution {
    Real offset_side;  // distance of the outer nodes from the cell's knots
    Real weight_side;
    Real weight_mid;
};

/// Relative slack for root placement and boundary-tight inequalities.
inline constexpr double kConsistencyTolerance = 1e-12;
inline constexpr double kMiddleResidualLimit = 1e-10;

template <class Real>
Residues<Real> initial_residues() {
    return {Real(1) / Real(24), Real(1) / Real(8)};
}

template <class Real>
void check_residues(const Residues<Real>& r, int k) {
    const Real sixth = Real(1) / Real(6);
    const bool ordered = r.first > Real(0) && r.second > r.first && sixth > r.second;
    const bool ratio = Real(16) * r.first > Real(5) * r.second;
    const bool blend = Real(8) * r.first - Real(2) * r.second >= Real(1) / Real(12) - Real(kConsistencyTolerance);
    if (!(ordered && ratio && blend)) {
        throw Error(ErrorKind::invariant_violation, "residues left the admissible region", k);
    }
}

/// Real roots in ascending order, computed without cancellation. Empty for a
/// negative discriminant or a vanishing leading coefficient.
template <class Real>
std::optional<RootPair<Real>> real_roots(const Quadratic<Real>& q) {
    using std::sqrt;
    if (q.q2 == Real(0)) return std::nullopt;
    const Real disc = q.q1 * q.q1 - Real(4) * q.q2 * q.q0;
    if (!(disc >= Real(0))) return std::nullopt;
    const Real s = sqrt(disc);
    const Real t = q.q1 >= Real(0) ? -(q.q1 + s) / Real(2) : (s - q.q1) / Real(2);
    if (t == Real(0)) return RootPair<Real>{Real(0), Real(0)};
    Real r1 = t / q.q2;
    Real r2 = q.q0 / t;
    if (r2 < r1) std::swap(r1, r2);
    return RootPair<Real>{r1, r2};
}

template <class Real>
Quadratic<Real> interior_quadratic(const Residues<Real>& r, const Real& h) {
    const Real& A = r.first;
    const Real& B = r.second;
    return {h * h * (Real(1) - Real(24) * B + Real(24) * A),
            Real(2) * h * (Real(12) * B + Real(108) * A - Real(1)),
            Real(1) - Real(480) * A + Real(576) * A * A + Real(576) * B * B - Real(1152) * A * B};
}

template <class Real>
Quadratic<Real> middle_odd_quadratic(const Residues<Real>& r, const Real& h) {
    const Real& A = r.first;
    const Real& B = r.second;
    const Real s = Real(108) * A + Real(12) * B - Real(1);
    return {h * h * (Real(24) * A - Real(24) * B + Real(1)), Real(2) * h * s, Real(-2) * s};
}

/// Two nodes and weights on cell k from the residues entering it.
template <class Real>
CellSolution<Real> solve_cell(const Residues<Real>& r, const Real& h, int k) {
    const auto roots = real_roots(interior_quadratic(r, h));
    if (!roots) {
        throw Error(ErrorKind::negative_discriminant, "node quadratic has no real roots", k);
    }
    const Real slack = Real(kConsistencyTolerance) * h;
    Real lo = roots->lo;
    const Real hi = roots->hi;
    if (!(lo >= -slack && hi > lo && h > hi)) {
        throw Error(ErrorKind::root_outside_interval, "node offsets do not lie inside the cell", k);
    }
    // Past the first few cells the left root is zero to working precision.
    if (lo < Real(0)) lo = Real(0);

    // Weights from exactness on D_{4k-3} and D_{4k-2}; this form stays well
    // conditioned as the left node approaches the knot.
    const Real& A = r.first;
    const Real& B = r.second;
    const Real alpha = lo;
    const Real beta = h - hi;
    const Real gap = hi - lo;
    const Real h2 = h * h;
    const Real h5 = h2 * h2 * h;
    const Real ha = h - alpha;
    const Real ha2 = ha * ha;
    const Real b2 = beta * beta;
    const Real w_lo = Real(2) * h5 * (Real(10) * h * A - Real(9) * beta * A - beta * B) / (Real(5) * ha2 * ha2 * gap);
    const Real w_hi = Real(2) * h5 * (h * (B - A) - alpha * (Real(9) * A + B)) / (Real(5) * b2 * b2 * gap);
    if (!(w_lo > Real(0) && w_hi > Real(0))) {
        throw Error(ErrorKind::nonpositive_weight, "cell weights are not positive", k);
    }
    return {lo, hi, w_lo, w_hi};
}

/// Residues entering cell k + 1 after cell k has been solved.
template <class Real>
Residues<Real> advance(const CellSolution<Real>& cell, const Real& h, int k) {
    const Real sixth = Real(1) / Real(6);
    Residues<Real> next{
        sixth - cell.weight_lo * edge_quartic(cell.offset_lo, h) - cell.weight_hi * edge_quartic(cell.offset_hi, h),
        sixth - cell.weight_lo * edge_quintic(cell.offset_lo, h) - cell.weight_hi * edge_quintic(cell.offset_hi, h)};
    check_residues(next, k + 1);
    return next;
}

/// Weight of the knot node x_m for n = 2m, from the residues after cell m.
/// Exactness of D_{2n+1} collects the knot node plus the mirrored nodes of
/// cell m + 1, whose share is 1/6 - B_{m+1} by symmetry.
template <class Real>
Real middle_even_weight(const Residues<Real>& r, const Real& h, int m) {
    const Real w = Real(4) * h * (r.first + r.second - Real(1) / Real(6));
    if (!(w > Real(0))) {
        throw Error(ErrorKind::nonpositive_weight, "middle knot weight is not positive", m + 1);
    }
    return w;
}

/// Weight printed in the literature, 4h(1/6 - A_{m+1}); kept for reporting only.
template <class Real>
Real middle_even_weight_as_printed(const Residues<Real>& r, const Real& h) {
    return Real(4) * h * (Real(1) / Real(6) - r.first);
}

/// Max abs residual of the three exactness equations (D_{4m-3}, D_{4m-2},
/// D_{4m-1}) on the middle cell of an odd grid.
template <class Real>
Real middle_odd_residual(const Residues<Real>& r, const Real& h, const MiddleOddSolution<Real>& s) {
    using std::abs;
    const Real near = s.offset_side;
    const Real far = h - s.offset_side;
    const Real half = h / Real(2);
    const Real e1 = s.weight_side * (edge_quintic(far, h) + edge_quintic(near, h)) +
                    s.weight_mid * edge_quintic(half, h) - r.first;
    const Real e2 = s.weight_side * (edge_quartic(far, h) + edge_quartic(near, h)) +
                    s.weight_mid * edge_quartic(half, h) - r.second;
    const Real e3 = s.weight_side * (interior_low(near, far, h) + interior_low(far, near, h)) +
                    s.weight_mid * interior_low(half, half, h) - Real(1) / Real(6);
    Real worst = abs(e1);
    if (abs(e2) > worst) worst = abs(e2);
    if (abs(e3) > worst) worst = abs(e3);
    return worst;
}

/// Three nodes of the middle cell m for n = 2m - 1.
template <class Real>
MiddleOddSolution<Real> solve_middle_odd(const Residues<Real>& r, const Real& h, int m) {
    using std::abs;
    const auto roots = real_roots(middle_odd_quadratic(r, h));
    if (!roots) {
        throw Error(ErrorKind::negative_discriminant, "middle quadratic has no real roots", m);
    }
    const Real slack = Real(kConsistencyTolerance) * h;
    Real lo = roots->lo;
    if (!(lo >= -slack && h / Real(2) > lo && abs(roots->lo + roots->hi - h) <= slack)) {
        throw Error(ErrorKind::root_outside_interval, "middle node offsets are inconsistent", m);
    }
    if (lo < Real(0)) lo = Real(0);

    const Real& A = r.first;
    const Real& B = r.second;
    const Real s = Real(108) * A + Real(12) * B - Real(1);
    const Real denom = Real(156) * A - Real(36) * B + Real(1);
    const Real w_side = h * s * s / (Real(30) * denom);
    const Real w_mid = Real(4) * h *
                       (Real(1152) * A * B + Real(264) * A - Real(576) * A * A - Real(576) * B * B -
                        Real(24) * B + Real(1)) /
                       (Real(15) * denom);
    if (!(w_side > Real(0) && w_mid > Real(0))) {
        throw Error(ErrorKind::nonpositive_weight, "middle weights are not positive", m);
    }
    const MiddleOddSolution<Real> out{lo, w_side, w_mid};
    if (!(middle_odd_residual(r, h, out) <= Real(kMiddleResidualLimit))) {
        throw Error(ErrorKind::system_residual_too_large, "middle cell exactness system not satisfied", m);
    }
    return out;
}

/// Left half of the rule plus the middle arrangement.
template <class Real>
struct HalfRule {
    int n = 0;
    std::vector<CellSolution<Real>> cells;   // cells 1 .. floor(n/2)
    std::vector<Residues<Real>> states;      // entering cells 1 .. floor(n/2)+1, when traced
    std::optional<Real> even_middle_weight;  // n even
    std::optional<MiddleOddSolution<Real>> odd_middle;  // n odd
};

template <class Real>
HalfRule<Real> run_recursion(int n, const Real& h, bool keep_states) {
    HalfRule<Real> out;
    out.n = n;
    const int half = n / 2;
    out.cells.reserve(static_cast<std::size_t>(half));
    if (keep_states) out.states.reserve(static_cast<std::size_t>(half) + 1);

    Residues<Real> state = initial_residues<Real>();
    for (int k = 1; k <= half; ++k) {
        if (keep_states) out.states.push_back(state);
        const CellSolution<Real> cell = solve_cell(state, h, k);
        state = advance(cell, h, k);
        out.cells.push_back(cell);
    }
    if (keep_states) out.states.push_back(state);

    if (n % 2 == 0) {
        out.even_middle_weight = middle_even_weight(state, h, half);
    } else {
        out.odd_middle = solve_middle_odd(state, h, half + 1);
    }
    return out;
}

}  // namespace splinequad::detail
