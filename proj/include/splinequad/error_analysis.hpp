#pragma once

#include <utility>
#include <vector>

#include "splinequad/quadrature.hpp"

namespace splinequad {

/// Peano kernel K6(t) of the remainder I[f] - Q[f] for f in C^6[a, b].
///
/// Evaluated cell by cell: on the cell containing t, (t - .)_+^5 is replaced
/// by its difference with a C1 quintic spline that agrees with it outside the
/// cell. The rule integrates that spline exactly, so only the cell's own nodes
/// contribute and every term has magnitude O(h^6) regardless of (b - a).
double peano_kernel(const QuadratureRule& rule, double t);

/// (t - a)^6 / 720 - (1/120) sum w_k (t - t_k)_+^5, in global coordinates.
/// Suffers cancellation of order (b - a)^6 and is intended for small intervals.
double peano_kernel_direct(const QuadratureRule& rule, double t);

struct PeanoProfile {
    std::vector<std::pair<double, double>> samples;  // (t, K6(t)), increasing t
};

/// Samples at x_{j-1} + i h / samples_per_cell for every cell, plus t = b.
PeanoProfile peano_profile(const QuadratureRule& rule, int samples_per_cell = 1000);

/// c = integral of K6 over [a, b], so that I[f] - Q[f] = c f^(6)(xi).
/// Accumulated cell-locally; see peano_kernel.
double error_constant(const QuadratureRule& rule);

/// (b - a)^7 / 5040 - (1/720) sum w_k (t_k - a)^6.
double error_constant_direct(const QuadratureRule& rule);

/// c * m6, a bound on |I[f] - Q[f]| when |f^(6)| <= m6 on [a, b].
double remainder_bound(const QuadratureRule& rule, double m6);

}  // namespace splinequad
