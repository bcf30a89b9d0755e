#pragma once

// Independent checks for the quadrature rule. Nothing here calls into the
// node recursion except the multiprecision reference rule, which reruns it at
// 50 significant digits.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "splinequad/grid_basis.hpp"
#include "splinequad/quadrature.hpp"

namespace splinequad::oracle {

using Integrand = std::function<double(double)>;

/// Composite Gauss-Legendre over the grid cells with 3, 4 or 5 points per cell
/// (hard-coded abscissae). Exact up to rounding for piecewise polynomials of
/// degree <= 2 * points_per_cell - 1 on the cells.
double reference_integral(const Integrand& f, const UniformKnotGrid& grid, int points_per_cell = 4);

/// Same rule over arbitrary increasing breakpoints.
double reference_integral_piecewise(const Integrand& f, std::span<const double> breakpoints,
                                    int points_per_cell = 4);

/// Counter-based uniform value in [-1, 1): the (index + 1)-th SplitMix64 output
/// for the given seed, top 53 bits scaled to [0, 1), then mapped affinely.
double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept;

/// Coefficients c_i = counter_uniform(seed, i - 1), i = 1 .. 4n + 2.
SplineCoefficients random_spline(const UniformKnotGrid& grid, std::uint64_t seed);

/// Node counts per cell. Nodes left of the middle node use cells
/// [x_{j-1}, x_j), nodes right of it use (x_{j-1}, x_j], and the middle node
/// uses [x_{j-1}, x_j), so for even n the knot node x_{n/2} counts toward
/// cell n/2 + 1.
std::vector<int> node_counts_per_cell(const QuadratureRule& rule);

struct ExactnessReport {
    int n = 0;
    double max_basis_residual = 0.0;  // max_i |Q[D_i] - I[D_i]|
    int worst_index = 0;
    std::vector<int> per_interval_node_counts;  // see node_counts_per_cell
};

ExactnessReport exactness_report(const QuadratureRule& rule);

struct NodeDeviation {
    int index = 0;             // 1-based node index
    bool at_knot = false;      // nearest limit position is a knot (else a midpoint)
    double target_node = 0.0;
    double node_deviation = 0.0;
    double target_weight = 0.0;  // 7h/15 at knots, 8h/15 at midpoints
    double weight_deviation = 0.0;
};

/// Distance of every node from the nearest knot or cell midpoint, and of its
/// weight from the matching weight of the infinite-domain two-node rule.
std::vector<NodeDeviation> limit_rule_deviation(const QuadratureRule& rule);

/// Residuals of the middle-cell exactness system for odd n, with side offset
/// alpha, side weight w_side and middle weight w_mid:
///   ((h-a)^5 + a^5)/(4h^6) w_side + w_mid/(128h) - A
///   ((h-a)^4 (9a+h) + a^4 (10h-9a))/(4h^6) w_side + 11 w_mid/(128h) - B
///   10 a^2 (h-a)^2 / h^5 w_side + 5 w_mid/(16h) - 1/6
std::array<double, 3> middle_system_residual(double first, double second, double h, double alpha, double w_side,
                                             double w_mid);

/// Monomial coefficients (c0, c1, c2, c3) of the cubic factor that accompanies
/// the node quadratic in the elimination.
std::array<double, 4> cubic_factor(const ResidueState& state, double h);

/// A root of the cubic factor in [0, h], if any. The interval is split at the
/// critical points and each monotone piece is bisected 80 times on a sign change.
std::optional<double> cubic_root_in_cell(const ResidueState& state, double h);

/// True iff cubic_root_in_cell finds nothing.
bool cubic_rootfree_check(const ResidueState& state, double h);

/// Bernstein coefficients on [lo, hi] of the polynomial with the given monomial
/// coefficients (constant term first).
template <std::size_t N>
std::array<double, N> bernstein_coefficients(const std::array<double, N>& monomial, double lo, double hi);

/// Certifies p < 0 on [lo, hi] by Bernstein coefficient signs, halving the
/// interval up to max_depth times where the signs are inconclusive.
bool bernstein_certifies_negative(const std::array<double, 4>& monomial, double lo, double hi,
                                  int max_depth = 24);

/// Nodes and weights computed at 50 significant digits and rounded to double.
QuadratureRule reference_rule(const UniformKnotGrid& grid);

/// I[(t-a)^6] - Q[(t-a)^6] with the rule and the sums carried at 50 digits.
double sextic_remainder_reference(const UniformKnotGrid& grid);

}  // namespace splinequad::oracle
