#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "splinequad/grid_basis.hpp"

namespace splinequad {

/// Residues (A_k, B_k) entering cell k: the part of the integrals of D_{4k-3}
/// and D_{4k-2} not yet collected by the nodes of cell k - 1.
struct ResidueState {
    int k = 1;
    double first = 0.0;   // A_k
    double second = 0.0;  // B_k
};

/// (k = 1, A = 1/24, B = 1/8)
ResidueState initial_residues() noexcept;

/// Throws Error(invariant_violation) unless 0 < A < B < 1/6, 16A > 5B and
/// 2(4A - B) + 1/12 >= 1/6 (the last one up to 1e-12).
void check_residue_invariants(const ResidueState& state);

enum class QuadraticKind { interior, middle_odd };

/// q0 + q1 x + q2 x^2 whose roots are node offsets from the cell's left knot.
struct QuadraticCoeffs {
    double q0 = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
    QuadraticKind kind = QuadraticKind::interior;

    [[nodiscard]] double discriminant() const noexcept { return q1 * q1 - 4.0 * q2 * q0; }
    /// Ascending real roots, or nullopt when there are none.
    [[nodiscard]] std::optional<std::pair<double, double>> roots() const;
};

QuadraticCoeffs interior_quadratic(const ResidueState& state, double h);
QuadraticCoeffs middle_odd_quadratic(const ResidueState& state, double h);

struct IntervalNodes {
    double node_lo = 0.0;
    double node_hi = 0.0;
    double weight_lo = 0.0;
    double weight_hi = 0.0;
};

/// Nodes and weights on cell k (1 <= k <= n/2) from the residues entering it.
IntervalNodes solve_interval(const ResidueState& state, const UniformKnotGrid& grid, int k);

/// Residues entering cell k + 1, evaluated with basis_eval at the nodes of cell k.
ResidueState update_residues(const ResidueState& state, const UniformKnotGrid& grid, int k,
                             const IntervalNodes& nodes);

/// Weight of the knot node x_m for n = 2m: 4h (A_{m+1} + B_{m+1} - 1/6).
double middle_even(const ResidueState& state_after_half, double h);

/// The closed form 4h (1/6 - A_{m+1}) as it appears in print. It omits the
/// mirrored cell's share of D_{2n+1} and is reported, never used.
double middle_even_as_printed(const ResidueState& state_after_half, double h);

struct MiddleOddNodes {
    double node_lo = 0.0;
    double node_mid = 0.0;
    double node_hi = 0.0;
    double weight_side = 0.0;
    double weight_mid = 0.0;
};

/// Three nodes on the middle cell m for n = 2m - 1.
MiddleOddNodes middle_odd(const ResidueState& state, const UniformKnotGrid& grid, int m);

/// 2n + 1 nodes in increasing order with positive weights.
class QuadratureRule {
public:
    /// Only sizes are validated; structural invariants are audited by the oracle.
    QuadratureRule(UniformKnotGrid grid, std::vector<double> nodes, std::vector<double> weights);

    [[nodiscard]] const UniformKnotGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }

private:
    UniformKnotGrid grid_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

QuadratureRule build_rule(const UniformKnotGrid& grid);

struct RuleTrace {
    QuadratureRule rule;
    /// Residues entering cells 1 .. floor(n/2) + 1.
    std::vector<ResidueState> states;
};

RuleTrace build_rule_traced(const UniformKnotGrid& grid);

/// Sum of w_i f(t_i), accumulated with Neumaier compensation.
template <class F>
double apply_rule(const QuadratureRule& rule, F&& f) {
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double term = weights[i] * static_cast<double>(f(nodes[i]));
        const double t = sum + term;
        carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + carry;
}

}  // namespace splinequad
