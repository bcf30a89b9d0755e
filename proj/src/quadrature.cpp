#include "splinequad/quadrature.hpp"

#include <string>

#include "splinequad/detail/recursion.hpp"
#include "splinequad/errors.hpp"

namespace splinequad {

namespace {

using Wide = long double;

detail::Residues<double> to_residues(const ResidueState& s) { return {s.first, s.second}; }

void require_cell_in_left_half(const UniformKnotGrid& grid, int k) {
    if (k < 1 || k > grid.n() / 2) {
        throw Error(ErrorKind::interval_index_out_of_range,
                    "cell " + std::to_string(k) + " outside [1, n/2]", k);
    }
}

void require_state_for(const ResidueState& state, int k) {
    if (state.k != k) {
        throw Error(ErrorKind::invalid_argument,
                    "residues belong to cell " + std::to_string(state.k) + ", not " + std::to_string(k), k);
    }
}

QuadraticCoeffs from_detail(const detail::Quadratic<double>& q, QuadraticKind kind) {
    return {q.q0, q.q1, q.q2, kind};
}

// Node layout from the recursion output; positions are knot + offset so that
// nodes that coincide with a knot to working precision land exactly on it.
QuadratureRule assemble(const UniformKnotGrid& grid, const detail::HalfRule<Wide>& half) {
    const int n = grid.n();
    const auto count = static_cast<std::size_t>(2 * n + 1);
    std::vector<double> nodes(count);
    std::vector<double> weights(count);

    auto put = [&](int index, double node, double weight) {
        nodes[static_cast<std::size_t>(index)] = node;
        weights[static_cast<std::size_t>(index)] = weight;
    };

    for (int k = 1; k <= n / 2; ++k) {
        const auto& cell = half.cells[static_cast<std::size_t>(k - 1)];
        const auto lo = static_cast<double>(cell.offset_lo);
        const auto hi = static_cast<double>(cell.offset_hi);
        const auto w_lo = static_cast<double>(cell.weight_lo);
        const auto w_hi = static_cast<double>(cell.weight_hi);
        put(2 * k - 2, grid.knot(k - 1) + lo, w_lo);
        put(2 * k - 1, grid.knot(k - 1) + hi, w_hi);
        put(2 * n - 2 * k + 2, grid.knot(n - k + 1) - lo, w_lo);
        put(2 * n - 2 * k + 1, grid.knot(n - k + 1) - hi, w_hi);
    }

    if (half.even_middle_weight) {
        put(n, grid.knot(n / 2), static_cast<double>(*half.even_middle_weight));
    } else {
        const int m = n / 2 + 1;
        const auto& mid = *half.odd_middle;
        const auto side = static_cast<double>(mid.offset_side);
        const auto w_side = static_cast<double>(mid.weight_side);
        put(n - 1, grid.knot(m - 1) + side, w_side);
        put(n, grid.midpoint(), static_cast<double>(mid.weight_mid));
        put(n + 1, grid.knot(m) - side, w_side);
    }
    return QuadratureRule(grid, std::move(nodes), std::move(weights));
}

Wide wide_spacing(const UniformKnotGrid& grid) {
    return (static_cast<Wide>(grid.b()) - static_cast<Wide>(grid.a())) / static_cast<Wide>(grid.n());
}

}  // namespace

ResidueState initial_residues() noexcept { return {1, 1.0 / 24.0, 1.0 / 8.0}; }

void check_residue_invariants(const ResidueState& state) { detail::check_residues(to_residues(state), state.k); }

std::optional<std::pair<double, double>> QuadraticCoeffs::roots() const {
    const auto r = detail::real_roots(detail::Quadratic<double>{q0, q1, q2});
    if (!r) return std::nullopt;
    return std::pair{r->lo, r->hi};
}

QuadraticCoeffs interior_quadratic(const ResidueState& state, double h) {
    return from_detail(detail::interior_quadratic(to_residues(state), h), QuadraticKind::interior);
}

QuadraticCoeffs middle_odd_quadratic(const ResidueState& state, double h) {
    return from_detail(detail::middle_odd_quadratic(to_residues(state), h), QuadraticKind::middle_odd);
}

IntervalNodes solve_interval(const ResidueState& state, const UniformKnotGrid& grid, int k) {
    require_cell_in_left_half(grid, k);
    require_state_for(state, k);
    const auto cell = detail::solve_cell(to_residues(state), grid.h(), k);
    const double left = grid.knot(k - 1);
    return {left + cell.offset_lo, left + cell.offset_hi, cell.weight_lo, cell.weight_hi};
}

ResidueState update_residues(const ResidueState& state, const UniformKnotGrid& grid, int k,
                             const IntervalNodes& nodes) {
    require_cell_in_left_half(grid, k);
    require_state_for(state, k);
    const int first = 4 * k + 1;
    const int second = 4 * k + 2;
    const double sixth = 1.0 / 6.0;
    ResidueState next{
        k + 1,
        sixth - nodes.weight_lo * basis_eval(grid, first, nodes.node_lo) -
            nodes.weight_hi * basis_eval(grid, first, nodes.node_hi),
        sixth - nodes.weight_lo * basis_eval(grid, second, nodes.node_lo) -
            nodes.weight_hi * basis_eval(grid, second, nodes.node_hi)};
    check_residue_invariants(next);
    return next;
}

double middle_even(const ResidueState& state_after_half, double h) {
    return detail::middle_even_weight(to_residues(state_after_half), h, state_after_half.k - 1);
}

double middle_even_as_printed(const ResidueState& state_after_half, double h) {
    return detail::middle_even_weight_as_printed(to_residues(state_after_half), h);
}

MiddleOddNodes middle_odd(const ResidueState& state, const UniformKnotGrid& grid, int m) {
    if (grid.n() % 2 == 0 || m != grid.n() / 2 + 1) {
        throw Error(ErrorKind::interval_index_out_of_range,
                    "cell " + std::to_string(m) + " is not the middle cell of an odd grid", m);
    }
    require_state_for(state, m);
    const auto mid = detail::solve_middle_odd(to_residues(state), grid.h(), m);
    return {grid.knot(m - 1) + mid.offset_side, grid.midpoint(), grid.knot(m) - mid.offset_side,
            mid.weight_side, mid.weight_mid};
}

QuadratureRule::QuadratureRule(UniformKnotGrid grid, std::vector<double> nodes, std::vector<double> weights)
    : grid_(grid), nodes_(std::move(nodes)), weights_(std::move(weights)) {
    const auto expected = static_cast<std::size_t>(2 * grid_.n() + 1);
    if (nodes_.size() != expected || weights_.size() != expected) {
        throw Error(ErrorKind::invalid_argument, "a rule on " + std::to_string(grid_.n()) +
                                                     " cells needs " + std::to_string(expected) +
                                                     " nodes and weights");
    }
}

QuadratureRule build_rule(const UniformKnotGrid& grid) {
    return assemble(grid, detail::run_recursion<Wide>(grid.n(), wide_spacing(grid), false));
}

RuleTrace build_rule_traced(const UniformKnotGrid& grid) {
    const auto half = detail::run_recursion<Wide>(grid.n(), wide_spacing(grid), true);
    std::vector<ResidueState> states;
    states.reserve(half.states.size());
    int k = 1;
    for (const auto& s : half.states) {
        states.push_back({k++, static_cast<double>(s.first), static_cast<double>(s.second)});
    }
    return {assemble(grid, half), std::move(states)};
}

}  // namespace splinequad
