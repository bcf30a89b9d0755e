#include "splinequad/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "splinequad/errors.hpp"

namespace splinequad {

namespace {

using Wide = long double;

Wide pow5(Wide x) {
    const Wide x2 = x * x;
    return x2 * x2 * x;
}

Wide pow6(Wide x) {
    const Wide x3 = x * x * x;
    return x3 * x3;
}

// Cubic Hermite basis on [0, 1]: value at 0, and slope at 0 (scaled by h).
Wide hermite_value0(Wide x) { return (2 * x - 3) * x * x + 1; }
Wide hermite_slope0(Wide x) { return ((x - 2) * x + 1) * x; }

struct CellNodes {
    std::size_t begin;
    std::size_t end;
};

CellNodes nodes_in(const QuadratureRule& rule, double left, double right) {
    const auto nodes = rule.nodes();
    const auto lo = std::lower_bound(nodes.begin(), nodes.end(), left);
    const auto hi = std::upper_bound(lo, nodes.end(), right);
    return {static_cast<std::size_t>(lo - nodes.begin()), static_cast<std::size_t>(hi - nodes.begin())};
}

}  // namespace

double peano_kernel(const QuadratureRule& rule, double t) {
    const auto& grid = rule.grid();
    if (!grid.contains(t)) {
        throw Error(ErrorKind::point_outside_domain, "t = " + std::to_string(t) + " lies outside [a, b]");
    }
    const int cell = grid.cell_of(t);
    const double left = grid.knot(cell - 1);
    const double right = grid.knot(cell);
    const Wide h = grid.h();
    const Wide theta = std::clamp(static_cast<Wide>(t) - left, Wide(0), h);
    const Wide th4 = theta * theta * theta * theta;
    const Wide th5 = th4 * theta;

    // Integral over the cell of (theta - u)_+^5 minus the Hermite correction.
    Wide sum = th5 * theta / 6 - th5 * h / 2 + 5 * th4 * h * h / 12;

    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    const auto range = nodes_in(rule, left, right);
    for (std::size_t i = range.begin; i < range.end; ++i) {
        const Wide u = std::clamp(static_cast<Wide>(nodes[i]) - left, Wide(0), h);
        const Wide x = u / h;
        const Wide truncated = theta > u ? pow5(theta - u) : Wide(0);
        const Wide local = truncated - th5 * hermite_value0(x) + 5 * th4 * h * hermite_slope0(x);
        sum -= static_cast<Wide>(weights[i]) * local;
    }
    return static_cast<double>(sum / 120);
}

double peano_kernel_direct(const QuadratureRule& rule, double t) {
    const auto& grid = rule.grid();
    if (!grid.contains(t)) {
        throw Error(ErrorKind::point_outside_domain, "t = " + std::to_string(t) + " lies outside [a, b]");
    }
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    Wide sum = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (t > nodes[i]) {
            sum += static_cast<Wide>(weights[i]) * pow5(static_cast<Wide>(t) - nodes[i]);
        }
    }
    return static_cast<double>(pow6(static_cast<Wide>(t) - grid.a()) / 720 - sum / 120);
}

PeanoProfile peano_profile(const QuadratureRule& rule, int samples_per_cell) {
    if (samples_per_cell < 1) {
        throw Error(ErrorKind::invalid_argument, "samples per cell must be >= 1");
    }
    const auto& grid = rule.grid();
    PeanoProfile profile;
    profile.samples.reserve(static_cast<std::size_t>(grid.n()) * static_cast<std::size_t>(samples_per_cell) + 1);
    for (int j = 1; j <= grid.n(); ++j) {
        const double left = grid.knot(j - 1);
        for (int i = 0; i < samples_per_cell; ++i) {
            const double t = left + grid.h() * i / samples_per_cell;
            profile.samples.emplace_back(t, peano_kernel(rule, t));
        }
    }
    profile.samples.emplace_back(grid.b(), peano_kernel(rule, grid.b()));
    return profile;
}

double error_constant(const QuadratureRule& rule) {
    const auto& grid = rule.grid();
    const Wide h = grid.h();
    const Wide h6 = pow6(h);
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();

    // Each cell contributes h^7/42 minus, per node, the integral over t of the
    // node's local kernel term: (h-u)^6/6 - (h^6/6) H0(u/h) + h^6 H1(u/h).
    Wide sum = static_cast<Wide>(grid.n()) * h6 * h / 42;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int cell = grid.cell_of(nodes[i]);
        const Wide u = std::clamp(static_cast<Wide>(nodes[i]) - grid.knot(cell - 1), Wide(0), h);
        const Wide x = u / h;
        const Wide local = pow6(h - u) / 6 - h6 / 6 * hermite_value0(x) + h6 * hermite_slope0(x);
        sum -= static_cast<Wide>(weights[i]) * local;
    }
    return static_cast<double>(sum / 120);
}

double error_constant_direct(const QuadratureRule& rule) {
    const auto& grid = rule.grid();
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    Wide sum = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        sum += static_cast<Wide>(weights[i]) * pow6(static_cast<Wide>(nodes[i]) - grid.a());
    }
    const Wide len = static_cast<Wide>(grid.b()) - grid.a();
    return static_cast<double>(pow6(len) * len / 5040 - sum / 720);
}

double remainder_bound(const QuadratureRule& rule, double m6) {
    if (!(m6 >= 0.0)) {
        throw Error(ErrorKind::negative_bound, "derivative bound must be nonnegative");
    }
    return error_constant(rule) * m6;
}

}  // namespace splinequad
