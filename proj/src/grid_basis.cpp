#include "splinequad/grid_basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "splinequad/detail/basis_pieces.hpp"
#include "splinequad/errors.hpp"

namespace splinequad {

UniformKnotGrid::UniformKnotGrid(double a, double b, int n) : a_(a), b_(b), n_(n), h_(0.0) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
        throw Error(ErrorKind::invalid_interval,
                    "need finite endpoints with a < b, got [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    if (n < 1) {
        throw Error(ErrorKind::zero_subintervals, "subinterval count must be >= 1, got " + std::to_string(n));
    }
    h_ = (b - a) / n;
    if (!std::isnormal(h_)) {
        throw Error(ErrorKind::invalid_interval, "knot spacing is not a normal finite number");
    }
}

double UniformKnotGrid::knot(int k) const {
    if (k < -1 || k > n_ + 1) {
        throw Error(ErrorKind::index_out_of_range, "knot index " + std::to_string(k) + " outside [-1, n+1]");
    }
    if (2 * static_cast<long long>(k) <= n_) {
        return k == 0 ? a_ : a_ + k * h_;
    }
    return k == n_ ? b_ : b_ - (n_ - k) * h_;
}

int UniformKnotGrid::cell_of(double t) const {
    const double guess = std::floor((t - a_) / h_) + 1.0;
    int c = static_cast<int>(std::clamp(guess, 1.0, static_cast<double>(n_)));
    while (c < n_ && t >= knot(c)) ++c;
    while (c > 1 && t < knot(c - 1)) --c;
    return c;
}

int UniformKnotGrid::cell_of_right_closed(double t) const {
    const double guess = std::ceil((t - a_) / h_);
    int c = static_cast<int>(std::clamp(guess, 1.0, static_cast<double>(n_)));
    while (c > 1 && t <= knot(c - 1)) --c;
    while (c < n_ && t > knot(c)) ++c;
    return c;
}

UniformKnotGrid make_grid(double a, double b, int n) { return UniformKnotGrid(a, b, n); }

BasisIndex decode_basis_index(int i) noexcept {
    const int k = (i + 3) / 4;
    return {k, i - 4 * (k - 1)};
}

namespace {

void require_basis_index(const UniformKnotGrid& grid, int i) {
    if (i < 1 || i > grid.dimension()) {
        throw Error(ErrorKind::index_out_of_range,
                    "basis index " + std::to_string(i) + " outside [1, " + std::to_string(grid.dimension()) + "]");
    }
}

void require_in_domain(const UniformKnotGrid& grid, double t) {
    if (!grid.contains(t)) {
        throw Error(ErrorKind::point_outside_domain, "t = " + std::to_string(t) + " lies outside [a, b]");
    }
}

// Evaluation with validated arguments; `cell` in [1, n], t in the closed cell.
double eval_on_cell(const UniformKnotGrid& grid, int i, int cell, double t) {
    const auto [k, r] = decode_basis_index(i);
    const double h = grid.h();
    const double u = std::clamp(t - grid.knot(cell - 1), 0.0, h);
    const double v = std::clamp(grid.knot(cell) - t, 0.0, h);

    if (r <= 2) {
        if (cell == k - 1) {
            return r == 1 ? detail::edge_quartic(u, h) : detail::edge_quintic(u, h);
        }
        if (cell == k) {
            return r == 1 ? detail::edge_quintic(v, h) : detail::edge_quartic(v, h);
        }
        return 0.0;
    }
    if (cell != k) return 0.0;
    return r == 3 ? detail::interior_low(u, v, h) : detail::interior_high(u, v, h);
}

}  // namespace

double basis_eval(const UniformKnotGrid& grid, int i, double t) {
    require_basis_index(grid, i);
    require_in_domain(grid, t);
    return eval_on_cell(grid, i, grid.cell_of(t), t);
}

double basis_eval_on_cell(const UniformKnotGrid& grid, int i, int cell, double t) {
    require_basis_index(grid, i);
    if (cell < 1 || cell > grid.n()) {
        throw Error(ErrorKind::interval_index_out_of_range, "cell " + std::to_string(cell) + " outside [1, n]");
    }
    if (t < grid.knot(cell - 1) || t > grid.knot(cell)) {
        throw Error(ErrorKind::point_outside_domain,
                    "t = " + std::to_string(t) + " outside cell " + std::to_string(cell));
    }
    return eval_on_cell(grid, i, cell, t);
}

double basis_integral(const UniformKnotGrid& grid, int i) {
    require_basis_index(grid, i);
    const int last = grid.dimension();
    if (i == 1 || i == last) return 1.0 / 24.0;
    if (i == 2 || i == last - 1) return 1.0 / 8.0;
    return 1.0 / 6.0;
}

double blend_eval(const UniformKnotGrid& grid, int k, double t) {
    if (k < 1 || k > grid.n() - 1) {
        throw Error(ErrorKind::interval_index_out_of_range,
                    "blend index " + std::to_string(k) + " outside [1, n-1]");
    }
    if (t < grid.knot(k - 1) || t > grid.knot(k)) {
        throw Error(ErrorKind::point_outside_domain, "t = " + std::to_string(t) + " outside cell " + std::to_string(k));
    }
    return 2.0 * eval_on_cell(grid, 4 * k + 1, k, t) - 2.0 * eval_on_cell(grid, 4 * k + 2, k, t) +
           0.5 * eval_on_cell(grid, 4 * k - 1, k, t) - eval_on_cell(grid, 4 * k, k, t);
}

SplineCoefficients::SplineCoefficients(UniformKnotGrid grid, std::vector<double> coefficients)
    : grid_(grid), c_(std::move(coefficients)) {
    if (static_cast<long long>(c_.size()) != grid_.dimension()) {
        throw Error(ErrorKind::invalid_argument, "expected " + std::to_string(grid_.dimension()) +
                                                     " coefficients, got " + std::to_string(c_.size()));
    }
}

double SplineCoefficients::operator()(double t) const {
    require_in_domain(grid_, t);
    const int cell = grid_.cell_of(t);
    double sum = 0.0;
    for (int i = 4 * cell - 3; i <= 4 * cell + 2; ++i) {
        sum += c_[static_cast<std::size_t>(i - 1)] * eval_on_cell(grid_, i, cell, t);
    }
    return sum;
}

double SplineCoefficients::exact_integral() const {
    double sum = 0.0;
    for (int i = 1; i <= grid_.dimension(); ++i) {
        sum += c_[static_cast<std::size_t>(i - 1)] * basis_integral(grid_, i);
    }
    return sum;
}

}  // namespace splinequad
