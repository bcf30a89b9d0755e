#pragma once

#include <span>
#include <vector>

namespace splinequad {

/// Uniform partition a = x_0 < x_1 < ... < x_n = b with spacing h = (b - a) / n,
/// extended by one knot on each side (x_{-1} = a - h, x_{n+1} = b + h).
///
/// Knots are computed from the nearer endpoint, so x_0 == a, x_n == b and the
/// knot sequence is symmetric about the midpoint up to rounding.
class UniformKnotGrid {
public:
    /// Throws Error(invalid_interval) unless a < b with a finite, normal spacing,
    /// and Error(zero_subintervals) when n < 1.
    UniformKnotGrid(double a, double b, int n);

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] double length() const noexcept { return b_ - a_; }
    [[nodiscard]] double midpoint() const noexcept { return 0.5 * (a_ + b_); }

    /// Dimension of the C1 quintic spline space, 4n + 2.
    [[nodiscard]] int dimension() const noexcept { return 4 * n_ + 2; }

    /// x_k for k in [-1, n + 1].
    [[nodiscard]] double knot(int k) const;

    /// Cell index j in [1, n] with t in [x_{j-1}, x_j); t == b maps to cell n.
    [[nodiscard]] int cell_of(double t) const;

    /// Cell index j in [1, n] with t in (x_{j-1}, x_j]; t == a maps to cell 1.
    [[nodiscard]] int cell_of_right_closed(double t) const;

    [[nodiscard]] bool contains(double t) const noexcept { return t >= a_ && t <= b_; }

    friend bool operator==(const UniformKnotGrid&, const UniformKnotGrid&) = default;

private:
    double a_;
    double b_;
    int n_;
    double h_;
};

UniformKnotGrid make_grid(double a, double b, int n);

/// Basis index i = 4(k - 1) + r with r in {1, 2, 3, 4}; k = floor((i + 3) / 4).
struct BasisIndex {
    int k;
    int r;
};

BasisIndex decode_basis_index(int i) noexcept;

/// D_i(t) for 1 <= i <= 4n + 2 and t in [a, b]. Shared knots are evaluated with
/// the piece of the cell to their right (the last cell for t == b).
double basis_eval(const UniformKnotGrid& grid, int i, double t);

/// D_i(t) using the polynomial piece that D_i has on `cell`; t must lie in the
/// closed cell. Used to take one-sided limits at knots.
double basis_eval_on_cell(const UniformKnotGrid& grid, int i, int cell, double t);

/// Integral of D_i over [a, b]: 1/24 for i in {1, 4n+2}, 1/8 for i in {2, 4n+1},
/// 1/6 otherwise.
double basis_integral(const UniformKnotGrid& grid, int i);

/// P_k(t) = 2 D_{4k+1}(t) - 2 D_{4k+2}(t) + D_{4k-1}(t) / 2 - D_{4k}(t) on
/// [x_{k-1}, x_k], 1 <= k <= n - 1. Nonnegative with a double root at the
/// cell midpoint.
double blend_eval(const UniformKnotGrid& grid, int k, double t);

/// Spline over the basis {D_i}; c.size() == grid.dimension().
class SplineCoefficients {
public:
    SplineCoefficients(UniformKnotGrid grid, std::vector<double> coefficients);

    [[nodiscard]] const UniformKnotGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> coefficients() const noexcept { return c_; }

    /// Sum of c_i D_i(t), touching only the six basis functions alive on t's cell.
    [[nodiscard]] double operator()(double t) const;

    /// Sum of c_i * basis_integral(i).
    [[nodiscard]] double exact_integral() const;

private:
    UniformKnotGrid grid_;
    std::vector<double> c_;
};

}  // namespace splinequad
