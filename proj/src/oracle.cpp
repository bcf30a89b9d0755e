#include "splinequad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "splinequad/detail/recursion.hpp"
#include "splinequad/errors.hpp"

namespace splinequad::oracle {

namespace {

struct GaussLegendreTable {
    std::span<const double> abscissae;  // on [-1, 1]
    std::span<const double> weights;
};

constexpr double kGL3x[] = {-0.77459666924148337703585307995648, 0.0, 0.77459666924148337703585307995648};
constexpr double kGL3w[] = {0.55555555555555555555555555555556, 0.88888888888888888888888888888889,
                            0.55555555555555555555555555555556};

constexpr double kGL4x[] = {-0.86113631159405257522394648889281, -0.33998104358485626480266575910324,
                            0.33998104358485626480266575910324, 0.86113631159405257522394648889281};
constexpr double kGL4w[] = {0.34785484513745385737306394922200, 0.65214515486254614262693605077800,
                            0.65214515486254614262693605077800, 0.34785484513745385737306394922200};

constexpr double kGL5x[] = {-0.90617984593866399279762687829939, -0.53846931010568309103631442070021, 0.0,
                            0.53846931010568309103631442070021, 0.90617984593866399279762687829939};
constexpr double kGL5w[] = {0.23692688505618908751426404071992, 0.47862867049936646804129151483564,
                            0.56888888888888888888888888888889, 0.47862867049936646804129151483564,
                            0.23692688505618908751426404071992};

GaussLegendreTable gauss_legendre(int points) {
    switch (points) {
        case 3: return {kGL3x, kGL3w};
        case 4: return {kGL4x, kGL4w};
        case 5: return {kGL5x, kGL5w};
        default:
            throw Error(ErrorKind::invalid_argument,
                        "reference integrator supports 3, 4 or 5 points per cell, got " + std::to_string(points));
    }
}

double integrate_segment(const Integrand& f, double lo, double hi, const GaussLegendreTable& gl) {
    const double half = 0.5 * (hi - lo);
    const double centre = 0.5 * (hi + lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < gl.abscissae.size(); ++i) {
        sum += gl.weights[i] * f(centre + half * gl.abscissae[i]);
    }
    return half * sum;
}

using Precise = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                              boost::multiprecision::et_off>;

struct PreciseRule {
    std::vector<Precise> nodes;
    std::vector<Precise> weights;
};

PreciseRule precise_rule(const UniformKnotGrid& grid) {
    const int n = grid.n();
    const Precise a = grid.a();
    const Precise b = grid.b();
    const Precise h = (b - a) / n;
    const auto half = detail::run_recursion<Precise>(n, h, false);

    PreciseRule out;
    out.nodes.resize(static_cast<std::size_t>(2 * n + 1));
    out.weights.resize(out.nodes.size());
    auto put = [&](int index, const Precise& node, const Precise& weight) {
        out.nodes[static_cast<std::size_t>(index)] = node;
        out.weights[static_cast<std::size_t>(index)] = weight;
    };
    for (int k = 1; k <= n / 2; ++k) {
        const auto& cell = half.cells[static_cast<std::size_t>(k - 1)];
        const Precise left = a + h * (k - 1);
        put(2 * k - 2, left + cell.offset_lo, cell.weight_lo);
        put(2 * k - 1, left + cell.offset_hi, cell.weight_hi);
        put(2 * n - 2 * k + 2, a + b - (left + cell.offset_lo), cell.weight_lo);
        put(2 * n - 2 * k + 1, a + b - (left + cell.offset_hi), cell.weight_hi);
    }
    const Precise middle = (a + b) / 2;
    if (half.even_middle_weight) {
        put(n, middle, *half.even_middle_weight);
    } else {
        const auto& mid = *half.odd_middle;
        const Precise left = a + h * (n / 2);
        put(n - 1, left + mid.offset_side, mid.weight_side);
        put(n, middle, mid.weight_mid);
        put(n + 1, a + b - (left + mid.offset_side), mid.weight_side);
    }
    return out;
}

double cubic_value(const std::array<double, 4>& c, double x) { return ((c[3] * x + c[2]) * x + c[1]) * x + c[0]; }

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

}  // namespace

double reference_integral(const Integrand& f, const UniformKnotGrid& grid, int points_per_cell) {
    const auto gl = gauss_legendre(points_per_cell);
    double sum = 0.0;
    for (int j = 1; j <= grid.n(); ++j) {
        sum += integrate_segment(f, grid.knot(j - 1), grid.knot(j), gl);
    }
    return sum;
}

double reference_integral_piecewise(const Integrand& f, std::span<const double> breakpoints, int points_per_cell) {
    const auto gl = gauss_legendre(points_per_cell);
    double sum = 0.0;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (breakpoints[i] > breakpoints[i - 1]) {
            sum += integrate_segment(f, breakpoints[i - 1], breakpoints[i], gl);
        }
    }
    return sum;
}

double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    const double unit = static_cast<double>(z >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
}

SplineCoefficients random_spline(const UniformKnotGrid& grid, std::uint64_t seed) {
    std::vector<double> c(static_cast<std::size_t>(grid.dimension()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = counter_uniform(seed, i);
    }
    return SplineCoefficients(grid, std::move(c));
}

std::vector<int> node_counts_per_cell(const QuadratureRule& rule) {
    const auto& grid = rule.grid();
    const auto nodes = rule.nodes();
    const std::size_t middle = nodes.size() / 2;
    std::vector<int> counts(static_cast<std::size_t>(grid.n()), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int cell = i <= middle ? grid.cell_of(nodes[i]) : grid.cell_of_right_closed(nodes[i]);
        ++counts[static_cast<std::size_t>(cell - 1)];
    }
    return counts;
}

ExactnessReport exactness_report(const QuadratureRule& rule) {
    const auto& grid = rule.grid();
    ExactnessReport report;
    report.n = grid.n();
    report.worst_index = 1;
    for (int i = 1; i <= grid.dimension(); ++i) {
        const double q = apply_rule(rule, [&](double t) { return basis_eval(grid, i, t); });
        const double residual = std::abs(q - basis_integral(grid, i));
        if (residual > report.max_basis_residual) {
            report.max_basis_residual = residual;
            report.worst_index = i;
        }
    }
    report.per_interval_node_counts = node_counts_per_cell(rule);
    return report;
}

std::vector<NodeDeviation> limit_rule_deviation(const QuadratureRule& rule) {
    const auto& grid = rule.grid();
    const double h = grid.h();
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    std::vector<NodeDeviation> out;
    out.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const long long half_steps =
            std::clamp(std::llround(2.0 * (nodes[i] - grid.a()) / h), 0LL, 2LL * grid.n());
        NodeDeviation d;
        d.index = static_cast<int>(i) + 1;
        d.at_knot = half_steps % 2 == 0;
        const int j = static_cast<int>(half_steps / 2);
        d.target_node = d.at_knot ? grid.knot(j) : grid.knot(j) + 0.5 * h;
        d.target_weight = d.at_knot ? 7.0 * h / 15.0 : 8.0 * h / 15.0;
        d.node_deviation = std::abs(nodes[i] - d.target_node);
        d.weight_deviation = std::abs(weights[i] - d.target_weight);
        out.push_back(d);
    }
    return out;
}

std::array<double, 3> middle_system_residual(double first, double second, double h, double alpha, double w_side,
                                             double w_mid) {
    const double h5 = std::pow(h, 5);
    const double h6 = h5 * h;
    const double c = h - alpha;
    return {
        (std::pow(c, 5) + std::pow(alpha, 5)) / (4.0 * h6) * w_side + w_mid / (128.0 * h) - first,
        (std::pow(c, 4) * (9.0 * alpha + h) + std::pow(alpha, 4) * (10.0 * h - 9.0 * alpha)) / (4.0 * h6) * w_side +
            11.0 * w_mid / (128.0 * h) - second,
        10.0 * alpha * alpha * c * c / h5 * w_side + 5.0 * w_mid / (16.0 * h) - 1.0 / 6.0,
    };
}

std::array<double, 4> cubic_factor(const ResidueState& state, double h) {
    const double A = state.first;
    const double B = state.second;
    return {-h * h * h, 4.0 * h * h, h * (24.0 * B - 24.0 * A - 5.0), -216.0 * A - 24.0 * B + 2.0};
}

std::optional<double> cubic_root_in_cell(const ResidueState& state, double h) {
    const auto c = cubic_factor(state, h);

    // Critical points: roots of 3 c3 x^2 + 2 c2 x + c1 inside (0, h).
    std::vector<double> cuts{0.0, h};
    const double qa = 3.0 * c[3];
    const double qb = 2.0 * c[2];
    const double qc = c[1];
    if (qa != 0.0) {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            for (double x : {(-qb - s) / (2.0 * qa), (-qb + s) / (2.0 * qa)}) {
                if (x > 0.0 && x < h) cuts.push_back(x);
            }
        }
    } else if (qb != 0.0) {
        const double x = -qc / qb;
        if (x > 0.0 && x < h) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());

    for (std::size_t i = 1; i < cuts.size(); ++i) {
        double lo = cuts[i - 1];
        double hi = cuts[i];
        double f_lo = cubic_value(c, lo);
        const double f_hi = cubic_value(c, hi);
        if (f_lo == 0.0) return lo;
        if (f_hi == 0.0) return hi;
        if ((f_lo < 0.0) == (f_hi < 0.0)) continue;
        for (int iter = 0; iter < 80; ++iter) {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = cubic_value(c, mid);
            if ((f_mid < 0.0) == (f_lo < 0.0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }
    return std::nullopt;
}

bool cubic_rootfree_check(const ResidueState& state, double h) { return !cubic_root_in_cell(state, h).has_value(); }

template <std::size_t N>
std::array<double, N> bernstein_coefficients(const std::array<double, N>& monomial, double lo, double hi) {
    static_assert(N >= 1);
    constexpr std::size_t degree = N - 1;
    const double width = hi - lo;

    // Monomial coefficients in s, where x = lo + width * s.
    std::array<double, N> shifted{};
    for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (std::size_t j = i; j < N; ++j) {
            acc += monomial[j] * binomial(j, i) * std::pow(lo, static_cast<double>(j - i));
        }
        shifted[i] = acc * std::pow(width, static_cast<double>(i));
    }

    std::array<double, N> out{};
    for (std::size_t k = 0; k < N; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= k; ++i) {
            acc += binomial(k, i) / binomial(degree, i) * shifted[i];
        }
        out[k] = acc;
    }
    return out;
}

template std::array<double, 4> bernstein_coefficients<4>(const std::array<double, 4>&, double, double);
template std::array<double, 6> bernstein_coefficients<6>(const std::array<double, 6>&, double, double);

bool bernstein_certifies_negative(const std::array<double, 4>& monomial, double lo, double hi, int max_depth) {
    const auto b = bernstein_coefficients(monomial, lo, hi);
    if (std::all_of(b.begin(), b.end(), [](double v) { return v < 0.0; })) return true;
    if (b.front() >= 0.0 || b.back() >= 0.0 || max_depth == 0) return false;
    const double mid = 0.5 * (lo + hi);
    return bernstein_certifies_negative(monomial, lo, mid, max_depth - 1) &&
           bernstein_certifies_negative(monomial, mid, hi, max_depth - 1);
}

QuadratureRule reference_rule(const UniformKnotGrid& grid) {
    const auto precise = precise_rule(grid);
    std::vector<double> nodes(precise.nodes.size());
    std::vector<double> weights(precise.weights.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        nodes[i] = static_cast<double>(precise.nodes[i]);
        weights[i] = static_cast<double>(precise.weights[i]);
    }
    return QuadratureRule(grid, std::move(nodes), std::move(weights));
}

double sextic_remainder_reference(const UniformKnotGrid& grid) {
    const auto precise = precise_rule(grid);
    const Precise a = grid.a();
    const Precise len = Precise(grid.b()) - a;
    Precise q = 0;
    for (std::size_t i = 0; i < precise.nodes.size(); ++i) {
        q += precise.weights[i] * pow(precise.nodes[i] - a, 6);
    }
    return static_cast<double>(pow(len, 7) / 7 - q);
}

}  // namespace splinequad::oracle
