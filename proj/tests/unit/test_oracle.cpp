#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "splinequad/errors.hpp"
#include "splinequad/oracle.hpp"

using namespace splinequad;
using namespace splinequad::oracle;

TEST(ReferenceIntegral, ExactForPiecewiseDegreeSeven) {
    const auto grid = make_grid(-1.0, 2.0, 3);
    auto f = [](double t) { return std::pow(t, 7) - 2.0 * t * t; };
    const double exact = (std::pow(2.0, 8) - 1.0) / 8.0 - 2.0 * (8.0 + 1.0) / 3.0;
    EXPECT_NEAR(reference_integral(f, grid, 4), exact, 1e-13);
    EXPECT_NEAR(reference_integral(f, grid, 5), exact, 1e-13);
    auto g = [](double t) { return std::pow(t, 5); };
    EXPECT_NEAR(reference_integral(g, grid, 3), (64.0 - 1.0) / 6.0, 1e-13);
    EXPECT_THROW(reference_integral(f, grid, 2), Error);

    const std::vector<double> breaks{0.0, 0.25, 0.25, 1.0};
    EXPECT_NEAR(reference_integral_piecewise([](double t) { return t < 0.25 ? 1.0 : t; }, breaks),
                0.25 + (1.0 - 0.0625) / 2.0, 1e-15);
}

TEST(CounterUniform, SplitMixStream) {
    // First SplitMix64 output for seed 0.
    const double expected = 2.0 * static_cast<double>(0xE220A8397B1DCDAFULL >> 11) * 0x1.0p-53 - 1.0;
    EXPECT_EQ(counter_uniform(0, 0), expected);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double u = counter_uniform(42, i);
        EXPECT_GE(u, -1.0);
        EXPECT_LT(u, 1.0);
    }
    EXPECT_NE(counter_uniform(1, 5), counter_uniform(2, 5));
}

TEST(RandomSpline, Deterministic) {
    const auto grid = make_grid(0.0, 1.0, 4);
    const auto s1 = random_spline(grid, 7);
    const auto s2 = random_spline(grid, 7);
    ASSERT_EQ(s1.coefficients().size(), 18u);
    for (std::size_t i = 0; i < 18; ++i) EXPECT_EQ(s1.coefficients()[i], s2.coefficients()[i]);
    EXPECT_EQ(s1.coefficients()[3], counter_uniform(7, 3));
}

TEST(NodeCounts, MiddleArrangement) {
    EXPECT_EQ(node_counts_per_cell(build_rule(make_grid(0.0, 5.0, 5))), (std::vector<int>{2, 2, 3, 2, 2}));
    EXPECT_EQ(node_counts_per_cell(build_rule(make_grid(0.0, 6.0, 6))), (std::vector<int>{2, 2, 2, 3, 2, 2}));
    EXPECT_EQ(node_counts_per_cell(build_rule(make_grid(0.0, 1.0, 1))), (std::vector<int>{3}));
    // Nodes on knots deep inside a long rule still count toward one cell each.
    const auto counts = node_counts_per_cell(build_rule(make_grid(0.0, 30.0, 30)));
    for (int j = 1; j <= 30; ++j) EXPECT_EQ(counts[j - 1], j == 16 ? 3 : 2) << j;
}

TEST(Exactness, AllBasisFunctions) {
    for (int n = 1; n <= 30; ++n) {
        const auto report = exactness_report(build_rule(make_grid(0.0, n, n)));
        EXPECT_EQ(report.n, n);
        EXPECT_LE(report.max_basis_residual, 1e-13) << "n=" << n << " worst " << report.worst_index;
    }
}

TEST(Exactness, DetectsPerturbedRule) {
    const auto rule = build_rule(make_grid(0.0, 4.0, 4));
    std::vector<double> weights(rule.weights().begin(), rule.weights().end());
    weights[3] += 1e-8;
    const QuadratureRule broken(rule.grid(), {rule.nodes().begin(), rule.nodes().end()}, weights);
    EXPECT_GT(exactness_report(broken).max_basis_residual, 1e-9);
}

TEST(LimitDeviation, PublishedRows) {
    const auto d10 = limit_rule_deviation(build_rule(make_grid(0.0, 10.0, 10)));
    EXPECT_EQ(d10[7].index, 8);
    EXPECT_FALSE(d10[7].at_knot);
    EXPECT_EQ(d10[7].node_deviation, 0.0);
    EXPECT_LE(d10[7].weight_deviation, 1e-16);
    EXPECT_TRUE(d10[10].at_knot);
    EXPECT_EQ(d10[10].target_node, 5.0);

    const auto d5 = limit_rule_deviation(build_rule(make_grid(0.0, 5.0, 5)));
    EXPECT_EQ(d5[5].node_deviation, 0.0);
    EXPECT_NEAR(d5[5].weight_deviation, 2.2468e-8, 1e-11);
    EXPECT_NEAR(d5[0].node_deviation, 0.1225148226554413, 1e-15);
}

TEST(MiddleSystem, ResidualsVanishOnConstructedNodes) {
    for (int n : {1, 3, 5, 9, 21}) {
        const auto grid = make_grid(0.0, n, n);
        const auto trace = build_rule_traced(grid);
        const auto& s = trace.states.back();
        const auto& rule = trace.rule;
        const double alpha = rule.nodes()[n - 1] - grid.knot(n / 2);
        const auto r = middle_system_residual(s.first, s.second, grid.h(), alpha, rule.weights()[n - 1],
                                              rule.weights()[n]);
        for (double e : r) EXPECT_LE(std::abs(e), 1e-14) << "n=" << n;
    }
    const auto r = middle_system_residual(1.0 / 24.0, 1.0 / 8.0, 1.0, 0.5 - std::sqrt(0.15), 5.0 / 18.0, 4.0 / 9.0);
    for (double e : r) EXPECT_LE(std::abs(e), 1e-15);
}

TEST(CubicFactor, KnownStates) {
    const auto c = cubic_factor(initial_residues(), 1.0);
    EXPECT_NEAR(c[0], -1.0, 1e-15);
    EXPECT_NEAR(c[1], 4.0, 1e-15);
    EXPECT_NEAR(c[2], -3.0, 1e-15);
    EXPECT_NEAR(c[3], -10.0, 1e-14);
    const auto l = cubic_factor(ResidueState{1, 29.0 / 240.0, 39.0 / 240.0}, 1.0);
    EXPECT_NEAR(l[2], -4.0, 1e-14);
    EXPECT_NEAR(l[3], -28.0, 1e-14);
}

TEST(CubicFactor, RootFreeAlongRecursion) {
    const auto trace = build_rule_traced(make_grid(0.0, 300.0, 300));
    for (const auto& s : trace.states) {
        EXPECT_TRUE(cubic_rootfree_check(s, 1.0)) << s.k;
        EXPECT_TRUE(bernstein_certifies_negative(cubic_factor(s, 1.0), 0.0, 1.0)) << s.k;
    }
}

TEST(CubicFactor, FindsRootWhenPresent) {
    const ResidueState s{1, 0.001, 0.15};
    const auto root = cubic_root_in_cell(s, 1.0);
    ASSERT_TRUE(root);
    const auto c = cubic_factor(s, 1.0);
    EXPECT_NEAR(((c[3] * *root + c[2]) * *root + c[1]) * *root + c[0], 0.0, 1e-14);
    EXPECT_FALSE(cubic_rootfree_check(s, 1.0));
    EXPECT_FALSE(bernstein_certifies_negative(c, 0.0, 1.0));
}

TEST(Bernstein, CubicOnRightHalf) {
    for (const auto& s : {initial_residues(), ResidueState{2, 97.0 / 864.0, 139.0 / 864.0}}) {
        const double A = s.first;
        const double B = s.second;
        const auto b = bernstein_coefficients(cubic_factor(s, 1.0), 0.5, 1.0);
        EXPECT_NEAR(b[0], -33.0 * A + 3.0 * B, 1e-14);
        EXPECT_NEAR(b[1], -64.0 * A + 4.0 * B + 1.0 / 12.0, 1e-14);
        EXPECT_NEAR(b[2], -124.0 * A + 4.0 * B, 1e-14);
        EXPECT_NEAR(b[3], -240.0 * A, 1e-14);
    }
}

TEST(Bernstein, BlendControlPoints) {
    const auto grid = make_grid(0.0, 3.0, 3);
    Eigen::MatrixXd V(6, 6);
    Eigen::VectorXd y(6);
    for (int p = 0; p < 6; ++p) {
        const double t = 0.1 + 0.16 * p;
        for (int q = 0; q < 6; ++q) V(p, q) = std::pow(t, q);
        y(p) = blend_eval(grid, 1, t);
    }
    const Eigen::VectorXd m = V.colPivHouseholderQr().solve(y);
    std::array<double, 6> mono{};
    for (int q = 0; q < 6; ++q) mono[q] = m(q);

    const std::array<double, 6> left{0.0, 0.0, 1.0 / 8.0, 1.0 / 16.0, 0.0, 0.0};
    const std::array<double, 6> right{0.0, 0.0, 1.0 / 16.0, 1.0 / 4.0, 1.0 / 2.0, 0.0};
    const auto bl = bernstein_coefficients(mono, 0.0, 0.5);
    const auto br = bernstein_coefficients(mono, 0.5, 1.0);
    for (int q = 0; q < 6; ++q) {
        EXPECT_NEAR(bl[q], left[q], 1e-11) << q;
        EXPECT_NEAR(br[q], right[q], 1e-11) << q;
    }
}

TEST(ReferenceRule, MatchesPublishedMiddle) {
    const auto rule = reference_rule(make_grid(0.0, 5.0, 5));
    EXPECT_NEAR(rule.nodes()[4], 2.0000387957905171, 1e-15);
    EXPECT_NEAR(rule.weights()[4], 0.4665398664562177, 1e-16);
    EXPECT_EQ(rule.nodes()[5], 2.5);
}
