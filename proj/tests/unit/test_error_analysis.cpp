#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "splinequad/error_analysis.hpp"
#include "splinequad/errors.hpp"
#include "splinequad/oracle.hpp"

using namespace splinequad;

TEST(ErrorConstant, SingleCellMatchesGaussLegendre) {
    const auto rule = build_rule(make_grid(0.0, 1.0, 1));
    EXPECT_NEAR(error_constant(rule), 1.0 / 2016000.0, 1e-18);
    EXPECT_NEAR(error_constant_direct(rule), 1.0 / 2016000.0, 1e-18);
}

TEST(ErrorConstant, ScalesWithSeventhPower) {
    const double c1 = error_constant(build_rule(make_grid(0.0, 1.0, 4)));
    const double c2 = error_constant(build_rule(make_grid(0.0, 2.0, 4)));
    EXPECT_NEAR(c2 / c1, 128.0, 1e-9);
}

TEST(ErrorConstant, LongRulesApproachCellConstant) {
    // Away from the ends every cell carries the constant of the two-node limit rule.
    const double c400 = error_constant(build_rule(make_grid(0.0, 400.0, 400)));
    const double c200 = error_constant(build_rule(make_grid(0.0, 200.0, 200)));
    EXPECT_NEAR((c400 - c200) / 200.0, 1.0 / 604800.0, 1e-15);
}

TEST(ErrorConstant, EqualsIntegralOfKernel) {
    for (int n : {1, 2, 5, 8}) {
        const auto rule = build_rule(make_grid(0.0, 1.0, n));
        const auto& grid = rule.grid();
        std::vector<double> breaks(rule.nodes().begin(), rule.nodes().end());
        for (int j = 0; j <= n; ++j) breaks.push_back(grid.knot(j));
        std::sort(breaks.begin(), breaks.end());
        const double integral =
            oracle::reference_integral_piecewise([&](double t) { return peano_kernel(rule, t); }, breaks, 4);
        EXPECT_NEAR(integral, error_constant(rule), 1e-12 * error_constant(rule)) << "n=" << n;
    }
}

TEST(ErrorConstant, SexticRemainderIdentity) {
    for (int n = 1; n <= 20; ++n) {
        const auto grid = make_grid(0.0, 1.0, n);
        const double c = error_constant(build_rule(grid));
        const double remainder = oracle::sextic_remainder_reference(grid);
        EXPECT_NEAR(remainder, 720.0 * c, 1e-12 * 720.0 * c) << "n=" << n;
    }
}

TEST(PeanoKernel, ZeroAtKnotsAndNonnegative) {
    for (int n : {1, 2, 3, 6, 11}) {
        const auto rule = build_rule(make_grid(0.0, n, n));
        const auto& grid = rule.grid();
        for (int j = 0; j <= n; ++j) {
            EXPECT_NEAR(peano_kernel(rule, grid.knot(j)), 0.0, 1e-14);
        }
        const auto profile = peano_profile(rule, 200);
        ASSERT_EQ(profile.samples.size(), static_cast<std::size_t>(200 * n + 1));
        EXPECT_EQ(profile.samples.back().first, grid.b());
        for (const auto& [t, k] : profile.samples) EXPECT_GE(k, -1e-15) << "t=" << t;
    }
}

TEST(PeanoKernel, LocalAndDirectFormsAgree) {
    for (int n : {1, 3, 4}) {
        const auto rule = build_rule(make_grid(0.0, 1.0, n));
        for (int s = 0; s <= 97; ++s) {
            const double t = s / 97.0;
            EXPECT_NEAR(peano_kernel(rule, t), peano_kernel_direct(rule, t), 1e-16);
        }
    }
}

TEST(PeanoKernel, OutsideDomain) {
    const auto rule = build_rule(make_grid(0.0, 1.0, 2));
    EXPECT_THROW(peano_kernel(rule, 1.5), Error);
    EXPECT_THROW(peano_kernel_direct(rule, -0.1), Error);
    EXPECT_THROW(peano_profile(rule, 0), Error);
}

TEST(RemainderBound, BoundsExponential) {
    for (int n : {1, 2, 5}) {
        const auto rule = build_rule(make_grid(0.0, 1.0, n));
        const double error = std::abs(std::exp(1.0) - 1.0 - apply_rule(rule, [](double t) { return std::exp(t); }));
        EXPECT_LE(error, remainder_bound(rule, std::exp(1.0)));
        // exp^(6) >= 1, so the error is also at least c.
        EXPECT_GE(error, 0.99 * error_constant(rule));
    }
}

TEST(RemainderBound, RejectsNegativeBound) {
    const auto rule = build_rule(make_grid(0.0, 1.0, 1));
    try {
        remainder_bound(rule, -1.0);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::negative_bound);
    }
}
