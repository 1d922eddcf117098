#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "photostat/random.hpp"
#include "photostat/stats.hpp"

namespace photostat {
namespace {

TEST(MomentAccumulator, MatchesTwoPassMoments) {
    const std::vector<double> xs = {1.0, 4.0, 2.5, -3.0, 7.25, 0.5};
    MomentAccumulator acc;
    double sum = 0.0;
    for (double x : xs) {
        acc.push(x);
        sum += x;
    }
    const double mean = sum / xs.size();
    double m2 = 0.0, m4 = 0.0;
    for (double x : xs) {
        m2 += (x - mean) * (x - mean);
        m4 += std::pow(x - mean, 4);
    }
    EXPECT_NEAR(acc.mean(), mean, 1e-14);
    EXPECT_NEAR(acc.variance(), m2 / (xs.size() - 1), 1e-12);
    EXPECT_NEAR(acc.central_moment4(), m4 / xs.size(), 1e-10);
}

TEST(MomentAccumulator, MergeEqualsSinglePass) {
    Rng r(5);
    MomentAccumulator all, left, right;
    for (int i = 0; i < 1000; ++i) {
        const double x = r.normal() * 3.0 + 1.0;
        all.push(x);
        (i < 400 ? left : right).push(x);
    }
    left.merge(right);
    EXPECT_EQ(left.count(), all.count());
    EXPECT_NEAR(left.mean(), all.mean(), 1e-12);
    EXPECT_NEAR(left.variance(), all.variance(), 1e-10);
    EXPECT_NEAR(left.central_moment4(), all.central_moment4(), 1e-8);
}

TEST(ChiSquare, SurvivalFunctionKnownValues) {
    // Upper 5% points of the chi-square law.
    EXPECT_NEAR(chi_square_sf(3.841458820694124, 1), 0.05, 1e-9);
    EXPECT_NEAR(chi_square_sf(18.307038053275146, 10), 0.05, 1e-9);
    EXPECT_NEAR(chi_square_sf(0.0, 3), 1.0, 1e-15);
}

TEST(ChiSquare, PerfectFitHasUnitPValue) {
    const auto r = chi_square_gof({25.0, 50.0, 25.0}, {0.25, 0.5, 0.25});
    EXPECT_DOUBLE_EQ(r.statistic, 0.0);
    EXPECT_EQ(r.dof, 2);
    EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(ChiSquare, HomogeneityDetectsDifferentRows) {
    EXPECT_GT(chi_square_homogeneity({{100, 200, 300}, {101, 198, 301}}).p_value, 0.5);
    EXPECT_LT(chi_square_homogeneity({{300, 200, 100}, {100, 200, 300}}).p_value, 1e-10);
}

TEST(TotalVariation, PadsShorterVector) {
    EXPECT_NEAR(total_variation({0.5, 0.5}, {0.5, 0.25, 0.25}), 0.25, 1e-15);
    EXPECT_NEAR(total_variation({1.0}, {1.0}), 0.0, 1e-15);
}

TEST(KsDistance, UniformSampleAgainstUniformCdf) {
    std::vector<double> s = {0.1, 0.3, 0.5, 0.7, 0.9};
    const double d = ks_distance(s, [](double x) { return x; });
    EXPECT_NEAR(d, 0.1, 1e-12);
}

TEST(QuadraticFit, RecoversExactCoefficients) {
    std::vector<double> x, y;
    for (double v : {0.5, 1.0, 2.0, 4.0}) {
        x.push_back(v);
        y.push_back(0.7 * v + 1.3 * v * v);
    }
    const auto f = fit_linear_quadratic(x, y);
    EXPECT_NEAR(f.linear, 0.7, 1e-12);
    EXPECT_NEAR(f.quadratic, 1.3, 1e-12);
    EXPECT_NEAR(f.rms_residual, 0.0, 1e-12);
}

TEST(BatchRatio, ExactForProportionalBatches) {
    const auto r = batch_ratio({2.0, 4.0, 6.0}, {1.0, 2.0, 3.0});
    EXPECT_NEAR(r.ratio, 2.0, 1e-15);
    EXPECT_NEAR(r.se, 0.0, 1e-15);
}

TEST(BatchMean, StandardErrorOfBatches) {
    const auto m = batch_mean({1.0, 2.0, 3.0, 4.0});
    EXPECT_NEAR(m.mean, 2.5, 1e-15);
    EXPECT_NEAR(m.se, std::sqrt((5.0 / 3.0) / 4.0), 1e-14);
}

}  // namespace
}  // namespace photostat
