#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "photostat/distributions.hpp"
#include "photostat/errors.hpp"
#include "photostat/stats.hpp"

namespace photostat {
namespace {

TEST(BosePmf, KnownValues) {
    EXPECT_DOUBLE_EQ(bose_pmf(0, 1.0), 0.5);
    EXPECT_DOUBLE_EQ(bose_pmf(3, 1.0), 1.0 / 16.0);
    double sum = 0.0;
    for (std::uint64_t n = 0; n <= 200; ++n) {
        sum += bose_pmf(n, 1.0);
    }
    EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(BosePmf, LargeNStaysFinite) {
    const auto law = BoseGeometric::from_ratio(0.5);
    EXPECT_NEAR(law.log_pmf(5000), std::log(0.5) + 5000 * std::log(0.5), 1e-9);
    EXPECT_DOUBLE_EQ(law.tail(4), 0.0625);
}

TEST(BoseCharacteristic, NormalizationAndDirectSum) {
    const auto law = BoseGeometric::from_ratio(0.5);
    EXPECT_NEAR(std::abs(law.characteristic(0.0) - std::complex<double>(1.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(law.characteristic(std::numbers::pi) - std::complex<double>(1.0 / 3.0, 0.0)), 0.0,
                1e-15);
    for (double t : {-2.0, 0.3, 1.1, 2.9}) {
        std::complex<double> direct = 0.0;
        for (int n = 0; n <= 200; ++n) {
            direct += law.pmf(n) * std::exp(std::complex<double>(0.0, n * t));
        }
        EXPECT_NEAR(std::abs(direct - law.characteristic(t)), 0.0, 1e-12);
        EXPECT_LE(std::abs(law.characteristic(t)), 1.0 + 1e-15);
    }
}

TEST(BoseEntropy, ClosedFormAndBoltzmannSum) {
    EXPECT_NEAR(bose_entropy(1.0), 2.0 * std::log(2.0), 1e-15);
    EXPECT_NEAR(bose_entropy(1e-12), 0.0, 1e-9);
    for (double n : {0.1, 1.0, 10.0}) {
        EXPECT_NEAR(bose_entropy_sum(n), bose_entropy(n), 1e-10) << "n_bar=" << n;
    }
}

TEST(BoseMoments, DirectSummation) {
    for (double n : {0.1, 1.0, 10.0}) {
        const auto m = bose_moments_by_sum(n);
        EXPECT_NEAR(m.mean, n, 1e-10 * n);
        EXPECT_NEAR(m.variance, n + n * n, 1e-9 * (n + n * n));
        EXPECT_NEAR(m.second, n + 2 * n * n, 1e-9 * (n + 2 * n * n));
    }
}

TEST(ThermoVariance, ClassicalQuantumAndConstant) {
    const double k = 1.381e-16, h_nu = 4e-13;
    const double T = 2000.0;
    EXPECT_NEAR(thermo_variance([&](double t) { return k * t; }, T, k) / std::pow(k * T, 2), 1.0, 1e-8);
    const double x = h_nu / (k * T);
    const double n = 1.0 / std::expm1(x);
    const double v = thermo_variance([&](double t) { return h_nu / std::expm1(h_nu / (k * t)); }, T, k);
    EXPECT_NEAR(v / (h_nu * h_nu * (n + n * n)), 1.0, 1e-6);
    EXPECT_EQ(thermo_variance([](double) { return 3.0; }, T, k), 0.0);
    EXPECT_THROW(thermo_variance([](double) { return std::nan(""); }, T, k), EvaluationError);
}

TEST(Samplers, BoseMeanAtUnitOccupation) {
    Rng rng(101);
    MomentAccumulator acc;
    for (int i = 0; i < 1'000'000; ++i) {
        acc.push(static_cast<double>(sample_bose(1.0, rng)));
    }
    EXPECT_NEAR(acc.mean(), 1.0, 3.0 * std::sqrt(2.0 / 1e6));
}

TEST(Samplers, PoissonVarianceBothBranches) {
    for (double lambda : {0.5, 30.0}) {
        Rng rng(202);
        MomentAccumulator acc;
        for (int i = 0; i < 1'000'000; ++i) {
            acc.push(static_cast<double>(sample_poisson(lambda, rng)));
        }
        const auto s = acc.stats();
        EXPECT_NEAR(s.mean, lambda, 4.0 * s.se_mean);
        EXPECT_NEAR(s.variance, lambda, 4.0 * s.se_variance);
    }
}

TEST(Samplers, PoissonLawByChiSquare) {
    Rng rng(303);
    const double lambda = 12.0;
    const std::size_t K = 30;
    std::vector<double> observed(K + 1, 0.0), probs(K + 1, 0.0);
    for (int i = 0; i < 200'000; ++i) {
        observed[std::min<std::uint64_t>(sample_poisson(lambda, rng), K)] += 1.0;
    }
    double head = 0.0;
    for (std::size_t n = 0; n < K; ++n) {
        probs[n] = PoissonLaw{lambda}.pmf(n);
        head += probs[n];
    }
    probs[K] = 1.0 - head;
    EXPECT_GT(chi_square_gof(observed, probs).p_value, 1e-4);
}

TEST(Samplers, ExponentialVarianceIsSquaredMean) {
    Rng rng(404);
    MomentAccumulator acc;
    for (int i = 0; i < 1'000'000; ++i) {
        acc.push(sample_exponential(2.5, rng));
    }
    const auto s = acc.stats();
    EXPECT_NEAR(s.variance, exponential_energy_fluct(2.5), 3.0 * s.se_variance);
    EXPECT_DOUBLE_EQ(exponential_energy_fluct(0.0), 0.0);
}

TEST(Samplers, BinaryReturnsWeightOrZero) {
    Rng rng(505);
    int hits = 0;
    for (int i = 0; i < 10000; ++i) {
        const double v = sample_binary(0.25, 4.0, rng);
        ASSERT_TRUE(v == 0.0 || v == 4.0);
        hits += v > 0.0;
    }
    EXPECT_NEAR(hits / 10000.0, 0.25, 4.0 * std::sqrt(0.25 * 0.75 / 10000));
}

TEST(Samplers, FixedSeedIsReproducible) {
    Rng a(9), b(9);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(sample_bose(0.7, a), sample_bose(0.7, b));
        ASSERT_EQ(sample_poisson(15.0, a), sample_poisson(15.0, b));
        ASSERT_EQ(sample_exponential(1.0, a), sample_exponential(1.0, b));
    }
}

TEST(BinomialToPoisson, DistanceShrinksWithTrials) {
    double previous = 1.0;
    for (std::uint64_t N0 : {10u, 100u, 1000u, 10000u}) {
        const auto gap = binomial_to_poisson(N0, 1.0 / static_cast<double>(N0));
        EXPECT_DOUBLE_EQ(gap.lambda, 1.0);
        EXPECT_LT(gap.total_variation, previous);
        previous = gap.total_variation;
    }
    EXPECT_LT(previous, 1e-4);
    EXPECT_GT(binomial_to_poisson(1, 1.0 - 1e-9).total_variation, 0.5);
}

TEST(CountingLaw, SmallCasesExact) {
    for (std::uint64_t n = 0; n <= 2; ++n) {
        EXPECT_NEAR(planck_bose_from_counting(2, 2, n), 1.0 / 3.0, 1e-15);
    }
    EXPECT_EQ(planck_bose_from_counting(2, 2, 3), 0.0);
    double sum = 0.0;
    for (std::uint64_t n = 0; n <= 7; ++n) {
        sum += planck_bose_from_counting(5, 7, n);
    }
    EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(CountingLaw, ApproachesGeometricLaw) {
    double worst = 0.0;
    for (std::uint64_t n = 0; n <= 1000; ++n) {
        worst = std::max(worst, std::abs(planck_bose_from_counting(1000, 1000, n) - bose_pmf(n, 1.0)));
    }
    EXPECT_LT(worst, 2e-3);
}

TEST(GeometricBins, SumToOne) {
    const auto p = geometric_bin_probabilities(0.5, 16);
    ASSERT_EQ(p.size(), 17u);
    double s = 0.0;
    for (double v : p) {
        s += v;
    }
    EXPECT_NEAR(s, 1.0, 1e-15);
    EXPECT_NEAR(p.back(), std::pow(0.5, 16), 1e-18);
}

}  // namespace
}  // namespace photostat
