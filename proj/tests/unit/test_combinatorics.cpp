#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "photostat/combinatorics.hpp"
#include "photostat/decomposition.hpp"
#include "photostat/distributions.hpp"
#include "photostat/errors.hpp"

namespace photostat {
namespace {

DistributionMode mode(std::vector<std::uint64_t> counts) {
    DistributionMode d;
    d.counts = std::move(counts);
    for (std::size_t i = 0; i < d.counts.size(); ++i) {
        d.receptacles += d.counts[i];
        d.quanta += i * d.counts[i];
    }
    return d;
}

TEST(PlanckW, SmallValues) {
    EXPECT_EQ(planck_W(3, 2), 6);
    for (std::uint64_t P : {0u, 1u, 17u, 300u}) {
        EXPECT_EQ(planck_W(1, P), 1);
    }
    EXPECT_EQ(planck_W(12, 0), 1);
    EXPECT_EQ(planck_W(0, 0), 1);
}

TEST(BigCounts, LogAndRatio) {
    EXPECT_NEAR(log_big(factorial(200)), std::lgamma(201.0), 1e-9);
    EXPECT_NEAR(ratio_to_double(factorial(400), factorial(398)), 400.0 * 399.0, 1e-9);
    EXPECT_EQ(binomial(5, 2), 10);
}

TEST(Collocations, Examples) {
    EXPECT_EQ(count_collocations(mode({1, 0, 1})), 2);
    EXPECT_EQ(count_collocations(mode({0, 2})), 1);
    EXPECT_EQ(count_collocations(mode({4, 0, 0, 0, 0, 0, 1})), 5);
    DistributionMode bad = mode({1, 0, 1});
    bad.quanta = 3;
    EXPECT_THROW(count_collocations(bad), InvariantError);
}

TEST(Associations, Examples) {
    EXPECT_EQ(count_associations(mode({1, 0, 1})), 1);
    EXPECT_EQ(count_associations(mode({0, 2})), 2);
    EXPECT_EQ(count_associations(mode({3})), 1);
}

TEST(Enumeration, SmallCases) {
    const auto modes = enumerate_distribution_modes(2, 2, 2);
    ASSERT_EQ(modes.size(), 2u);
    std::vector<std::vector<std::uint64_t>> seen;
    for (const auto& m : modes) {
        auto c = m.counts;
        c.resize(3, 0);
        seen.push_back(c);
    }
    EXPECT_NE(std::find(seen.begin(), seen.end(), std::vector<std::uint64_t>{1, 0, 1}), seen.end());
    EXPECT_NE(std::find(seen.begin(), seen.end(), std::vector<std::uint64_t>{0, 2, 0}), seen.end());
    EXPECT_EQ(enumerate_distribution_modes(3, 0, 0).size(), 1u);
    BigInt sum = 0;
    for (const auto& m : enumerate_distribution_modes(4, 5, 5)) {
        sum += count_collocations(m);
    }
    EXPECT_EQ(sum, planck_W(4, 5));
    EXPECT_THROW(enumerate_distribution_modes(12, 12, 12, 10), SizeError);
}

TEST(Identities, WorkedExamples) {
    const auto a = verify_count_identities(2, 2);
    EXPECT_EQ(a.sum_A, 3);
    EXPECT_EQ(a.sum_AB, 4);
    const auto b = verify_count_identities(3, 3);
    EXPECT_EQ(b.sum_A, 10);
    EXPECT_EQ(b.sum_AB, 27);
    const auto c = verify_count_identities(5, 1);
    EXPECT_EQ(c.sum_A, 5);
    EXPECT_EQ(c.sum_AB, 5);
}

TEST(Identities, HoldForAllSmallInstances) {
    for (std::uint64_t N = 1; N <= 7; ++N) {
        for (std::uint64_t n = 0; n <= 7; ++n) {
            const auto r = verify_count_identities(N, n);
            EXPECT_TRUE(r.pass) << "N=" << N << " n=" << n;
            EXPECT_EQ(r.sum_A, r.expected_A);
            EXPECT_EQ(r.sum_AB, r.expected_AB);
        }
    }
}

TEST(CountingLaw, ConditionedEnumerationMatchesRatio) {
    // P(receptacle 0 holds k) = sum over modes of A * N_k / N, divided by sum A.
    for (std::uint64_t N = 2; N <= 6; ++N) {
        for (std::uint64_t n = 0; n <= 6; ++n) {
            const auto modes = enumerate_distribution_modes(N, n, n);
            BigInt total = 0;
            std::vector<BigInt> held(n + 1, 0);
            for (const auto& m : modes) {
                const BigInt A = count_collocations(m);
                total += A * N;
                for (std::size_t k = 0; k < m.counts.size(); ++k) {
                    held[k] += A * m.counts[k];
                }
            }
            for (std::uint64_t k = 0; k <= n; ++k) {
                EXPECT_NEAR(ratio_to_double(held[k], total), planck_bose_from_counting(N, n, k), 1e-15);
            }
        }
    }
}

TEST(Exclusion, CappedCounting) {
    EXPECT_EQ(fermi_variant(4, 2).sum_A, 6);
    const auto full = fermi_variant(5, 5);
    EXPECT_EQ(full.sum_A, 1);
    for (std::uint64_t N = 1; N <= 7; ++N) {
        for (std::uint64_t n = 0; n <= N; ++n) {
            EXPECT_TRUE(fermi_variant(N, n).pass);
        }
    }
    const auto f = fermi_variant(7, 2);
    EXPECT_NEAR(f.fill, 1.0 / (std::exp(f.exponent) + 1.0), 1e-15);
    EXPECT_THROW(fermi_variant(3, 4), ExclusionError);
    EXPECT_THROW(check_exclusion(mode({0, 0, 1})), ExclusionError);
}

TEST(Equilibria, ClosedForms) {
    const double N = 1000.0;
    const auto e = closed_form_equilibria(N, std::log(2.0), 60);
    double sum = 0.0;
    for (std::size_t i = 0; i < e.bose.size(); ++i) {
        EXPECT_NEAR(e.bose[i] / N, std::ldexp(0.5, -static_cast<int>(i)), 1e-15);
        EXPECT_NEAR(e.maxwell[i], N * std::log(2.0) * std::ldexp(1.0, -static_cast<int>(i)), 1e-10);
        sum += e.bose[i];
    }
    EXPECT_NEAR(sum, N, 1e-12 * N);
    EXPECT_THROW(closed_form_equilibria(N, 0.0, 3), DomainError);
}

TEST(Equilibria, CollocationMaximizerIsGeometric) {
    // The log-gamma maximizer solves psi(N_i + 1) = -alpha - beta i, a geometric law shifted by
    // about 1/2, so level i departs from the closed form by roughly 1/(2 N_i).
    const auto m = maximize_collocations(1e4, 1e4);
    ASSERT_TRUE(m.converged);
    EXPECT_NEAR(m.beta, std::log(2.0), 3e-3);
    const auto own = closed_form_equilibria(1e4, m.beta, 8);
    for (std::size_t i = 0; i < 8; ++i) {
        if (own.bose[i] >= 500.0) {
            EXPECT_NEAR(m.counts[i] / own.bose[i], 1.0, 1e-3) << "level " << i;
        }
    }
    const auto large = maximize_collocations(1e6, 1e6);
    ASSERT_TRUE(large.converged);
    const auto closed = closed_form_equilibria(1e6, std::log(2.0), 10);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_NEAR(large.counts[i] / closed.bose[i], 1.0, 1e-3) << "level " << i;
    }
}

TEST(Equilibria, AssociationMaximizerIsPoisson) {
    const double N = 1e4, n = 2e4;
    const auto m = maximize_associations(N, n);
    ASSERT_TRUE(m.converged);
    const PoissonLaw law{n / N};
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(m.counts[i] / (N * law.pmf(i)), 1.0, 1e-2) << "level " << i;
    }
}

TEST(Equilibria, ExclusionMaximizerHasFermiForm) {
    std::vector<double> sizes(10, 1e4), energies;
    for (int g = 0; g < 10; ++g) {
        energies.push_back(g);
    }
    const auto m = maximize_exclusive_levels(sizes, energies, 2e4, 3e4);
    ASSERT_TRUE(m.converged);
    for (std::size_t g = 0; g < sizes.size(); ++g) {
        const double fermi = 1.0 / (std::exp(m.alpha + m.beta * energies[g]) + 1.0);
        EXPECT_NEAR(m.counts[g] / sizes[g], fermi, 1e-3) << "group " << g;
    }
    // Groups at energies 2^s with zero offset reproduce the binary-photon occupations.
    std::vector<double> dyadic;
    for (int s = 0; s < 4; ++s) {
        dyadic.push_back(std::ldexp(1.0, s));
    }
    const double x = 0.5;
    double particles = 0.0, energy = 0.0;
    for (int s = 0; s < 4; ++s) {
        particles += 1e5 * binary_mean_occupation(x, s);
        energy += 1e5 * binary_mean_occupation(x, s) * dyadic[s];
    }
    const auto d = maximize_exclusive_levels(std::vector<double>(4, 1e5), dyadic, particles, energy);
    ASSERT_TRUE(d.converged);
    EXPECT_NEAR(d.alpha, 0.0, 1e-3);
    EXPECT_NEAR(d.beta, x, 1e-3);
    EXPECT_THROW(maximize_exclusive_levels({1.0, 1.0}, {0.0, 1.0}, 2.0, 1.0), ExclusionError);
}

TEST(Stirling, LargeNumberLimit) {
    EXPECT_LT(stirling_entropy_check(10000, 10000).relative_error, 1e-3);
    EXPECT_GT(stirling_entropy_check(10, 10).relative_error, stirling_entropy_check(100, 100).relative_error);
    const auto sparse = stirling_entropy_check(100000, 1);
    EXPECT_LT(sparse.exact, 2e-4);
    EXPECT_LT(sparse.closed_form, 2e-4);
}

TEST(Stirling, MaximumTermCarriesTheEntropy) {
    double previous = 0.0;
    for (std::uint64_t N : {100u, 1000u, 10000u}) {
        const double r = max_term_ratio(N, N);
        EXPECT_GT(r, previous);
        EXPECT_LT(r, 1.0);
        previous = r;
    }
    EXPECT_GT(previous, 0.995);
    EXPECT_GT(max_term_ratio(100000, 100000), 0.9995);
}

}  // namespace
}  // namespace photostat
