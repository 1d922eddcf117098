#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "photostat/distributions.hpp"
#include "photostat/errors.hpp"
#include "photostat/kinetics.hpp"
#include "photostat/stats.hpp"

namespace photostat {
namespace {

constexpr double ln2 = 0.6931471805599453;

RunRecord run(const KineticsConfig& cfg, std::uint64_t index = 0) {
    Rng rng = Rng::stream(42, index);
    return equilibration_run(cfg, rng);
}

TEST(Cavity, BathHoldsBoltzmannRatio) {
    const auto s = CavityState::make(3, ln2, 100.0);
    EXPECT_EQ(s.occupations.size(), 3u);
    EXPECT_DOUBLE_EQ(s.ground, 100.0);
    EXPECT_NEAR(s.excited, 50.0, 1e-12);
    EXPECT_EQ(s.total_quanta(), 0u);
}

TEST(Cavity, RatesSplitByChannel) {
    auto s = CavityState::make(2, ln2, 100.0);
    s.occupations = {0, 3};
    const auto r = rate_table(s, 2.0);
    EXPECT_NEAR(r.spontaneous[0], 100.0, 1e-12);
    EXPECT_NEAR(r.stimulated[0], 0.0, 1e-12);
    EXPECT_NEAR(r.absorption[0], 0.0, 1e-12);
    EXPECT_NEAR(r.stimulated[1], 300.0, 1e-12);
    EXPECT_NEAR(r.absorption[1], 600.0, 1e-12);
    EXPECT_NEAR(r.total, 100.0 + 100.0 + 300.0 + 600.0, 1e-9);
}

TEST(Cavity, EmptyCavityIsFrozen) {
    auto s = CavityState::make(2, ln2, 0.0);
    const auto rates = rate_table(s);
    EXPECT_EQ(rates.total, 0.0);
    Rng rng(7);
    EXPECT_FALSE(step_gillespie(s, rates, rng).has_value());
    EXPECT_EQ(s.total_quanta(), 0u);

    KineticsConfig cfg;
    cfg.atoms = 0.0;
    const auto rec = run(cfg);
    EXPECT_TRUE(rec.frozen);
    EXPECT_EQ(rec.events, 0u);
}

TEST(Cavity, EachStepMovesOneQuantum) {
    auto s = CavityState::make(4, 1.0, 50.0);
    Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        const auto before = static_cast<std::int64_t>(s.total_quanta());
        const auto step = step_gillespie(s, rate_table(s), rng);
        ASSERT_TRUE(step.has_value());
        EXPECT_GT(step->wait, 0.0);
        EXPECT_EQ(std::abs(static_cast<std::int64_t>(s.total_quanta()) - before), 1);
        EXPECT_EQ(static_cast<std::int64_t>(s.total_quanta()) - s.bath_ledger, 0);
    }
}

TEST(Equilibration, StationaryLawIsBose) {
    KineticsConfig cfg;
    cfg.x = ln2;
    cfg.max_events = 1'000'000;
    const auto rec = run(cfg);
    EXPECT_TRUE(rec.conservation_ok);
    const auto& occ = rec.occupation;
    ASSERT_GT(occ.n, 1000u);
    EXPECT_NEAR(occ.mean, 1.0, 4.0 * occ.se_mean);
    EXPECT_NEAR(occ.variance, 2.0, 4.0 * occ.se_variance);

    const double b = 0.5;
    const std::size_t K = 8;
    std::vector<double> observed(K + 1, 0.0), probs(K + 1, 0.0);
    const auto& h = rec.snapshot_histogram.front();
    for (std::size_t n = 0; n < h.size(); ++n) {
        observed[std::min(n, K)] += h[n];
    }
    for (std::size_t n = 0; n < K; ++n) {
        probs[n] = (1.0 - b) * std::pow(b, static_cast<double>(n));
    }
    probs[K] = std::pow(b, static_cast<double>(K));
    EXPECT_GT(chi_square_gof(observed, probs).p_value, 1e-4);

    for (double ratio : detailed_balance_ratios(rec, 3)) {
        EXPECT_NEAR(ratio, b, 0.03);
    }
}

TEST(Equilibration, TimeWeightedLawApproachesBose) {
    KineticsConfig cfg;
    cfg.max_events = 400'000;
    cfg.initial = {20};
    const auto rec = run(cfg, 1);
    ASSERT_EQ(rec.checkpoint_tv.size(), 3u);
    EXPECT_GT(rec.checkpoint_tv[0], rec.checkpoint_tv[2]);
    EXPECT_LT(rec.checkpoint_tv[2], 0.02);
}

TEST(Equilibration, StimulatedShareMatchesOccupation) {
    for (double x : {ln2, 5.0}) {
        KineticsConfig cfg;
        cfg.x = x;
        cfg.max_events = 400'000;
        cfg.keep_event_log = true;
        const auto rec = run(cfg, 2);
        const auto cs = channel_split(rec, x);
        EXPECT_NEAR(cs.predicted, 1.0 / std::expm1(x), 1e-15);
        EXPECT_NEAR(cs.ratio, cs.predicted, 4.0 * cs.se) << "x=" << x;
    }
    KineticsConfig cfg;
    cfg.x = 0.1;
    cfg.max_events = 400'000;
    cfg.keep_event_log = true;
    const auto cs = channel_split(run(cfg, 3), 0.1);
    EXPECT_NEAR(cs.predicted, 9.508331944775, 1e-9);
    EXPECT_NEAR(cs.ratio, cs.predicted, 4.0 * cs.se);
    EXPECT_THROW(channel_split(run(KineticsConfig{}, 4), ln2), ConfigError);
}

TEST(Equilibration, RemovingAtomsFreezesTheCavity) {
    KineticsConfig cfg;
    cfg.max_events = 0;
    cfg.t_max = 5.0;
    cfg.remove_atoms_at = 1.0;
    const auto rec = run(cfg, 5);
    EXPECT_TRUE(rec.frozen);
    ASSERT_TRUE(rec.frozen_at.has_value());
    EXPECT_DOUBLE_EQ(*rec.frozen_at, 1.0);
    EXPECT_DOUBLE_EQ(rec.t_end, 5.0);
    EXPECT_TRUE(rec.conservation_ok);
}

TEST(Equilibration, ModesAreIndependent) {
    KineticsConfig cfg;
    cfg.modes = 2;
    cfg.max_events = 1'000'000;
    const auto rec = run(cfg, 6);
    // Rows are mode-0 levels {0, 1, >=2}; homogeneous rows mean mode 1 ignores mode 0.
    std::vector<std::vector<double>> table(3, std::vector<double>(3, 0.0));
    for (std::size_t i = 0; i < rec.joint_snapshots.size(); ++i) {
        for (std::size_t j = 0; j < rec.joint_snapshots[i].size(); ++j) {
            table[std::min<std::size_t>(i, 2)][std::min<std::size_t>(j, 2)] += rec.joint_snapshots[i][j];
        }
    }
    EXPECT_GT(chi_square_homogeneity(table).p_value, 1e-4);
}

TEST(Equilibration, InitialConditionIsForgotten) {
    KineticsConfig cfg;
    cfg.modes = 2;
    cfg.initial = {30, 0};
    cfg.max_events = 1'000'000;
    const auto rec = run(cfg, 7);
    const auto& h0 = rec.snapshot_histogram[0];
    const auto& h1 = rec.snapshot_histogram[1];
    const double m0 = std::accumulate(h0.begin(), h0.end(), 0.0);
    const double m1 = std::accumulate(h1.begin(), h1.end(), 0.0);
    ASSERT_EQ(m0, m1);
    std::vector<std::vector<double>> table(2, std::vector<double>(4, 0.0));
    for (std::size_t n = 0; n < h0.size(); ++n) {
        table[0][std::min<std::size_t>(n, 3)] += h0[n];
        table[1][std::min<std::size_t>(n, 3)] += h1[n];
    }
    EXPECT_GT(chi_square_homogeneity(table).p_value, 1e-4);
}

TEST(Equilibration, SameSeedSameRun) {
    KineticsConfig cfg;
    cfg.modes = 3;
    cfg.max_events = 50'000;
    const auto a = run(cfg, 8);
    const auto b = run(cfg, 8);
    EXPECT_EQ(a.final_state.occupations, b.final_state.occupations);
    EXPECT_EQ(a.t_end, b.t_end);
    EXPECT_EQ(a.spontaneous, b.spontaneous);
    KineticsConfig short_initial;
    short_initial.modes = 2;
    short_initial.initial = {1};
    EXPECT_THROW(run(short_initial), ConfigError);
}

}  // namespace
}  // namespace photostat
