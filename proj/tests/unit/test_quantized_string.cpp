#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "photostat/errors.hpp"
#include "photostat/quantized_string.hpp"

namespace photostat {
namespace {

constexpr double pi = std::numbers::pi;

BhjConfig two_close_modes() {
    BhjConfig c;
    c.modes = {40, 41};
    c.cutoff = 16;
    c.kT = 105.0;
    return c;
}

TEST(Ladder, TruncatedCommutatorAndNumberOperator) {
    const auto s = single_mode_ladder(5);
    const std::vector<double> expected{1, 1, 1, 1, 1, -5};
    ASSERT_EQ(s.commutator_diagonal.size(), expected.size());
    for (std::size_t n = 0; n < expected.size(); ++n) {
        EXPECT_NEAR(s.commutator_diagonal[n], expected[n], 1e-14);
    }
    for (std::size_t n = 0; n < s.number_diagonal.size(); ++n) {
        EXPECT_NEAR(s.number_diagonal[n], static_cast<double>(n), 1e-15);
    }
    EXPECT_EQ(s.vacuum_annihilation_norm, 0.0);
}

TEST(Hamiltonian, HalfIntegerLadder) {
    BhjConfig c;
    c.L = pi;  // omega_1 = 1
    c.modes = {1};
    c.cutoff = 4;
    const auto e = hamiltonian_spectrum(c);
    EXPECT_EQ(e, (std::vector<double>{0.5, 1.5, 2.5, 3.5, 4.5}));
    c.modes = {1, 2};
    EXPECT_DOUBLE_EQ(hamiltonian_spectrum(c).front(), 1.5);
}

TEST(Kernels, ClosedFormMatchesDefiningIntegrals) {
    BhjConfig c;
    c.l = 0.37;
    c.resonant_only = false;
    using boost::math::quadrature::gauss_kronrod;
    for (auto [n, m] : {std::pair<std::uint64_t, std::uint64_t>{40, 41}, {40, 40}, {3, 7}, {12, 5}}) {
        const double kn = n * pi / c.L, km = m * pi / c.L;
        const double kp = gauss_kronrod<double, 61>::integrate(
            [&](double x) { return 2.0 * std::cos(kn * x) * std::cos(km * x); }, 0.0, c.l, 15, 1e-14);
        const double k = gauss_kronrod<double, 61>::integrate(
            [&](double x) { return 2.0 * std::sin(kn * x) * std::sin(km * x); }, 0.0, c.l, 15, 1e-14);
        const auto kern = mode_kernels(n, m, c);
        EXPECT_NEAR(kern.k_prime, kp, 1e-10) << n << "," << m;
        EXPECT_NEAR(kern.k_plain, k, 1e-10) << n << "," << m;
        const auto swapped = mode_kernels(m, n, c);
        EXPECT_DOUBLE_EQ(swapped.k_prime, kern.k_prime);
        EXPECT_DOUBLE_EQ(swapped.k_plain, kern.k_plain);
    }
    const auto diag = mode_kernels(9, 9, c);
    const double k9 = 9 * pi / c.L;
    EXPECT_NEAR(diag.k_prime, c.l + std::sin(2 * k9 * c.l) / (2 * k9), 1e-15);
    EXPECT_NEAR(diag.k_plain, c.l - std::sin(2 * k9 * c.l) / (2 * k9), 1e-15);
}

TEST(Budget, ZeroPointTermsCancelAtUnitOccupation) {
    // hbar omega = 40 pi and kT = 40 pi / ln 2 put one quantum in the first mode.
    BhjConfig c;
    c.modes = {40, 41};
    c.cutoff = 12;
    c.kT = 40.0 * pi / std::log(2.0);
    c.leakage_bound = 1e-3;
    const auto r = phase_averaged_fluctuation(c);
    EXPECT_EQ(r.dimension, 13u * 13u);
    EXPECT_LT(r.zero_point_cancellation, 1e-10);
    EXPECT_LT(r.oracle_residual, 1e-10);
    EXPECT_LT(r.hermiticity_residual, 1e-12);
    EXPECT_LT(r.commutator_residual, 1e-12);
    c.leakage_bound = 1e-6;
    EXPECT_THROW(phase_averaged_fluctuation(c), LeakageError);
}

TEST(Budget, ThermalOccupationsWithinLeakage) {
    const auto c = two_close_modes();
    const auto r = phase_averaged_fluctuation(c);
    for (std::size_t k = 0; k < c.modes.size(); ++k) {
        const double x = c.modes[k] * pi / c.kT;
        EXPECT_NEAR(r.mean_occupation[k], 1.0 / std::expm1(x), 20.0 * r.leakage);
    }
}

TEST(Budget, VacuumHasNoFluctuation) {
    auto c = two_close_modes();
    c.kT = 5.0;
    c.cutoff = 4;
    const auto r = phase_averaged_fluctuation(c);
    EXPECT_GT(r.zero_point_squared, 1.0);
    EXPECT_LT(r.budget, 1e-9 * r.zero_point_squared);
}

TEST(Budget, TwoTermShapeAndOmittedTerm) {
    for (const std::vector<std::uint64_t>& modes : {std::vector<std::uint64_t>{40, 41},
                                                    std::vector<std::uint64_t>{40, 41, 42}}) {
        auto c = two_close_modes();
        c.modes = modes;
        const auto r = phase_averaged_fluctuation(c);
        EXPECT_NEAR(r.shape_ratio, 1.0, 0.05);
        EXPECT_LT(r.omitted_term_ratio, 0.01);
        EXPECT_NEAR(r.budget, r.particle_part + r.wave_part, 1e-9 * r.budget);
    }
}

TEST(Budget, CutoffConvergence) {
    auto c = two_close_modes();
    c.cutoff = 12;
    c.leakage_bound = 1e-5;
    const double b12 = phase_averaged_fluctuation(c).budget;
    c.cutoff = 16;
    const double b16 = phase_averaged_fluctuation(c).budget;
    EXPECT_LT(std::abs(b16 - b12) / b16, 0.01);
}

TEST(Budget, ParticleShareAtHighOccupation) {
    auto c = two_close_modes();
    c.kT = 40.0 * pi / std::log(1.1);  // ten quanta in the first mode
    c.cutoff = 150;
    const auto r = phase_averaged_fluctuation(c);
    const double share = r.particle_part / r.budget;
    EXPECT_NEAR(share, 1.0 / 11.0, 0.05 / 11.0);
}

TEST(Budget, ClassicalAmplitudesLeaveOnlyTheWaveTerm) {
    const auto c = two_close_modes();
    const auto r = phase_averaged_fluctuation(c);
    Rng rng(12);
    const auto cl = classical_substitution(c, r.mean_occupation, 200'000, rng);
    EXPECT_LT(std::abs(cl.mean - r.wave_part) / r.particle_part, 0.05);
    EXPECT_NEAR(cl.mean, r.wave_part, 5.0 * cl.se);
    EXPECT_NEAR(cl.cross_mean, 0.0, 5.0 * cl.cross_se);
}

TEST(Budget, SizeAndConfigErrors) {
    BhjConfig c;
    c.modes = {40, 41, 42, 43, 44, 45, 46};
    c.cutoff = 16;
    c.kT = 1.0;
    EXPECT_THROW(phase_averaged_fluctuation(c), SizeError);
    c.modes = {40};
    EXPECT_THROW(phase_averaged_fluctuation(c), ConfigError);
    c.modes = {40, 40};
    EXPECT_THROW(phase_averaged_fluctuation(c), ConfigError);
}

TEST(DeltaKernel, ApproachesTheIdentity) {
    const double c = 1.0, omega = 100.0;
    EXPECT_NEAR(kernel_mass(20.0, c, omega), 1.0, 1e-3);  // omega l / c = 2000
    const double width = 1.0;
    const std::vector<double> grid = {omega - 1.0, omega, omega + 0.5};
    const double d1 = kernel_delta_deviation(20.0, c, grid, omega, width);
    const double d2 = kernel_delta_deviation(40.0, c, grid, omega, width);
    EXPECT_LT(d1, 0.05);
    EXPECT_NEAR(d1 / d2, 2.0, 0.2);
}

}  // namespace
}  // namespace photostat
