#pragma once

/**
 * \file quantized_string.hpp
 * Energy fluctuation of a segment of a quantized vibrating string.
 *
 * Modes n have angular frequency n pi c / L and dimensionless quadratures
 * q = (a + a^+)/sqrt(2), p = (a - a^+)/(sqrt(2) i), each truncated at
 * occupation N_max. The segment (0, l) carries the energy (l/L) H plus an
 * off-diagonal coupling Delta = Delta_1 + Delta_2 between modes. Thermal
 * expectations use product Bose weights supported on occupations
 * 0..N_max-1, where every matrix element entering the traces is exact.
 */

#include <cstddef>
#include <cstdint>
#include <vector>

#include "photostat/random.hpp"

namespace photostat {

struct BhjConfig {
    double L = 1.0;
    double l = 0.37;
    double c = 1.0;
    double hbar = 1.0;
    std::vector<std::uint64_t> modes;  ///< mode indices n
    std::size_t cutoff = 12;           ///< N_max per mode
    double kT = 1.0;                   ///< temperature in energy units
    bool resonant_only = true;         ///< drop the (k_n + k_m) kernel parts
    double leakage_bound = 1e-6;       ///< allowed Bose weight above N_max - 2 per mode
};

/// Largest Fock-space dimension accepted.
inline constexpr std::size_t max_fock_dimension = 16 * 16 * 16 * 16 * 16 * 16;

/// Kernels K' = S- + S+ and K = S- - S+ with S-+ = sin((k_n -+ k_m) l) / (k_n -+ k_m).
struct ModeKernels {
    double k_prime = 0.0;
    double k_plain = 0.0;
};
ModeKernels mode_kernels(std::uint64_t n, std::uint64_t m, const BhjConfig& cfg);

/// Diagonals of [a, a^+] and a^+ a for one mode truncated at `cutoff`, and the
/// norm of a acting on the vacuum.
struct SingleModeLadder {
    std::vector<double> commutator_diagonal;
    std::vector<double> number_diagonal;
    double vacuum_annihilation_norm = 0.0;
};
SingleModeLadder single_mode_ladder(std::size_t cutoff);

/// Sorted eigenvalues of H = sum hbar w (a^+ a + 1/2) on the truncated space.
std::vector<double> hamiltonian_spectrum(const BhjConfig& cfg);

struct BhjResult {
    std::size_t dimension = 0;
    double leakage = 0.0;  ///< largest per-mode Bose weight above N_max - 2
    std::vector<double> mean_occupation;  ///< per mode, under the truncated weights
    double mean_energy = 0.0;             ///< segment energy above zero point, (l/L) sum hbar w n

    double squared_terms = 0.0;       ///< <Delta_1^2 + Delta_2^2>
    double cross_terms = 0.0;         ///< <Delta_1 Delta_2 + Delta_2 Delta_1>
    double zero_point_squared = 0.0;  ///< <Delta_1^2 + Delta_2^2> in the vacuum
    double zero_point_cancellation = 0.0;  ///< |zero_point_squared + cross_terms| / |cross_terms|
    double budget = 0.0;                   ///< squared_terms + cross_terms

    double oracle_budget = 0.0;    ///< pairwise closed form with the same weights
    double oracle_residual = 0.0;  ///< |budget - oracle| / oracle

    double wave_part = 0.0;      ///< commuting-amplitude part, sum C^2 (K'^2 + K^2) n_n n_m
    double particle_part = 0.0;  ///< budget - wave_part
    double shape_particle = 0.0;  ///< hbar w E
    double shape_wave = 0.0;      ///< E^2 / z, z = (l / L) * number of modes
    double shape_ratio = 0.0;     ///< (particle/wave) / (shape_particle/shape_wave)
    double geometric_factor = 0.0;  ///< budget / (shape_particle + shape_wave)

    double hermiticity_residual = 0.0;   ///< max |Delta - Delta^+|
    double commutator_residual = 0.0;    ///< max |[a, a^+] - 1| on occupations below N_max
    double omitted_term_ratio = 0.0;     ///< variance of the fast-oscillating diagonal term / budget
};

/// Builds the truncated operators and evaluates the thermal traces.
/// Throws SizeError above max_fock_dimension and LeakageError above the leakage bound.
BhjResult phase_averaged_fluctuation(const BhjConfig& cfg);

/// Budget with c-number amplitudes: a -> sqrt(n) e^{-i phi} with exponential n of the
/// same mean as the quantum state and uniform phases, averaged over `samples` draws.
struct ClassicalBudget {
    double mean = 0.0;
    double se = 0.0;
    double cross_mean = 0.0;  ///< <Delta_1 Delta_2 + Delta_2 Delta_1>; its phase average vanishes for c-numbers
    double cross_se = 0.0;
};
ClassicalBudget classical_substitution(const BhjConfig& cfg,
                                       const std::vector<double>& mean_occupation,
                                       std::size_t samples, Rng& rng);

/// Max over omega_grid of |int K(w - w') f(w') dw' - f(w)| for the kernel
/// (c / (pi l)) sin^2((w - w') l / c) / (w - w')^2 and a Gaussian f of width `width`
/// centred at `center`.
double kernel_delta_deviation(double l, double c, const std::vector<double>& omega_grid,
                              double center, double width);

/// Kernel mass over positive frequencies at omega.
double kernel_mass(double l, double c, double omega);

}  // namespace photostat
