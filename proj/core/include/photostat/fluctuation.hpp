#pragma once

/**
 * \file fluctuation.hpp
 * Energy-fluctuation budgets of black-body radiation in a narrow band.
 *
 * The variance of the band energy splits into a particle term h nu E and a
 * wave term E^2 / M, with M the number of modes. Several independent routes
 * compute the same total.
 */

#include <cstddef>

#include "photostat/random.hpp"
#include "photostat/spectral.hpp"
#include "photostat/stats.hpp"

namespace photostat {

struct FluctuationBudget {
    double particle_term = 0.0;
    double wave_term = 0.0;
    double total = 0.0;
    double mean_energy = 0.0;
    double mode_count = 0.0;
};

/// Particle plus wave terms from mode counting and the mean occupation.
FluctuationBudget einstein_budget(const SpectralBand& band, double T,
                                  const PhysicalConstants& pc = cgs);

/// Mode count times (h nu)^2 times the occupation variance summed from the pmf.
double distribution_variance(const SpectralBand& band, double T,
                             const PhysicalConstants& pc = cgs);

/// k T^2 dE/dT of the band energy.
double thermodynamic_variance(const SpectralBand& band, double T,
                              const PhysicalConstants& pc = cgs);

/// Variance -1 / (d^2 sigma / d eta^2) at the mean band energy, where
/// d sigma / d eta comes from inverting the spectral law for 1/T and the
/// curvature is taken by central difference. With `wien_only` the inverted law
/// is the high-frequency limit, whose curvature carries no wave term.
/// Throws CurvatureError if the curvature is not negative.
double entropy_curvature_variance(const SpectralBand& band, double T,
                                  const PhysicalConstants& pc = cgs, bool wien_only = false);

/// Mean band energy under the high-frequency limit law.
double wien_mean_energy(const SpectralBand& band, double T, const PhysicalConstants& pc = cgs);

/// Monte Carlo energy of independent localized quanta: E = h_nu N with
/// N ~ Poisson(mean_quanta). Analytic variance is h_nu times the mean energy.
EnsembleStats poisson_particle_variance(double mean_quanta, double h_nu, std::size_t samples,
                                        Rng& rng);

/// Per-mode relative variance 1/(n m) + 1/m as its two terms.
struct RelativeBudget {
    double particle = 0.0;
    double wave = 0.0;
    double total = 0.0;
};
RelativeBudget relative_budget(const SpectralBand& band, double T,
                               const PhysicalConstants& pc = cgs);

/// Mirror of area f moving through radiation for time tau, reflecting band [nu, nu + d_nu].
struct MirrorSetup {
    double nu = 0.0;
    double d_nu = 0.0;
    double T = 0.0;
    double area = 1.0;  ///< f, cm^2
    double tau = 1.0;   ///< s
};

enum class SpectralLaw { planck, rayleigh_jeans, wien };

struct MirrorFluctuation {
    double rho = 0.0;                 ///< spectral density at nu
    double friction = 0.0;            ///< (3 / 2c) [rho - (nu/3) d rho/d nu] f d_nu
    double c2_delta2_friction = 0.0;  ///< c^2 * 2 k T friction tau
    double particle_term = 0.0;       ///< h nu rho f c tau d_nu
    double wave_term = 0.0;           ///< c^3 rho^2 / (8 pi nu^2) f c tau d_nu
    double c2_delta2_closed = 0.0;    ///< particle_term + wave_term
    double relative_discrepancy = 0.0;
    double particle_over_wave = 0.0;  ///< equals e^x - 1 for the Planck law
};

/// Momentum fluctuation of the mirror by the friction (equipartition) route and the
/// closed-form bracket. The derivative of rho uses a central step nu * 1e-6.
MirrorFluctuation mirror_momentum_fluct(const MirrorSetup& setup,
                                        SpectralLaw law = SpectralLaw::planck,
                                        const PhysicalConstants& pc = cgs);

/// Energy variance [h nu rho + c^3 rho^2 / (8 pi nu^2)] v d_nu in a sub-volume v.
double subvolume_energy_variance(double nu, double d_nu, double T, double v,
                                 const PhysicalConstants& pc = cgs);

/// Absorption/emission rate products for two-level exchange with Einstein coefficient B.
struct RateDecomposition {
    double A = 0.0;  ///< 8 pi h nu^3 B / c^3
    double absorption_rate = 0.0;  ///< B u
    double spontaneous_product = 0.0;  ///< B u A
    double induced_product = 0.0;      ///< (B u)^2
    double total = 0.0;                ///< B u (A + B u)
    double particle_bracket = 0.0;     ///< h nu u
    double wave_bracket = 0.0;         ///< c^3 u^2 / (8 pi nu^2)
    double identity_residual = 0.0;    ///< relative gap to B^2 (8 pi nu^2 / c^3) {brackets}
};
RateDecomposition smekal_rate_decomposition(double u, double nu, double B,
                                            const PhysicalConstants& pc = cgs);

/// Sub-volume v inside an enclosure of volume V. The interference form keeps the
/// same wave term but scales the particle term by v / V.
struct SubvolumeForms {
    FluctuationBudget einstein;
    FluctuationBudget interference;
};
SubvolumeForms ehrenfest_vs_einstein_forms(const SpectralBand& band, double T, double V,
                                           const PhysicalConstants& pc = cgs);

}  // namespace photostat
