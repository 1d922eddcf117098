#pragma once

/**
 * \file spectral.hpp
 * Black-body spectral laws in CGS units.
 *
 * All densities are per unit volume and unit frequency (erg s cm^-3).
 * Every function rejects non-positive frequency or temperature with
 * DomainError.
 */

namespace photostat {

struct PhysicalConstants {
    double h = 6.626e-27;  ///< erg s
    double k = 1.381e-16;  ///< erg / K
    double c = 2.998e10;   ///< cm / s
};

inline constexpr PhysicalConstants cgs{};

/// Reduced variable x = h nu / kT at a single frequency and temperature.
struct ModePoint {
    double nu = 0.0;
    double T = 0.0;
    double x = 0.0;      ///< h nu / kT
    double b = 0.0;      ///< exp(-x)
    double n_bar = 0.0;  ///< mean quanta per mode

    static ModePoint at(double nu, double T, const PhysicalConstants& pc = cgs);
};

/// A narrow frequency band [nu, nu + d_nu] in a volume.
struct SpectralBand {
    double nu = 0.0;
    double d_nu = 0.0;
    double volume = 1.0;  ///< cm^3
};

/// Largest relative bandwidth d_nu/nu for which per-mode quantities are treated as constant.
inline constexpr double max_relative_bandwidth = 0.01;

/// Mean occupation 1/(e^x - 1); series below 1e-6 and e^-x above 700.
double mean_occupation(double x);

/// Mode density 8 pi nu^2 / c^3 per unit volume and frequency.
double mode_density(double nu, const PhysicalConstants& pc = cgs);

/// Number of modes in the band. Throws NarrowBandError when d_nu/nu exceeds the bound.
double mode_count(const SpectralBand& band, const PhysicalConstants& pc = cgs);

/// Planck spectral energy density.
double planck_density(double nu, double T, const PhysicalConstants& pc = cgs);

struct LimitDensities {
    double wien = 0.0;
    double rayleigh_jeans = 0.0;
};

/// High-frequency (Wien) and low-frequency (Rayleigh-Jeans) limits of the Planck law.
LimitDensities limit_densities(double nu, double T, const PhysicalConstants& pc = cgs);

/// Closed-form radiation constant a in u = a T^4.
double radiation_constant(const PhysicalConstants& pc = cgs);

/// Total energy density at temperature T by adaptive quadrature of the Planck law.
double integrated_energy_density(double T, const PhysicalConstants& pc = cgs);

/// Positive root of exp(-b) + b/5 - 1 = 0.
double wien_displacement_root();

/// Product lambda_max * T in cm K.
double wien_lambda_max_T(const PhysicalConstants& pc = cgs);

}  // namespace photostat
