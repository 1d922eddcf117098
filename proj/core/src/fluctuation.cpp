#include "photostat/fluctuation.hpp"

#include <cmath>
#include <numbers>

#include "photostat/distributions.hpp"
#include "photostat/errors.hpp"

namespace photostat {
namespace {

constexpr double pi = std::numbers::pi;

double spectral_density(SpectralLaw law, double nu, double T, const PhysicalConstants& pc) {
    switch (law) {
        case SpectralLaw::planck:
            return planck_density(nu, T, pc);
        case SpectralLaw::rayleigh_jeans:
            return limit_densities(nu, T, pc).rayleigh_jeans;
        case SpectralLaw::wien:
            return limit_densities(nu, T, pc).wien;
    }
    throw DomainError("unknown spectral law");
}

}  // namespace

FluctuationBudget einstein_budget(const SpectralBand& band, double T,
                                  const PhysicalConstants& pc) {
    const double M = mode_count(band, pc);
    const ModePoint mp = ModePoint::at(band.nu, T, pc);
    const double h_nu = pc.h * band.nu;
    FluctuationBudget f;
    f.mode_count = M;
    f.mean_energy = M * h_nu * mp.n_bar;
    f.particle_term = h_nu * f.mean_energy;
    f.wave_term = f.mean_energy * f.mean_energy / M;
    f.total = f.particle_term + f.wave_term;
    return f;
}

double distribution_variance(const SpectralBand& band, double T, const PhysicalConstants& pc) {
    const double M = mode_count(band, pc);
    const ModePoint mp = ModePoint::at(band.nu, T, pc);
    const double h_nu = pc.h * band.nu;
    return M * h_nu * h_nu * bose_moments_by_sum(mp.n_bar).variance;
}

double thermodynamic_variance(const SpectralBand& band, double T, const PhysicalConstants& pc) {
    const double M = mode_count(band, pc);
    const double h_nu = pc.h * band.nu;
    auto energy = [&](double t) { return M * h_nu * mean_occupation(h_nu / (pc.k * t)); };
    return thermo_variance(energy, T, pc.k);
}

double wien_mean_energy(const SpectralBand& band, double T, const PhysicalConstants& pc) {
    const double M = mode_count(band, pc);
    const ModePoint mp = ModePoint::at(band.nu, T, pc);
    return M * pc.h * band.nu * mp.b;
}

double entropy_curvature_variance(const SpectralBand& band, double T,
                                  const PhysicalConstants& pc, bool wien_only) {
    const double m = mode_count(band, pc);
    const ModePoint mp = ModePoint::at(band.nu, T, pc);
    const double h_nu = pc.h * band.nu;
    // Energies in units of h nu: d sigma / d eta = (k / h nu) g(eta / h nu).
    const double eta0 = wien_only ? m * mp.b : m * mp.n_bar;
    auto g = [&](double e) { return wien_only ? std::log(m / e) : std::log1p(m / e); };
    const double step = eta0 * 1e-5;
    const double slope = (g(eta0 + step) - g(eta0 - step)) / (2.0 * step);
    if (!std::isfinite(slope)) {
        throw EvaluationError("entropy curvature is not finite");
    }
    if (!(slope < 0.0)) {
        throw CurvatureError("entropy curvature is not negative at the mean energy");
    }
    return -h_nu * h_nu / slope;
}

EnsembleStats poisson_particle_variance(double mean_quanta, double h_nu, std::size_t samples,
                                        Rng& rng) {
    if (samples < 2) {
        throw DomainError("need at least two samples");
    }
    MomentAccumulator acc;
    for (std::size_t i = 0; i < samples; ++i) {
        acc.push(h_nu * static_cast<double>(sample_poisson(mean_quanta, rng)));
    }
    return acc.stats();
}

RelativeBudget relative_budget(const SpectralBand& band, double T, const PhysicalConstants& pc) {
    const double M = mode_count(band, pc);
    const ModePoint mp = ModePoint::at(band.nu, T, pc);
    RelativeBudget r;
    r.particle = 1.0 / (mp.n_bar * M);
    r.wave = 1.0 / M;
    r.total = r.particle + r.wave;
    return r;
}

MirrorFluctuation mirror_momentum_fluct(const MirrorSetup& s, SpectralLaw law,
                                        const PhysicalConstants& pc) {
    if (!(s.d_nu > 0.0) || !(s.area > 0.0) || !(s.tau > 0.0)) {
        throw DomainError("mirror bandwidth, area and time must be positive");
    }
    MirrorFluctuation r;
    r.rho = spectral_density(law, s.nu, s.T, pc);
    const double dnu = s.nu * 1e-6;
    const double drho = (spectral_density(law, s.nu + dnu, s.T, pc)
                         - spectral_density(law, s.nu - dnu, s.T, pc))
                        / (2.0 * dnu);
    r.friction = 1.5 / pc.c * (r.rho - s.nu / 3.0 * drho) * s.area * s.d_nu;
    r.c2_delta2_friction = pc.c * pc.c * 2.0 * pc.k * s.T * r.friction * s.tau;
    const double volume_factor = s.area * pc.c * s.tau * s.d_nu;
    r.particle_term = pc.h * s.nu * r.rho * volume_factor;
    r.wave_term = pc.c * pc.c * pc.c * r.rho * r.rho / (8.0 * pi * s.nu * s.nu) * volume_factor;
    r.c2_delta2_closed = r.particle_term + r.wave_term;
    r.relative_discrepancy = std::abs(r.c2_delta2_friction - r.c2_delta2_closed)
                             / r.c2_delta2_closed;
    r.particle_over_wave = r.particle_term / r.wave_term;
    return r;
}

double subvolume_energy_variance(double nu, double d_nu, double T, double v,
                                 const PhysicalConstants& pc) {
    const double rho = planck_density(nu, T, pc);
    return (pc.h * nu * rho + pc.c * pc.c * pc.c * rho * rho / (8.0 * pi * nu * nu)) * v * d_nu;
}

RateDecomposition smekal_rate_decomposition(double u, double nu, double B,
                                            const PhysicalConstants& pc) {
    if (!(u >= 0.0) || !(nu > 0.0) || !(B > 0.0)) {
        throw DomainError("rate decomposition needs u >= 0, nu > 0, B > 0");
    }
    const double c3 = pc.c * pc.c * pc.c;
    RateDecomposition r;
    r.A = 8.0 * pi * pc.h * nu * nu * nu * B / c3;
    r.absorption_rate = B * u;
    r.spontaneous_product = B * u * r.A;
    r.induced_product = B * u * B * u;
    r.total = B * u * (r.A + B * u);
    r.particle_bracket = pc.h * nu * u;
    r.wave_bracket = c3 * u * u / (8.0 * pi * nu * nu);
    const double rhs = B * B * (8.0 * pi * nu * nu / c3) * (r.particle_bracket + r.wave_bracket);
    r.identity_residual = rhs > 0.0 ? std::abs(r.total - rhs) / rhs : std::abs(r.total);
    return r;
}

SubvolumeForms ehrenfest_vs_einstein_forms(const SpectralBand& band, double T, double V,
                                           const PhysicalConstants& pc) {
    if (!(V >= band.volume)) {
        throw DomainError("enclosure volume must contain the sub-volume");
    }
    SubvolumeForms f;
    f.einstein = einstein_budget(band, T, pc);
    f.interference = f.einstein;
    f.interference.particle_term *= band.volume / V;
    f.interference.total = f.interference.particle_term + f.interference.wave_term;
    return f;
}

}  // namespace photostat
