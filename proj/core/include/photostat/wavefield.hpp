#pragma once

/**
 * \file wavefield.hpp
 * Classical wave models of radiation fluctuations.
 *
 * Covers Gaussian quadrature amplitudes of a single spectral component, the
 * central-limit walk behind them, a train of finite wave pulses, a stationary
 * random-phase Fourier field, and interference of standing-wave modes on a
 * string segment.
 *
 * Fields are represented by their complex envelope about a carrier; energies
 * are window averages of the squared real field, in which carrier-frequency
 * terms average out.
 */

#include <cstddef>
#include <cstdint>
#include <vector>

#include "photostat/random.hpp"
#include "photostat/stats.hpp"

namespace photostat {

// Gaussian quadratures.

struct QuadratureEnsemble {
    double sigma = 1.0;  ///< standard deviation of each quadrature amplitude
    std::size_t samples = 100'000;
};

struct QuadratureStats {
    EnsembleStats energy;  ///< cycle-averaged energy (a_c^2 + a_s^2) / (2 * 8 pi Z)
    double analytic_mean = 0.0;  ///< sigma^2 / (8 pi Z)
    double phase_p_value = 0.0;  ///< chi-square uniformity of atan2(a_s, a_c), 16 bins
};

QuadratureStats quadrature_energy_stats(const QuadratureEnsemble& ensemble, double Z_nu,
                                        Rng& rng);

/// Zero-mean, unit-variance step laws.
enum class StepLaw { uniform, coin, gaussian, exponential };

/// Kolmogorov-Smirnov distance between the normalized n-step sum and the unit Gaussian.
double central_limit_walk(StepLaw law, std::size_t n_steps, std::size_t n_walks, Rng& rng);

/// Entropy of one Gaussian spectral component at resolution `alpha`.
struct GaussianModeEntropy {
    double entropy = 0.0;      ///< k log(E / E0)
    double E0 = 0.0;           ///< alpha^2 / (2 pi e 8 pi Z)
    double dS_dE = 0.0;        ///< k / E
    double temperature = 0.0;  ///< E / k
    double energy_density = 0.0;  ///< Z k T
};
GaussianModeEntropy gaussian_mode_entropy(double Z_nu, double mean_energy, double alpha,
                                          double k = 1.0);

// Pulse trains.

/*!
 * P pulses C sin(2 pi n_i (t - t_i) / T) switched on at uniform random t_i for
 * a duration tau, on a circular observation interval [0, T). Orders n_i are
 * uniform integers in [n0 - spread, n0 + spread].
 */
struct PulseTrainConfig {
    double T = 1.0;
    std::uint64_t n0 = 0;
    std::uint64_t spread = 0;
    double tau = 0.0;
    std::size_t pulses = 0;
    double amplitude = 1.0;  ///< C
    double K = 1.0;          ///< energy per unit squared field
    std::size_t realizations = 1;
    std::size_t samples_per_window = 4;
};

/// Minimum ratio between consecutive time scales.
inline constexpr double separation_ratio = 20.0;

/// Throws SeparationError unless T/n0, spread tau / n0, tau, T are each
/// at least `separation_ratio` apart.
void check_separation(const PulseTrainConfig& cfg);

/// Window length sqrt(period * tau), period = T / n0.
double energy_window(const PulseTrainConfig& cfg);

struct PulseTrainResult {
    double window = 0.0;
    double quantum = 0.0;         ///< K C^2 / 2
    double mean_energy = 0.0;     ///< time and realization average
    double analytic_mean = 0.0;   ///< K C^2 P tau / (2 T)
    double fluctuation = 0.0;     ///< Q, mean squared deviation from the time average
    double fluctuation_se = 0.0;  ///< across realizations; zero for one realization
    double particle_part = 0.0;   ///< Q - mean^2
    double wave_part = 0.0;       ///< mean^2
    std::size_t grid_points = 0;
};

PulseTrainResult pulse_train_fluctuation(const PulseTrainConfig& cfg, Rng& rng);

/// Stationary field sum_j C cos(2 pi (n0 + j) t / T + theta_j), j = -spread..spread, with
/// independent uniform phases. Uses T, n0, spread, tau (for the window), amplitude, K and
/// realizations from `cfg`; `pulses` is ignored.
PulseTrainResult random_phase_baseline(const PulseTrainConfig& cfg, Rng& rng);

/// Fit of Q = gamma E + delta E^2 over points, weighting each by 1 / Q^2.
struct FluctuationLawFit {
    double gamma = 0.0;
    double delta = 0.0;
};
FluctuationLawFit fit_fluctuation_law(const std::vector<PulseTrainResult>& points);

// Standing waves on a string segment.

/// String of length L with modes n_lo..n_hi observed on the segment (0, l). c = 1.
struct StringGeometry {
    double L = 1.0;
    double l = 0.25;
    std::uint64_t n_lo = 0;
    std::uint64_t n_hi = 0;

    double modes() const { return static_cast<double>(n_hi - n_lo + 1); }
    double segment_modes() const { return l / L * modes(); }
};

/// Throws DomainError unless n_lo >= 20, (n_hi - n_lo) / (n_hi + n_lo) <= 0.05,
/// l >= 20 * (2 L / n_lo) and l < L.
void check_geometry(const StringGeometry& g);

/// Overlap (1/2) int_0^l cos((n - m) pi x / L) dx of two modes.
double mode_overlap(std::int64_t n_minus_m, const StringGeometry& g);

/// Law of the squared mode amplitudes B_n^2.
struct AmplitudeLaw {
    enum class Kind { fixed, bose, classical };
    Kind kind = Kind::fixed;
    double scale = 1.0;  ///< fixed: B^2; bose: energy per quantum; classical: mean B^2
    double n_bar = 1.0;  ///< bose only

    double mean_b2() const;
    double mean_b4() const;
    double sample_b2(Rng& rng) const;
};

/// Segment energy e(t) for given amplitudes and phases, with fundamental angular
/// frequency pi / L.
double segment_energy(const std::vector<double>& amplitudes, const std::vector<double>& phases,
                      const StringGeometry& g, double t);

/// Time average over one period of (e(t) - mean_t e)^2, evaluated exactly.
double time_averaged_fluctuation(const std::vector<double>& amplitudes,
                                 const std::vector<double>& phases, const StringGeometry& g);

struct EhrenfestResult {
    double Z = 0.0;
    double z = 0.0;
    double e0 = 0.0;  ///< (l / 2) mean(B^2) Z
    EnsembleStats energy;  ///< e(0) across realizations
    double ensemble_rel_variance = 0.0;
    double ensemble_rel_variance_se = 0.0;
    EnsembleStats time_route;  ///< per-realization time fluctuation over e0^2
    EnsembleStats time_mean;   ///< per-realization time average of e
    double closed_form_ensemble = 0.0;  ///< (1/z - 2/Z) + (B4 / B2^2) / Z
    double closed_form_time = 0.0;      ///< 1/z - 1/Z
    double finite_band_ensemble = 0.0;  ///< exact expectation for this finite band
    double finite_band_time = 0.0;
    double sample_moment_ratio = 0.0;   ///< sample mean(B^4) / mean(B^2)^2
};

EhrenfestResult ehrenfest_ensemble(const StringGeometry& g, const AmplitudeLaw& law,
                                   std::size_t realizations, Rng& rng);

}  // namespace photostat
