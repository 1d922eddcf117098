#include "photostat/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "photostat/distributions.hpp"
#include "photostat/errors.hpp"

namespace photostat {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

using cplx = std::complex<double>;

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double step(StepLaw law, Rng& rng) {
    switch (law) {
        case StepLaw::uniform:
            return (2.0 * rng.uniform() - 1.0) * std::numbers::sqrt3;
        case StepLaw::coin:
            return rng.uniform() < 0.5 ? -1.0 : 1.0;
        case StepLaw::gaussian:
            return rng.normal();
        case StepLaw::exponential:
            return -std::log(rng.uniform_pos()) - 1.0;
    }
    return 0.0;
}

// Phase 2 pi * frac(n * s / T), reduced before scaling to keep precision for large n.
double carrier_phase(std::uint64_t n, double s_over_T) {
    const double cycles = static_cast<double>(n) * s_over_T;
    return two_pi * (cycles - std::floor(cycles));
}

// Boxcar average of `values` over `width` consecutive samples on a circle.
std::vector<double> circular_boxcar(const std::vector<double>& values, std::size_t width) {
    const std::size_t n = values.size();
    std::vector<double> out(n);
    double sum = 0.0;
    for (std::size_t j = 0; j < width; ++j) {
        sum += values[(n - width / 2 + j) % n];
    }
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = sum / static_cast<double>(width);
        sum += values[(k + width - width / 2) % n];
        sum -= values[(k + n - width / 2) % n];
    }
    return out;
}

void summarize(PulseTrainResult& r, const MomentAccumulator& means, const MomentAccumulator& qs) {
    r.mean_energy = means.mean();
    r.fluctuation = qs.mean();
    r.fluctuation_se = qs.count() > 1 ? qs.stats().se_mean : 0.0;
    r.wave_part = r.mean_energy * r.mean_energy;
    r.particle_part = r.fluctuation - r.wave_part;
}

}  // namespace

QuadratureStats quadrature_energy_stats(const QuadratureEnsemble& ens, double Z_nu, Rng& rng) {
    if (!(ens.sigma > 0.0) || !(Z_nu > 0.0) || ens.samples < 2) {
        throw DomainError("quadrature ensemble needs sigma > 0, Z > 0, samples >= 2");
    }
    constexpr std::size_t bins = 16;
    std::vector<double> phase_counts(bins, 0.0);
    MomentAccumulator acc;
    const double norm = 1.0 / (2.0 * 8.0 * pi * Z_nu);
    for (std::size_t i = 0; i < ens.samples; ++i) {
        const double ac = ens.sigma * rng.normal();
        const double as = ens.sigma * rng.normal();
        acc.push((ac * ac + as * as) * norm);
        const double theta = std::atan2(as, ac) + pi;
        const auto bin = std::min(bins - 1, static_cast<std::size_t>(theta / two_pi * bins));
        phase_counts[bin] += 1.0;
    }
    QuadratureStats r;
    r.energy = acc.stats();
    r.analytic_mean = ens.sigma * ens.sigma / (8.0 * pi * Z_nu);
    r.phase_p_value = chi_square_gof(phase_counts, std::vector<double>(bins, 1.0 / bins)).p_value;
    return r;
}

double central_limit_walk(StepLaw law, std::size_t n_steps, std::size_t n_walks, Rng& rng) {
    if (n_steps == 0 || n_walks == 0) {
        throw DomainError("walk needs at least one step and one walk");
    }
    std::vector<double> sums(n_walks);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n_steps));
    for (auto& s : sums) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_steps; ++j) {
            acc += step(law, rng);
        }
        s = acc * norm;
    }
    return ks_distance(sums, normal_cdf);
}

GaussianModeEntropy gaussian_mode_entropy(double Z_nu, double mean_energy, double alpha, double k) {
    if (!(Z_nu > 0.0) || !(mean_energy > 0.0) || !(alpha > 0.0) || !(k > 0.0)) {
        throw DomainError("Gaussian mode entropy needs positive Z, energy, resolution and k");
    }
    GaussianModeEntropy r;
    r.E0 = alpha * alpha / (two_pi * std::numbers::e * 8.0 * pi * Z_nu);
    r.entropy = k * std::log(mean_energy / r.E0);
    r.dS_dE = k / mean_energy;
    r.temperature = mean_energy / k;
    r.energy_density = Z_nu * k * r.temperature;
    return r;
}

void check_separation(const PulseTrainConfig& cfg) {
    if (!(cfg.T > 0.0) || cfg.n0 == 0 || !(cfg.tau > 0.0)) {
        throw ConfigError("pulse train needs T > 0, n0 >= 1 and tau > 0");
    }
    if (cfg.spread >= cfg.n0) {
        throw ConfigError("order spread must be smaller than n0");
    }
    const double n0 = static_cast<double>(cfg.n0);
    const double period = cfg.T / n0;
    const double beat = static_cast<double>(cfg.spread) / n0 * cfg.tau;
    auto require = [](double lo, double hi, const char* what) {
        if (!(hi >= separation_ratio * lo * (1.0 - 1e-12))) {
            throw SeparationError(std::string(what) + ": ratio " + std::to_string(hi / lo)
                                  + " is below " + std::to_string(separation_ratio));
        }
    };
    require(period, beat, "period vs relative spread times duration");
    require(beat, cfg.tau, "relative spread times duration vs duration");
    require(cfg.tau, cfg.T, "duration vs observation time");
}

double energy_window(const PulseTrainConfig& cfg) {
    return std::sqrt(cfg.T / static_cast<double>(cfg.n0) * cfg.tau);
}

PulseTrainResult pulse_train_fluctuation(const PulseTrainConfig& cfg, Rng& rng) {
    check_separation(cfg);
    if (cfg.pulses == 0 || cfg.realizations == 0 || cfg.samples_per_window < 2) {
        throw ConfigError("pulse train needs pulses, realizations and >= 2 samples per window");
    }
    PulseTrainResult r;
    r.window = energy_window(cfg);
    r.quantum = 0.5 * cfg.K * cfg.amplitude * cfg.amplitude;
    r.analytic_mean = r.quantum * static_cast<double>(cfg.pulses) * cfg.tau / cfg.T;

    const auto grid = static_cast<std::size_t>(
        std::ceil(cfg.T / r.window * static_cast<double>(cfg.samples_per_window)));
    const double h = cfg.T / static_cast<double>(grid);
    const std::size_t width = cfg.samples_per_window;
    r.grid_points = grid;

    struct Pulse {
        double start;
        double end;
        std::uint64_t order;
    };
    struct Active {
        cplx phasor;
        cplx rotation;
        double end;
    };

    MomentAccumulator means;
    MomentAccumulator qs;
    std::vector<Pulse> pulses;
    std::vector<Active> active;
    std::vector<double> ring(width);
    const std::uint64_t lo = cfg.n0 - cfg.spread;
    const std::uint64_t orders = 2 * cfg.spread + 1;

    for (std::size_t rep = 0; rep < cfg.realizations; ++rep) {
        pulses.clear();
        for (std::size_t i = 0; i < cfg.pulses; ++i) {
            const double start = cfg.T * rng.uniform();
            const auto offset = std::min(orders - 1, static_cast<std::uint64_t>(
                                                         rng.uniform() * static_cast<double>(orders)));
            const std::uint64_t order = lo + offset;
            pulses.push_back({start, start + cfg.tau, order});
            if (start + cfg.tau > cfg.T) {
                pulses.push_back({start - cfg.T, start + cfg.tau - cfg.T, order});
            }
        }
        std::sort(pulses.begin(), pulses.end(),
                  [](const Pulse& a, const Pulse& b) { return a.start < b.start; });

        active.clear();
        std::size_t next = 0;
        double ring_sum = 0.0;
        MomentAccumulator energy;
        for (std::size_t k = 0; k < grid; ++k) {
            const double t = (static_cast<double>(k) + 0.5) * h;
            while (next < pulses.size() && pulses[next].start <= t) {
                const Pulse& p = pulses[next++];
                if (p.end <= t) {
                    continue;
                }
                // Envelope phase (w_i - w_0) t - w_i s, with the common carrier w_0 t removed.
                const double detune = two_pi * (static_cast<double>(p.order)
                                                - static_cast<double>(cfg.n0)) / cfg.T;
                const double phase = detune * t - carrier_phase(p.order, p.start / cfg.T);
                active.push_back({std::polar(1.0, phase), std::polar(1.0, detune * h), p.end});
            }
            cplx z = 0.0;
            for (std::size_t a = 0; a < active.size();) {
                if (active[a].end <= t) {
                    active[a] = active.back();
                    active.pop_back();
                    continue;
                }
                z += active[a].phasor;
                active[a].phasor *= active[a].rotation;
                ++a;
            }
            const double value = std::norm(z);
            ring_sum += value - ring[k % width];
            ring[k % width] = value;
            if (k + 1 >= width) {
                energy.push(r.quantum * ring_sum / static_cast<double>(width));
            }
        }
        std::fill(ring.begin(), ring.end(), 0.0);
        const double n = static_cast<double>(energy.count());
        means.push(energy.mean());
        qs.push(energy.variance() * (n - 1.0) / n);
    }
    summarize(r, means, qs);
    return r;
}

PulseTrainResult random_phase_baseline(const PulseTrainConfig& cfg, Rng& rng) {
    if (!(cfg.T > 0.0) || cfg.n0 == 0 || !(cfg.tau > 0.0) || cfg.spread >= cfg.n0) {
        throw ConfigError("baseline needs T > 0, tau > 0 and 0 <= spread < n0");
    }
    if (cfg.realizations == 0 || cfg.samples_per_window < 2) {
        throw ConfigError("baseline needs realizations and >= 2 samples per window");
    }
    PulseTrainResult r;
    r.window = energy_window(cfg);
    r.quantum = 0.5 * cfg.K * cfg.amplitude * cfg.amplitude;
    const std::size_t components = 2 * cfg.spread + 1;
    r.analytic_mean = r.quantum * static_cast<double>(components);

    const double wanted = cfg.T / r.window * static_cast<double>(cfg.samples_per_window);
    std::size_t grid = 1;
    while (static_cast<double>(grid) < wanted || grid < components) {
        grid <<= 1;
    }
    if (grid > (std::size_t{1} << 24)) {
        throw SizeError("baseline grid of " + std::to_string(grid) + " points is too large");
    }
    r.grid_points = grid;
    const double h = cfg.T / static_cast<double>(grid);
    const auto width = std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(r.window / h)));

    Eigen::FFT<double> fft;
    std::vector<cplx> coeffs(grid);
    std::vector<cplx> field;
    std::vector<double> intensity(grid);
    MomentAccumulator means;
    MomentAccumulator qs;
    const auto spread = static_cast<std::int64_t>(cfg.spread);
    for (std::size_t rep = 0; rep < cfg.realizations; ++rep) {
        std::fill(coeffs.begin(), coeffs.end(), cplx{});
        for (std::int64_t j = -spread; j <= spread; ++j) {
            const auto slot = static_cast<std::size_t>((j + static_cast<std::int64_t>(grid))
                                                       % static_cast<std::int64_t>(grid));
            coeffs[slot] = std::polar(cfg.amplitude, two_pi * rng.uniform());
        }
        fft.inv(field, coeffs);
        const double scale = static_cast<double>(grid);
        for (std::size_t k = 0; k < grid; ++k) {
            intensity[k] = std::norm(field[k] * scale);
        }
        MomentAccumulator energy;
        for (double v : circular_boxcar(intensity, width)) {
            energy.push(0.5 * cfg.K * v);
        }
        const double n = static_cast<double>(energy.count());
        means.push(energy.mean());
        qs.push(energy.variance() * (n - 1.0) / n);
    }
    summarize(r, means, qs);
    return r;
}

FluctuationLawFit fit_fluctuation_law(const std::vector<PulseTrainResult>& points) {
    std::vector<double> x, y, w;
    for (const auto& p : points) {
        x.push_back(p.mean_energy);
        y.push_back(p.fluctuation);
        w.push_back(1.0 / (p.fluctuation * p.fluctuation));
    }
    const auto f = fit_linear_quadratic(x, y, w);
    return {f.linear, f.quadratic};
}

void check_geometry(const StringGeometry& g) {
    if (!(g.L > 0.0) || !(g.l > 0.0) || !(g.l < g.L)) {
        throw DomainError("segment length must satisfy 0 < l < L");
    }
    if (g.n_lo < 20 || g.n_hi < g.n_lo) {
        throw DomainError("mode band must satisfy 20 <= n_lo <= n_hi");
    }
    const double lo = static_cast<double>(g.n_lo);
    const double hi = static_cast<double>(g.n_hi);
    if ((hi - lo) / (hi + lo) > 0.05) {
        throw DomainError("mode band is not narrow");
    }
    if (g.l < 20.0 * (2.0 * g.L / lo)) {
        throw DomainError("segment is not long compared with the wavelengths");
    }
}

double mode_overlap(std::int64_t d, const StringGeometry& g) {
    if (d == 0) {
        return 0.5 * g.l;
    }
    const double k = static_cast<double>(d) * pi / g.L;
    return 0.5 * std::sin(k * g.l) / k;
}

double AmplitudeLaw::mean_b2() const {
    switch (kind) {
        case Kind::fixed:
        case Kind::classical:
            return scale;
        case Kind::bose:
            return scale * n_bar;
    }
    return 0.0;
}

double AmplitudeLaw::mean_b4() const {
    switch (kind) {
        case Kind::fixed:
            return scale * scale;
        case Kind::classical:
            return 2.0 * scale * scale;
        case Kind::bose:
            return scale * scale * (n_bar + 2.0 * n_bar * n_bar);
    }
    return 0.0;
}

double AmplitudeLaw::sample_b2(Rng& rng) const {
    switch (kind) {
        case Kind::fixed:
            return scale;
        case Kind::classical:
            return sample_exponential(scale, rng);
        case Kind::bose:
            return scale * static_cast<double>(sample_bose(n_bar, rng));
    }
    return 0.0;
}

double segment_energy(const std::vector<double>& amplitudes, const std::vector<double>& phases,
                      const StringGeometry& g, double t) {
    const std::size_t Z = amplitudes.size();
    if (phases.size() != Z) {
        throw DomainError("amplitude and phase counts differ");
    }
    const double omega = pi / g.L;
    double e = 0.0;
    for (std::size_t n = 0; n < Z; ++n) {
        for (std::size_t m = 0; m < Z; ++m) {
            const auto d = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(m);
            e += amplitudes[n] * amplitudes[m] * mode_overlap(d, g)
                 * std::cos(static_cast<double>(d) * omega * t + phases[n] - phases[m]);
        }
    }
    return e;
}

double time_averaged_fluctuation(const std::vector<double>& amplitudes,
                                 const std::vector<double>& phases, const StringGeometry& g) {
    const std::size_t Z = amplitudes.size();
    if (phases.size() != Z) {
        throw DomainError("amplitude and phase counts differ");
    }
    std::vector<cplx> w(Z);
    for (std::size_t n = 0; n < Z; ++n) {
        w[n] = std::polar(amplitudes[n], phases[n]);
    }
    // Components of equal mode spacing d beat at the same frequency d pi / L.
    double total = 0.0;
    for (std::size_t d = 1; d < Z; ++d) {
        cplx s = 0.0;
        for (std::size_t n = 0; n + d < Z; ++n) {
            s += w[n] * std::conj(w[n + d]);
        }
        const double coeff = 2.0 * mode_overlap(static_cast<std::int64_t>(d), g);
        total += 0.5 * coeff * coeff * std::norm(s);
    }
    return total;
}

EhrenfestResult ehrenfest_ensemble(const StringGeometry& g, const AmplitudeLaw& law,
                                   std::size_t realizations, Rng& rng) {
    check_geometry(g);
    if (realizations < 2) {
        throw DomainError("need at least two realizations");
    }
    const auto Z = static_cast<std::size_t>(g.n_hi - g.n_lo + 1);
    std::vector<double> overlap(Z);
    double off_diagonal = 0.0;  // sum over ordered n != m of overlap^2
    for (std::size_t d = 0; d < Z; ++d) {
        overlap[d] = mode_overlap(static_cast<std::int64_t>(d), g);
        if (d > 0) {
            off_diagonal += 2.0 * static_cast<double>(Z - d) * overlap[d] * overlap[d];
        }
    }

    EhrenfestResult r;
    r.Z = static_cast<double>(Z);
    r.z = g.segment_modes();
    const double b2 = law.mean_b2();
    const double b4 = law.mean_b4();
    r.e0 = overlap[0] * b2 * r.Z;
    const double e0sq = r.e0 * r.e0;
    r.closed_form_ensemble = (1.0 / r.z - 2.0 / r.Z) + b4 / (b2 * b2) / r.Z;
    r.closed_form_time = 1.0 / r.z - 1.0 / r.Z;
    r.finite_band_time = b2 * b2 * off_diagonal / e0sq;
    r.finite_band_ensemble =
        (overlap[0] * overlap[0] * r.Z * (b4 - b2 * b2) + b2 * b2 * off_diagonal) / e0sq;

    std::vector<double> amp(Z), phase(Z), u(Z), v(Z);
    MomentAccumulator energy, time_route, time_mean;
    double sum_b2 = 0.0, sum_b4 = 0.0;
    for (std::size_t rep = 0; rep < realizations; ++rep) {
        double eta = 0.0;
        for (std::size_t n = 0; n < Z; ++n) {
            const double sq = law.sample_b2(rng);
            sum_b2 += sq;
            sum_b4 += sq * sq;
            amp[n] = std::sqrt(sq);
            eta += sq * overlap[0];
        }
        for (std::size_t n = 0; n < Z; ++n) {
            phase[n] = two_pi * rng.uniform();
            u[n] = amp[n] * std::cos(phase[n]);
            v[n] = amp[n] * std::sin(phase[n]);
        }
        double e = eta;
        for (std::size_t d = 1; d < Z; ++d) {
            double s = 0.0;
            for (std::size_t n = 0; n + d < Z; ++n) {
                s += u[n] * u[n + d] + v[n] * v[n + d];
            }
            e += 2.0 * overlap[d] * s;
        }
        energy.push(e);
        time_mean.push(eta);
        time_route.push(time_averaged_fluctuation(amp, phase, g) / e0sq);
    }
    r.energy = energy.stats();
    r.ensemble_rel_variance = r.energy.variance / e0sq;
    r.ensemble_rel_variance_se = r.energy.se_variance / e0sq;
    r.time_route = time_route.stats();
    r.time_mean = time_mean.stats();
    const double draws = static_cast<double>(realizations * Z);
    const double mb2 = sum_b2 / draws;
    r.sample_moment_ratio = (sum_b4 / draws) / (mb2 * mb2);
    return r;
}

}  // namespace photostat
