#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "photostat/combinatorics.hpp"
#include "photostat/decomposition.hpp"
#include "photostat/distributions.hpp"
#include "photostat/errors.hpp"
#include "photostat/fluctuation.hpp"
#include "photostat/kinetics.hpp"
#include "photostat/quantized_string.hpp"
#include "photostat/spectral.hpp"
#include "photostat/stats.hpp"
#include "photostat/wavefield.hpp"

namespace photostat::cli {
namespace {

constexpr double pi = std::numbers::pi;

// Stream indices; fixed so that each driver's draws never depend on another's.
enum Stream : std::uint64_t {
    decompose_stream = 10,
    string_stream = 20,
    pulse_stream = 100,
    baseline_stream = 200,
    bhj_stream = 30,
    kinetics_stream = 40,
};

double rel_gap(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

Json stats_json(const EnsembleStats& s) {
    Json j;
    j["n"] = s.n;
    j["mean"] = s.mean;
    j["variance"] = s.variance;
    j["se_mean"] = s.se_mean;
    j["se_variance"] = s.se_variance;
    return j;
}

// Band at reduced frequency x holding `modes` modes, with d_nu / nu = 1e-3.
SpectralBand band_at(double x, double T, double modes) {
    const double nu = x * cgs.k * T / cgs.h;
    const double d_nu = nu * 1e-3;
    return {nu, d_nu, modes / (mode_density(nu) * d_nu)};
}

// Geometric pmf of the compound Poisson sum by the Panjer recursion.
std::vector<double> compound_poisson_pmf(const PoissonMultipletSet& set, std::size_t n_max) {
    double total = 0.0;
    for (const auto& c : set.components) {
        total += c.lambda;
    }
    std::vector<double> weight(n_max + 1, 0.0);  // m * lambda_m
    for (const auto& c : set.components) {
        if (c.multiplicity <= n_max) {
            weight[c.multiplicity] += static_cast<double>(c.multiplicity) * c.lambda;
        }
    }
    std::vector<double> p(n_max + 1, 0.0);
    p[0] = std::exp(-total);
    for (std::size_t n = 1; n <= n_max; ++n) {
        double s = 0.0;
        for (std::size_t m = 1; m <= n; ++m) {
            s += weight[m] * p[n - m];
        }
        p[n] = s / static_cast<double>(n);
    }
    return p;
}

}  // namespace

Report run_spectrum(const SpectrumParams& p) {
    if (p.points < 2 || !(p.nu_min > 0.0) || !(p.nu_max > p.nu_min) || p.T.empty()) {
        throw ConfigError("spectrum needs T values, 0 < nu-min < nu-max and at least two points");
    }
    Report r;
    const double root = wien_displacement_root();
    const double lambda_T = wien_lambda_max_T();
    r.data["wien_root"] = root;
    r.data["lambda_max_T"] = lambda_T;
    r.data["radiation_constant"] = radiation_constant();
    r.checks.push_back(within("wien displacement root", root, 4.965, 1e-3));
    r.checks.push_back(within("lambda_max T relative to 0.2899 cm K", lambda_T / 0.2899, 1.0, 5e-3));

    r.data["temperatures"] = Json::array();
    r.table.columns = {"T", "nu", "x", "planck", "wien", "rayleigh_jeans"};
    const double ratio = std::pow(p.nu_max / p.nu_min, 1.0 / static_cast<double>(p.points - 1));
    for (double T : p.T) {
        const double quad = integrated_energy_density(T);
        const double closed = radiation_constant() * std::pow(T, 4);
        const double err = rel_gap(quad, closed);
        Json t;
        t["T"] = T;
        t["quadrature"] = quad;
        t["closed_form"] = closed;
        t["relative_error"] = err;
        r.data["temperatures"].push_back(t);
        r.checks.push_back(at_most("total energy density quadrature vs a T^4 at T=" + num(T), err,
                                   1e-6));
        double nu = p.nu_min;
        for (std::size_t i = 0; i < p.points; ++i, nu *= ratio) {
            const auto lim = limit_densities(nu, T);
            r.table.rows.push_back({num(T), num(nu), num(ModePoint::at(nu, T).x),
                                    num(planck_density(nu, T)), num(lim.wien),
                                    num(lim.rayleigh_jeans)});
        }
    }
    return r;
}

Report run_fluctuation(const FluctuationParams& p) {
    if (!(p.modes > 0.0) || !(p.T > 0.0)) {
        throw ConfigError("fluctuation needs positive modes and T");
    }
    std::vector<double> xs = p.x;
    if (!p.n_bar.empty()) {
        xs.clear();
        for (double n : p.n_bar) {
            if (!(n > 0.0)) {
                throw ConfigError("n-bar values must be positive");
            }
            xs.push_back(std::log1p(1.0 / n));
        }
    }
    Report r;
    r.table.columns = {"nu",    "T",     "x",           "n_bar",         "mode_count",
                       "particle", "wave", "total", "thermodynamic", "entropy_curvature",
                       "distribution", "max_route_gap"};
    r.data["rows"] = Json::array();
    for (double x : xs) {
        const SpectralBand band = band_at(x, p.T, p.modes);
        const auto e = einstein_budget(band, p.T);
        const double thermo = thermodynamic_variance(band, p.T);
        const double curve = entropy_curvature_variance(band, p.T);
        const double dist = distribution_variance(band, p.T);
        const double routes[4] = {e.total, thermo, curve, dist};
        double gap = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                gap = std::max(gap, rel_gap(routes[i], routes[j]));
            }
        }
        const double n_bar = mean_occupation(x);
        r.table.rows.push_back({num(band.nu), num(p.T), num(x), num(n_bar), num(e.mode_count),
                                num(e.particle_term), num(e.wave_term), num(e.total), num(thermo),
                                num(curve), num(dist), num(gap)});
        Json row;
        row["nu"] = band.nu;
        row["T"] = p.T;
        row["x"] = x;
        row["n_bar"] = n_bar;
        row["mode_count"] = e.mode_count;
        row["particle"] = e.particle_term;
        row["wave"] = e.wave_term;
        row["total"] = e.total;
        row["thermodynamic"] = thermo;
        row["entropy_curvature"] = curve;
        row["distribution"] = dist;
        row["max_route_gap"] = gap;
        r.data["rows"].push_back(row);
        r.checks.push_back(at_most("four variance routes agree at x=" + num(x), gap, 1e-5));
    }

    // Crossover: particle and wave terms coincide at one quantum per mode.
    const auto cross = einstein_budget(band_at(std::log(2.0), p.T, p.modes), p.T);
    r.data["crossover_gap"] = rel_gap(cross.particle_term, cross.wave_term);
    r.checks.push_back(at_most("particle equals wave at n_bar=1",
                               rel_gap(cross.particle_term, cross.wave_term), 1e-12));

    // Mirror in a 1700 K cavity reflecting light of 0.5 micron.
    MirrorSetup m;
    m.nu = cgs.c / 0.5e-4;
    m.d_nu = m.nu * 1e-3;
    m.T = 1700.0;
    const auto mf = mirror_momentum_fluct(m);
    const double v = m.area * cgs.c * m.tau;
    const double eps2 = subvolume_energy_variance(m.nu, m.d_nu, m.T, v);
    const double x_mirror = ModePoint::at(m.nu, m.T).x;
    Json mj;
    mj["nu"] = m.nu;
    mj["T"] = m.T;
    mj["x"] = x_mirror;
    mj["friction_route"] = mf.c2_delta2_friction;
    mj["closed_form"] = mf.c2_delta2_closed;
    mj["relative_discrepancy"] = mf.relative_discrepancy;
    mj["subvolume_variance"] = eps2;
    mj["particle_over_wave"] = mf.particle_over_wave;
    mj["expm1_x"] = std::expm1(x_mirror);
    r.data["mirror"] = mj;
    r.checks.push_back(at_most("mirror friction route vs closed form", mf.relative_discrepancy, 1e-4));
    r.checks.push_back(at_most("mirror momentum variance equals sub-volume energy variance",
                               rel_gap(mf.c2_delta2_closed, eps2), 1e-12));
    r.checks.push_back(at_most("mirror particle/wave equals e^x - 1",
                               rel_gap(mf.particle_over_wave, std::expm1(x_mirror)), 1e-6));
    r.checks.push_back(at_least("mirror particle/wave above 1e7", mf.particle_over_wave, 1e7));
    r.checks.push_back(at_most("mirror particle/wave below 1e8", mf.particle_over_wave, 1e8));

    // Two-level exchange: spontaneous and induced products reproduce the two brackets.
    const double nu_s = band_at(1.0, p.T, p.modes).nu;
    const auto sm = smekal_rate_decomposition(planck_density(nu_s, p.T), nu_s, 1.0);
    r.data["rate_identity_residual"] = sm.identity_residual;
    r.checks.push_back(at_most("emission products reproduce particle and wave brackets",
                               sm.identity_residual, 1e-12));
    return r;
}

Report run_decompose(const DecomposeParams& p) {
    if (p.kind != "binary" && p.kind != "poisson") {
        throw ConfigError("kind must be binary or poisson");
    }
    if (!(p.b > 0.0 && p.b < 1.0)) {
        throw ConfigError("b must lie in (0, 1)");
    }
    const bool binary = p.kind == "binary";
    const auto rep = binary ? decompose_binary(p.b, 1.0, p.tol) : decompose_multiplets(p.b, 1.0, p.tol);
    Report r;
    r.data["kind"] = rep.kind;
    r.data["b"] = rep.b;
    r.data["h_nu"] = rep.h_nu;
    r.data["components"] = Json::array();
    r.table.columns = {"order", "mean", "variance", "entropy"};
    for (const auto& c : rep.components) {
        Json j;
        j["order"] = c.order;
        j["mean"] = c.mean;
        j["variance"] = c.variance;
        j["entropy"] = c.entropy;
        r.data["components"].push_back(j);
        r.table.rows.push_back({num(c.order), num(c.mean), num(c.variance), num(c.entropy)});
    }
    r.data["total_mean"] = rep.total_mean;
    r.data["total_variance"] = rep.total_variance;
    r.data["total_entropy"] = rep.total_entropy;
    r.data["expected_mean"] = rep.expected_mean;
    r.data["expected_variance"] = rep.expected_variance;
    r.data["expected_entropy"] = rep.expected_entropy;

    double pmf_residual = 0.0;
    constexpr std::size_t n_max = 64;
    const auto poisson_pmf = binary ? std::vector<double>{}
                                    : compound_poisson_pmf(poisson_multiplet_params(p.b, p.tol), n_max);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const double target = (1.0 - p.b) * std::pow(p.b, static_cast<double>(n));
        const double got = binary ? exact_binary_pmf(n, p.b) : poisson_pmf[n];
        pmf_residual = std::max(pmf_residual, std::abs(got - target));
    }
    std::vector<double> grid;
    for (int k = 0; k < 64; ++k) {
        grid.push_back(-pi + 2.0 * pi * k / 63.0);
    }
    const auto cf = cf_factorization_check(p.b, grid, p.tol);
    const double cf_residual = binary ? cf.binary : cf.poisson;

    Json res;
    res["mean"] = rel_gap(rep.total_mean, rep.expected_mean);
    res["variance"] = rel_gap(rep.total_variance, rep.expected_variance);
    res["entropy"] = rel_gap(rep.total_entropy, rep.expected_entropy);
    res["pmf"] = pmf_residual;
    res["characteristic_function"] = cf_residual;
    r.checks.push_back(at_most(p.kind + " mean sum b=" + num(p.b), res["mean"], 1e-10));
    r.checks.push_back(at_most(p.kind + " variance sum b=" + num(p.b), res["variance"], 1e-10));
    r.checks.push_back(at_most(p.kind + " entropy sum b=" + num(p.b), res["entropy"], 1e-10));
    r.checks.push_back(at_most(p.kind + " pmf n<=64 b=" + num(p.b), pmf_residual, 1e-12));
    r.checks.push_back(at_most(p.kind + " characteristic function b=" + num(p.b), cf_residual, 1e-10));

    if (p.samples > 0) {
        constexpr std::size_t bins = 16;
        Rng rng = Rng::stream(p.seed, decompose_stream + (binary ? 1 : 0));
        std::vector<double> counts(bins + 1, 0.0);
        const auto bset = binary_photon_params(p.b, p.tol);
        const auto pset = poisson_multiplet_params(p.b, p.tol);
        for (std::size_t i = 0; i < p.samples; ++i) {
            const auto n = binary ? sample_bose_via_binary(bset, rng)
                                  : sample_bose_via_multiplets(pset, rng);
            counts[std::min<std::uint64_t>(n, bins)] += 1.0;
        }
        const auto chi = chi_square_gof(counts, geometric_bin_probabilities(p.b, bins));
        res["sampler_chi_square"] = chi.statistic;
        res["sampler_dof"] = chi.dof;
        res["sampler_p_value"] = chi.p_value;
        res["sampler_samples"] = p.samples;
        r.checks.push_back(at_least(p.kind + " sampler chi-square p b=" + num(p.b), chi.p_value, 1e-4));
    }
    r.data["residuals"] = res;
    return r;
}

Report run_string(const StringParams& p) {
    if (!(p.Z >= 2.0) || !(p.z > 0.0) || !(p.z < p.Z) || p.samples < 2) {
        throw ConfigError("string needs Z >= 2, 0 < z < Z and at least two realizations");
    }
    StringGeometry g;
    g.L = 1.0;
    g.l = p.z / p.Z;
    g.n_lo = static_cast<std::uint64_t>(std::llround(20.0 * p.Z));
    g.n_hi = g.n_lo + static_cast<std::uint64_t>(std::llround(p.Z)) - 1;
    check_geometry(g);
    AmplitudeLaw law;
    if (p.law == "fixed") {
        law.kind = AmplitudeLaw::Kind::fixed;
    } else if (p.law == "bose") {
        law.kind = AmplitudeLaw::Kind::bose;
        law.n_bar = p.n_bar;
    } else if (p.law == "classical") {
        law.kind = AmplitudeLaw::Kind::classical;
    } else {
        throw ConfigError("law must be fixed, bose or classical");
    }
    Rng rng = Rng::stream(p.seed, string_stream);
    const auto e = ehrenfest_ensemble(g, law, p.samples, rng);

    Report r;
    r.data["law"] = p.law;
    r.data["n_bar"] = p.n_bar;
    r.data["Z"] = e.Z;
    r.data["z"] = e.z;
    r.data["n_lo"] = g.n_lo;
    r.data["n_hi"] = g.n_hi;
    r.data["l"] = g.l;
    r.data["realizations"] = p.samples;
    r.data["ensemble_rel_variance"] = e.ensemble_rel_variance;
    r.data["ensemble_rel_variance_se"] = e.ensemble_rel_variance_se;
    r.data["closed_form_ensemble"] = e.closed_form_ensemble;
    r.data["finite_band_ensemble"] = e.finite_band_ensemble;
    r.data["time_rel_fluctuation"] = e.time_route.mean;
    r.data["time_rel_fluctuation_se"] = e.time_route.se_mean;
    r.data["closed_form_time"] = e.closed_form_time;
    r.data["finite_band_time"] = e.finite_band_time;
    r.data["sample_moment_ratio"] = e.sample_moment_ratio;
    r.data["energy"] = stats_json(e.energy);

    r.table.columns = {"law", "n_bar", "Z", "z", "ensemble", "ensemble_se", "closed_form_ensemble",
                       "finite_band_ensemble", "time", "time_se", "closed_form_time",
                       "finite_band_time"};
    r.table.rows.push_back({p.law, num(p.n_bar), num(e.Z), num(e.z), num(e.ensemble_rel_variance),
                            num(e.ensemble_rel_variance_se), num(e.closed_form_ensemble),
                            num(e.finite_band_ensemble), num(e.time_route.mean),
                            num(e.time_route.se_mean), num(e.closed_form_time),
                            num(e.finite_band_time)});
    const std::string tag = " (" + p.law + (p.law == "bose" ? " n_bar=" + num(p.n_bar) : "") + ")";
    r.checks.push_back(within("ensemble relative variance vs closed form" + tag,
                              e.ensemble_rel_variance, e.closed_form_ensemble,
                              4.0 * e.ensemble_rel_variance_se));
    // The continuum form omits a deterministic finite-band term of order log(Z) / (z Z).
    const double band_bias = std::abs(e.finite_band_time - e.closed_form_time);
    r.data["finite_band_bias"] = band_bias;
    r.checks.push_back(within("time-averaged fluctuation vs 1/z - 1/Z" + tag, e.time_route.mean,
                              e.closed_form_time, 4.0 * e.time_route.se_mean + band_bias));
    r.checks.push_back(within("time-averaged fluctuation vs finite-band expectation" + tag,
                              e.time_route.mean, e.finite_band_time, 4.0 * e.time_route.se_mean));
    return r;
}

Report run_pulse_train(const PulseTrainParams& p) {
    if (!(p.R >= 1.0) || p.mu.size() < 2 || !(p.baseline_length > 0.0)) {
        throw ConfigError("pulse-train needs R >= 1, at least two mu levels and a baseline length");
    }
    Report r;
    r.table.columns = {"kind", "mu", "mean", "analytic_mean", "Q", "Q_se", "particle", "wave",
                       "grid_points"};
    const double tau = 1.0 / p.R;
    const auto n0 = static_cast<std::uint64_t>(std::llround(p.R * 1.6e5));
    const auto spread = static_cast<std::uint64_t>(std::llround(21.0 * p.R));
    std::vector<PulseTrainResult> pulses, baseline;
    double quantum = 0.0;
    r.data["levels"] = Json::array();
    auto record = [&](const char* kind, double mu, const PulseTrainResult& res) {
        r.table.rows.push_back({kind, num(mu), num(res.mean_energy), num(res.analytic_mean),
                                num(res.fluctuation), num(res.fluctuation_se),
                                num(res.particle_part), num(res.wave_part), num(res.grid_points)});
        Json j;
        j["kind"] = kind;
        j["mu"] = mu;
        j["mean"] = res.mean_energy;
        j["analytic_mean"] = res.analytic_mean;
        j["Q"] = res.fluctuation;
        j["Q_se"] = res.fluctuation_se;
        j["particle"] = res.particle_part;
        j["wave"] = res.wave_part;
        j["window"] = res.window;
        j["grid_points"] = res.grid_points;
        r.data["levels"].push_back(j);
    };
    for (std::size_t i = 0; i < p.mu.size(); ++i) {
        PulseTrainConfig c;
        c.T = 1.0;
        c.tau = tau;
        c.n0 = n0;
        c.spread = spread;
        c.pulses = static_cast<std::size_t>(std::llround(p.mu[i] * p.R));
        c.realizations = p.realizations;
        c.samples_per_window = p.samples_per_window;
        Rng rng = Rng::stream(p.seed, pulse_stream + i);
        pulses.push_back(pulse_train_fluctuation(c, rng));
        quantum = pulses.back().quantum;
        record("pulse", p.mu[i], pulses.back());
    }
    // Same carrier, spread and window over a shorter interval, at the pulse-train mean energies.
    const double Tb = p.baseline_length * tau;
    for (std::size_t i = 0; i < p.mu.size(); ++i) {
        PulseTrainConfig c;
        c.T = Tb;
        c.tau = tau;
        c.n0 = static_cast<std::uint64_t>(std::llround(static_cast<double>(n0) * Tb));
        c.spread = static_cast<std::uint64_t>(std::llround(static_cast<double>(spread) * Tb));
        const double components = static_cast<double>(2 * c.spread + 1);
        c.amplitude = std::sqrt(2.0 * quantum * p.mu[i] / (c.K * components));
        c.realizations = p.baseline_realizations;
        c.samples_per_window = p.samples_per_window;
        Rng rng = Rng::stream(p.seed, baseline_stream + i);
        baseline.push_back(random_phase_baseline(c, rng));
        record("baseline", p.mu[i], baseline.back());
    }
    const auto fit = fit_fluctuation_law(pulses);
    const auto base = fit_fluctuation_law(baseline);
    r.data["quantum"] = quantum;
    r.data["pulse_fit"] = {{"gamma_over_quantum", fit.gamma / quantum}, {"delta", fit.delta}};
    r.data["baseline_fit"] = {{"gamma_over_quantum", base.gamma / quantum}, {"delta", base.delta}};
    r.checks.push_back(within("pulse train particle coefficient / quantum", fit.gamma / quantum, 1.0, 0.1));
    r.checks.push_back(within("pulse train wave coefficient", fit.delta, 1.0, 0.1));
    r.checks.push_back(within("random-phase particle coefficient / quantum", base.gamma / quantum, 0.0, 0.05));
    return r;
}

Report run_bhj(const BhjParams& p) {
    BhjConfig c;
    c.L = p.L;
    c.l = p.l;
    c.modes = p.modes;
    c.cutoff = p.cutoff;
    c.kT = p.kT;
    c.resonant_only = p.resonant_only;
    c.leakage_bound = p.leakage_bound;
    const auto res = phase_averaged_fluctuation(c);
    Rng rng = Rng::stream(p.seed, bhj_stream);
    const auto cl = classical_substitution(c, res.mean_occupation, p.samples, rng);
    const double classical_residual = std::abs(cl.mean - res.wave_part) / res.particle_part;

    Report r;
    Json j;
    j["modes"] = p.modes;
    j["cutoff"] = p.cutoff;
    j["dimension"] = res.dimension;
    j["kT"] = p.kT;
    j["l"] = p.l;
    j["L"] = p.L;
    j["resonant_only"] = p.resonant_only;
    j["leakage"] = res.leakage;
    j["mean_occupation"] = res.mean_occupation;
    j["mean_energy"] = res.mean_energy;
    j["squared_terms"] = res.squared_terms;
    j["cross_terms"] = res.cross_terms;
    j["zero_point_squared"] = res.zero_point_squared;
    j["zero_point_cancellation"] = res.zero_point_cancellation;
    j["budget"] = res.budget;
    j["oracle_budget"] = res.oracle_budget;
    j["oracle_residual"] = res.oracle_residual;
    j["particle_part"] = res.particle_part;
    j["wave_part"] = res.wave_part;
    j["shape_particle"] = res.shape_particle;
    j["shape_wave"] = res.shape_wave;
    j["shape_ratio"] = res.shape_ratio;
    j["geometric_factor"] = res.geometric_factor;
    j["hermiticity_residual"] = res.hermiticity_residual;
    j["commutator_residual"] = res.commutator_residual;
    j["omitted_term_ratio"] = res.omitted_term_ratio;
    j["classical"] = {{"mean", cl.mean}, {"se", cl.se}, {"cross_mean", cl.cross_mean},
                      {"samples", p.samples}, {"residual_over_particle", classical_residual}};
    const double omega_mid = static_cast<double>(p.modes[p.modes.size() / 2]) * pi / p.L;
    const double width = 20.0 / p.l;
    j["kernel_delta_deviation"] = kernel_delta_deviation(
        p.l, 1.0, {omega_mid - width, omega_mid, omega_mid + width}, omega_mid, width);
    j["kernel_mass"] = kernel_mass(p.l, 1.0, omega_mid);
    r.data = j;

    r.table.columns = {"quantity", "value"};
    for (const char* key : {"budget", "oracle_budget", "particle_part", "wave_part", "shape_ratio",
                            "zero_point_cancellation", "oracle_residual"}) {
        r.table.rows.push_back({key, num(j[key].get<double>())});
    }
    r.table.rows.push_back({"classical_mean", num(cl.mean)});
    r.checks.push_back(at_most("vacuum quarter terms cancel", res.zero_point_cancellation, 1e-10));
    r.checks.push_back(at_most("operator traces vs pairwise closed form", res.oracle_residual, 1e-10));
    r.checks.push_back(at_most("coupling is Hermitian", res.hermiticity_residual, 1e-12));
    r.checks.push_back(at_most("canonical commutator below cutoff", res.commutator_residual, 1e-12));
    r.checks.push_back(within("particle/wave ratio vs two-term shape", res.shape_ratio, 1.0, 0.05));
    r.checks.push_back(at_most("classical amplitudes leave no particle term", classical_residual, 0.05));
    return r;
}

Report run_combinatorics(const CombinatoricsParams& p) {
    if (p.N_max < 1 || p.N_max > 12 || p.n_max > 12) {
        throw ConfigError("combinatorics enumerates 1 <= N <= 12 and n <= 12");
    }
    Report r;
    r.table.columns = {"N", "n", "sumA", "expectedA", "sumAB", "expectedAB", "pass"};
    r.data["identities"] = Json::array();
    r.data["exclusion"] = Json::array();
    std::size_t failed = 0, total = 0;
    for (std::uint64_t N = 1; N <= p.N_max; ++N) {
        for (std::uint64_t n = 0; n <= p.n_max; ++n) {
            const auto c = verify_count_identities(N, n);
            ++total;
            failed += c.pass ? 0 : 1;
            r.table.rows.push_back({num(N), num(n), c.sum_A.str(), c.expected_A.str(),
                                    c.sum_AB.str(), c.expected_AB.str(), c.pass ? "true" : "false"});
            Json j;
            j["N"] = N;
            j["n"] = n;
            j["sumA"] = c.sum_A.str();
            j["expectedA"] = c.expected_A.str();
            j["sumAB"] = c.sum_AB.str();
            j["expectedAB"] = c.expected_AB.str();
            j["pass"] = c.pass;
            r.data["identities"].push_back(j);
        }
    }
    r.checks.push_back(at_most("collocation and association sums, failing cases",
                               static_cast<double>(failed), 0.0));
    std::size_t fermi_failed = 0;
    for (std::uint64_t N = 1; N <= p.N_max; ++N) {
        for (std::uint64_t n = 0; n <= std::min(N, p.n_max); ++n) {
            const auto f = fermi_variant(N, n);
            fermi_failed += f.pass ? 0 : 1;
            Json j;
            j["N"] = N;
            j["n"] = n;
            j["sumA"] = f.sum_A.str();
            j["expectedA"] = f.expected_A.str();
            j["pass"] = f.pass;
            r.data["exclusion"].push_back(j);
        }
    }
    r.checks.push_back(at_most("exclusion-capped sums, failing cases",
                               static_cast<double>(fermi_failed), 0.0));
    r.data["cases"] = total;
    const auto st = stirling_entropy_check(p.stirling_N, p.stirling_N);
    r.data["stirling"] = {{"N", p.stirling_N},
                          {"exact", st.exact},
                          {"closed_form", st.closed_form},
                          {"relative_error", st.relative_error}};
    return r;
}

Report run_kinetics(const KineticsParams& p) {
    KineticsConfig c;
    c.modes = p.modes;
    c.x = p.x;
    c.atoms = p.atoms;
    c.max_events = p.events;
    c.t_max = p.t_max;
    c.initial = p.initial;
    c.keep_event_log = p.log;
    Rng rng = Rng::stream(p.seed, kinetics_stream);
    const auto rec = equilibration_run(c, rng);

    Report r;
    Json j;
    j["modes"] = p.modes;
    j["x"] = p.x;
    j["atoms"] = p.atoms;
    j["events"] = rec.events;
    j["t_end"] = rec.t_end;
    j["frozen"] = rec.frozen;
    j["conservation_ok"] = rec.conservation_ok;
    j["spontaneous"] = rec.spontaneous;
    j["stimulated"] = rec.stimulated;
    j["absorbed"] = rec.absorbed;
    j["final_occupations"] = rec.final_state.occupations;
    r.checks.push_back(at_most("each event moves one quantum", rec.conservation_ok ? 0.0 : 1.0, 0.0));

    const double b = std::exp(-p.x);
    const double n_bar = mean_occupation(p.x);
    r.table.columns = {"level", "empirical", "bose"};
    if (p.atoms == 0.0) {
        r.checks.push_back(at_most("empty cavity has no events", static_cast<double>(rec.events), 0.0));
        r.checks.push_back(at_least("empty cavity is frozen", rec.frozen ? 1.0 : 0.0, 1.0));
        r.data = j;
        return r;
    }
    const auto& occ = rec.occupation;
    j["occupation"] = stats_json(occ);
    j["n_bar"] = n_bar;
    j["bose_variance"] = n_bar + n_bar * n_bar;
    if (occ.n < 2) {
        throw ConfigError("run too short for any snapshot; raise events or t-max");
    }
    r.checks.push_back(within("mean occupation vs 1/(e^x - 1)", occ.mean, n_bar, 4.0 * occ.se_mean));
    r.checks.push_back(within("occupation variance vs n + n^2", occ.variance,
                              n_bar + n_bar * n_bar, 4.0 * occ.se_variance));

    // Pooled snapshot histogram; the last regular bin keeps at least five expected counts.
    std::vector<double> pooled(rec.snapshot_histogram.front().size(), 0.0);
    for (const auto& h : rec.snapshot_histogram) {
        for (std::size_t n = 0; n < h.size(); ++n) {
            pooled[n] += h[n];
        }
    }
    const double total = static_cast<double>(occ.n);
    std::size_t K = 1;
    while (K + 1 < pooled.size() && total * (1.0 - b) * std::pow(b, static_cast<double>(K)) >= 5.0) {
        ++K;
    }
    std::vector<double> observed(K + 1, 0.0);
    for (std::size_t n = 0; n < pooled.size(); ++n) {
        observed[std::min(n, K)] += pooled[n];
    }
    const auto probs = geometric_bin_probabilities(b, K);
    const auto chi = chi_square_gof(observed, probs);
    j["chi_square"] = {{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}};
    r.checks.push_back(at_least("stationary law is geometric (chi-square p)", chi.p_value, 1e-4));
    for (std::size_t n = 0; n <= K; ++n) {
        r.table.rows.push_back({n == K ? ">=" + num(static_cast<std::uint64_t>(K)) : num(static_cast<std::uint64_t>(n)),
                                num(observed[n] / total), num(probs[n])});
    }

    j["detailed_balance"] = detailed_balance_ratios(rec, 2);
    j["checkpoint_tv"] = rec.checkpoint_tv;
    if (p.log && !rec.log.empty()) {
        const auto cs = channel_split(rec, p.x);
        j["channel_split"] = {{"spontaneous", cs.spontaneous}, {"stimulated", cs.stimulated},
                              {"ratio", cs.ratio}, {"se", cs.se}, {"predicted", cs.predicted}};
        r.checks.push_back(within("stimulated/spontaneous vs n_bar at x=" + num(p.x), cs.ratio,
                                  cs.predicted, 4.0 * cs.se));
    }
    r.data = j;
    return r;
}

Report run_verify_all(std::uint64_t seed) {
    Report all;
    auto absorb = [&](const std::string& prefix, const Report& r) {
        for (auto c : r.checks) {
            c.name = prefix + ": " + c.name;
            all.checks.push_back(std::move(c));
        }
    };
    absorb("spectrum", run_spectrum({}));
    absorb("fluctuation", run_fluctuation({}));
    for (const char* kind : {"binary", "poisson"}) {
        for (double b : {0.1, 0.5, 0.9}) {
            DecomposeParams d;
            d.kind = kind;
            d.b = b;
            d.seed = seed;
            absorb("decompose", run_decompose(d));
        }
    }
    absorb("combinatorics", run_combinatorics({}));
    {
        StringParams s;
        s.seed = seed;
        for (const char* law : {"fixed", "classical"}) {
            s.law = law;
            absorb("string", run_string(s));
        }
        s.law = "bose";
        for (double nb : {0.5, 1.0}) {
            s.n_bar = nb;
            absorb("string", run_string(s));
        }
    }
    {
        PulseTrainParams pt;
        pt.seed = seed;
        absorb("pulse-train", run_pulse_train(pt));
    }
    {
        BhjParams bp;
        bp.seed = seed;
        absorb("bhj", run_bhj(bp));
        bp.modes = {40, 41};
        absorb("bhj", run_bhj(bp));
    }
    {
        KineticsParams kp;
        kp.seed = seed;
        for (double x : {std::log(2.0), 5.0}) {
            kp.x = x;
            absorb("kinetics", run_kinetics(kp));
        }
        kp.atoms = 0.0;
        kp.modes = 3;
        kp.initial = {5, 0, 2};
        kp.events = 0;
        kp.t_max = 100.0;
        absorb("kinetics", run_kinetics(kp));
    }
    all.data["seed"] = seed;
    all.data["checks"] = Json::array();
    for (const auto& c : all.checks) {
        all.data["checks"].push_back(to_json(c));
    }
    all.data["passed"] = all.checks.size() - all.failures();
    all.data["failed"] = all.failures();
    all.table = checks_table(all.checks);
    return all;
}

}  // namespace photostat::cli
