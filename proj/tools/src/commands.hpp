#pragma once

/**
 * \file commands.hpp
 * Experiment drivers behind the command-line subcommands.
 *
 * Each driver returns structured data, a plottable table and named checks.
 * Random streams are derived from `seed` with fixed per-driver indices, so a
 * driver's output depends only on its parameters and the seed.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "photostat/random.hpp"
#include "report.hpp"

namespace photostat::cli {

struct SpectrumParams {
    std::vector<double> T = {100.0, 1000.0, 6000.0};
    double nu_min = 1e11;
    double nu_max = 1e16;
    std::size_t points = 26;  ///< log-spaced frequencies
};
Report run_spectrum(const SpectrumParams& p);

struct FluctuationParams {
    std::vector<double> x = {0.1, 0.6931471805599453, 1.0, 5.0, 20.0};
    std::vector<double> n_bar;  ///< when set, replaces x by log(1 + 1/n_bar)
    double modes = 100.0;       ///< modes in the band
    double T = 1000.0;
};
Report run_fluctuation(const FluctuationParams& p);

struct DecomposeParams {
    double b = 0.5;
    std::string kind = "binary";  ///< "binary" or "poisson"
    double tol = 1e-14;
    std::size_t samples = 100'000;  ///< sampler draws for the chi-square check
    std::uint64_t seed = default_seed;
};
Report run_decompose(const DecomposeParams& p);

struct StringParams {
    double Z = 200.0;  ///< modes in the band
    double z = 50.0;   ///< modes resolved by the segment
    std::string law = "bose";  ///< "fixed", "bose" or "classical"
    double n_bar = 1.0;
    std::size_t samples = 4000;  ///< realizations
    std::uint64_t seed = default_seed;
};
Report run_string(const StringParams& p);

struct PulseTrainParams {
    double R = 2000.0;  ///< T / tau
    std::vector<double> mu = {0.5, 1.0, 2.0, 4.0};  ///< mean number of overlapping pulses
    std::size_t realizations = 20;
    std::size_t baseline_realizations = 8;
    double baseline_length = 200.0;  ///< baseline interval in units of tau
    std::size_t samples_per_window = 4;
    std::uint64_t seed = default_seed;
};
Report run_pulse_train(const PulseTrainParams& p);

struct BhjParams {
    std::vector<std::uint64_t> modes = {40, 41, 42};
    std::size_t cutoff = 16;
    double kT = 105.0;
    double l = 0.37;
    double L = 1.0;
    bool resonant_only = true;
    double leakage_bound = 1e-6;
    std::size_t samples = 200'000;  ///< classical draws
    std::uint64_t seed = default_seed;
};
Report run_bhj(const BhjParams& p);

struct CombinatoricsParams {
    std::uint64_t N_max = 7;
    std::uint64_t n_max = 7;
    std::uint64_t stirling_N = 10'000;  ///< receptacles and quanta for the large-number check
};
Report run_combinatorics(const CombinatoricsParams& p);

struct KineticsParams {
    std::size_t modes = 1;
    double x = 0.6931471805599453;
    double atoms = 100.0;
    std::uint64_t events = 1'000'000;
    double t_max = 0.0;
    std::vector<std::uint64_t> initial;
    bool log = true;  ///< keep the event log for the channel split
    std::uint64_t seed = default_seed;
};
Report run_kinetics(const KineticsParams& p);

/// Every identity and law above at its default configuration.
Report run_verify_all(std::uint64_t seed);

}  // namespace photostat::cli
