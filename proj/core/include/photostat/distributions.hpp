#pragma once

/**
 * \file distributions.hpp
 * Occupation-number laws for a single radiation mode and their samplers.
 *
 * Samplers consume variates from Rng in a fixed order, so a seed fixes the
 * output exactly.
 */

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "photostat/random.hpp"

namespace photostat {

/// Geometric law p_n = (1 - b) b^n of thermal quanta in one mode.
struct BoseGeometric {
    double b = 0.0;
    double n_bar = 0.0;

    static BoseGeometric from_mean(double n_bar);
    static BoseGeometric from_ratio(double b);

    double pmf(std::uint64_t n) const;
    double log_pmf(std::uint64_t n) const;
    /// P(N >= n) = b^n.
    double tail(std::uint64_t n) const;
    double mean() const { return n_bar; }
    double variance() const { return n_bar + n_bar * n_bar; }
    /// Entropy in units of k.
    double entropy() const;
    std::complex<double> characteristic(double t) const;
};

struct PoissonLaw {
    double lambda = 0.0;

    double pmf(std::uint64_t n) const;
    double mean() const { return lambda; }
    double variance() const { return lambda; }
    std::complex<double> characteristic(double t) const;
};

/// Two-point law on {0, weight} with P(weight) = p1.
struct BinaryLaw {
    double p1 = 0.0;
    double weight = 1.0;

    double mean() const { return weight * p1; }
    double variance() const { return weight * weight * p1 * (1.0 - p1); }
    /// Entropy in units of k.
    double entropy() const;
    std::complex<double> characteristic(double t) const;
};

/// Exponential energy law; its variance equals the squared mean.
struct ExponentialEnergy {
    double mean = 0.0;

    double pdf(double e) const;
    double cdf(double e) const;
    double variance() const { return mean * mean; }
};

double bose_pmf(std::uint64_t n, double n_bar);

/// Closed-form entropy (1 + n) log(1 + n) - n log n of one mode, in units of k.
double bose_entropy(double n_bar);

/// Entropy as -sum p log p truncated when a term falls below 1e-16 of the partial sum.
double bose_entropy_sum(double n_bar);

struct TruncatedMoments {
    double mean = 0.0;
    double second = 0.0;
    double variance = 0.0;
    std::size_t terms = 0;
};

/// First two moments of the geometric law by direct summation of the pmf.
TruncatedMoments bose_moments_by_sum(double n_bar);

/// Maximum terms in any truncated series.
inline constexpr std::size_t series_term_cap = 1'000'000;

/// Energy variance k T^2 dE/dT by central difference with step T * 1e-5.
double thermo_variance(const std::function<double(double)>& mean_energy_of_T, double T, double k);

/// Probabilities of bins 0..K-1 and a final tail bin >= K under the geometric law.
std::vector<double> geometric_bin_probabilities(double b, std::size_t K);

// Samplers.

/// Inverse-CDF geometric draw with mean n_bar.
std::uint64_t sample_bose(double n_bar, Rng& rng);
/// Inverse-CDF geometric draw with ratio b.
std::uint64_t sample_geometric_ratio(double b, Rng& rng);
/// Inversion below lambda = 10, transformed rejection (PTRS) above.
std::uint64_t sample_poisson(double lambda, Rng& rng);
/// Returns `weight` with probability p1, else zero.
double sample_binary(double p1, double weight, Rng& rng);
/// -mean * log(u).
double sample_exponential(double mean, Rng& rng);

double exponential_energy_fluct(double mean);

/// Exact distance between Binomial(N0, ratio) and Poisson(N0 * ratio).
struct BinomialPoissonGap {
    std::uint64_t trials = 0;
    double ratio = 0.0;
    double lambda = 0.0;
    double total_variation = 0.0;
};
BinomialPoissonGap binomial_to_poisson(std::uint64_t trials, double ratio);

/// Probability that a given receptacle holds n of P quanta spread over N receptacles,
/// W(N-1, P-n) / W(N, P), evaluated exactly.
double planck_bose_from_counting(std::uint64_t N, std::uint64_t P, std::uint64_t n);

}  // namespace photostat
