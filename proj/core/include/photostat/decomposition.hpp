#pragma once

/**
 * \file decomposition.hpp
 * Two exact decompositions of the geometric occupation law.
 *
 * Multiplet route: N = sum_m m X_m with independent X_m ~ Poisson(b^m / m).
 * Binary route:    N = sum_s 2^s Y_s with independent Y_s ~ Bernoulli(b^(2^s) / (1 + b^(2^s))).
 *
 * Both reproduce (1 - b) b^n exactly in the limit of no truncation; the
 * cutoffs below keep the neglected mass under `tol`.
 */

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "photostat/random.hpp"

namespace photostat {

inline constexpr double default_decomposition_tol = 1e-14;

/// One Poisson component contributing `multiplicity` quanta per event.
struct MultipletComponent {
    std::uint64_t multiplicity = 1;
    double lambda = 0.0;
};

struct PoissonMultipletSet {
    double b = 0.0;
    std::size_t cutoff_m = 0;  ///< largest multiplicity retained
    std::vector<MultipletComponent> components;
};

/// Components m = 1..M with lambda_m = b^m / m; M is the smallest with
/// b^(M+1) / (M+1) < tol (1 - b). Throws DomainError unless 0 < b < 1.
PoissonMultipletSet poisson_multiplet_params(double b, double tol = default_decomposition_tol);

/// Splits every component into two of half the rate. Sampled laws are unchanged.
PoissonMultipletSet split_multiplets(const PoissonMultipletSet& set);

struct BinaryPhotonSet {
    double b = 0.0;
    std::size_t cutoff_s = 0;  ///< largest binary order retained
    std::vector<double> p1;    ///< P(Y_s = 1), s = 0..cutoff_s
};

/// Orders s = 0..S with S the smallest such that b^(2^(S+1)) < tol.
BinaryPhotonSet binary_photon_params(double b, double tol = default_decomposition_tol);

/// P(Y_s = 1) = 1 / (1 + b^(-2^s)), evaluated in log space.
double binary_p1(double b, std::size_t s);

/// Mean occupation 1 / (e^(2^s x) + 1) of binary order s.
double binary_mean_occupation(double x, std::size_t s);

/// Geometric pmf assembled from the binary digits of n. Agrees with (1 - b) b^n.
double exact_binary_pmf(std::uint64_t n, double b);

/// Binary digits of n, least significant first.
std::vector<unsigned> dyadic_expansion(std::uint64_t n);

struct CfResiduals {
    double binary = 0.0;   ///< max |phi - prod binary factors|
    double poisson = 0.0;  ///< max |phi - prod Poisson factors|
};

/// Characteristic-function factorization residuals on a grid of t.
CfResiduals cf_factorization_check(double b, const std::vector<double>& t_grid,
                                   double tol = default_decomposition_tol);

std::uint64_t sample_bose_via_multiplets(const PoissonMultipletSet& set, Rng& rng);
std::uint64_t sample_bose_via_binary(const BinaryPhotonSet& set, Rng& rng);

/// Bit s set iff binary order s fired; the sum of fired weights is the bitmask itself.
std::uint64_t sample_binary_components(const BinaryPhotonSet& set, Rng& rng);

/// Per-component energy statistics in units where one quantum carries h_nu.
struct ComponentBudget {
    std::uint64_t order = 0;  ///< multiplicity m or binary order s
    double mean = 0.0;
    double variance = 0.0;
    double entropy = 0.0;  ///< units of k
};

struct DecompositionReport {
    std::string kind;  ///< "poisson" or "binary"
    double b = 0.0;
    double h_nu = 1.0;
    std::vector<ComponentBudget> components;
    double total_mean = 0.0;
    double total_variance = 0.0;
    double total_entropy = 0.0;
    double expected_mean = 0.0;      ///< h_nu n_bar
    double expected_variance = 0.0;  ///< (h_nu)^2 (n_bar + n_bar^2)
    double expected_entropy = 0.0;   ///< closed-form single-mode entropy
};

/// Mean h_nu b^m, variance m h_nu times the mean, entropy b^m (1/m - log b).
DecompositionReport decompose_multiplets(double b, double h_nu = 1.0,
                                         double tol = default_decomposition_tol);

/// Mean 2^s h_nu p1, variance 2^s h_nu mean - mean^2, binary entropy of p1.
DecompositionReport decompose_binary(double b, double h_nu = 1.0,
                                     double tol = default_decomposition_tol);

/// Entropy of multiplet m as a function of its mean energy E, in units of k.
double multiplet_entropy_of_energy(double E, std::uint64_t m, double h_nu);

/// Entropy of binary order s as a function of its mean energy E, in units of k.
double binary_entropy_of_energy(double E, std::size_t s, double h_nu);

/// Max relative residual of dS/dE = 1/T over the first `count` components,
/// using numerical derivatives with k = h_nu = 1 so that T = 1 / x.
double thermo_identity_check(const std::string& kind, double x, std::size_t count = 8);

/// Entropy change k (E / (m h_nu)) log(V / V0) of multiplet m confined from V0 to a part V.
/// Throws DomainError unless 0 < V < V0.
double volume_entropy_difference(std::uint64_t m, double energy, double V, double V0,
                                 double h_nu);

}  // namespace photostat
