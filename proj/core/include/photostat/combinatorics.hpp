#pragma once

/**
 * \file combinatorics.hpp
 * Exact counting of quanta distributed over receptacles.
 *
 * A distribution mode fixes how many receptacles hold exactly i quanta for
 * each i. Collocations count the ways to assign distinguishable receptacles
 * to a mode; associations additionally count the ways to assign
 * distinguishable quanta. Counts are exact big integers.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace photostat {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(std::uint64_t n);
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Ways to place P indistinguishable quanta in N receptacles; W(0, 0) = 1.
BigInt planck_W(std::uint64_t N, std::uint64_t P);

/// Natural logarithm of a positive big integer.
double log_big(const BigInt& x);

/// num / den rounded to double without overflow in either operand.
double ratio_to_double(const BigInt& num, const BigInt& den);

/// counts[i] = number of receptacles holding exactly i quanta.
struct DistributionMode {
    std::vector<std::uint64_t> counts;
    std::uint64_t receptacles = 0;
    std::uint64_t quanta = 0;
};

/// Throws InvariantError unless counts sum to `receptacles` and weighted counts sum to `quanta`.
void validate_mode(const DistributionMode& mode);

/// N! / prod_i N_i!
BigInt count_collocations(const DistributionMode& mode);

/// n! / prod_i (i!)^{N_i}
BigInt count_associations(const DistributionMode& mode);

inline constexpr std::size_t default_mode_budget = 1'000'000;

/// Visits every mode with at most `p_max` quanta per receptacle in a fixed order.
/// Throws SizeError once more than `budget` modes have been produced.
void for_each_distribution_mode(std::uint64_t N, std::uint64_t n, std::uint64_t p_max,
                                const std::function<void(const DistributionMode&)>& visit,
                                std::size_t budget = default_mode_budget);

std::vector<DistributionMode> enumerate_distribution_modes(std::uint64_t N, std::uint64_t n,
                                                           std::uint64_t p_max,
                                                           std::size_t budget = default_mode_budget);

/// Sum identities over all modes: sum A = C(N+n-1, n) and sum A B = N^n.
struct IdentityCheck {
    std::uint64_t N = 0;
    std::uint64_t n = 0;
    std::size_t modes = 0;
    BigInt sum_A;
    BigInt expected_A;
    BigInt sum_AB;
    BigInt expected_AB;
    bool pass = false;
};
IdentityCheck verify_count_identities(std::uint64_t N, std::uint64_t n);

/// Exclusion-capped counting: at most one quantum per receptacle.
struct FermiCheck {
    std::uint64_t N = 0;
    std::uint64_t n = 0;
    BigInt sum_A;
    BigInt expected_A;    ///< C(N, n)
    double fill = 0.0;    ///< n / N
    double exponent = 0.0;  ///< y with fill = 1 / (e^y + 1)
    bool pass = false;
};
FermiCheck fermi_variant(std::uint64_t N, std::uint64_t n);

/// Throws ExclusionError if any receptacle holds more than one quantum.
void check_exclusion(const DistributionMode& mode);

/// Continuous maximizer of a log-count under particle and energy constraints.
struct MaximizerResult {
    std::vector<double> counts;  ///< N_i for i = 0, 1, ...
    double alpha = 0.0;
    double beta = 0.0;
    double residual = 0.0;  ///< max relative constraint violation
    int iterations = 0;
    bool converged = false;
};

/// Maximizes log A with log-gamma factorials subject to sum N_i = N, sum i N_i = n.
MaximizerResult maximize_collocations(double N, double n);

/// Maximizes log(A B) with log-gamma factorials under the same constraints.
MaximizerResult maximize_associations(double N, double n);

/// Closed-form most probable occupancies at reduced quantum size beta = eps / kT.
struct ClosedFormEquilibria {
    std::vector<double> bose;     ///< N (1 - e^-beta) e^{-i beta}
    std::vector<double> maxwell;  ///< N beta e^{-i beta}
};
ClosedFormEquilibria closed_form_equilibria(double N, double beta, std::size_t levels);

/// Exclusion-capped maximizer over level groups: group g has `sizes[g]` receptacles at
/// energy `energies[g]`; maximizes sum_g log C(size_g, n_g) with fixed total quanta and energy.
MaximizerResult maximize_exclusive_levels(const std::vector<double>& sizes,
                                          const std::vector<double>& energies,
                                          double particles, double energy);

/// Exact per-receptacle log-count versus its large-number closed form.
struct StirlingCheck {
    double exact = 0.0;        ///< log W(N, P) / N
    double closed_form = 0.0;  ///< (1+u) log(1+u) - u log u, u = P / N
    double relative_error = 0.0;
};
StirlingCheck stirling_entropy_check(std::uint64_t N, std::uint64_t P);

/// log(max_mode A) / log(sum A), evaluated at the continuous maximizer.
double max_term_ratio(std::uint64_t N, std::uint64_t n);

}  // namespace photostat
