#include "photostat/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "photostat/errors.hpp"

namespace photostat {
namespace {

using boost::math::digamma;
using boost::math::trigamma;

const double psi_one = -0.57721566490153286061;

// Solves digamma(y) = v for y > 0.
double inverse_digamma(double v) {
    double y = v >= -2.22 ? std::exp(v) + 0.5 : -1.0 / (v - psi_one);
    for (int i = 0; i < 8; ++i) {
        y -= (digamma(y) - v) / trigamma(y);
    }
    return y;
}

// Counts N_i = invpsi(-(alpha + beta i + offset_i)) - 1 clamped at zero, for a
// log-count -sum lgamma(N_i + 1) - sum N_i offset_i.
struct LevelModel {
    std::vector<double> offsets;

    void counts(double alpha, double beta, std::vector<double>& out,
                std::vector<double>& slope) const {
        out.assign(offsets.size(), 0.0);
        slope.assign(offsets.size(), 0.0);
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            const double v = -(alpha + beta * static_cast<double>(i) + offsets[i]);
            if (v <= psi_one) {
                continue;
            }
            out[i] = std::max(inverse_digamma(v) - 1.0, 0.0);
            slope[i] = -1.0 / trigamma(out[i] + 1.0);
        }
    }
};

MaximizerResult solve_levels(const LevelModel& model, double N, double n, double alpha,
                             double beta) {
    MaximizerResult r;
    std::vector<double> c;
    std::vector<double> d;
    auto residuals = [&](double a, double b, double& f1, double& f2) {
        model.counts(a, b, c, d);
        f1 = -N;
        f2 = -n;
        for (std::size_t i = 0; i < c.size(); ++i) {
            f1 += c[i];
            f2 += static_cast<double>(i) * c[i];
        }
        return std::max(std::abs(f1) / N, std::abs(f2) / std::max(n, 1.0));
    };
    double f1 = 0.0, f2 = 0.0;
    double norm = residuals(alpha, beta, f1, f2);
    for (r.iterations = 0; r.iterations < 200 && norm > 1e-12; ++r.iterations) {
        double j11 = 0.0, j12 = 0.0, j22 = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double fi = static_cast<double>(i);
            j11 += d[i];
            j12 += fi * d[i];
            j22 += fi * fi * d[i];
        }
        const double det = j11 * j22 - j12 * j12;
        if (det == 0.0 || !std::isfinite(det)) {
            break;
        }
        const double da = -(j22 * f1 - j12 * f2) / det;
        const double db = -(j11 * f2 - j12 * f1) / det;
        double step = 1.0;
        double trial = norm;
        for (int k = 0; k < 40; ++k) {
            double g1 = 0.0, g2 = 0.0;
            trial = residuals(alpha + step * da, beta + step * db, g1, g2);
            if (trial < norm) {
                f1 = g1;
                f2 = g2;
                break;
            }
            step *= 0.5;
        }
        if (!(trial < norm)) {
            break;
        }
        alpha += step * da;
        beta += step * db;
        norm = trial;
    }
    residuals(alpha, beta, f1, f2);
    r.counts = c;
    while (r.counts.size() > 1 && r.counts.back() == 0.0) {
        r.counts.pop_back();
    }
    r.alpha = alpha;
    r.beta = beta;
    r.residual = norm;
    r.converged = norm <= 1e-10;
    return r;
}

std::size_t level_cap(double n) {
    return static_cast<std::size_t>(std::min(n, 5000.0)) + 2;
}

void require_counts(double N, double n) {
    if (!(N >= 1.0) || !(n >= 0.0) || !std::isfinite(N) || !std::isfinite(n)) {
        throw DomainError("maximizer needs N >= 1 and n >= 0");
    }
}

}  // namespace

BigInt factorial(std::uint64_t n) {
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt planck_W(std::uint64_t N, std::uint64_t P) {
    if (N == 0) {
        return P == 0 ? 1 : 0;
    }
    return binomial(N + P - 1, P);
}

double log_big(const BigInt& x) {
    if (x <= 0) {
        throw DomainError("logarithm of a non-positive integer");
    }
    const auto top = boost::multiprecision::msb(x);
    if (top < 960) {
        return std::log(x.convert_to<double>());
    }
    const auto shift = static_cast<unsigned>(top - 62);
    const BigInt head = x >> shift;
    return std::log(head.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

double ratio_to_double(const BigInt& num, const BigInt& den) {
    if (den == 0) {
        throw DomainError("division by zero");
    }
    if (num == 0) {
        return 0.0;
    }
    const bool negative = (num < 0) != (den < 0);
    const BigInt a = abs(num);
    const BigInt b = abs(den);
    const long s = static_cast<long>(boost::multiprecision::msb(b))
                   - static_cast<long>(boost::multiprecision::msb(a)) + 64;
    BigInt q;
    if (s >= 0) {
        q = (a << static_cast<unsigned>(s)) / b;
    } else {
        q = a / (b << static_cast<unsigned>(-s));
    }
    const double v = std::ldexp(q.convert_to<double>(), static_cast<int>(-s));
    return negative ? -v : v;
}

void validate_mode(const DistributionMode& mode) {
    std::uint64_t receptacles = 0;
    std::uint64_t quanta = 0;
    for (std::size_t i = 0; i < mode.counts.size(); ++i) {
        receptacles += mode.counts[i];
        quanta += i * mode.counts[i];
    }
    if (receptacles != mode.receptacles || quanta != mode.quanta) {
        throw InvariantError("distribution mode counts are inconsistent with N = "
                          + std::to_string(mode.receptacles)
                          + ", n = " + std::to_string(mode.quanta));
    }
}

BigInt count_collocations(const DistributionMode& mode) {
    validate_mode(mode);
    BigInt r = factorial(mode.receptacles);
    for (auto c : mode.counts) {
        r /= factorial(c);
    }
    return r;
}

BigInt count_associations(const DistributionMode& mode) {
    validate_mode(mode);
    BigInt den = 1;
    for (std::size_t i = 2; i < mode.counts.size(); ++i) {
        if (mode.counts[i] > 0) {
            den *= boost::multiprecision::pow(factorial(i), static_cast<unsigned>(mode.counts[i]));
        }
    }
    return factorial(mode.quanta) / den;
}

void for_each_distribution_mode(std::uint64_t N, std::uint64_t n, std::uint64_t p_max,
                                const std::function<void(const DistributionMode&)>& visit,
                                std::size_t budget) {
    if (N == 0) {
        throw DomainError("at least one receptacle is required");
    }
    DistributionMode mode;
    mode.receptacles = N;
    mode.quanta = n;
    mode.counts.assign(std::min(n, p_max) + 1, 0);
    std::size_t produced = 0;

    // Parts are chosen in non-increasing order so each mode is produced once.
    std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)> rec =
        [&](std::uint64_t remaining, std::uint64_t largest, std::uint64_t used) {
            if (remaining == 0) {
                if (++produced > budget) {
                    throw SizeError("distribution mode budget of " + std::to_string(budget)
                                    + " exceeded");
                }
                mode.counts[0] = N - used;
                visit(mode);
                return;
            }
            if (used == N) {
                return;
            }
            for (std::uint64_t p = std::min(largest, remaining); p >= 1; --p) {
                ++mode.counts[p];
                rec(remaining - p, p, used + 1);
                --mode.counts[p];
            }
        };
    rec(n, std::min(n, p_max), 0);
}

std::vector<DistributionMode> enumerate_distribution_modes(std::uint64_t N, std::uint64_t n,
                                                           std::uint64_t p_max,
                                                           std::size_t budget) {
    std::vector<DistributionMode> out;
    for_each_distribution_mode(N, n, p_max, [&](const DistributionMode& m) { out.push_back(m); },
                               budget);
    return out;
}

IdentityCheck verify_count_identities(std::uint64_t N, std::uint64_t n) {
    IdentityCheck r;
    r.N = N;
    r.n = n;
    for_each_distribution_mode(N, n, n, [&](const DistributionMode& m) {
        const BigInt a = count_collocations(m);
        r.sum_A += a;
        r.sum_AB += a * count_associations(m);
        ++r.modes;
    });
    r.expected_A = binomial(N + n - 1, n);
    r.expected_AB = boost::multiprecision::pow(BigInt(N), static_cast<unsigned>(n));
    r.pass = r.sum_A == r.expected_A && r.sum_AB == r.expected_AB;
    return r;
}

void check_exclusion(const DistributionMode& mode) {
    for (std::size_t i = 2; i < mode.counts.size(); ++i) {
        if (mode.counts[i] != 0) {
            throw ExclusionError("receptacle occupancy " + std::to_string(i)
                                 + " exceeds the exclusion cap of one");
        }
    }
}

FermiCheck fermi_variant(std::uint64_t N, std::uint64_t n) {
    if (n > N) {
        throw ExclusionError("cannot place " + std::to_string(n) + " quanta in "
                             + std::to_string(N) + " receptacles with single occupancy");
    }
    FermiCheck r;
    r.N = N;
    r.n = n;
    for_each_distribution_mode(N, n, 1, [&](const DistributionMode& m) {
        check_exclusion(m);
        r.sum_A += count_collocations(m);
    });
    r.expected_A = binomial(N, n);
    r.fill = static_cast<double>(n) / static_cast<double>(N);
    r.exponent = (n == 0 || n == N) ? std::numeric_limits<double>::quiet_NaN()
                                    : std::log((1.0 - r.fill) / r.fill);
    r.pass = r.sum_A == r.expected_A;
    return r;
}

MaximizerResult maximize_collocations(double N, double n) {
    require_counts(N, n);
    if (n == 0.0) {
        MaximizerResult r;
        r.counts = {N};
        r.converged = true;
        r.beta = std::numeric_limits<double>::infinity();
        return r;
    }
    LevelModel model;
    model.offsets.assign(level_cap(n), 0.0);
    const double b = n / (N + n);
    return solve_levels(model, N, n, -std::log(N * (1.0 - b)), -std::log(b));
}

MaximizerResult maximize_associations(double N, double n) {
    require_counts(N, n);
    if (n == 0.0) {
        MaximizerResult r;
        r.counts = {N};
        r.converged = true;
        r.beta = std::numeric_limits<double>::infinity();
        return r;
    }
    LevelModel model;
    model.offsets.resize(level_cap(n));
    for (std::size_t i = 0; i < model.offsets.size(); ++i) {
        model.offsets[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
    const double mu = n / N;
    return solve_levels(model, N, n, mu - std::log(N), -std::log(mu));
}

ClosedFormEquilibria closed_form_equilibria(double N, double beta, std::size_t levels) {
    if (!(beta > 0.0)) {
        throw DomainError("quantum size over kT must be positive");
    }
    ClosedFormEquilibria r;
    r.bose.resize(levels);
    r.maxwell.resize(levels);
    const double g = -std::expm1(-beta);
    for (std::size_t i = 0; i < levels; ++i) {
        const double w = std::exp(-beta * static_cast<double>(i));
        r.bose[i] = N * g * w;
        r.maxwell[i] = N * beta * w;
    }
    return r;
}

MaximizerResult maximize_exclusive_levels(const std::vector<double>& sizes,
                                          const std::vector<double>& energies,
                                          double particles, double energy) {
    if (sizes.size() != energies.size() || sizes.size() < 2) {
        throw DomainError("need at least two level groups with matching energies");
    }
    double capacity = 0.0;
    for (double s : sizes) {
        if (!(s >= 1.0)) {
            throw DomainError("level group sizes must be at least one");
        }
        capacity += s;
    }
    if (!(particles > 0.0) || !(particles < capacity)) {
        throw ExclusionError("particle count must lie strictly inside the group capacity");
    }

    // Group occupancy n solving psi(size - n + 1) - psi(n + 1) = lambda; nonincreasing in lambda,
    // empty for lambda >= psi(size + 1) - psi(1) and full for lambda <= -(psi(size + 1) - psi(1)).
    auto occupancy = [](double size, double lambda) {
        auto h = [&](double m) { return digamma(size - m + 1.0) - digamma(m + 1.0) - lambda; };
        if (h(0.0) <= 0.0) {
            return 0.0;
        }
        if (h(size) >= 0.0) {
            return size;
        }
        auto f = [&](double m) {
            return std::make_tuple(h(m), -trigamma(size - m + 1.0) - trigamma(m + 1.0));
        };
        const double guess = std::clamp(size / (std::exp(lambda) + 1.0), 0.0, size);
        std::uintmax_t iters = 100;
        return boost::math::tools::newton_raphson_iterate(f, guess, 0.0, size, 50, iters);
    };

    const std::size_t G = sizes.size();
    double edge = 0.0;
    for (double s : sizes) {
        edge = std::max(edge, digamma(s + 1.0) - digamma(1.0));
    }
    const auto [e_min, e_max] = std::minmax_element(energies.begin(), energies.end());
    std::vector<double> occ(G);
    auto fill_groups = [&](double a, double b) {
        double count = 0.0, total = 0.0;
        for (std::size_t g = 0; g < G; ++g) {
            occ[g] = occupancy(sizes[g], a + b * energies[g]);
            count += occ[g];
            total += energies[g] * occ[g];
        }
        return std::pair{count, total};
    };
    const boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 2);
    // The particle constraint fixes alpha for each beta: at alpha_lo every group is full, at alpha_hi empty.
    auto alpha_for = [&](double b) {
        const double lo = -edge - std::max(b * *e_min, b * *e_max);
        const double hi = edge - std::min(b * *e_min, b * *e_max);
        std::uintmax_t iters = 200;
        const auto root = boost::math::tools::toms748_solve(
            [&](double a) { return fill_groups(a, b).first - particles; }, lo, hi, tol, iters);
        return 0.5 * (root.first + root.second);
    };
    // Energy at fixed particle count falls as beta rises.
    auto energy_gap = [&](double b) { return fill_groups(alpha_for(b), b).second - energy; };

    MaximizerResult r;
    const double spread = *e_max - *e_min;
    if (!(spread > 0.0)) {
        throw DomainError("level groups need distinct energies");
    }
    double b_lo = -1.0 / spread, b_hi = 1.0 / spread;
    bool bracketed = false;
    for (int k = 0; k < 60 && !bracketed; ++k) {
        bracketed = energy_gap(b_lo) >= 0.0 && energy_gap(b_hi) <= 0.0;
        if (!bracketed) {
            b_lo *= 2.0;
            b_hi *= 2.0;
        }
    }
    double beta = 0.0;
    if (bracketed) {
        std::uintmax_t iters = 200;
        const auto root = boost::math::tools::toms748_solve(energy_gap, b_lo, b_hi, tol, iters);
        beta = 0.5 * (root.first + root.second);
        r.iterations = static_cast<int>(iters);
    }
    const double alpha = alpha_for(beta);
    const auto [count, total] = fill_groups(alpha, beta);
    r.counts = occ;
    r.alpha = alpha;
    r.beta = beta;
    r.residual = std::max(std::abs(count - particles) / particles,
                          std::abs(total - energy) / std::max(std::abs(energy), 1.0));
    r.converged = bracketed && r.residual <= 1e-10;
    return r;
}

StirlingCheck stirling_entropy_check(std::uint64_t N, std::uint64_t P) {
    if (N == 0 || P == 0) {
        throw DomainError("Stirling check needs N, P >= 1");
    }
    StirlingCheck r;
    r.exact = log_big(planck_W(N, P)) / static_cast<double>(N);
    const double u = static_cast<double>(P) / static_cast<double>(N);
    r.closed_form = (1.0 + u) * std::log1p(u) - u * std::log(u);
    r.relative_error = std::abs(r.exact - r.closed_form) / r.closed_form;
    return r;
}

double max_term_ratio(std::uint64_t N, std::uint64_t n) {
    if (N < 2 || n == 0) {
        throw DomainError("max-term ratio needs N >= 2 and n >= 1");
    }
    const auto m = maximize_collocations(static_cast<double>(N), static_cast<double>(n));
    double log_max = std::lgamma(static_cast<double>(N) + 1.0);
    for (double c : m.counts) {
        log_max -= std::lgamma(c + 1.0);
    }
    return log_max / log_big(planck_W(N, n));
}

}  // namespace photostat
