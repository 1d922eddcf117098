#include "photostat/distributions.hpp"

#include <cmath>
#include <string>

#include "photostat/combinatorics.hpp"
#include "photostat/errors.hpp"

namespace photostat {
namespace {

constexpr double log_floor = -745.0;

double safe_exp(double v) {
    return v < log_floor ? 0.0 : std::exp(v);
}

void require_ratio(double b) {
    if (!(b >= 0.0) || !(b < 1.0)) {
        throw DomainError("geometric ratio must lie in [0, 1)");
    }
}

void require_mean(double n_bar) {
    if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
        throw DomainError("mean occupation must be non-negative and finite");
    }
}

double xlogx(double p) {
    return p > 0.0 ? p * std::log(p) : 0.0;
}

}  // namespace

BoseGeometric BoseGeometric::from_mean(double n_bar) {
    require_mean(n_bar);
    return {n_bar / (1.0 + n_bar), n_bar};
}

BoseGeometric BoseGeometric::from_ratio(double b) {
    require_ratio(b);
    return {b, b / (1.0 - b)};
}

double BoseGeometric::log_pmf(std::uint64_t n) const {
    if (b == 0.0) {
        return n == 0 ? 0.0 : -INFINITY;
    }
    return std::log1p(-b) + static_cast<double>(n) * std::log(b);
}

double BoseGeometric::pmf(std::uint64_t n) const {
    return safe_exp(log_pmf(n));
}

double BoseGeometric::tail(std::uint64_t n) const {
    if (n == 0) {
        return 1.0;
    }
    return b == 0.0 ? 0.0 : safe_exp(static_cast<double>(n) * std::log(b));
}

double BoseGeometric::entropy() const {
    return bose_entropy(n_bar);
}

std::complex<double> BoseGeometric::characteristic(double t) const {
    const std::complex<double> e = std::polar(1.0, t);
    return (1.0 - b) / (1.0 - b * e);
}

double PoissonLaw::pmf(std::uint64_t n) const {
    if (lambda == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    const double k = static_cast<double>(n);
    return safe_exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
}

std::complex<double> PoissonLaw::characteristic(double t) const {
    return std::exp(lambda * (std::polar(1.0, t) - 1.0));
}

double BinaryLaw::entropy() const {
    return -(xlogx(p1) + xlogx(1.0 - p1));
}

std::complex<double> BinaryLaw::characteristic(double t) const {
    return (1.0 - p1) + p1 * std::polar(1.0, weight * t);
}

double ExponentialEnergy::pdf(double e) const {
    return e < 0.0 ? 0.0 : std::exp(-e / mean) / mean;
}

double ExponentialEnergy::cdf(double e) const {
    return e <= 0.0 ? 0.0 : -std::expm1(-e / mean);
}

double bose_pmf(std::uint64_t n, double n_bar) {
    return BoseGeometric::from_mean(n_bar).pmf(n);
}

double bose_entropy(double n_bar) {
    require_mean(n_bar);
    if (n_bar == 0.0) {
        return 0.0;
    }
    return (1.0 + n_bar) * std::log1p(n_bar) - n_bar * std::log(n_bar);
}

double bose_entropy_sum(double n_bar) {
    const auto g = BoseGeometric::from_mean(n_bar);
    if (g.b == 0.0) {
        return 0.0;
    }
    const double log1mb = std::log1p(-g.b);
    const double logb = std::log(g.b);
    double sum = 0.0;
    for (std::size_t n = 0; n < series_term_cap; ++n) {
        const double lp = log1mb + static_cast<double>(n) * logb;
        if (lp < log_floor) {
            break;
        }
        const double term = -std::exp(lp) * lp;
        sum += term;
        if (static_cast<double>(n) > n_bar && term < 1e-16 * sum) {
            break;
        }
    }
    return sum;
}

TruncatedMoments bose_moments_by_sum(double n_bar) {
    const auto g = BoseGeometric::from_mean(n_bar);
    TruncatedMoments m;
    if (g.b == 0.0) {
        m.terms = 1;
        return m;
    }
    double p = 1.0 - g.b;
    for (std::size_t n = 0; n < series_term_cap; ++n) {
        const double k = static_cast<double>(n);
        const double term2 = k * k * p;
        m.mean += k * p;
        m.second += term2;
        m.terms = n + 1;
        if (k > n_bar && term2 < 1e-16 * m.second) {
            break;
        }
        p *= g.b;
        if (p == 0.0) {
            break;
        }
    }
    m.variance = m.second - m.mean * m.mean;
    return m;
}

double thermo_variance(const std::function<double(double)>& mean_energy_of_T, double T, double k) {
    if (!(T > 0.0)) {
        throw DomainError("temperature must be positive");
    }
    const double dT = T * 1e-5;
    const double hi = mean_energy_of_T(T + dT);
    const double lo = mean_energy_of_T(T - dT);
    const double v = k * T * T * (hi - lo) / (2.0 * dT);
    if (!std::isfinite(v)) {
        throw EvaluationError("mean energy is not finite near T = " + std::to_string(T));
    }
    return v;
}

std::vector<double> geometric_bin_probabilities(double b, std::size_t K) {
    const auto g = BoseGeometric::from_ratio(b);
    std::vector<double> p(K + 1);
    for (std::size_t n = 0; n < K; ++n) {
        p[n] = g.pmf(n);
    }
    p[K] = g.tail(K);
    return p;
}

std::uint64_t sample_geometric_ratio(double b, Rng& rng) {
    require_ratio(b);
    if (b == 0.0) {
        return 0;
    }
    // P(N >= n) = b^n, so N = floor(log u / log b) for u uniform on (0, 1].
    return static_cast<std::uint64_t>(std::floor(std::log(rng.uniform_pos()) / std::log(b)));
}

std::uint64_t sample_bose(double n_bar, Rng& rng) {
    return sample_geometric_ratio(BoseGeometric::from_mean(n_bar).b, rng);
}

std::uint64_t sample_poisson(double lambda, Rng& rng) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("Poisson mean must be non-negative and finite");
    }
    if (lambda == 0.0) {
        return 0;
    }
    if (lambda < 10.0) {
        const double u = rng.uniform();
        double p = std::exp(-lambda);
        double cdf = p;
        std::uint64_t k = 0;
        while (u >= cdf && p > 0.0) {
            ++k;
            p *= lambda / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }
    // Hormann's transformed rejection with squeeze.
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= vr) {
            return static_cast<std::uint64_t>(k);
        }
        if (k < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b)
            <= -lambda + k * loglam - std::lgamma(k + 1.0)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

double sample_binary(double p1, double weight, Rng& rng) {
    return rng.uniform() < p1 ? weight : 0.0;
}

double sample_exponential(double mean, Rng& rng) {
    return -mean * std::log(rng.uniform_pos());
}

double exponential_energy_fluct(double mean) {
    if (!(mean >= 0.0)) {
        throw DomainError("mean energy must be non-negative");
    }
    return mean * mean;
}

BinomialPoissonGap binomial_to_poisson(std::uint64_t trials, double ratio) {
    if (trials == 0 || !(ratio > 0.0) || !(ratio < 1.0)) {
        throw DomainError("binomial comparison needs trials >= 1 and ratio in (0, 1)");
    }
    BinomialPoissonGap g;
    g.trials = trials;
    g.ratio = ratio;
    g.lambda = static_cast<double>(trials) * ratio;
    const double N = static_cast<double>(trials);
    const double lq = std::log1p(-ratio);
    const double lp = std::log(ratio);
    const double lgN = std::lgamma(N + 1.0);
    const PoissonLaw poisson{g.lambda};
    double diff = 0.0;
    double poisson_mass = 0.0;
    for (std::uint64_t k = 0; k <= trials; ++k) {
        const double kk = static_cast<double>(k);
        const double lb = lgN - std::lgamma(kk + 1.0) - std::lgamma(N - kk + 1.0) + kk * lp
                          + (N - kk) * lq;
        const double pb = safe_exp(lb);
        const double pp = poisson.pmf(k);
        diff += std::abs(pb - pp);
        poisson_mass += pp;
        if (kk > g.lambda && pb < 1e-300 && pp < 1e-300) {
            break;
        }
    }
    g.total_variation = 0.5 * (diff + std::max(0.0, 1.0 - poisson_mass));
    return g;
}

double planck_bose_from_counting(std::uint64_t N, std::uint64_t P, std::uint64_t n) {
    if (N == 0) {
        throw DomainError("at least one receptacle is required");
    }
    if (n > P) {
        return 0.0;
    }
    return ratio_to_double(planck_W(N - 1, P - n), planck_W(N, P));
}

}  // namespace photostat
