#include "photostat/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "photostat/distributions.hpp"
#include "photostat/errors.hpp"

namespace photostat {
namespace {

constexpr double log_floor = -745.0;

void require_open_ratio(double b) {
    if (!(b > 0.0) || !(b < 1.0)) {
        throw DomainError("geometric ratio must lie in (0, 1)");
    }
}

void require_tol(double tol) {
    if (!(tol > 0.0) || !(tol < 1.0)) {
        throw DomainError("truncation tolerance must lie in (0, 1)");
    }
}

double pow2(std::size_t s) {
    return std::ldexp(1.0, static_cast<int>(s));
}

double xlogx(double p) {
    return p > 0.0 ? p * std::log(p) : 0.0;
}

}  // namespace

PoissonMultipletSet poisson_multiplet_params(double b, double tol) {
    require_open_ratio(b);
    require_tol(tol);
    PoissonMultipletSet set;
    set.b = b;
    const double logb = std::log(b);
    const double bound = std::log(tol) + std::log1p(-b);
    std::size_t m = 1;
    for (;; ++m) {
        const double next = static_cast<double>(m + 1);
        if (next * logb - std::log(next) < bound) {
            break;
        }
        if (m >= series_term_cap) {
            throw SizeError("multiplet cutoff exceeds the series term cap");
        }
    }
    set.cutoff_m = m;
    set.components.reserve(m);
    for (std::size_t k = 1; k <= m; ++k) {
        const double lk = static_cast<double>(k);
        set.components.push_back({k, std::exp(lk * logb) / lk});
    }
    return set;
}

PoissonMultipletSet split_multiplets(const PoissonMultipletSet& set) {
    PoissonMultipletSet out;
    out.b = set.b;
    out.cutoff_m = set.cutoff_m;
    out.components.reserve(2 * set.components.size());
    for (const auto& c : set.components) {
        out.components.push_back({c.multiplicity, 0.5 * c.lambda});
        out.components.push_back({c.multiplicity, 0.5 * c.lambda});
    }
    return out;
}

double binary_p1(double b, std::size_t s) {
    require_open_ratio(b);
    const double lw = pow2(s) * std::log(b);  // log b^(2^s)
    if (lw < log_floor) {
        return 0.0;
    }
    return 1.0 / (1.0 + std::exp(-lw));
}

double binary_mean_occupation(double x, std::size_t s) {
    if (!(x > 0.0)) {
        throw DomainError("h nu / kT must be positive");
    }
    const double y = pow2(s) * x;
    return y > -log_floor ? std::exp(-y) : 1.0 / (std::exp(y) + 1.0);
}

BinaryPhotonSet binary_photon_params(double b, double tol) {
    require_open_ratio(b);
    require_tol(tol);
    BinaryPhotonSet set;
    set.b = b;
    const double logb = std::log(b);
    const double bound = std::log(tol);
    std::size_t s = 0;
    while (pow2(s + 1) * logb >= bound) {
        ++s;
        if (s >= 62) {
            throw SizeError("binary cutoff exceeds 62 orders");
        }
    }
    set.cutoff_s = s;
    set.p1.reserve(s + 1);
    for (std::size_t k = 0; k <= s; ++k) {
        set.p1.push_back(binary_p1(b, k));
    }
    return set;
}

double exact_binary_pmf(std::uint64_t n, double b) {
    require_open_ratio(b);
    const double logb = std::log(b);
    const std::size_t highest = n == 0 ? 0 : static_cast<std::size_t>(std::bit_width(n) - 1);
    double log_p = 0.0;
    for (std::size_t s = 0; s < 64; ++s) {
        const double lw = pow2(s) * logb;
        if (s > highest && lw < log_floor) {
            break;
        }
        // log P(Y_s = 1) = lw - log(1 + e^lw), log P(Y_s = 0) = -log(1 + e^lw).
        const double l0 = -std::log1p(std::exp(lw));
        log_p += ((n >> s) & 1U) ? lw + l0 : l0;
    }
    return log_p < log_floor ? 0.0 : std::exp(log_p);
}

std::vector<unsigned> dyadic_expansion(std::uint64_t n) {
    std::vector<unsigned> bits;
    for (unsigned s = 0; n != 0; ++s, n >>= 1) {
        if (n & 1U) {
            bits.push_back(s);
        }
    }
    return bits;
}

CfResiduals cf_factorization_check(double b, const std::vector<double>& t_grid, double tol) {
    const auto bose = BoseGeometric::from_ratio(b);
    const auto multiplets = poisson_multiplet_params(b, tol);
    const auto binary = binary_photon_params(b, tol);
    CfResiduals r;
    for (double t : t_grid) {
        const std::complex<double> phi = bose.characteristic(t);
        std::complex<double> pb = 1.0;
        for (std::size_t s = 0; s < binary.p1.size(); ++s) {
            pb *= BinaryLaw{binary.p1[s], pow2(s)}.characteristic(t);
        }
        std::complex<double> pp = 1.0;
        for (const auto& c : multiplets.components) {
            pp *= PoissonLaw{c.lambda}.characteristic(static_cast<double>(c.multiplicity) * t);
        }
        r.binary = std::max(r.binary, std::abs(phi - pb));
        r.poisson = std::max(r.poisson, std::abs(phi - pp));
    }
    return r;
}

std::uint64_t sample_bose_via_multiplets(const PoissonMultipletSet& set, Rng& rng) {
    std::uint64_t n = 0;
    for (const auto& c : set.components) {
        n += c.multiplicity * sample_poisson(c.lambda, rng);
    }
    return n;
}

std::uint64_t sample_binary_components(const BinaryPhotonSet& set, Rng& rng) {
    std::uint64_t mask = 0;
    for (std::size_t s = 0; s < set.p1.size(); ++s) {
        if (rng.uniform() < set.p1[s]) {
            mask |= std::uint64_t{1} << s;
        }
    }
    return mask;
}

std::uint64_t sample_bose_via_binary(const BinaryPhotonSet& set, Rng& rng) {
    return sample_binary_components(set, rng);
}

DecompositionReport decompose_multiplets(double b, double h_nu, double tol) {
    const auto set = poisson_multiplet_params(b, tol);
    const auto bose = BoseGeometric::from_ratio(b);
    DecompositionReport r;
    r.kind = "poisson";
    r.b = b;
    r.h_nu = h_nu;
    const double logb = std::log(b);
    for (const auto& c : set.components) {
        const double m = static_cast<double>(c.multiplicity);
        const double xbar = std::exp(m * logb);
        ComponentBudget cb;
        cb.order = c.multiplicity;
        cb.mean = h_nu * xbar;
        cb.variance = m * h_nu * cb.mean;
        cb.entropy = xbar * (1.0 / m - logb);
        r.components.push_back(cb);
    }
    // Smallest terms first to limit rounding in the totals.
    for (auto it = r.components.rbegin(); it != r.components.rend(); ++it) {
        r.total_mean += it->mean;
        r.total_variance += it->variance;
        r.total_entropy += it->entropy;
    }
    r.expected_mean = h_nu * bose.n_bar;
    r.expected_variance = h_nu * h_nu * bose.variance();
    r.expected_entropy = bose.entropy();
    return r;
}

DecompositionReport decompose_binary(double b, double h_nu, double tol) {
    const auto set = binary_photon_params(b, tol);
    const auto bose = BoseGeometric::from_ratio(b);
    DecompositionReport r;
    r.kind = "binary";
    r.b = b;
    r.h_nu = h_nu;
    for (std::size_t s = 0; s < set.p1.size(); ++s) {
        const double w = pow2(s) * h_nu;
        const double p = set.p1[s];
        ComponentBudget cb;
        cb.order = s;
        cb.mean = w * p;
        cb.variance = w * cb.mean - cb.mean * cb.mean;
        cb.entropy = -(xlogx(p) + xlogx(1.0 - p));
        r.components.push_back(cb);
    }
    for (auto it = r.components.rbegin(); it != r.components.rend(); ++it) {
        r.total_mean += it->mean;
        r.total_variance += it->variance;
        r.total_entropy += it->entropy;
    }
    r.expected_mean = h_nu * bose.n_bar;
    r.expected_variance = h_nu * h_nu * bose.variance();
    r.expected_entropy = bose.entropy();
    return r;
}

double multiplet_entropy_of_energy(double E, std::uint64_t m, double h_nu) {
    if (!(E > 0.0) || m == 0) {
        throw DomainError("multiplet entropy needs positive energy and multiplicity");
    }
    const double xbar = E / h_nu;
    return (xbar - xbar * std::log(xbar)) / static_cast<double>(m);
}

double binary_entropy_of_energy(double E, std::size_t s, double h_nu) {
    const double f = E / (pow2(s) * h_nu);
    if (!(f > 0.0) || !(f < 1.0)) {
        throw DomainError("binary occupation must lie in (0, 1)");
    }
    return -(xlogx(f) + xlogx(1.0 - f));
}

double thermo_identity_check(const std::string& kind, double x, std::size_t count) {
    if (!(x > 0.0)) {
        throw DomainError("h nu / kT must be positive");
    }
    const double inv_T = x;  // k = h_nu = 1
    double worst = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
        double E = 0.0;
        std::function<double(double)> S;
        if (kind == "poisson") {
            const std::uint64_t m = j + 1;
            E = std::exp(-static_cast<double>(m) * x);
            S = [m](double e) { return multiplet_entropy_of_energy(e, m, 1.0); };
        } else if (kind == "binary") {
            E = pow2(j) * binary_mean_occupation(x, j);
            S = [j](double e) { return binary_entropy_of_energy(e, j, 1.0); };
        } else {
            throw DomainError("unknown decomposition kind: " + kind);
        }
        if (E < 1e-200) {
            break;
        }
        const double dE = E * 1e-5;
        const double slope = (S(E + dE) - S(E - dE)) / (2.0 * dE);
        worst = std::max(worst, std::abs(slope - inv_T) / inv_T);
    }
    return worst;
}

double volume_entropy_difference(std::uint64_t m, double energy, double V, double V0,
                                 double h_nu) {
    if (m == 0 || !(V > 0.0) || !(V < V0) || !(energy >= 0.0) || !(h_nu > 0.0)) {
        throw DomainError("volume entropy needs 0 < V < V0, m >= 1, E >= 0");
    }
    return energy / (static_cast<double>(m) * h_nu) * std::log(V / V0);
}

}  // namespace photostat
