#include "photostat/quantized_string.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/SparseCore>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "photostat/distributions.hpp"
#include "photostat/errors.hpp"
#include "photostat/stats.hpp"

namespace photostat {
namespace {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;

constexpr double pi = std::numbers::pi;

struct FockSpace {
    std::size_t modes = 0;
    std::size_t levels = 0;  // N_max + 1
    std::size_t dimension = 1;
    std::vector<std::size_t> stride;

    FockSpace(std::size_t m, std::size_t cutoff) : modes(m), levels(cutoff + 1) {
        stride.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            stride[k] = dimension;
            if (dimension > max_fock_dimension / levels) {
                throw SizeError("Fock space exceeds " + std::to_string(max_fock_dimension)
                                + " states");
            }
            dimension *= levels;
        }
    }

    std::size_t level(std::size_t index, std::size_t k) const {
        return (index / stride[k]) % levels;
    }
};

SpMat lowering(const FockSpace& fs, std::size_t k) {
    std::vector<Eigen::Triplet<cplx>> t;
    t.reserve(fs.dimension);
    for (std::size_t i = 0; i < fs.dimension; ++i) {
        const std::size_t n = fs.level(i, k);
        if (n > 0) {
            t.emplace_back(static_cast<int>(i - fs.stride[k]), static_cast<int>(i),
                           std::sqrt(static_cast<double>(n)));
        }
    }
    SpMat a(static_cast<int>(fs.dimension), static_cast<int>(fs.dimension));
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

double omega(std::uint64_t n, const BhjConfig& cfg) {
    return static_cast<double>(n) * pi * cfg.c / cfg.L;
}

double wavenumber(std::uint64_t n, const BhjConfig& cfg) {
    return static_cast<double>(n) * pi / cfg.L;
}

double coupling(std::uint64_t n, std::uint64_t m, const BhjConfig& cfg) {
    return cfg.hbar * std::sqrt(omega(n, cfg) * omega(m, cfg)) / cfg.L;
}

void validate(const BhjConfig& cfg, std::size_t min_modes = 2) {
    if (cfg.modes.size() < min_modes) {
        throw ConfigError("need at least " + std::to_string(min_modes) + " modes");
    }
    if (!(cfg.L > 0.0) || !(cfg.l > 0.0) || !(cfg.l <= cfg.L) || !(cfg.c > 0.0)
        || !(cfg.hbar > 0.0) || !(cfg.kT > 0.0)) {
        throw ConfigError("string parameters must be positive with l <= L");
    }
    if (cfg.cutoff < 2) {
        throw ConfigError("cutoff must be at least 2");
    }
    auto sorted = cfg.modes;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == 0 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConfigError("mode indices must be distinct and positive");
    }
}

double trace_weighted(const SpMat& x, const std::vector<double>& rho) {
    double s = 0.0;
    for (int j = 0; j < x.outerSize(); ++j) {
        for (SpMat::InnerIterator it(x, j); it; ++it) {
            if (it.row() == it.col()) {
                s += rho[static_cast<std::size_t>(j)] * it.value().real();
            }
        }
    }
    return s;
}

double max_abs(const SpMat& x) {
    double m = 0.0;
    for (int j = 0; j < x.outerSize(); ++j) {
        for (SpMat::InnerIterator it(x, j); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

double kernel(double x, double l, double c) {
    const double y = x * l / c;
    const double s = std::abs(y) < 1e-8 ? 1.0 : std::sin(y) / y;
    return l / (pi * c) * s * s;
}

}  // namespace

ModeKernels mode_kernels(std::uint64_t n, std::uint64_t m, const BhjConfig& cfg) {
    const double kn = wavenumber(n, cfg);
    const double km = wavenumber(m, cfg);
    const double minus = n == m ? cfg.l : std::sin((kn - km) * cfg.l) / (kn - km);
    const double plus = cfg.resonant_only ? 0.0 : std::sin((kn + km) * cfg.l) / (kn + km);
    return {minus + plus, minus - plus};
}

SingleModeLadder single_mode_ladder(std::size_t cutoff) {
    if (cutoff < 1) {
        throw ConfigError("cutoff must be at least 1");
    }
    const FockSpace fs(1, cutoff);
    const SpMat a = lowering(fs, 0);
    const SpMat ad = SpMat(a.adjoint());
    const SpMat comm = SpMat(a * ad) - SpMat(ad * a);
    const SpMat number = ad * a;
    SingleModeLadder r;
    for (std::size_t n = 0; n < fs.dimension; ++n) {
        const auto i = static_cast<int>(n);
        r.commutator_diagonal.push_back(comm.coeff(i, i).real());
        r.number_diagonal.push_back(number.coeff(i, i).real());
    }
    double norm2 = 0.0;
    for (SpMat::InnerIterator it(a, 0); it; ++it) {
        norm2 += std::norm(it.value());
    }
    r.vacuum_annihilation_norm = std::sqrt(norm2);
    return r;
}

std::vector<double> hamiltonian_spectrum(const BhjConfig& cfg) {
    validate(cfg, 1);
    const FockSpace fs(cfg.modes.size(), cfg.cutoff);
    std::vector<double> e(fs.dimension);
    for (std::size_t i = 0; i < fs.dimension; ++i) {
        double v = 0.0;
        for (std::size_t k = 0; k < fs.modes; ++k) {
            v += cfg.hbar * omega(cfg.modes[k], cfg)
                 * (static_cast<double>(fs.level(i, k)) + 0.5);
        }
        e[i] = v;
    }
    std::sort(e.begin(), e.end());
    return e;
}

BhjResult phase_averaged_fluctuation(const BhjConfig& cfg) {
    validate(cfg);
    const std::size_t M = cfg.modes.size();
    const FockSpace fs(M, cfg.cutoff);
    BhjResult r;
    r.dimension = fs.dimension;

    // Bose weights on 0..N_max-1, renormalized.
    std::vector<std::vector<double>> w(M, std::vector<double>(fs.levels, 0.0));
    r.mean_occupation.assign(M, 0.0);
    for (std::size_t k = 0; k < M; ++k) {
        const double b = std::exp(-cfg.hbar * omega(cfg.modes[k], cfg) / cfg.kT);
        const auto law = BoseGeometric::from_ratio(b);
        r.leakage = std::max(r.leakage, law.tail(cfg.cutoff - 1));
        double norm = 0.0;
        for (std::size_t n = 0; n + 1 < fs.levels; ++n) {
            w[k][n] = law.pmf(n);
            norm += w[k][n];
        }
        for (std::size_t n = 0; n + 1 < fs.levels; ++n) {
            w[k][n] /= norm;
            r.mean_occupation[k] += static_cast<double>(n) * w[k][n];
        }
    }
    if (r.leakage > cfg.leakage_bound) {
        throw LeakageError("Bose weight " + std::to_string(r.leakage)
                           + " above the cutoff exceeds the bound "
                           + std::to_string(cfg.leakage_bound) + "; raise the cutoff");
    }
    std::vector<double> rho(fs.dimension, 1.0);
    for (std::size_t i = 0; i < fs.dimension; ++i) {
        for (std::size_t k = 0; k < M; ++k) {
            rho[i] *= w[k][fs.level(i, k)];
        }
    }

    std::vector<SpMat> q(M), p(M);
    const double rt2 = std::numbers::sqrt2;
    const cplx minus_i(0.0, -1.0);
    for (std::size_t k = 0; k < M; ++k) {
        const SpMat a = lowering(fs, k);
        const SpMat ad = SpMat(a.adjoint());
        q[k] = (a + ad) / cplx(rt2);
        p[k] = (a - ad) * (minus_i / rt2);

        const SpMat comm = SpMat(a * ad) - SpMat(ad * a);
        for (int j = 0; j < comm.outerSize(); ++j) {
            if (fs.level(static_cast<std::size_t>(j), k) + 1 >= fs.levels) {
                continue;
            }
            for (SpMat::InnerIterator it(comm, j); it; ++it) {
                const double target = it.row() == it.col() ? 1.0 : 0.0;
                r.commutator_residual = std::max(r.commutator_residual,
                                                 std::abs(it.value() - target));
            }
        }
    }

    const auto D = static_cast<int>(fs.dimension);
    SpMat d1(D, D), d2(D, D);
    double oracle = 0.0;
    double wave = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = i + 1; j < M; ++j) {
            const auto kern = mode_kernels(cfg.modes[i], cfg.modes[j], cfg);
            const double C = coupling(cfg.modes[i], cfg.modes[j], cfg);
            d1 += SpMat(q[i] * q[j]) * cplx(C * kern.k_prime);
            d2 += SpMat(p[i] * p[j]) * cplx(C * kern.k_plain);
            const double sq = kern.k_prime * kern.k_prime + kern.k_plain * kern.k_plain;
            const double ni = r.mean_occupation[i];
            const double nj = r.mean_occupation[j];
            oracle += C * C * (sq * (ni + 0.5) * (nj + 0.5) - 0.5 * kern.k_prime * kern.k_plain);
            wave += C * C * sq * ni * nj;
        }
    }
    const SpMat delta = d1 + d2;
    r.hermiticity_residual = max_abs(SpMat(delta - SpMat(delta.adjoint())));

    const SpMat squares = SpMat(d1 * d1) + SpMat(d2 * d2);
    const SpMat cross = SpMat(d1 * d2) + SpMat(d2 * d1);
    r.squared_terms = trace_weighted(squares, rho);
    r.cross_terms = trace_weighted(cross, rho);
    r.zero_point_squared = squares.coeff(0, 0).real();
    r.zero_point_cancellation = std::abs(r.zero_point_squared + r.cross_terms)
                                / std::abs(r.cross_terms);
    r.budget = r.squared_terms + r.cross_terms;
    r.oracle_budget = oracle;
    r.oracle_residual = std::abs(r.budget - oracle) / std::abs(oracle);

    double hw_sum = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
        const double hw = cfg.hbar * omega(cfg.modes[k], cfg);
        hw_sum += hw;
        r.mean_energy += cfg.l / cfg.L * hw * r.mean_occupation[k];
    }
    r.wave_part = wave;
    r.particle_part = r.budget - wave;
    const double z = cfg.l / cfg.L * static_cast<double>(M);
    r.shape_particle = hw_sum / static_cast<double>(M) * r.mean_energy;
    r.shape_wave = r.mean_energy * r.mean_energy / z;
    r.shape_ratio = (r.particle_part / r.wave_part) / (r.shape_particle / r.shape_wave);
    r.geometric_factor = r.budget / (r.shape_particle + r.shape_wave);

    SpMat omitted(D, D);
    for (std::size_t k = 0; k < M; ++k) {
        const double kk = wavenumber(cfg.modes[k], cfg);
        const double coeff = cfg.hbar * omega(cfg.modes[k], cfg) * std::sin(2.0 * kk * cfg.l)
                             / (2.0 * kk * cfg.L);
        omitted += (SpMat(q[k] * q[k]) - SpMat(p[k] * p[k])) * cplx(coeff);
    }
    const double omitted_mean = trace_weighted(omitted, rho);
    const double omitted_var = trace_weighted(SpMat(omitted * omitted), rho)
                               - omitted_mean * omitted_mean;
    r.omitted_term_ratio = omitted_var / r.budget;
    return r;
}

ClassicalBudget classical_substitution(const BhjConfig& cfg,
                                       const std::vector<double>& mean_occupation,
                                       std::size_t samples, Rng& rng) {
    validate(cfg);
    const std::size_t M = cfg.modes.size();
    if (mean_occupation.size() != M || samples < 2) {
        throw ConfigError("need one mean occupation per mode and at least two samples");
    }
    struct Pair {
        std::size_t i, j;
        double a1, a2;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = i + 1; j < M; ++j) {
            const auto kern = mode_kernels(cfg.modes[i], cfg.modes[j], cfg);
            const double C = coupling(cfg.modes[i], cfg.modes[j], cfg);
            pairs.push_back({i, j, C * kern.k_prime, C * kern.k_plain});
        }
    }
    std::vector<double> q(M), p(M);
    MomentAccumulator squares, cross;
    const double rt2 = std::numbers::sqrt2;
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t k = 0; k < M; ++k) {
            const double amp = std::sqrt(sample_exponential(mean_occupation[k], rng));
            const double phi = 2.0 * pi * rng.uniform();
            q[k] = rt2 * amp * std::cos(phi);
            p[k] = -rt2 * amp * std::sin(phi);
        }
        double d1 = 0.0, d2 = 0.0;
        for (const auto& pr : pairs) {
            d1 += pr.a1 * q[pr.i] * q[pr.j];
            d2 += pr.a2 * p[pr.i] * p[pr.j];
        }
        squares.push(d1 * d1 + d2 * d2);
        cross.push(2.0 * d1 * d2);
    }
    const auto st = squares.stats();
    return {st.mean, st.se_mean, cross.mean(), cross.stats().se_mean};
}

double kernel_delta_deviation(double l, double c, const std::vector<double>& omega_grid,
                              double center, double width) {
    if (!(l > 0.0) || !(c > 0.0) || !(width > 0.0)) {
        throw DomainError("kernel test needs positive l, c and width");
    }
    auto f = [&](double w) {
        const double u = (w - center) / width;
        return std::exp(-0.5 * u * u);
    };
    const double half_period = pi * c / l;
    const double lo = center - 12.0 * width;
    const double hi = center + 12.0 * width;
    double worst = 0.0;
    for (double w0 : omega_grid) {
        // Break points at the kernel zeros w0 + j pi c / l.
        const double j_lo = std::floor((lo - w0) / half_period);
        const double j_hi = std::ceil((hi - w0) / half_period);
        double integral = 0.0;
        for (double j = j_lo; j < j_hi; j += 1.0) {
            const double a = std::max(lo, w0 + j * half_period);
            const double b = std::min(hi, w0 + (j + 1.0) * half_period);
            if (b <= a) {
                continue;
            }
            integral += boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
                [&](double wp) { return kernel(w0 - wp, l, c) * f(wp); }, a, b, 0);
        }
        worst = std::max(worst, std::abs(integral - f(w0)));
    }
    return worst;
}

double kernel_mass(double l, double c, double omega) {
    if (!(l > 0.0) || !(c > 0.0) || !(omega > 0.0)) {
        throw DomainError("kernel mass needs positive l, c and omega");
    }
    // Mass beyond x = omega is (1/pi) int_Y^inf sinc^2(y) dy with Y = omega l / c.
    const double Y = omega * l / c;
    constexpr int periods = 20000;
    double tail = 0.0;
    for (int j = 0; j < periods; ++j) {
        const double a = Y + j * pi;
        tail += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            [](double y) {
                const double s = std::sin(y) / y;
                return s * s;
            },
            a, a + pi, 0);
    }
    tail += 0.5 / (Y + periods * pi);
    return 1.0 - tail / pi;
}

}  // namespace photostat
