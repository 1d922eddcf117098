#include "photostat/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "photostat/errors.hpp"

namespace photostat {
namespace {

constexpr double pi = std::numbers::pi;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

double mean_occupation(double x) {
    require_positive(x, "h nu / kT");
    if (x < 1e-6) {
        return 1.0 / x - 0.5 + x / 12.0;
    }
    if (x > 700.0) {
        return std::exp(-x);
    }
    return 1.0 / std::expm1(x);
}

ModePoint ModePoint::at(double nu, double T, const PhysicalConstants& pc) {
    require_positive(nu, "frequency");
    require_positive(T, "temperature");
    ModePoint m;
    m.nu = nu;
    m.T = T;
    m.x = pc.h * nu / (pc.k * T);
    m.b = std::exp(-m.x);
    m.n_bar = mean_occupation(m.x);
    return m;
}

double mode_density(double nu, const PhysicalConstants& pc) {
    require_positive(nu, "frequency");
    return 8.0 * pi * nu * nu / (pc.c * pc.c * pc.c);
}

double mode_count(const SpectralBand& band, const PhysicalConstants& pc) {
    require_positive(band.nu, "frequency");
    require_positive(band.d_nu, "bandwidth");
    require_positive(band.volume, "volume");
    if (band.d_nu / band.nu > max_relative_bandwidth) {
        throw NarrowBandError("relative bandwidth " + std::to_string(band.d_nu / band.nu)
                              + " exceeds " + std::to_string(max_relative_bandwidth));
    }
    return mode_density(band.nu, pc) * band.d_nu * band.volume;
}

double planck_density(double nu, double T, const PhysicalConstants& pc) {
    const ModePoint m = ModePoint::at(nu, T, pc);
    return mode_density(nu, pc) * m.n_bar * pc.h * nu;
}

LimitDensities limit_densities(double nu, double T, const PhysicalConstants& pc) {
    require_positive(nu, "frequency");
    require_positive(T, "temperature");
    const double alpha = 8.0 * pi * pc.h / (pc.c * pc.c * pc.c);
    const double beta = pc.h / pc.k;
    return {alpha * nu * nu * nu * std::exp(-beta * nu / T), mode_density(nu, pc) * pc.k * T};
}

double radiation_constant(const PhysicalConstants& pc) {
    const double pi5 = pi * pi * pi * pi * pi;
    const double k4 = pc.k * pc.k * pc.k * pc.k;
    return 8.0 * pi5 * k4 / (15.0 * pc.c * pc.c * pc.c * pc.h * pc.h * pc.h);
}

double integrated_energy_density(double T, const PhysicalConstants& pc) {
    require_positive(T, "temperature");
    // nu = s t / (1 - t) maps [0, 1) onto [0, inf) with the spectral peak near t = 0.75.
    const double s = pc.k * T / pc.h;
    auto integrand = [&](double t) {
        if (t <= 0.0 || t >= 1.0) {
            return 0.0;
        }
        const double one_minus = 1.0 - t;
        const double nu = s * t / one_minus;
        const double x = pc.h * nu / (pc.k * T);
        if (x > 745.0) {
            return 0.0;
        }
        return planck_density(nu, T, pc) * s / (one_minus * one_minus);
    };
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, 1.0, 15, 1e-13, &error);
    if (!std::isfinite(value)) {
        throw EvaluationError("energy density quadrature did not converge");
    }
    return value;
}

double wien_displacement_root() {
    auto f = [](double b) {
        const double e = std::exp(-b);
        return std::make_tuple(e + b / 5.0 - 1.0, -e + 0.2);
    };
    std::uintmax_t iterations = 50;
    return boost::math::tools::newton_raphson_iterate(f, 5.0, 1.0, 10.0,
                                                      std::numeric_limits<double>::digits - 2,
                                                      iterations);
}

double wien_lambda_max_T(const PhysicalConstants& pc) {
    return pc.c * pc.h / (pc.k * wien_displacement_root());
}

}  // namespace photostat
