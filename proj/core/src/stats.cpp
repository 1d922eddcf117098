#include "photostat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace photostat {

void MomentAccumulator::push(double x) {
    const double n1 = static_cast<double>(n_);
    ++n_;
    const double n = static_cast<double>(n_);
    const double delta = x - mean_;
    const double delta_n = delta / n;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean_ += delta_n;
    m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
    m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
    m2_ += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    if (other.n_ == 0) {
        return;
    }
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    const double d2 = delta * delta;
    const double d3 = d2 * delta;
    const double d4 = d2 * d2;
    const double m2 = m2_ + other.m2_ + d2 * na * nb / n;
    const double m3 = m3_ + other.m3_ + d3 * na * nb * (na - nb) / (n * n)
                      + 3.0 * delta * (na * other.m2_ - nb * m2_) / n;
    const double m4 = m4_ + other.m4_ + d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n)
                      + 6.0 * d2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n)
                      + 4.0 * delta * (na * other.m3_ - nb * m3_) / n;
    mean_ = (na * mean_ + nb * other.mean_) / n;
    m2_ = m2;
    m3_ = m3;
    m4_ = m4;
    n_ += other.n_;
}

double MomentAccumulator::variance() const {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double MomentAccumulator::central_moment4() const {
    return n_ > 0 ? m4_ / static_cast<double>(n_) : 0.0;
}

EnsembleStats MomentAccumulator::stats(std::uint64_t seed) const {
    EnsembleStats s;
    s.n = n_;
    s.mean = mean_;
    s.variance = variance();
    s.seed = seed;
    if (n_ > 1) {
        const double n = static_cast<double>(n_);
        s.se_mean = std::sqrt(s.variance / n);
        const double var2 = s.variance * s.variance;
        const double v = (central_moment4() - var2 * (n - 3.0) / (n - 1.0)) / n;
        s.se_variance = std::sqrt(std::max(v, 0.0));
    }
    return s;
}

double chi_square_sf(double statistic, int dof) {
    if (dof <= 0) {
        throw std::invalid_argument("chi-square needs positive degrees of freedom");
    }
    if (statistic <= 0.0) {
        return 1.0;
    }
    return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& probabilities,
                               int fitted_parameters) {
    if (observed.size() != probabilities.size() || observed.empty()) {
        throw std::invalid_argument("observed and probability bins differ in size");
    }
    double total = 0.0;
    for (double o : observed) {
        total += o;
    }
    ChiSquareResult r;
    int bins = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = total * probabilities[i];
        if (expected <= 0.0) {
            if (observed[i] > 0.0) {
                r.statistic = INFINITY;
            }
            continue;
        }
        const double d = observed[i] - expected;
        r.statistic += d * d / expected;
        ++bins;
    }
    r.dof = bins - 1 - fitted_parameters;
    r.p_value = std::isfinite(r.statistic) ? chi_square_sf(r.statistic, r.dof) : 0.0;
    return r;
}

ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<double>>& table) {
    if (table.size() < 2) {
        throw std::invalid_argument("homogeneity test needs at least two rows");
    }
    const std::size_t cols = table.front().size();
    std::vector<double> col_sum(cols, 0.0);
    std::vector<double> row_sum(table.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].size() != cols) {
            throw std::invalid_argument("ragged contingency table");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            col_sum[j] += table[i][j];
            row_sum[i] += table[i][j];
        }
        total += row_sum[i];
    }
    ChiSquareResult r;
    int used_cols = 0;
    for (std::size_t j = 0; j < cols; ++j) {
        if (col_sum[j] <= 0.0) {
            continue;
        }
        ++used_cols;
        for (std::size_t i = 0; i < table.size(); ++i) {
            const double expected = row_sum[i] * col_sum[j] / total;
            const double d = table[i][j] - expected;
            r.statistic += d * d / expected;
        }
    }
    r.dof = static_cast<int>(table.size() - 1) * (used_cols - 1);
    r.p_value = chi_square_sf(r.statistic, r.dof);
    return r;
}

double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw std::invalid_argument("empty sample");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    const std::size_t n = std::max(p.size(), q.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = i < p.size() ? p[i] : 0.0;
        const double b = i < q.size() ? q[i] : 0.0;
        s += std::abs(a - b);
    }
    return 0.5 * s;
}

QuadraticFit fit_linear_quadratic(const std::vector<double>& x, const std::vector<double>& y,
                                  const std::vector<double>& weights) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit needs at least two matching points");
    }
    if (!weights.empty() && weights.size() != x.size()) {
        throw std::invalid_argument("fit weights differ in size from the data");
    }
    auto w = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };
    double s2 = 0.0, s3 = 0.0, s4 = 0.0, sxy = 0.0, sx2y = 0.0, sw = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        const double x2 = xi * xi;
        const double wi = w(i);
        s2 += wi * x2;
        s3 += wi * x2 * xi;
        s4 += wi * x2 * x2;
        sxy += wi * xi * y[i];
        sx2y += wi * x2 * y[i];
        sw += wi;
    }
    const double det = s2 * s4 - s3 * s3;
    if (det == 0.0) {
        throw std::invalid_argument("degenerate abscissae in fit");
    }
    QuadraticFit f;
    f.linear = (sxy * s4 - sx2y * s3) / det;
    f.quadratic = (s2 * sx2y - s3 * sxy) / det;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.linear * x[i] - f.quadratic * x[i] * x[i];
        ss += w(i) * r * r;
    }
    f.rms_residual = std::sqrt(ss / sw);
    return f;
}

RatioEstimate batch_ratio(const std::vector<double>& numerators,
                          const std::vector<double>& denominators) {
    const std::size_t b = numerators.size();
    if (b < 2 || denominators.size() != b) {
        throw std::invalid_argument("ratio estimate needs at least two matching batches");
    }
    double sn = 0.0, sd = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
        sn += numerators[i];
        sd += denominators[i];
    }
    RatioEstimate r;
    r.ratio = sn / sd;
    double ss = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
        const double e = numerators[i] - r.ratio * denominators[i];
        ss += e * e;
    }
    const double nb = static_cast<double>(b);
    const double mean_d = sd / nb;
    r.se = std::sqrt(ss / (nb * (nb - 1.0))) / mean_d;
    return r;
}

BatchMean batch_mean(const std::vector<double>& batch_values) {
    MomentAccumulator acc;
    for (double v : batch_values) {
        acc.push(v);
    }
    const auto s = acc.stats();
    return {s.mean, s.se_mean};
}

}  // namespace photostat
