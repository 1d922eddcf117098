#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace photostat {

/// Summary of a Monte Carlo sample of a scalar observable.
struct EnsembleStats {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;     ///< unbiased sample variance
    double se_mean = 0.0;
    double se_variance = 0.0;  ///< standard error of the sample variance
    std::uint64_t seed = 0;
};

/// Streaming accumulator of central moments up to fourth order.
class MomentAccumulator {
  public:
    void push(double x);
    void merge(const MomentAccumulator& other);

    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const;
    double central_moment4() const;
    EnsembleStats stats(std::uint64_t seed = 0) const;

  private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double m3_ = 0.0;
    double m4_ = 0.0;
};

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Upper tail probability of the chi-square law.
double chi_square_sf(double statistic, int dof);

/// Goodness of fit of `observed` counts against bin probabilities summing to one.
ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& probabilities,
                               int fitted_parameters = 0);

/// Homogeneity of rows of a contingency table (rows are samples, columns are bins).
ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<double>>& table);

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF. Sorts `samples`.
double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf);

/// Total variation distance between two probability vectors (shorter one zero-padded).
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

/// Least-squares fit of y = a x + b x^2 with no intercept.
struct QuadraticFit {
    double linear = 0.0;
    double quadratic = 0.0;
    double rms_residual = 0.0;  ///< weighted
};
/// Empty `weights` means unit weights.
QuadraticFit fit_linear_quadratic(const std::vector<double>& x, const std::vector<double>& y,
                                  const std::vector<double>& weights = {});

/// Ratio estimator sum(num)/sum(den) with a batch-means delta-method standard error.
struct RatioEstimate {
    double ratio = 0.0;
    double se = 0.0;
};
RatioEstimate batch_ratio(const std::vector<double>& numerators,
                          const std::vector<double>& denominators);

/// Mean of batch averages and its standard error.
struct BatchMean {
    double mean = 0.0;
    double se = 0.0;
};
BatchMean batch_mean(const std::vector<double>& batch_values);

}  // namespace photostat
