#pragma once

#include <functional>
#include <vector>

namespace cqec {

/// Streaming mean/variance accumulator (Welford).
class RunningStats {
 public:
  void add(double x);
  long count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;  // sample variance, 0 for fewer than 2 values
  double standard_error() const;

 private:
  long count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Two-sample Kolmogorov-Smirnov statistic sup |F1 - F2| (inputs need not be
/// sorted).
double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic two-sample rejection threshold c(alpha) sqrt((n+m)/(nm)) for
/// alpha in {0.01, 0.05}.
double ks_two_sample_threshold(std::size_t n, std::size_t m, double alpha);

/// One-sample Kolmogorov-Smirnov statistic against a CDF.
double ks_one_sample_statistic(std::vector<double> samples,
                               const std::function<double(double)>& cdf);

/// Asymptotic one-sample rejection threshold c(alpha)/sqrt(n).
double ks_one_sample_threshold(std::size_t n, double alpha);

}  // namespace cqec
