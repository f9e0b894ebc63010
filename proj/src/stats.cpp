#include "cqec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cqec {

void RunningStats::add(double x) {
  ++count_;
  double delta = x - mean_;
  mean_ += delta / count_;
  m2_ += delta * (x - mean_);
}

double RunningStats::variance() const {
  return count_ < 2 ? 0.0 : m2_ / (count_ - 1);
}

double RunningStats::standard_error() const {
  return count_ < 1 ? 0.0 : std::sqrt(variance() / count_);
}

namespace {

double ks_coefficient(double alpha) {
  // sqrt(-ln(alpha/2)/2), rounded to the usual table values.
  if (alpha == 0.01) return 1.628;
  if (alpha == 0.05) return 1.358;
  throw std::invalid_argument("unsupported KS significance level");
}

}  // namespace

double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    double fa = static_cast<double>(i) / a.size();
    double fb = static_cast<double>(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

double ks_two_sample_threshold(std::size_t n, std::size_t m, double alpha) {
  return ks_coefficient(alpha) *
         std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

double ks_one_sample_statistic(std::vector<double> samples,
                               const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double ks_one_sample_threshold(std::size_t n, double alpha) {
  return ks_coefficient(alpha) / std::sqrt(static_cast<double>(n));
}

}  // namespace cqec
