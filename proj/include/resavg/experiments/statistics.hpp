#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace resavg {

struct LawDistance {
  double ks = 0.0;  // sup |F_a - F_b|
  double w1 = 0.0;  // integral |F_a - F_b|
};

// Two-sample distances between empirical laws. Both inputs must be sorted
// ascending and nonempty.
LawDistance action_law_distance(std::span<const double> a, std::span<const double> b);

// sup over (x, y) of |F_a(x, y) - F_b(x, y)| for the lower-left orthant
// CDFs of two samples of pairs, in any order. Exact over the pooled grid.
double joint_ks_distance(std::span<const std::pair<double, double>> a,
                         std::span<const std::pair<double, double>> b);

// Asymptotic two-sample KS critical value sqrt(-ln(alpha/2)/2) sqrt((n+m)/(nm)).
double ks_critical_value(double alpha, std::size_t n, std::size_t m);

// Kuiper statistic V = D+ + D- of angles in [0, 2 pi) against the uniform law.
double kuiper_statistic(std::span<const double> angles);

// Asymptotic tail P(V > v) for n samples, with Stephens' finite-n correction
// lambda = (sqrt(n) + 0.155 + 0.24 / sqrt(n)) v.
double kuiper_tail(double v, double n);

// Smallest v with kuiper_tail(v, n) <= alpha.
double kuiper_critical_value(double alpha, double n);

// Normalized counts of angles in `bins` equal arcs of [0, 2 pi).
std::vector<double> circular_histogram(std::span<const double> angles, std::size_t bins);

struct SampleMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double mean_stderr = 0.0;
  double variance_stderr = 0.0;  // from the fourth central moment
};

SampleMoments sample_moments(std::span<const double> x);

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace resavg
