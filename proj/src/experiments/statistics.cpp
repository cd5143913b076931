#include "resavg/experiments/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace resavg {

LawDistance action_law_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  LawDistance d;
  std::size_t i = 0, j = 0;
  double prev = std::min(a.front(), b.front());
  double fa = 0.0, fb = 0.0;
  // Sweep the merged support; between jumps both CDFs are constant.
  while (i < a.size() || j < b.size()) {
    const double x = j >= b.size() || (i < a.size() && a[i] <= b[j]) ? a[i] : b[j];
    d.w1 += std::abs(fa - fb) * (x - prev);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    fa = static_cast<double>(i) / na;
    fb = static_cast<double>(j) / nb;
    d.ks = std::max(d.ks, std::abs(fa - fb));
    prev = x;
  }
  return d;
}

double joint_ks_distance(std::span<const std::pair<double, double>> a,
                         std::span<const std::pair<double, double>> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
  struct Point {
    double x, y, w;
  };
  std::vector<Point> pts;
  pts.reserve(a.size() + b.size());
  for (const auto& [x, y] : a) pts.push_back({x, y, 1.0 / static_cast<double>(a.size())});
  for (const auto& [x, y] : b) pts.push_back({x, y, -1.0 / static_cast<double>(b.size())});
  std::vector<double> ys;
  for (const auto& p : pts) ys.push_back(p.y);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::sort(pts.begin(), pts.end(), [](const Point& p, const Point& q) { return p.x < q.x; });

  std::vector<double> row(ys.size(), 0.0);
  double sup = 0.0;
  for (std::size_t i = 0; i < pts.size();) {
    const double x = pts[i].x;
    for (; i < pts.size() && pts[i].x == x; ++i) {
      const auto r = std::lower_bound(ys.begin(), ys.end(), pts[i].y) - ys.begin();
      row[static_cast<std::size_t>(r)] += pts[i].w;
    }
    double acc = 0.0;
    for (double w : row) {
      acc += w;
      sup = std::max(sup, std::abs(acc));
    }
  }
  return sup;
}

double ks_critical_value(double alpha, std::size_t n, std::size_t m) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

double kuiper_statistic(std::span<const double> angles) {
  if (angles.empty()) throw std::invalid_argument("empty sample");
  std::vector<double> u(angles.begin(), angles.end());
  for (auto& x : u) x /= 2.0 * std::numbers::pi;
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double dplus = 0.0, dminus = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dplus = std::max(dplus, static_cast<double>(i + 1) / n - u[i]);
    dminus = std::max(dminus, u[i] - static_cast<double>(i) / n);
  }
  return dplus + dminus;
}

double kuiper_tail(double v, double n) {
  const double rn = std::sqrt(n);
  const double lambda = (rn + 0.155 + 0.24 / rn) * v;
  if (lambda < 0.4) return 1.0;
  double q = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double l2 = static_cast<double>(j) * j * lambda * lambda;
    const double term = (4.0 * l2 - 1.0) * std::exp(-2.0 * l2);
    q += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(2.0 * q, 0.0, 1.0);
}

double kuiper_critical_value(double alpha, double n) {
  double lo = 0.0, hi = 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kuiper_tail(mid, n) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

std::vector<double> circular_histogram(std::span<const double> angles, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("need at least one bin");
  std::vector<double> h(bins, 0.0);
  if (angles.empty()) return h;
  for (double x : angles) {
    auto b = static_cast<std::size_t>(x / (2.0 * std::numbers::pi) * static_cast<double>(bins));
    h[std::min(b, bins - 1)] += 1.0;
  }
  for (auto& c : h) c /= static_cast<double>(angles.size());
  return h;
}

SampleMoments sample_moments(std::span<const double> x) {
  SampleMoments m;
  m.n = x.size();
  if (x.empty()) return m;
  const double n = static_cast<double>(x.size());
  for (double v : x) m.mean += v;
  m.mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - m.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  if (x.size() > 1) {
    m.variance = m2 / (n - 1.0);
    m.mean_stderr = std::sqrt(m.variance / n);
    const double mu2 = m2 / n;
    const double mu4 = m4 / n;
    m.variance_stderr = std::sqrt(std::max(mu4 - mu2 * mu2, 0.0) / n);
  }
  return m;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace resavg
