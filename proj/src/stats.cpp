#include "windowlens/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace windowlens {

void ContingencyCounts::validate() const {
  const long long N = population, K = successes_in_population;
  const long long n = sample, k = successes_in_sample;
  if (N < 0 || K < 0 || n < 0 || k < 0)
    throw std::invalid_argument("contingency counts must be non-negative");
  if (K > N) throw std::invalid_argument("contingency counts: K > N");
  if (n > N) throw std::invalid_argument("contingency counts: n > N");
  if (k > n || k > K) throw std::invalid_argument("contingency counts: k > min(n, K)");
  if (n - k > N - K) throw std::invalid_argument("contingency counts: n - k > N - K");
}

double log_gamma(double x) {
  // Lanczos, g = 7, 9 coefficients.
  static const double coef[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x <= 0.0) throw std::invalid_argument("log_gamma requires x > 0");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
  }
  x -= 1.0;
  double a = coef[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
  return 0.5 * std::log(2.0 * M_PI) + (x + 0.5) * std::log(t) - t + std::log(a);
}

double log_choose(long long n, long long k) {
  if (k < 0 || k > n) throw std::invalid_argument("log_choose requires 0 <= k <= n");
  if (k == 0 || k == n) return 0.0;
  return log_gamma(static_cast<double>(n) + 1.0) -
         log_gamma(static_cast<double>(k) + 1.0) -
         log_gamma(static_cast<double>(n - k) + 1.0);
}

namespace {

// Lentz continued fraction for the incomplete beta.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3.0e-16;
  constexpr double kFpMin = 1.0e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0)
    throw std::invalid_argument("incomplete beta requires a, b > 0");
  if (x < 0.0 || x > 1.0)
    throw std::invalid_argument("incomplete beta requires x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

std::vector<double> average_ranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    // Positions i..j (0-based) share the mean of ranks i+1..j+1.
    const double mean_rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("undefined correlation: need two equal-length lists of size >= 2");
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw std::invalid_argument("undefined correlation: constant input");
  return sxy / std::sqrt(sxx * syy);
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("undefined correlation: need two equal-length lists of size >= 2");
  const std::vector<double> rx = average_ranks(xs);
  const std::vector<double> ry = average_ranks(ys);
  return pearson(rx, ry);
}

double pearson_pvalue_two_tailed(double r, long long n) {
  if (n < 3) throw std::invalid_argument("pearson p-value requires n >= 3");
  if (std::fabs(r) > 1.0 + 1e-12)
    throw std::invalid_argument("pearson p-value requires |r| <= 1");
  r = std::clamp(r, -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  const double denom = 1.0 - r * r;
  if (denom <= 0.0) return 0.0;
  const double t2 = r * r * df / denom;
  // 2 P(T > |t|) = I_{df/(df+t^2)}(df/2, 1/2).
  return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t2));
}

double hypergeom_pmf(long long N, long long K, long long n, long long k) {
  ContingencyCounts c{N, K, n, k};
  c.validate();
  const long long lo = std::max(0LL, n + K - N);
  const long long hi = std::min(n, K);
  if (k < lo || k > hi) return 0.0;
  return std::exp(log_choose(K, k) + log_choose(N - K, n - k) - log_choose(N, n));
}

double hypergeom_sf(const ContingencyCounts &c) {
  c.validate();
  const long long N = c.population, K = c.successes_in_population;
  const long long n = c.sample, k = c.successes_in_sample;
  const long long lo = std::max(0LL, n + K - N);
  const long long hi = std::min(n, K);
  if (k <= lo) return 1.0;
  const double log_cnn = log_choose(N, n);
  double p = 0.0;
  for (long long i = hi; i >= k; --i)
    p += std::exp(log_choose(K, i) + log_choose(N - K, n - i) - log_cnn);
  return std::min(p, 1.0);
}

}  // namespace windowlens
