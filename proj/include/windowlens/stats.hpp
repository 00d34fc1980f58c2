#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace windowlens {

/// Counts for the hypergeometric enrichment test: a population of N items of
/// which K are successes, a sample of n drawn without replacement, k of them
/// successes.
struct ContingencyCounts {
  long long population = 0;             // N
  long long successes_in_population = 0;  // K
  long long sample = 0;                 // n
  long long successes_in_sample = 0;    // k

  /// Throws std::invalid_argument if the counts are not a valid draw.
  void validate() const;
};

/// log Gamma(x) for x > 0, Lanczos approximation (g=7, 9 terms),
/// relative error below 1e-13 over the range used here.
double log_gamma(double x);

/// log C(n, k); requires 0 <= k <= n.
double log_choose(long long n, long long k);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// Average ranks (1-based); ties receive the mean of their rank positions.
std::vector<double> average_ranks(std::span<const double> xs);

/// Product-moment correlation. Throws std::invalid_argument("undefined
/// correlation") when n < 2, lengths differ, or either input is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Rank correlation: Pearson on average ranks. Tie handling makes this valid
/// where the 1 - 6*sum(d^2)/(n(n^2-1)) shortcut is not.
double spearman(std::span<const double> xs, std::span<const double> ys);

/// Two-tailed p-value for r under the null, via t = r*sqrt((n-2)/(1-r^2))
/// and the Student-t tail mass with n-2 degrees of freedom. |r| = 1 gives 0.
double pearson_pvalue_two_tailed(double r, long long n);

/// P(X = k) for X ~ Hypergeometric(N, K, n), evaluated in log space.
double hypergeom_pmf(long long N, long long K, long long n, long long k);

/// Upper tail P(X >= k), inclusive. k at or below the support minimum
/// returns exactly 1.
double hypergeom_sf(const ContingencyCounts &c);

}  // namespace windowlens
