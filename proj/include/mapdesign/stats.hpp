#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace mapdesign {

/// Mid-ranks (1-based); tied values share the mean of the ranks they span.
std::vector<double> rank_with_ties(std::span<const double> values);

enum class TestMethod { Exact, NormalApproximation };
enum class CorrelationMethod { ExactPermutation, TApproximation };

std::string_view test_method_name(TestMethod method);
std::string_view correlation_method_name(CorrelationMethod method);

struct TestResult {
  double u_statistic = 0.0;  // min(U1, U2)
  double p_value = 1.0;      // two-sided
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  TestMethod method = TestMethod::Exact;
  /// Every pooled value identical; p is 1 by convention.
  bool degenerate = false;
};

struct MannWhitneyOptions {
  enum class Method { Auto, Exact, Asymptotic };
  Method method = Method::Auto;
  /// Auto uses the exact distribution when n1 * n2 is at most this and the
  /// pooled sample has no ties.
  std::size_t exact_max_product = 10000;
};

/// Two-sided Mann-Whitney U. Throws Error(InvalidArgument) on an empty
/// sample, or when Method::Exact is forced on tied data.
TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y,
                          const MannWhitneyOptions& options = {});

/// Number of ways each U value in 0..n1*n2 arises among the C(n1+n2, n1)
/// tie-free rank assignments (Gaussian binomial coefficients).
std::vector<long double> mann_whitney_null_counts(std::size_t n1, std::size_t n2);

struct CorrelationResult {
  double rho = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  CorrelationMethod method = CorrelationMethod::ExactPermutation;
};

struct SpearmanOptions {
  enum class Method { Auto, Exact, Asymptotic };
  Method method = Method::Auto;
  std::size_t exact_max_n = 8;
};

/// Two-sided Spearman rank correlation. Throws Error(InvalidArgument) for
/// n < 3 or unequal lengths and Error(ConstantInput) when either variable
/// has no rank variance.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y,
                           const SpearmanOptions& options = {});

/// Pearson correlation coefficient (no error checks beyond zero variance,
/// which yields NaN).
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace mapdesign
