#include "mapdesign/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "mapdesign/error.hpp"

namespace mapdesign {

std::string_view test_method_name(TestMethod method) {
  return method == TestMethod::Exact ? "exact" : "normal-approximation";
}

std::string_view correlation_method_name(CorrelationMethod method) {
  return method == CorrelationMethod::ExactPermutation ? "exact-permutation" : "t-approximation";
}

std::vector<double> rank_with_ties(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Ranks i+1 .. j (1-based) share their mean.
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    i = j;
  }
  return ranks;
}

namespace {

// Sum over tie groups of (t^3 - t).
double tie_term(std::span<const double> pooled) {
  std::vector<double> sorted(pooled.begin(), pooled.end());
  std::sort(sorted.begin(), sorted.end());
  double term = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    term += t * t * t - t;
    i = j;
  }
  return term;
}

}  // namespace

std::vector<long double> mann_whitney_null_counts(std::size_t n1, std::size_t n2) {
  // [n1 + n2 choose m]_q = prod_{i=1..m} (1 - q^{n+i}) / (1 - q^i), with
  // m = min(n1, n2). Each partial product is itself a polynomial with
  // nonnegative integer coefficients.
  const std::size_t m = std::min(n1, n2);
  const std::size_t n = std::max(n1, n2);
  const std::size_t degree = n1 * n2;
  std::vector<long double> c(degree + m + 1, 0.0L);
  c[0] = 1.0L;
  std::size_t current = 0;
  for (std::size_t i = 1; i <= m; ++i) {
    const std::size_t shift = n + i;
    for (std::size_t j = current + 1; j-- > 0;) c[j + shift] -= c[j];
    current += shift;
    for (std::size_t j = i; j <= current; ++j) c[j] += c[j - i];
    // The quotient is exact; clear the (zero in exact arithmetic) remainder.
    for (std::size_t j = current - i + 1; j <= current; ++j) c[j] = 0.0L;
    current -= i;
  }
  c.resize(degree + 1);
  return c;
}

TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y,
                          const MannWhitneyOptions& options) {
  if (x.empty() || y.empty()) {
    throw Error(ErrorCode::InvalidArgument, "Mann-Whitney U needs two nonempty samples");
  }
  TestResult out;
  out.n1 = x.size();
  out.n2 = y.size();
  const double n1 = static_cast<double>(out.n1);
  const double n2 = static_cast<double>(out.n2);

  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const auto ranks = rank_with_ties(pooled);
  const double r1 = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(out.n1), 0.0);
  const double u1 = r1 - n1 * (n1 + 1.0) / 2.0;
  const double u2 = n1 * n2 - u1;
  out.u_statistic = std::min(u1, u2);

  const double ties = tie_term(pooled);
  const bool has_ties = ties > 0.0;
  if (std::all_of(pooled.begin(), pooled.end(), [&](double v) { return v == pooled[0]; })) {
    out.degenerate = true;
    out.p_value = 1.0;
    out.method = TestMethod::NormalApproximation;
    return out;
  }

  bool exact = false;
  switch (options.method) {
    case MannWhitneyOptions::Method::Auto:
      exact = !has_ties && out.n1 * out.n2 <= options.exact_max_product;
      break;
    case MannWhitneyOptions::Method::Exact:
      if (has_ties) throw Error(ErrorCode::InvalidArgument, "exact Mann-Whitney requires tie-free data");
      exact = true;
      break;
    case MannWhitneyOptions::Method::Asymptotic:
      exact = false;
      break;
  }

  if (exact) {
    out.method = TestMethod::Exact;
    const auto counts = mann_whitney_null_counts(out.n1, out.n2);
    const auto u = static_cast<std::size_t>(std::llround(out.u_statistic));
    long double cumulative = 0.0L;
    for (std::size_t k = 0; k <= u; ++k) cumulative += counts[k];
    const long double total = std::accumulate(counts.begin(), counts.end(), 0.0L);
    const double p = static_cast<double>(2.0L * cumulative) / static_cast<double>(total);
    out.p_value = std::min(1.0, p);
    return out;
  }

  out.method = TestMethod::NormalApproximation;
  const double big_n = n1 + n2;
  const double mu = n1 * n2 / 2.0;
  const double variance = n1 * n2 / 12.0 * ((big_n + 1.0) - ties / (big_n * (big_n - 1.0)));
  const double sigma = std::sqrt(variance);
  const double z = (std::max(u1, u2) - mu - 0.5) / sigma;
  out.p_value = std::clamp(std::erfc(z / std::numbers::sqrt2), 0.0, 1.0);
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

namespace {

bool has_rank_variance(const std::vector<double>& ranks) {
  return std::any_of(ranks.begin(), ranks.end(), [&](double r) { return r != ranks[0]; });
}

}  // namespace

CorrelationResult spearman(std::span<const double> x, std::span<const double> y,
                           const SpearmanOptions& options) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "spearman inputs differ in length");
  if (x.size() < 3) throw Error(ErrorCode::InvalidArgument, "spearman needs at least 3 pairs");
  const auto rx = rank_with_ties(x);
  const auto ry = rank_with_ties(y);
  if (!has_rank_variance(rx) || !has_rank_variance(ry)) {
    throw Error(ErrorCode::ConstantInput, "spearman input has zero rank variance");
  }

  CorrelationResult out;
  out.n = x.size();
  out.rho = std::clamp(pearson(rx, ry), -1.0, 1.0);

  bool exact = false;
  switch (options.method) {
    case SpearmanOptions::Method::Auto: exact = out.n <= options.exact_max_n; break;
    case SpearmanOptions::Method::Exact: exact = true; break;
    case SpearmanOptions::Method::Asymptotic: exact = false; break;
  }

  if (exact) {
    if (out.n > 12) throw Error(ErrorCode::InvalidArgument, "permutation test limited to n <= 12");
    out.method = CorrelationMethod::ExactPermutation;
    // Rank variances are permutation invariant; only sxy changes.
    const double n = static_cast<double>(out.n);
    const double mean = (n + 1.0) / 2.0;
    double sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < out.n; ++i) {
      sxx += (rx[i] - mean) * (rx[i] - mean);
      syy += (ry[i] - mean) * (ry[i] - mean);
    }
    const double scale = std::sqrt(sxx * syy);
    const double threshold = std::abs(out.rho) - 1e-12;
    std::vector<std::size_t> perm(out.n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::size_t hits = 0;
    std::size_t total = 0;
    do {
      double sxy = 0.0;
      for (std::size_t i = 0; i < out.n; ++i) sxy += (rx[i] - mean) * (ry[perm[i]] - mean);
      if (std::abs(sxy / scale) >= threshold) ++hits;
      ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.p_value = static_cast<double>(hits) / static_cast<double>(total);
    return out;
  }

  out.method = CorrelationMethod::TApproximation;
  const double n = static_cast<double>(out.n);
  const double one_minus = 1.0 - out.rho * out.rho;
  if (one_minus <= 0.0) {
    // Only the identity and the reversal reach |rho| = 1 among n! orderings.
    out.p_value = std::min(1.0, std::exp(std::log(2.0) - std::lgamma(n + 1.0)));
    return out;
  }
  const double t = out.rho * std::sqrt((n - 2.0) / one_minus);
  const boost::math::students_t dist(n - 2.0);
  out.p_value = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))), 0.0, 1.0);
  return out;
}

}  // namespace mapdesign
