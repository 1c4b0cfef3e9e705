#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "mapdesign/error.hpp"
#include "mapdesign/stats.hpp"
#include "oracles.hpp"

using namespace mapdesign;

TEST_CASE("mid-ranks") {
  CHECK(rank_with_ties(std::vector<double>{10, 20, 30}) == std::vector<double>{1, 2, 3});
  CHECK(rank_with_ties(std::vector<double>{5, 5, 9}) == std::vector<double>{1.5, 1.5, 3});
  CHECK(rank_with_ties(std::vector<double>{7, 7, 7, 7}) == std::vector<double>{2.5, 2.5, 2.5, 2.5});
  CHECK(rank_with_ties(std::vector<double>{3, 1, 2, 1}) == std::vector<double>{4, 1.5, 3, 1.5});
  CHECK(rank_with_ties(std::vector<double>{}).empty());
}

TEST_CASE("Mann-Whitney small exact cases") {
  const std::vector<double> x = {1, 2}, y = {3, 4};
  const auto r = mann_whitney_u(x, y);
  CHECK(r.u_statistic == 0.0);
  CHECK(r.method == TestMethod::Exact);
  CHECK(r.p_value == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  CHECK(r.p_value == oracle::mann_whitney_enumerated_p(x, y));

  const std::vector<double> same = {1, 2, 3};
  const auto s = mann_whitney_u(same, same);
  CHECK(s.u_statistic == 4.5);
  CHECK(s.method == TestMethod::NormalApproximation);  // ties force the approximation
  CHECK(s.p_value == doctest::Approx(1.0));
}

TEST_CASE("Mann-Whitney on shifted grids") {
  std::vector<double> x(100), y(100);
  std::iota(x.begin(), x.end(), 1.0);
  std::iota(y.begin(), y.end(), 51.0);
  const auto r = mann_whitney_u(x, y);
  CHECK(r.method == TestMethod::NormalApproximation);  // the overlap 51..100 is tied
  CHECK(r.p_value < 0.001);
  CHECK(r.u_statistic == 1250.0);
  // Brute-force rank sum of x: ranks 1..50 unshared, 51..100 tie pairwise.
  double r1 = 0;
  const auto ranks = rank_with_ties([&] {
    std::vector<double> pooled(x);
    pooled.insert(pooled.end(), y.begin(), y.end());
    return pooled;
  }());
  for (std::size_t i = 0; i < 100; ++i) r1 += ranks[i];
  CHECK(r.u_statistic == doctest::Approx(std::min(r1 - 5050.0, 10000.0 - (r1 - 5050.0))));
}

TEST_CASE("exact p agrees with enumeration over every rank assignment up to 5x5") {
  for (std::size_t n1 = 1; n1 <= 5; ++n1) {
    for (std::size_t n2 = 1; n2 <= 5; ++n2) {
      const std::size_t n = n1 + n2;
      std::vector<int> pick(n, 0);
      std::fill(pick.end() - static_cast<std::ptrdiff_t>(n1), pick.end(), 1);
      do {
        std::vector<double> x, y;
        for (std::size_t i = 0; i < n; ++i) (pick[i] ? x : y).push_back(static_cast<double>(i) * 1.5);
        const auto r = mann_whitney_u(x, y);
        REQUIRE(r.method == TestMethod::Exact);
        REQUIRE(r.p_value == oracle::mann_whitney_enumerated_p(x, y));
      } while (std::next_permutation(pick.begin(), pick.end()));
    }
  }
}

TEST_CASE("null counts are symmetric and sum to the binomial coefficient") {
  const auto counts = mann_whitney_null_counts(4, 6);
  REQUIRE(counts.size() == 25);
  long double total = 0;
  for (std::size_t u = 0; u < counts.size(); ++u) {
    total += counts[u];
    CHECK(counts[u] == counts[counts.size() - 1 - u]);
  }
  CHECK(total == 210.0L);
}

TEST_CASE("Mann-Whitney invariances and errors") {
  std::mt19937 rng(8);
  std::normal_distribution<double> nd(0, 1);
  std::vector<double> x(9), y(12);
  for (auto& v : x) v = nd(rng);
  for (auto& v : y) v = nd(rng) + 0.7;
  const auto a = mann_whitney_u(x, y);
  const auto b = mann_whitney_u(y, x);
  CHECK(a.u_statistic == b.u_statistic);
  CHECK(a.p_value == b.p_value);

  auto fx = x, fy = y;
  for (auto& v : fx) v = std::exp(v) * 3 + 1;
  for (auto& v : fy) v = std::exp(v) * 3 + 1;
  const auto c = mann_whitney_u(fx, fy);
  CHECK(c.u_statistic == a.u_statistic);
  CHECK(c.p_value == a.p_value);

  MannWhitneyOptions approx;
  approx.method = MannWhitneyOptions::Method::Asymptotic;
  CHECK(mann_whitney_u(x, y, approx).method == TestMethod::NormalApproximation);

  const std::vector<double> empty;
  CHECK_THROWS_AS(mann_whitney_u(empty, y), Error);
  MannWhitneyOptions exact;
  exact.method = MannWhitneyOptions::Method::Exact;
  const std::vector<double> tied = {1, 1, 2};
  CHECK_THROWS_AS(mann_whitney_u(tied, y, exact), Error);

  const std::vector<double> flat = {3, 3, 3};
  const auto d = mann_whitney_u(flat, flat);
  CHECK(d.degenerate);
  CHECK(d.p_value == 1.0);
}

TEST_CASE("exact and approximate p agree on moderate samples") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(0, 1);
  MannWhitneyOptions exact, approx;
  exact.method = MannWhitneyOptions::Method::Exact;
  approx.method = MannWhitneyOptions::Method::Asymptotic;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n1 = 15 + trial % 16, n2 = 30 - trial % 16;
    std::vector<double> x(n1), y(n2);
    const double shift = 0.05 * (trial % 7);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng) + shift;
    const double pe = mann_whitney_u(x, y, exact).p_value;
    const double pa = mann_whitney_u(x, y, approx).p_value;
    CHECK(std::abs(pe - pa) <= 0.01);
  }
}

TEST_CASE("Spearman basic cases") {
  const std::vector<double> x = {1, 2, 3, 4};
  CHECK(spearman(x, std::vector<double>{1, 2, 3, 4}).rho == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(spearman(x, std::vector<double>{4, 3, 2, 1}).rho == doctest::Approx(-1.0).epsilon(1e-15));

  const std::vector<double> a = {1, 2, 3}, b = {2, 1, 3};
  const auto r = spearman(a, b);
  CHECK(r.rho == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.method == CorrelationMethod::ExactPermutation);
  // Every one of the 3! orderings has |rho| >= 0.5.
  CHECK(r.p_value == 1.0);
  CHECK(oracle::spearman_enumerated(a, b).p == 1.0);
}

TEST_CASE("Spearman exact p agrees with permutation enumeration") {
  for (std::size_t n = 3; n <= 6; ++n) {
    std::vector<double> x(n), y(n);
    std::iota(x.begin(), x.end(), 1.0);
    std::iota(y.begin(), y.end(), 1.0);
    do {
      const auto r = spearman(x, y);
      const auto ref = oracle::spearman_enumerated(x, y);
      REQUIRE(r.rho == doctest::Approx(ref.rho).epsilon(1e-12));
      REQUIRE(r.p_value == ref.p);
    } while (std::next_permutation(y.begin(), y.end()));
  }
}

TEST_CASE("Spearman symmetry, ties and errors") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(0, 5);
  for (int i = 0; i < 30; ++i) {
    std::vector<double> x(12), y(12);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    x[0] = -1;
    y[0] = -1;  // guarantees nonconstant ranks
    const auto a = spearman(x, y);
    const auto b = spearman(y, x);
    CHECK(a.rho == doctest::Approx(b.rho).epsilon(1e-14));
    CHECK(a.p_value == doctest::Approx(b.p_value).epsilon(1e-12));
    // With ties rho is Pearson on the mid-ranks.
    const auto rx = rank_with_ties(x), ry = rank_with_ties(y);
    CHECK(a.rho == doctest::Approx(pearson(rx, ry)).epsilon(1e-14));
  }

  const std::vector<double> shortx = {1, 2}, constant = {4, 4, 4}, three = {1, 2, 3};
  CHECK_THROWS_AS(spearman(shortx, shortx), Error);
  CHECK_THROWS_AS(spearman(three, shortx), Error);
  try {
    spearman(three, constant);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConstantInput);
  }
}

TEST_CASE("Spearman t approximation for larger n") {
  std::vector<double> x(20), y(20);
  std::iota(x.begin(), x.end(), 0.0);
  for (std::size_t i = 0; i < 20; ++i) y[i] = static_cast<double>(i) + ((i % 3 == 0) ? 2.5 : 0.0);
  const auto r = spearman(x, y);
  CHECK(r.method == CorrelationMethod::TApproximation);
  CHECK(r.rho > 0.9);
  CHECK(r.p_value < 1e-6);

  const auto perfect = spearman(x, x);
  CHECK(perfect.rho == 1.0);
  CHECK(perfect.p_value > 0.0);
  CHECK(perfect.p_value < 1e-15);

  // Monotone transforms leave everything unchanged.
  auto fx = x;
  for (auto& v : fx) v = v * v * v + 2;
  CHECK(spearman(fx, y).rho == doctest::Approx(r.rho).epsilon(1e-15));
}
