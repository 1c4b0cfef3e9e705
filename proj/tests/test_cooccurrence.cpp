#include <doctest.h>

#include <random>
#include <vector>

#include "mapdesign/cooccurrence.hpp"
#include "mapdesign/error.hpp"
#include "oracles.hpp"

using namespace mapdesign;

namespace {

constexpr auto A = ElementKind::MainMap;
constexpr auto B = ElementKind::Legend;
constexpr auto C = ElementKind::ScaleBar;

const std::vector<Transaction> kExample = {{A, B}, {A, B}, {A}};

}  // namespace

TEST_CASE("itemset basics") {
  const ItemSet s{B, A};
  CHECK(s.size() == 2);
  CHECK(s.contains(A));
  CHECK_FALSE(s.contains(C));
  CHECK(ItemSet{A}.is_subset_of(s));
  CHECK(s.label() == "MainMap+Legend");
  CHECK(ItemSet{}.empty());
  CHECK(ItemSet::lexicographic_less(ItemSet{A, C}, ItemSet{B}));
  CHECK(ItemSet::lexicographic_less(ItemSet{A}, ItemSet{A, B}));
}

TEST_CASE("apriori on the worked example") {
  const auto out = apriori(kExample, 0.5);
  REQUIRE(out.size() == 3);
  CHECK(out[0].items == ItemSet{A});
  CHECK(out[0].support == 1.0);
  CHECK(out[1].items == ItemSet{B});
  CHECK(out[1].support == doctest::Approx(2.0 / 3.0));
  CHECK(out[2].items == ItemSet{A, B});
  CHECK(out[2].support_count == 2);
  CHECK(out == oracle::brute_force_itemsets(kExample, 0.5));
}

TEST_CASE("apriori thresholds") {
  const std::vector<Transaction> tx = {{A, B, C}, {A, C}, {A, B}};
  const auto all = apriori(tx, 1.0);
  REQUIRE(all.size() == 1);
  CHECK(all[0].items == ItemSet{A});

  const std::vector<Transaction> single = {{A}};
  const auto one = apriori(single, 0.5);
  REQUIRE(one.size() == 1);
  CHECK(one[0].support == 1.0);

  CHECK_THROWS_AS(apriori(tx, 0.0), Error);
  CHECK_THROWS_AS(apriori(tx, 1.01), Error);
  CHECK_THROWS_AS(apriori(std::vector<Transaction>{}, 0.5), Error);
}

TEST_CASE("apriori agrees with brute force and is anti-monotone") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    const auto tx = oracle::random_transactions(rng, 20 + 30 * trial);
    std::size_t previous = 0;
    for (double s : {0.5, 0.2, 0.05}) {
      const auto out = apriori(tx, s);
      REQUIRE(out == oracle::brute_force_itemsets(tx, s));
      CHECK(out.size() >= previous);
      previous = out.size();
      for (const auto& f : out) {
        for (auto k : f.items.kinds()) {
          ItemSet sub(static_cast<std::uint16_t>(f.items.bits() & ~(1u << static_cast<int>(k))));
          if (sub.empty()) continue;
          const bool present = std::any_of(out.begin(), out.end(), [&](const auto& g) { return g.items == sub; });
          CHECK(present);
        }
      }
    }
  }
}

TEST_CASE("top itemsets") {
  const auto out = apriori(kExample, 0.5);
  const auto pairs = top_itemsets(out, 2, 1);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].items == ItemSet{A, B});
  CHECK(top_itemsets(out, 5, 3).empty());
  CHECK(top_itemsets(out, 1, 0).empty());
  const auto singles = top_itemsets(out, 1, 10);
  REQUIRE(singles.size() == 2);
  CHECK(singles[0].items == ItemSet{A});
}

TEST_CASE("conditional rates") {
  const auto out = apriori(kExample, 0.5);
  CHECK(conditional_rate(out, ItemSet{A, B}, ItemSet{B}) == 1.0);
  CHECK(conditional_rate(out, ItemSet{A, B}, ItemSet{A, B}) == 1.0);
  CHECK(conditional_rate(out, ItemSet{A, B}, ItemSet{}) == doctest::Approx(2.0 / 3.0));
  CHECK(conditional_rate(out, ItemSet{A, B}, ItemSet{A}) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(conditional_rate(out, ItemSet{A}, ItemSet{B}), Error);
  CHECK_THROWS_AS(conditional_rate(out, ItemSet{A, C}, ItemSet{A}), Error);

  const std::span<const Transaction> tx(kExample);
  CHECK(conditional_rate(tx, ItemSet{A, B}, ItemSet{B}) == 1.0);
  CHECK(support_count(tx, ItemSet{A, B}) == 2);
  CHECK(support_count(tx, ItemSet{}) == 3);
  try {
    conditional_rate(tx, ItemSet{A, C}, ItemSet{C});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroDenominator);
  }
}
