#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mapdesign/geometry.hpp"

namespace mapdesign {

/// Set of element kinds, one bit per kind in declaration order.
class ItemSet {
 public:
  constexpr ItemSet() = default;
  constexpr explicit ItemSet(std::uint16_t bits) : bits_(bits & kUniverse) {}
  ItemSet(std::initializer_list<ElementKind> kinds);

  static constexpr std::uint16_t kUniverse = (1u << kElementKindCount) - 1;

  std::uint16_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int size() const;
  bool contains(ElementKind kind) const { return (bits_ >> static_cast<int>(kind)) & 1u; }
  bool is_subset_of(ItemSet other) const { return (bits_ & ~other.bits_) == 0; }
  void insert(ElementKind kind) { bits_ |= static_cast<std::uint16_t>(1u << static_cast<int>(kind)); }
  std::vector<ElementKind> kinds() const;

  /// "Legend+MainMap" style label, kinds joined in declaration order.
  std::string label() const;

  /// Lexicographic comparison of the sorted kind sequences.
  static bool lexicographic_less(ItemSet a, ItemSet b);

  friend bool operator==(ItemSet, ItemSet) = default;

 private:
  std::uint16_t bits_ = 0;
};

/// One map's deduplicated element kinds.
using Transaction = ItemSet;

struct FrequentItemset {
  ItemSet items;
  std::size_t support_count = 0;
  double support = 0.0;

  friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

/// Level-wise Apriori. Result sorted by (size asc, support desc,
/// lexicographic items). Throws Error(InvalidThreshold) unless
/// min_support is in (0, 1], and Error(InvalidArgument) on an empty
/// transaction list.
std::vector<FrequentItemset> apriori(std::span<const Transaction> transactions, double min_support);

/// Canonical output order shared by apriori and its tests.
bool itemset_order_less(const FrequentItemset& a, const FrequentItemset& b);

/// The `limit` highest-support itemsets of exactly `size` kinds.
std::vector<FrequentItemset> top_itemsets(std::span<const FrequentItemset> itemsets, int size,
                                          std::size_t limit);

/// support(numerator) / support(denominator). The empty set has support 1.
/// Throws Error(InvalidArgument) when denominator is not a subset of
/// numerator or either set is missing from `itemsets`, and
/// Error(ZeroDenominator) when the denominator has zero support.
double conditional_rate(std::span<const FrequentItemset> itemsets, ItemSet numerator,
                        ItemSet denominator);

/// Same ratio computed directly from the transactions, independent of any
/// mining threshold. Throws Error(ZeroDenominator)
/// when no transaction contains the denominator.
double conditional_rate(std::span<const Transaction> transactions, ItemSet numerator,
                        ItemSet denominator);

/// Number of transactions containing `items`.
std::size_t support_count(std::span<const Transaction> transactions, ItemSet items);

}  // namespace mapdesign
