#include "mapdesign/cooccurrence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

#include "mapdesign/error.hpp"

namespace mapdesign {

ItemSet::ItemSet(std::initializer_list<ElementKind> kinds) {
  for (auto k : kinds) insert(k);
}

int ItemSet::size() const { return std::popcount(bits_); }

std::vector<ElementKind> ItemSet::kinds() const {
  std::vector<ElementKind> out;
  for (auto k : kAllElementKinds) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

std::string ItemSet::label() const {
  std::string out;
  for (auto k : kinds()) {
    if (!out.empty()) out += '+';
    out += element_kind_name(k);
  }
  return out;
}

bool ItemSet::lexicographic_less(ItemSet a, ItemSet b) {
  const auto ka = a.kinds();
  const auto kb = b.kinds();
  return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
}

bool itemset_order_less(const FrequentItemset& a, const FrequentItemset& b) {
  if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
  if (a.support_count != b.support_count) return a.support_count > b.support_count;
  return ItemSet::lexicographic_less(a.items, b.items);
}

std::size_t support_count(std::span<const Transaction> transactions, ItemSet items) {
  return static_cast<std::size_t>(std::count_if(
      transactions.begin(), transactions.end(), [&](Transaction t) { return items.is_subset_of(t); }));
}

namespace {

// Highest kind index present, -1 for the empty set.
int last_kind(ItemSet s) { return s.empty() ? -1 : 15 - std::countl_zero(s.bits()); }

}  // namespace

std::vector<FrequentItemset> apriori(std::span<const Transaction> transactions, double min_support) {
  if (!std::isfinite(min_support) || min_support <= 0.0 || min_support > 1.0) {
    throw Error(ErrorCode::InvalidThreshold, "min_support must lie in (0, 1]");
  }
  if (transactions.empty()) throw Error(ErrorCode::InvalidArgument, "no transactions");

  const double n = static_cast<double>(transactions.size());
  auto frequent = [&](std::size_t count) { return static_cast<double>(count) / n >= min_support; };

  std::vector<FrequentItemset> result;
  std::vector<ItemSet> level;
  for (auto k : kAllElementKinds) {
    const ItemSet single{k};
    const auto count = support_count(transactions, single);
    if (frequent(count)) {
      level.push_back(single);
      result.push_back({single, count, count / n});
    }
  }

  while (level.size() > 1) {
    const std::unordered_set<std::uint16_t> previous = [&] {
      std::unordered_set<std::uint16_t> s;
      for (auto is : level) s.insert(is.bits());
      return s;
    }();
    // Join: two (k-1)-sets sharing everything but their last kind.
    std::vector<ItemSet> candidates;
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        const ItemSet a = level[i];
        const ItemSet b = level[j];
        const int la = last_kind(a);
        const int lb = last_kind(b);
        if (la == lb) continue;
        const auto prefix_a = static_cast<std::uint16_t>(a.bits() & ~(1u << la));
        const auto prefix_b = static_cast<std::uint16_t>(b.bits() & ~(1u << lb));
        if (prefix_a != prefix_b) continue;
        const ItemSet joined{static_cast<std::uint16_t>(a.bits() | b.bits())};
        // Prune: every (k-1)-subset must be frequent.
        bool keep = true;
        for (auto kind : joined.kinds()) {
          const auto sub = static_cast<std::uint16_t>(joined.bits() & ~(1u << static_cast<int>(kind)));
          if (!previous.contains(sub)) {
            keep = false;
            break;
          }
        }
        if (keep) candidates.push_back(joined);
      }
    }
    std::vector<ItemSet> next;
    for (auto c : candidates) {
      const auto count = support_count(transactions, c);
      if (frequent(count)) {
        next.push_back(c);
        result.push_back({c, count, count / n});
      }
    }
    level = std::move(next);
  }

  std::sort(result.begin(), result.end(), itemset_order_less);
  return result;
}

std::vector<FrequentItemset> top_itemsets(std::span<const FrequentItemset> itemsets, int size,
                                          std::size_t limit) {
  if (size < 1) throw Error(ErrorCode::InvalidArgument, "itemset size must be >= 1");
  std::vector<FrequentItemset> out;
  for (const auto& fi : itemsets) {
    if (fi.items.size() == size) out.push_back(fi);
  }
  std::sort(out.begin(), out.end(), itemset_order_less);
  if (out.size() > limit) out.resize(limit);
  return out;
}

double conditional_rate(std::span<const FrequentItemset> itemsets, ItemSet numerator,
                        ItemSet denominator) {
  if (!denominator.is_subset_of(numerator)) {
    throw Error(ErrorCode::InvalidArgument, "denominator must be a subset of numerator");
  }
  auto support_of = [&](ItemSet s) -> double {
    if (s.empty()) return 1.0;
    for (const auto& fi : itemsets) {
      if (fi.items == s) return fi.support;
    }
    throw Error(ErrorCode::InvalidArgument, "itemset " + s.label() + " is not among the frequent itemsets");
  };
  const double num = support_of(numerator);
  const double den = support_of(denominator);
  if (den == 0.0) throw Error(ErrorCode::ZeroDenominator, "denominator support is zero");
  return num / den;
}

double conditional_rate(std::span<const Transaction> transactions, ItemSet numerator,
                        ItemSet denominator) {
  if (!denominator.is_subset_of(numerator)) {
    throw Error(ErrorCode::InvalidArgument, "denominator must be a subset of numerator");
  }
  const auto den = support_count(transactions, denominator);
  if (den == 0) throw Error(ErrorCode::ZeroDenominator, "no transaction contains " + denominator.label());
  return static_cast<double>(support_count(transactions, numerator)) / static_cast<double>(den);
}

}  // namespace mapdesign
