#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mapdesign/corpus.hpp"

namespace mapdesign {

/// Six significant digits ("%.6g"), with negative zero printed as "0".
std::string format_number(double value);

/// Writes to a sibling temp file then renames over `path`.
/// Throws Error(IoError).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// One JSON object per map, in input order.
std::string metrics_to_jsonl(const std::vector<MapMetrics>& metrics);

enum class TableLayout {
  Wide,  // one row per group
  Long,  // one row per (group, indicator, statistic)
};

/// Throws Error(InvalidArgument) when `summaries` is empty.
std::string aggregate_to_csv(const std::vector<GroupSummary>& summaries, TableLayout layout = TableLayout::Wide);
std::string aggregate_to_jsonl(const std::vector<GroupSummary>& summaries);

struct ItemsetRow {
  std::string group;  // "all", "zh" or "en"
  FrequentItemset itemset;
  std::size_t transactions = 0;
  /// Support among transactions holding at least two kinds.
  std::optional<double> multi_element_rate;
};

std::string itemsets_to_csv(const std::vector<ItemsetRow>& rows);

struct CompareRow {
  std::string indicator;
  TestResult result;
  std::string error;  // set instead of result fields when the test failed
};

std::string compare_to_csv(const std::vector<CompareRow>& rows);

struct TrendRow {
  std::string language;
  std::string indicator;
  std::string unit;
  std::size_t points = 0;
  std::optional<CorrelationResult> result;
  std::string error;
};

std::string trend_to_csv(const std::vector<TrendRow>& rows);

}  // namespace mapdesign
