#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mapdesign/color.hpp"
#include "mapdesign/cooccurrence.hpp"
#include "mapdesign/geometry.hpp"
#include "mapdesign/layout.hpp"
#include "mapdesign/stats.hpp"

namespace mapdesign {

enum class Language { Zh, En };

std::string_view language_code(Language language);
std::optional<Language> parse_language(std::string_view code);

struct MapRecord {
  std::string map_id;
  std::filesystem::path image_path;
  std::optional<std::filesystem::path> mask_path;
  Language language = Language::Zh;
  std::string journal;
  int year = 0;
  std::vector<MapElement> elements;
  /// Optional page size from the manifest; otherwise taken from the image.
  std::optional<PageGeometry> page;

  const MapElement& main_map() const;
  Transaction transaction() const;
};

struct Diagnostic {
  enum class Severity { Warning, Error };
  std::size_t line = 0;  // 1-based manifest line
  Severity severity = Severity::Error;
  std::string map_id;    // empty when the line could not be parsed that far
  std::string message;
};

struct ManifestLoad {
  std::vector<MapRecord> records;
  std::vector<Diagnostic> diagnostics;

  std::size_t error_count() const;
};

struct CorpusConfig {
  int year_min = 1990;
  int year_max = 2020;
};

/// Parses a JSON-Lines manifest. Relative image and mask paths resolve
/// against the manifest's directory. Bad lines become diagnostics and are
/// rejected; blank lines are skipped. Throws Error(FileNotFound).
ManifestLoad load_manifest(const std::filesystem::path& path, const CorpusConfig& config = {});

/// Parses manifest text directly; `base_dir` resolves relative paths.
ManifestLoad parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                            const CorpusConfig& config = {});

struct AnalysisConfig {
  ColorOptions color;
  LayoutOptions layout;

  void validate() const;
};

struct MapMetrics {
  std::string map_id;
  Language language = Language::Zh;
  std::string journal;
  int year = 0;
  std::optional<ColorProfile> color;
  std::optional<LayoutProfile> layout;
  std::size_t element_count = 0;
  std::array<bool, kElementKindCount> element_presence{};
  /// Color was sampled from the rasterized MainMap box (no usable mask).
  bool mask_fallback = false;
  /// Where the page geometry came from: "manifest", "image", "mask", or
  /// "assumed" (unit square; only when nothing else was readable).
  std::string page_source;
  std::vector<std::string> failures;

  bool failed() const { return !failures.empty(); }
};

/// Never throws for per-map problems; they land in `failures`.
MapMetrics analyze_map(const MapRecord& record, const AnalysisConfig& config = {});

/// Runs analyze_map over a bounded worker pool. Output sorted by map_id.
std::vector<MapMetrics> analyze_corpus(const std::vector<MapRecord>& records,
                                       const AnalysisConfig& config, unsigned workers);

/// Per-map scalar indicators available for aggregation and testing.
class Indicator {
 public:
  enum class Kind {
    ElementCount,
    SAve,
    BAve,
    BCon,
    NHue,
    EHue,
    ChromaticDominant,
    DHier,
    RMap,
    RHorizontal,
    RVertical,
    BHorizontal,
    BVertical,
    Presence,
  };

  explicit Indicator(Kind kind, ElementKind element = ElementKind::MainMap)
      : kind_(kind), element_(element) {}

  /// Accepts the names produced by name(), e.g. "s_ave" or "presence_Legend".
  static std::optional<Indicator> parse(std::string_view name);
  /// Scalar indicators in output column order (presence excluded).
  static const std::vector<Indicator>& scalar_indicators();

  std::string name() const;
  Kind kind() const { return kind_; }
  bool needs_color() const;
  bool needs_layout() const;

  /// nullopt when the map lacks the underlying profile.
  std::optional<double> value(const MapMetrics& m) const;

  friend bool operator==(const Indicator&, const Indicator&) = default;

 private:
  Kind kind_;
  ElementKind element_;
};

enum class GroupField { Language, Year, Journal };

struct GroupKey {
  std::optional<Language> language;
  std::optional<int> year;
  std::optional<std::string> journal;

  auto operator<=>(const GroupKey&) const = default;
};

struct IndicatorSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

struct GroupSummary {
  GroupKey key;
  std::size_t count = 0;         // all maps in the cell
  std::size_t failure_count = 0;
  std::vector<std::pair<Indicator, IndicatorSummary>> indicators;
  std::array<double, kElementKindCount> presence{};
  std::optional<double> articles;
  std::optional<double> map_article_ratio;
};

/// Article counts keyed by (journal, year), for map-to-article ratios.
using ArticleTable = std::map<std::pair<std::string, int>, double>;

/// Quartiles use linear interpolation between order statistics.
IndicatorSummary summarize(std::vector<double> values);

/// One summary per occupied cell, sorted by key. Indicator statistics skip
/// maps missing the underlying profile; counts and presence use every map.
std::vector<GroupSummary> aggregate(const std::vector<MapMetrics>& metrics,
                                    const std::set<GroupField>& group_by,
                                    const ArticleTable* articles = nullptr);

/// Mann-Whitney U of zh (x) against en (y). Throws Error(EmptyGroup).
TestResult cross_group_compare(const std::vector<MapMetrics>& metrics, const Indicator& indicator,
                               const MannWhitneyOptions& options = {});

enum class TrendUnit { AnnualMeans, PerMap };

struct TrendInput {
  std::vector<double> years;
  std::vector<double> values;
};

/// The (year, value) pairs a trend test runs on.
TrendInput trend_series(const std::vector<MapMetrics>& metrics, const Indicator& indicator,
                        Language language, TrendUnit unit = TrendUnit::AnnualMeans);

/// Spearman between year and the indicator. Throws
/// Error(InsufficientYears) with fewer than 3 distinct years and
/// propagates Error(ConstantInput).
CorrelationResult yearly_trend(const std::vector<MapMetrics>& metrics, const Indicator& indicator,
                               Language language, TrendUnit unit = TrendUnit::AnnualMeans,
                               const SpearmanOptions& options = {});

}  // namespace mapdesign
