#include "mapdesign/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "mapdesign/error.hpp"
#include "mapdesign/image_io.hpp"
#include "mapdesign/mask.hpp"

namespace mapdesign {

using json = nlohmann::json;

std::string_view language_code(Language language) {
  return language == Language::Zh ? "zh" : "en";
}

std::optional<Language> parse_language(std::string_view code) {
  if (code == "zh") return Language::Zh;
  if (code == "en") return Language::En;
  return std::nullopt;
}

const MapElement& MapRecord::main_map() const {
  for (const auto& e : elements) {
    if (e.kind == ElementKind::MainMap) return e;
  }
  throw Error(ErrorCode::InvalidArgument, "record " + map_id + " has no main map");
}

Transaction MapRecord::transaction() const {
  Transaction t;
  for (const auto& e : elements) t.insert(e.kind);
  return t;
}

std::size_t ManifestLoad::error_count() const {
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::Error;
  }));
}

// ---------------------------------------------------------------------------
// Manifest parsing

namespace {

struct LineRejected {
  std::string message;
};

const json& require(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw LineRejected{std::string("missing field \"") + key + "\""};
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const auto& v = require(obj, key);
  if (!v.is_string()) throw LineRejected{std::string("field \"") + key + "\" must be a string"};
  return v.get<std::string>();
}

double require_number(const json& obj, const char* key) {
  const auto& v = require(obj, key);
  if (!v.is_number()) throw LineRejected{std::string("field \"") + key + "\" must be a number"};
  return v.get<double>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

MapRecord parse_record(const json& obj, const std::filesystem::path& base_dir,
                       const CorpusConfig& config, std::vector<std::string>& warnings) {
  if (!obj.is_object()) throw LineRejected{"line is not a JSON object"};
  MapRecord rec;
  rec.map_id = require_string(obj, "map_id");
  if (rec.map_id.empty()) throw LineRejected{"map_id must be nonempty"};
  rec.image_path = resolve(base_dir, require_string(obj, "image_path"));

  if (const auto it = obj.find("mask_path"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw LineRejected{"field \"mask_path\" must be a string or null"};
    rec.mask_path = resolve(base_dir, it->get<std::string>());
  }

  const auto lang = parse_language(require_string(obj, "language"));
  if (!lang) throw LineRejected{"language must be \"zh\" or \"en\""};
  rec.language = *lang;
  rec.journal = require_string(obj, "journal");

  const auto& year = require(obj, "year");
  if (!year.is_number_integer()) throw LineRejected{"field \"year\" must be an integer"};
  rec.year = year.get<int>();
  if (rec.year < config.year_min || rec.year > config.year_max) {
    throw LineRejected{"year " + std::to_string(rec.year) + " outside corpus span " +
                       std::to_string(config.year_min) + "-" + std::to_string(config.year_max)};
  }

  if (const auto it = obj.find("page"); it != obj.end() && !it->is_null()) {
    const auto& w = require(*it, "width_px");
    const auto& h = require(*it, "height_px");
    if (!w.is_number_integer() || !h.is_number_integer() || w.get<int>() < 1 || h.get<int>() < 1) {
      throw LineRejected{"page dimensions must be positive integers"};
    }
    rec.page = PageGeometry(w.get<int>(), h.get<int>());
  }
  const PageGeometry check_page = rec.page.value_or(PageGeometry{});

  const auto& elements = require(obj, "elements");
  if (!elements.is_array()) throw LineRejected{"field \"elements\" must be an array"};
  int main_maps = 0;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& e = elements[i];
    if (!e.is_object()) throw LineRejected{"element " + std::to_string(i) + " is not an object"};
    const auto label = require_string(e, "kind");
    const auto kind = parse_element_kind(label);
    if (!kind) throw LineRejected{"unknown element kind \"" + label + "\""};
    const auto& b = require(e, "box");
    if (!b.is_object()) throw LineRejected{"element " + std::to_string(i) + " box is not an object"};
    try {
      OrientedBox box(require_number(b, "cx"), require_number(b, "cy"), require_number(b, "w"),
                      require_number(b, "h"), require_number(b, "theta"));
      box.check_page_bounds(check_page);
      if (box.overshoots_page(check_page)) {
        warnings.push_back("element " + std::to_string(i) + " (" + label +
                           ") overshoots the page within tolerated slack");
      }
      rec.elements.push_back({*kind, box});
    } catch (const Error& err) {
      throw LineRejected{"element " + std::to_string(i) + " (" + label + "): " + err.what()};
    }
    if (*kind == ElementKind::MainMap) ++main_maps;
  }
  if (main_maps == 0) throw LineRejected{"no main map"};
  if (main_maps > 1) throw LineRejected{"multiple main maps"};
  return rec;
}

}  // namespace

ManifestLoad parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                            const CorpusConfig& config) {
  ManifestLoad out;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    std::string map_id;
    try {
      const json obj = json::parse(line);
      if (obj.is_object()) {
        if (const auto it = obj.find("map_id"); it != obj.end() && it->is_string()) {
          map_id = it->get<std::string>();
        }
      }
      std::vector<std::string> warnings;
      MapRecord rec = parse_record(obj, base_dir, config, warnings);
      if (!seen.insert(rec.map_id).second) throw LineRejected{"duplicate map_id"};
      for (auto& w : warnings) {
        out.diagnostics.push_back({line_no, Diagnostic::Severity::Warning, map_id, std::move(w)});
      }
      out.records.push_back(std::move(rec));
    } catch (const json::exception& e) {
      out.diagnostics.push_back({line_no, Diagnostic::Severity::Error, map_id,
                                 std::string("malformed JSON: ") + e.what()});
    } catch (const LineRejected& e) {
      out.diagnostics.push_back({line_no, Diagnostic::Severity::Error, map_id, e.message});
    } catch (const Error& e) {
      out.diagnostics.push_back({line_no, Diagnostic::Severity::Error, map_id, e.what()});
    }
  }
  return out;
}

ManifestLoad load_manifest(const std::filesystem::path& path, const CorpusConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path(), config);
}

// ---------------------------------------------------------------------------
// Per-map analysis

void AnalysisConfig::validate() const {
  color.validate();
  layout.validate();
}

MapMetrics analyze_map(const MapRecord& record, const AnalysisConfig& config) {
  MapMetrics m;
  m.map_id = record.map_id;
  m.language = record.language;
  m.journal = record.journal;
  m.year = record.year;
  m.element_count = record.elements.size();
  for (const auto& e : record.elements) m.element_presence[static_cast<std::size_t>(e.kind)] = true;

  auto fail = [&](const std::exception& e) { m.failures.emplace_back(e.what()); };

  // File errors carry the bare file name.
  auto file_failure = [&](const Error& e, const char* what, const std::filesystem::path& p) {
    m.failures.push_back(std::string(error_code_name(e.code())) + ": " + what + " " + p.filename().string());
  };

  std::optional<RgbImage> image;
  try {
    image = read_image(record.image_path);
  } catch (const Error& e) {
    file_failure(e, "image", record.image_path);
  }

  std::optional<BinaryMask> raw_mask;
  if (record.mask_path) {
    try {
      raw_mask = read_mask(*record.mask_path);
    } catch (const Error& e) {
      file_failure(e, "mask", *record.mask_path);
    }
  }

  PageGeometry page;
  if (record.page) {
    page = *record.page;
    m.page_source = "manifest";
  } else if (image) {
    page = PageGeometry(image->width, image->height);
    m.page_source = "image";
  } else if (raw_mask) {
    page = PageGeometry(raw_mask->width(), raw_mask->height());
    m.page_source = "mask";
  } else {
    m.page_source = "assumed";
  }

  if (image && (image->width != page.width_px || image->height != page.height_px)) {
    m.failures.push_back(std::string(error_code_name(ErrorCode::DimensionMismatch)) +
                         ": image does not match page geometry");
    image.reset();
  }

  std::optional<BinaryMask> refined;
  if (raw_mask) {
    if (raw_mask->width() != page.width_px || raw_mask->height() != page.height_px) {
      m.failures.push_back(std::string(error_code_name(ErrorCode::DimensionMismatch)) +
                           ": mask does not match image dimensions");
    } else {
      try {
        refined = refine_main_mask(*raw_mask);
      } catch (const Error& e) {
        fail(e);
      }
    }
  }
  m.mask_fallback = !refined.has_value();

  try {
    m.layout = layout_profile(record.elements, page, refined ? &*refined : nullptr, config.layout);
  } catch (const Error& e) {
    fail(e);
  }

  if (image && !m.failed()) {
    try {
      const BinaryMask region = refined ? *refined : rasterize_box(record.main_map().box, page);
      m.color = color_profile(*image, region, config.color);
    } catch (const Error& e) {
      fail(e);
    }
  }
  return m;
}

std::vector<MapMetrics> analyze_corpus(const std::vector<MapRecord>& records,
                                       const AnalysisConfig& config, unsigned workers) {
  std::vector<MapMetrics> out(records.size());
  const unsigned pool = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(records.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) out[i] = analyze_map(records[i], config);
  };
  if (pool <= 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(pool);
    for (unsigned t = 0; t < pool; ++t) threads.emplace_back(work);
  }
  std::sort(out.begin(), out.end(), [](const MapMetrics& a, const MapMetrics& b) { return a.map_id < b.map_id; });
  return out;
}

// ---------------------------------------------------------------------------
// Indicators

namespace {

struct IndicatorName {
  Indicator::Kind kind;
  std::string_view name;
};

constexpr std::array<IndicatorName, 13> kIndicatorNames = {{
    {Indicator::Kind::ElementCount, "element_count"},
    {Indicator::Kind::SAve, "s_ave"},
    {Indicator::Kind::BAve, "b_ave"},
    {Indicator::Kind::BCon, "b_con"},
    {Indicator::Kind::NHue, "n_hue"},
    {Indicator::Kind::EHue, "e_hue"},
    {Indicator::Kind::ChromaticDominant, "chromatic_dominant"},
    {Indicator::Kind::DHier, "d_hier"},
    {Indicator::Kind::RMap, "r_map"},
    {Indicator::Kind::RHorizontal, "r_horizontal"},
    {Indicator::Kind::RVertical, "r_vertical"},
    {Indicator::Kind::BHorizontal, "b_horizontal"},
    {Indicator::Kind::BVertical, "b_vertical"},
}};

constexpr std::string_view kPresencePrefix = "presence_";

}  // namespace

std::optional<Indicator> Indicator::parse(std::string_view name) {
  for (const auto& n : kIndicatorNames) {
    if (n.name == name) return Indicator(n.kind);
  }
  if (name.starts_with(kPresencePrefix)) {
    if (const auto kind = parse_element_kind(name.substr(kPresencePrefix.size()))) {
      return Indicator(Kind::Presence, *kind);
    }
  }
  return std::nullopt;
}

const std::vector<Indicator>& Indicator::scalar_indicators() {
  static const std::vector<Indicator> all = [] {
    std::vector<Indicator> v;
    for (const auto& n : kIndicatorNames) v.emplace_back(n.kind);
    return v;
  }();
  return all;
}

std::string Indicator::name() const {
  if (kind_ == Kind::Presence) return std::string(kPresencePrefix) + std::string(element_kind_name(element_));
  for (const auto& n : kIndicatorNames) {
    if (n.kind == kind_) return std::string(n.name);
  }
  return "unknown";
}

bool Indicator::needs_color() const {
  switch (kind_) {
    case Kind::SAve:
    case Kind::BAve:
    case Kind::BCon:
    case Kind::NHue:
    case Kind::EHue:
    case Kind::ChromaticDominant:
      return true;
    default:
      return false;
  }
}

bool Indicator::needs_layout() const {
  switch (kind_) {
    case Kind::DHier:
    case Kind::RMap:
    case Kind::RHorizontal:
    case Kind::RVertical:
    case Kind::BHorizontal:
    case Kind::BVertical:
      return true;
    default:
      return false;
  }
}

std::optional<double> Indicator::value(const MapMetrics& m) const {
  // Failed maps never feed indicator statistics.
  if (m.failed()) return std::nullopt;
  if (needs_color() && !m.color) return std::nullopt;
  if (needs_layout() && !m.layout) return std::nullopt;
  switch (kind_) {
    case Kind::ElementCount: return static_cast<double>(m.element_count);
    case Kind::SAve: return m.color->s_ave;
    case Kind::BAve: return m.color->b_ave;
    case Kind::BCon: return m.color->b_con;
    case Kind::NHue: return static_cast<double>(m.color->n_hue);
    case Kind::EHue: return m.color->e_hue;
    case Kind::ChromaticDominant: return is_achromatic(m.color->h_main) ? 0.0 : 1.0;
    case Kind::DHier: return m.layout->hierarchy.d_hier;
    case Kind::RMap: return m.layout->r_map;
    case Kind::RHorizontal: return m.layout->alignment.r_horizontal;
    case Kind::RVertical: return m.layout->alignment.r_vertical;
    case Kind::BHorizontal: return m.layout->balance.b_horizontal;
    case Kind::BVertical: return m.layout->balance.b_vertical;
    case Kind::Presence: return m.element_presence[static_cast<std::size_t>(element_)] ? 1.0 : 0.0;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Aggregation and tests

IndicatorSummary summarize(std::vector<double> values) {
  IndicatorSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  auto quantile = [&](double p) {
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  return s;
}

std::vector<GroupSummary> aggregate(const std::vector<MapMetrics>& metrics,
                                    const std::set<GroupField>& group_by,
                                    const ArticleTable* articles) {
  std::map<GroupKey, std::vector<const MapMetrics*>> cells;
  for (const auto& m : metrics) {
    GroupKey key;
    if (group_by.contains(GroupField::Language)) key.language = m.language;
    if (group_by.contains(GroupField::Year)) key.year = m.year;
    if (group_by.contains(GroupField::Journal)) key.journal = m.journal;
    cells[key].push_back(&m);
  }

  std::vector<GroupSummary> out;
  for (const auto& [key, members] : cells) {
    GroupSummary g;
    g.key = key;
    g.count = members.size();
    for (const auto* m : members) {
      if (m->failed()) ++g.failure_count;
      for (std::size_t k = 0; k < kElementKindCount; ++k) g.presence[k] += m->element_presence[k] ? 1.0 : 0.0;
    }
    for (auto& p : g.presence) p /= static_cast<double>(g.count);
    for (const auto& ind : Indicator::scalar_indicators()) {
      std::vector<double> values;
      for (const auto* m : members) {
        if (const auto v = ind.value(*m)) values.push_back(*v);
      }
      g.indicators.emplace_back(ind, summarize(std::move(values)));
    }
    if (articles != nullptr) {
      std::set<std::pair<std::string, int>> occupied;
      for (const auto* m : members) occupied.emplace(m->journal, m->year);
      double total = 0.0;
      bool any = false;
      for (const auto& cell : occupied) {
        if (const auto it = articles->find(cell); it != articles->end()) {
          total += it->second;
          any = true;
        }
      }
      if (any) {
        g.articles = total;
        if (total > 0.0) g.map_article_ratio = static_cast<double>(g.count) / total;
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

TestResult cross_group_compare(const std::vector<MapMetrics>& metrics, const Indicator& indicator,
                               const MannWhitneyOptions& options) {
  std::vector<double> zh;
  std::vector<double> en;
  for (const auto& m : metrics) {
    const auto v = indicator.value(m);
    if (!v) continue;
    (m.language == Language::Zh ? zh : en).push_back(*v);
  }
  if (zh.empty() || en.empty()) {
    throw Error(ErrorCode::EmptyGroup, "no " + indicator.name() + " values for " +
                                           std::string(zh.empty() ? "zh" : "en"));
  }
  return mann_whitney_u(zh, en, options);
}

TrendInput trend_series(const std::vector<MapMetrics>& metrics, const Indicator& indicator,
                        Language language, TrendUnit unit) {
  TrendInput in;
  if (unit == TrendUnit::PerMap) {
    for (const auto& m : metrics) {
      if (m.language != language) continue;
      if (const auto v = indicator.value(m)) {
        in.years.push_back(m.year);
        in.values.push_back(*v);
      }
    }
    return in;
  }
  std::map<int, std::pair<double, std::size_t>> by_year;
  for (const auto& m : metrics) {
    if (m.language != language) continue;
    if (const auto v = indicator.value(m)) {
      auto& [sum, n] = by_year[m.year];
      sum += *v;
      ++n;
    }
  }
  for (const auto& [year, acc] : by_year) {
    in.years.push_back(year);
    in.values.push_back(acc.first / static_cast<double>(acc.second));
  }
  return in;
}

CorrelationResult yearly_trend(const std::vector<MapMetrics>& metrics, const Indicator& indicator,
                               Language language, TrendUnit unit, const SpearmanOptions& options) {
  const auto series = trend_series(metrics, indicator, language, unit);
  const std::set<double> distinct(series.years.begin(), series.years.end());
  if (distinct.size() < 3) {
    throw Error(ErrorCode::InsufficientYears,
                std::to_string(distinct.size()) + " distinct years for " + indicator.name());
  }
  return spearman(series.years, series.values, options);
}

}  // namespace mapdesign
