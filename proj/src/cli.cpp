#include "mapdesign/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mapdesign/corpus.hpp"
#include "mapdesign/error.hpp"
#include "mapdesign/report.hpp"

#ifndef MAPDESIGN_VERSION
#define MAPDESIGN_VERSION "dev"
#endif

namespace mapdesign {

namespace {

using ojson = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string manifest;
  std::string out_dir;
  unsigned workers = 1;
  bool strict = false;
  CorpusConfig corpus;
  AnalysisConfig analysis;
  std::string hue_starts = "15,45,70,165,200,255,345";
  std::string sight_lines = "edges-center";
  std::string balance_weight = "moment";

  // aggregate
  std::string group_by;
  std::string format = "csv";
  std::string table = "wide";
  std::string articles;

  // compare / trend
  std::vector<std::string> indicators;
  std::size_t exact_max_product = 10000;
  std::string language = "both";
  std::string unit = "annual";
  std::size_t exact_max_n = 8;

  // cooccur
  double min_support = 0.05;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return (v != nullptr && *v != '\0') ? std::string(v) : fallback;
}

std::array<double, 7> parse_hue_starts(const std::string& text) {
  std::array<double, 7> out{};
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= out.size()) throw UsageError("--hue-starts takes exactly 7 angles");
    try {
      std::size_t used = 0;
      out[i++] = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--hue-starts: not a number: " + item);
    }
  }
  if (i != out.size()) throw UsageError("--hue-starts takes exactly 7 angles");
  return out;
}

std::set<GroupField> parse_group_by(const std::string& text) {
  std::set<GroupField> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "language") out.insert(GroupField::Language);
    else if (item == "year") out.insert(GroupField::Year);
    else if (item == "journal") out.insert(GroupField::Journal);
    else throw UsageError("--group-by: unknown field " + item);
  }
  return out;
}

void finalize_config(RunConfig& cfg) {
  cfg.analysis.color.thresholds.chromatic_starts = parse_hue_starts(cfg.hue_starts);
  parse_group_by(cfg.group_by);
  cfg.analysis.layout.sight_lines =
      cfg.sight_lines == "edges" ? SightLineMode::EdgesOnly : SightLineMode::EdgesAndCenter;
  cfg.analysis.layout.balance_weight = cfg.balance_weight == "area" ? BalanceWeight::Area : BalanceWeight::Moment;
  if (cfg.workers < 1) throw UsageError("--workers must be >= 1");
  if (cfg.corpus.year_min > cfg.corpus.year_max) throw UsageError("--year-min exceeds --year-max");
  if (!(cfg.min_support > 0.0 && cfg.min_support <= 1.0)) throw UsageError("--min-support must lie in (0,1]");
  for (const auto& name : cfg.indicators) {
    if (!Indicator::parse(name)) throw UsageError("unknown indicator " + name);
  }
  try {
    cfg.analysis.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

ojson config_echo(const RunConfig& cfg) {
  const auto& c = cfg.analysis.color;
  const auto& l = cfg.analysis.layout;
  ojson j;
  j["manifest"] = cfg.manifest;
  j["out"] = cfg.out_dir;
  j["workers"] = cfg.workers;
  j["strict"] = cfg.strict;
  j["year_min"] = cfg.corpus.year_min;
  j["year_max"] = cfg.corpus.year_max;
  j["black_max_value"] = c.thresholds.black_max_value;
  j["achromatic_max_saturation"] = c.thresholds.achromatic_max_saturation;
  j["white_min_value"] = c.thresholds.white_min_value;
  j["hue_starts"] = c.thresholds.chromatic_starts;
  j["min_hue_share"] = c.min_hue_share;
  j["erosion_radius"] = c.erosion_radius;
  j["alignment_tolerance"] = l.alignment_tolerance;
  j["sight_lines"] = cfg.sight_lines;
  j["balance_weight"] = cfg.balance_weight;
  j["group_by"] = cfg.group_by;
  j["format"] = cfg.format;
  j["table"] = cfg.table;
  j["articles"] = cfg.articles;
  j["indicators"] = cfg.indicators;
  j["exact_max_product"] = cfg.exact_max_product;
  j["language"] = cfg.language;
  j["unit"] = cfg.unit;
  j["exact_max_n"] = cfg.exact_max_n;
  j["min_support"] = cfg.min_support;
  return j;
}

struct RunState {
  ManifestLoad load;
  std::vector<MapMetrics> metrics;
  bool analyzed = false;
  std::vector<std::string> outputs;
  std::string fatal;
};

ojson summary_json(const RunConfig& cfg, const RunState& st, int exit_code) {
  ojson j;
  j["command"] = cfg.command;
  j["version"] = MAPDESIGN_VERSION;
  j["config"] = config_echo(cfg);
  const auto warnings = st.load.diagnostics.size() - st.load.error_count();
  std::size_t failed = 0;
  for (const auto& m : st.metrics) failed += m.failed() ? 1 : 0;
  j["counts"] = {
      {"records", st.load.records.size()}, {"rejected", st.load.error_count()},
      {"warnings", warnings},              {"analyzed", st.metrics.size()},
      {"failed", failed},
  };
  ojson diags = ojson::array();
  for (const auto& d : st.load.diagnostics) {
    diags.push_back({{"line", d.line},
                     {"severity", d.severity == Diagnostic::Severity::Error ? "error" : "warning"},
                     {"map_id", d.map_id},
                     {"message", d.message}});
  }
  j["diagnostics"] = std::move(diags);
  ojson failures = ojson::array();
  for (const auto& m : st.metrics) {
    if (m.failed()) failures.push_back({{"map_id", m.map_id}, {"messages", m.failures}});
  }
  j["failures"] = std::move(failures);
  j["outputs"] = st.outputs;
  j["fatal"] = st.fatal.empty() ? ojson(nullptr) : ojson(st.fatal);
  j["exit_code"] = exit_code;
  return j;
}

ArticleTable load_articles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, path);
  ArticleTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line.rfind("journal", 0) == 0)) continue;
    std::stringstream ss(line);
    std::string journal, year, count;
    if (!std::getline(ss, journal, ',') || !std::getline(ss, year, ',') || !std::getline(ss, count)) {
      throw Error(ErrorCode::SchemaViolation, path + ":" + std::to_string(line_no) + ": expected journal,year,articles");
    }
    try {
      table[{journal, std::stoi(year)}] += std::stod(count);
    } catch (const std::exception&) {
      throw Error(ErrorCode::SchemaViolation, path + ":" + std::to_string(line_no) + ": bad number");
    }
  }
  return table;
}

void emit(RunState& st, const RunConfig& cfg, const std::string& name, const std::string& content) {
  write_file_atomic(std::filesystem::path(cfg.out_dir) / name, content);
  st.outputs.push_back(name);
}

std::vector<Indicator> selected_indicators(const RunConfig& cfg, const std::vector<Indicator>& fallback) {
  if (cfg.indicators.empty()) return fallback;
  std::vector<Indicator> out;
  for (const auto& name : cfg.indicators) out.push_back(*Indicator::parse(name));
  return out;
}

void run_analysis_command(RunState& st, const RunConfig& cfg) {
  const auto& cmd = cfg.command;
  if (cmd == "validate") return;

  if (cmd == "cooccur") {
    std::vector<ItemsetRow> rows;
    auto mine = [&](const std::string& group, std::optional<Language> lang) {
      std::vector<Transaction> tx;
      for (const auto& r : st.load.records) {
        if (!lang || r.language == *lang) tx.push_back(r.transaction());
      }
      if (tx.empty()) return;
      std::vector<Transaction> multi;
      std::copy_if(tx.begin(), tx.end(), std::back_inserter(multi), [](Transaction t) { return t.size() >= 2; });
      for (const auto& fi : apriori(tx, cfg.min_support)) {
        ItemsetRow row{group, fi, tx.size(), std::nullopt};
        if (!multi.empty()) {
          row.multi_element_rate =
              static_cast<double>(support_count(multi, fi.items)) / static_cast<double>(multi.size());
        }
        rows.push_back(std::move(row));
      }
    };
    mine("all", std::nullopt);
    mine("zh", Language::Zh);
    mine("en", Language::En);
    emit(st, cfg, "cooccur.csv", itemsets_to_csv(rows));
    return;
  }

  st.metrics = analyze_corpus(st.load.records, cfg.analysis, cfg.workers);
  st.analyzed = true;

  if (cmd == "analyze") {
    emit(st, cfg, "metrics.jsonl", metrics_to_jsonl(st.metrics));
  } else if (cmd == "aggregate") {
    if (st.metrics.empty()) throw Error(ErrorCode::InvalidArgument, "no valid records to aggregate");
    std::optional<ArticleTable> articles;
    if (!cfg.articles.empty()) articles = load_articles(cfg.articles);
    const auto summaries = aggregate(st.metrics, parse_group_by(cfg.group_by), articles ? &*articles : nullptr);
    if (cfg.format == "jsonl") {
      emit(st, cfg, "aggregate.jsonl", aggregate_to_jsonl(summaries));
    } else {
      emit(st, cfg, "aggregate.csv",
           aggregate_to_csv(summaries, cfg.table == "long" ? TableLayout::Long : TableLayout::Wide));
    }
  } else if (cmd == "compare") {
    std::vector<Indicator> defaults;
    for (const auto& ind : Indicator::scalar_indicators()) {
      if (ind.kind() != Indicator::Kind::ChromaticDominant) defaults.push_back(ind);
    }
    MannWhitneyOptions options;
    options.exact_max_product = cfg.exact_max_product;
    std::vector<CompareRow> rows;
    for (const auto& ind : selected_indicators(cfg, defaults)) {
      CompareRow row{ind.name(), {}, {}};
      try {
        row.result = cross_group_compare(st.metrics, ind, options);
      } catch (const Error& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
    emit(st, cfg, "compare.csv", compare_to_csv(rows));
  } else if (cmd == "trend") {
    std::vector<Indicator> defaults = Indicator::scalar_indicators();
    for (auto k : {ElementKind::Legend, ElementKind::ScaleBar, ElementKind::NorthArrow}) {
      defaults.emplace_back(Indicator::Kind::Presence, k);
    }
    const TrendUnit unit = cfg.unit == "per-map" ? TrendUnit::PerMap : TrendUnit::AnnualMeans;
    SpearmanOptions options;
    options.exact_max_n = cfg.exact_max_n;
    std::vector<Language> langs;
    if (cfg.language != "en") langs.push_back(Language::Zh);
    if (cfg.language != "zh") langs.push_back(Language::En);
    std::vector<TrendRow> rows;
    for (auto lang : langs) {
      for (const auto& ind : selected_indicators(cfg, defaults)) {
        TrendRow row;
        row.language = std::string(language_code(lang));
        row.indicator = ind.name();
        row.unit = cfg.unit;
        row.points = trend_series(st.metrics, ind, lang, unit).years.size();
        try {
          row.result = yearly_trend(st.metrics, ind, lang, unit, options);
        } catch (const Error& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
    emit(st, cfg, "trend.csv", trend_to_csv(rows));
  }
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--manifest", cfg.manifest, "JSON-Lines corpus manifest")->required();
  sub->add_option("--out", cfg.out_dir, "Output directory (env MAPDESIGN_OUT)");
  sub->add_option("--workers", cfg.workers, "Worker threads (env MAPDESIGN_WORKERS)");
  sub->add_flag("--strict", cfg.strict, "Exit 1 when any record produced a diagnostic");
  sub->add_option("--year-min", cfg.corpus.year_min, "First accepted publication year");
  sub->add_option("--year-max", cfg.corpus.year_max, "Last accepted publication year");
}

void add_analysis(CLI::App* sub, RunConfig& cfg) {
  auto& c = cfg.analysis.color;
  auto& l = cfg.analysis.layout;
  sub->add_option("--black-v", c.thresholds.black_max_value, "Value below which a pixel is Black");
  sub->add_option("--achromatic-s", c.thresholds.achromatic_max_saturation, "Saturation below which a pixel is neutral");
  sub->add_option("--white-v", c.thresholds.white_min_value, "Value at or above which a neutral pixel is White");
  sub->add_option("--hue-starts", cfg.hue_starts, "Start angles of Orange,Yellow,Green,Cyan,Blue,Purple,Red");
  sub->add_option("--min-hue-share", c.min_hue_share, "Minimum category share counted by N_hue/E_hue");
  sub->add_option("--erosion", c.erosion_radius, "Mask erosion radius in pixels before color sampling");
  sub->add_option("--tolerance", l.alignment_tolerance, "Sight-line clustering tolerance (page fraction)");
  sub->add_option("--sight-lines", cfg.sight_lines, "edges-center or edges")
      ->check(CLI::IsMember({"edges-center", "edges"}));
  sub->add_option("--balance-weight", cfg.balance_weight, "moment or area")
      ->check(CLI::IsMember({"moment", "area"}));
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.out_dir = env_or("MAPDESIGN_OUT", "mapdesign-out");
  {
    const auto w = env_or("MAPDESIGN_WORKERS", "");
    if (!w.empty()) {
      try {
        cfg.workers = static_cast<unsigned>(std::stoul(w));
      } catch (const std::exception&) {
        err << "error: MAPDESIGN_WORKERS is not a number\n";
        return kExitUsage;
      }
    } else {
      cfg.workers = std::max(1u, std::thread::hardware_concurrency());
    }
  }

  CLI::App app{"Thematic map design metrics over an annotated map corpus", "mapdesign"};
  app.require_subcommand(1);
  auto* validate = app.add_subcommand("validate", "Check a manifest and report diagnostics");
  auto* analyze = app.add_subcommand("analyze", "Compute per-map color and layout metrics");
  auto* agg = app.add_subcommand("aggregate", "Summarize metrics per group");
  auto* compare = app.add_subcommand("compare", "Mann-Whitney U tests between zh and en maps");
  auto* trend = app.add_subcommand("trend", "Spearman trend tests against publication year");
  auto* cooccur = app.add_subcommand("cooccur", "Frequent element combinations (Apriori)");
  auto* version = app.add_subcommand("version", "Print the version");

  for (auto* sub : {validate, analyze, agg, compare, trend, cooccur}) add_common(sub, cfg);
  for (auto* sub : {analyze, agg, compare, trend}) add_analysis(sub, cfg);
  agg->add_option("--group-by", cfg.group_by, "Comma list of language,year,journal (empty = global)");
  agg->add_option("--format", cfg.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  agg->add_option("--table", cfg.table, "wide or long (csv only)")->check(CLI::IsMember({"wide", "long"}));
  agg->add_option("--articles", cfg.articles, "CSV of journal,year,articles for map-to-article ratios");
  compare->add_option("--indicator", cfg.indicators, "Indicator name (repeatable; default all)");
  compare->add_option("--exact-max-product", cfg.exact_max_product, "Largest n1*n2 for the exact test");
  trend->add_option("--indicator", cfg.indicators, "Indicator name (repeatable; default all)");
  trend->add_option("--language", cfg.language, "zh, en or both")->check(CLI::IsMember({"zh", "en", "both"}));
  trend->add_option("--unit", cfg.unit, "annual or per-map")->check(CLI::IsMember({"annual", "per-map"}));
  trend->add_option("--exact-max-n", cfg.exact_max_n, "Largest n for the permutation test");
  cooccur->add_option("--min-support", cfg.min_support, "Minimum itemset support in (0,1]");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (version->parsed()) {
    out << "mapdesign " << MAPDESIGN_VERSION << '\n';
    return kExitOk;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

  try {
    finalize_config(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  RunState st;
  int code = kExitOk;
  try {
    st.load = load_manifest(cfg.manifest, cfg.corpus);
    for (const auto& d : st.load.diagnostics) {
      err << cfg.manifest << ':' << d.line << ": "
          << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << ": " << d.message << '\n';
    }
    run_analysis_command(st, cfg);
    const bool failures = std::any_of(st.metrics.begin(), st.metrics.end(), [](const MapMetrics& m) { return m.failed(); });
    if (cfg.strict && (!st.load.diagnostics.empty() || failures)) code = kExitDiagnostics;
  } catch (const std::exception& e) {
    st.fatal = e.what();
    err << "error: " << e.what() << '\n';
    code = kExitDiagnostics;
  }

  try {
    write_file_atomic(std::filesystem::path(cfg.out_dir) / ("summary_" + cfg.command + ".json"),
                      summary_json(cfg, st, code).dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = kExitDiagnostics;
  }
  out << cfg.command << ": " << st.load.records.size() << " records, " << st.load.error_count() << " rejected";
  if (st.analyzed) {
    out << ", " << st.metrics.size() << " analyzed";
  }
  out << '\n';
  return code;
}

}  // namespace mapdesign
