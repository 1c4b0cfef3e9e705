#include "mapdesign/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mapdesign/error.hpp"

namespace mapdesign {

using ojson = nlohmann::ordered_json;

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename onto " + path.string());
  }
}

namespace {

// Value after a round trip through its 6-digit text form.
double rounded(double v) {
  const double r = std::strtod(format_number(v).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

ojson color_json(const ColorProfile& c) {
  ojson j;
  j["h_main"] = std::string(hue_category_name(c.h_main));
  j["s_ave"] = rounded(c.s_ave);
  j["b_ave"] = rounded(c.b_ave);
  j["b_con"] = rounded(c.b_con);
  j["n_hue"] = c.n_hue;
  j["e_hue"] = rounded(c.e_hue);
  j["pixel_count"] = c.histogram.pixel_count;
  ojson hist = ojson::object();
  for (std::size_t i = 0; i < kHueCategoryCount; ++i) {
    hist[std::string(hue_category_name(static_cast<HueCategory>(i)))] = rounded(c.histogram.proportions[i]);
  }
  j["hue_proportions"] = std::move(hist);
  return j;
}

ojson layout_json(const LayoutProfile& l, std::size_t element_count) {
  ojson j;
  j["d_hier"] = rounded(l.hierarchy.d_hier);
  j["d_horizontal"] = rounded(l.hierarchy.d_horizontal);
  j["d_vertical"] = rounded(l.hierarchy.d_vertical);
  j["r_map"] = rounded(l.r_map);
  j["from_mask"] = l.from_mask;
  const auto& a = l.alignment;
  j["alignment"] = {
      {"r_horizontal", rounded(a.r_horizontal)}, {"r_vertical", rounded(a.r_vertical)},
      {"misaligned_h", a.misaligned_h},          {"total_h", a.total_h},
      {"misaligned_v", a.misaligned_v},          {"total_v", a.total_v},
      {"degenerate", element_count < 2},
  };
  const auto& b = l.balance;
  j["balance"] = {
      {"b_horizontal", rounded(b.b_horizontal)}, {"b_vertical", rounded(b.b_vertical)},
      {"w_top", rounded(b.w_top)},               {"w_bottom", rounded(b.w_bottom)},
      {"w_left", rounded(b.w_left)},             {"w_right", rounded(b.w_right)},
  };
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void key_fields(const GroupKey& key, std::ostringstream& os) {
  os << (key.language ? std::string(language_code(*key.language)) : "") << ','
     << (key.year ? std::to_string(*key.year) : "") << ','
     << (key.journal ? csv_escape(*key.journal) : "");
}

constexpr std::array<const char*, 5> kStatNames = {"n", "mean", "median", "q1", "q3"};

std::array<std::string, 5> stat_cells(const IndicatorSummary& s) {
  if (s.count == 0) return {"0", "", "", "", ""};
  return {std::to_string(s.count), format_number(s.mean), format_number(s.median), format_number(s.q1),
          format_number(s.q3)};
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

}  // namespace

std::string metrics_to_jsonl(const std::vector<MapMetrics>& metrics) {
  std::string out;
  for (const auto& m : metrics) {
    ojson j;
    j["map_id"] = m.map_id;
    j["language"] = std::string(language_code(m.language));
    j["journal"] = m.journal;
    j["year"] = m.year;
    j["status"] = m.failed() ? "failed" : "ok";
    j["failures"] = m.failures;
    j["element_count"] = m.element_count;
    ojson presence = ojson::object();
    for (auto k : kAllElementKinds) {
      presence[std::string(element_kind_name(k))] = m.element_presence[static_cast<std::size_t>(k)];
    }
    j["element_presence"] = std::move(presence);
    j["mask_fallback"] = m.mask_fallback;
    j["page_source"] = m.page_source;
    j["color"] = m.color ? color_json(*m.color) : ojson(nullptr);
    j["layout"] = m.layout ? layout_json(*m.layout, m.element_count) : ojson(nullptr);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string aggregate_to_csv(const std::vector<GroupSummary>& summaries, TableLayout layout) {
  if (summaries.empty()) throw Error(ErrorCode::InvalidArgument, "no summaries to report");
  std::ostringstream os;
  if (layout == TableLayout::Long) {
    os << "language,year,journal,indicator,statistic,value\n";
    for (const auto& g : summaries) {
      auto row = [&](const std::string& ind, const std::string& stat, const std::string& value) {
        key_fields(g.key, os);
        os << ',' << ind << ',' << stat << ',' << value << '\n';
      };
      row("maps", "count", std::to_string(g.count));
      row("maps", "failures", std::to_string(g.failure_count));
      for (const auto& [ind, s] : g.indicators) {
        const auto cells = stat_cells(s);
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (!cells[i].empty()) row(ind.name(), kStatNames[i], cells[i]);
        }
      }
      for (auto k : kAllElementKinds) {
        row("presence_" + std::string(element_kind_name(k)), "ratio",
            format_number(g.presence[static_cast<std::size_t>(k)]));
      }
      if (g.articles) row("articles", "count", format_number(*g.articles));
      if (g.map_article_ratio) row("map_article_ratio", "ratio", format_number(*g.map_article_ratio));
    }
    return os.str();
  }

  os << "language,year,journal,count,failures";
  for (const auto& [ind, s] : summaries.front().indicators) {
    for (const char* stat : kStatNames) os << ',' << ind.name() << '_' << stat;
  }
  for (auto k : kAllElementKinds) os << ",presence_" << element_kind_name(k);
  os << ",articles,map_article_ratio\n";
  for (const auto& g : summaries) {
    key_fields(g.key, os);
    os << ',' << g.count << ',' << g.failure_count;
    for (const auto& [ind, s] : g.indicators) {
      for (const auto& cell : stat_cells(s)) os << ',' << cell;
    }
    for (double p : g.presence) os << ',' << format_number(p);
    os << ',' << optional_number(g.articles) << ',' << optional_number(g.map_article_ratio) << '\n';
  }
  return os.str();
}

std::string aggregate_to_jsonl(const std::vector<GroupSummary>& summaries) {
  if (summaries.empty()) throw Error(ErrorCode::InvalidArgument, "no summaries to report");
  std::string out;
  for (const auto& g : summaries) {
    ojson j;
    j["language"] = g.key.language ? ojson(std::string(language_code(*g.key.language))) : ojson(nullptr);
    j["year"] = g.key.year ? ojson(*g.key.year) : ojson(nullptr);
    j["journal"] = g.key.journal ? ojson(*g.key.journal) : ojson(nullptr);
    j["count"] = g.count;
    j["failures"] = g.failure_count;
    ojson inds = ojson::object();
    for (const auto& [ind, s] : g.indicators) {
      if (s.count == 0) {
        inds[ind.name()] = {{"n", 0}};
      } else {
        inds[ind.name()] = {{"n", s.count},
                            {"mean", rounded(s.mean)},
                            {"median", rounded(s.median)},
                            {"q1", rounded(s.q1)},
                            {"q3", rounded(s.q3)}};
      }
    }
    j["indicators"] = std::move(inds);
    ojson presence = ojson::object();
    for (auto k : kAllElementKinds) {
      presence[std::string(element_kind_name(k))] = rounded(g.presence[static_cast<std::size_t>(k)]);
    }
    j["presence"] = std::move(presence);
    j["articles"] = g.articles ? ojson(rounded(*g.articles)) : ojson(nullptr);
    j["map_article_ratio"] = g.map_article_ratio ? ojson(rounded(*g.map_article_ratio)) : ojson(nullptr);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string itemsets_to_csv(const std::vector<ItemsetRow>& rows) {
  std::ostringstream os;
  os << "group,transactions,size,items,support_count,support,multi_element_rate\n";
  for (const auto& r : rows) {
    os << r.group << ',' << r.transactions << ',' << r.itemset.items.size() << ',' << r.itemset.items.label()
       << ',' << r.itemset.support_count << ',' << format_number(r.itemset.support) << ','
       << optional_number(r.multi_element_rate) << '\n';
  }
  return os.str();
}

std::string compare_to_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream os;
  os << "indicator,n_zh,n_en,u_statistic,p_value,method,degenerate,error\n";
  for (const auto& r : rows) {
    os << r.indicator << ',';
    if (!r.error.empty()) {
      os << ",,,,,," << csv_escape(r.error) << '\n';
      continue;
    }
    os << r.result.n1 << ',' << r.result.n2 << ',' << format_number(r.result.u_statistic) << ','
       << format_number(r.result.p_value) << ',' << test_method_name(r.result.method) << ','
       << (r.result.degenerate ? "true" : "false") << ",\n";
  }
  return os.str();
}

std::string trend_to_csv(const std::vector<TrendRow>& rows) {
  std::ostringstream os;
  os << "language,indicator,unit,points,rho,p_value,method,error\n";
  for (const auto& r : rows) {
    os << r.language << ',' << r.indicator << ',' << r.unit << ',' << r.points << ',';
    if (r.result) {
      os << format_number(r.result->rho) << ',' << format_number(r.result->p_value) << ','
         << correlation_method_name(r.result->method) << ",\n";
    } else {
      os << ",,," << csv_escape(r.error) << '\n';
    }
  }
  return os.str();
}

}  // namespace mapdesign
