// Copyright 2026 Transtat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "transtat/corpus.hpp"
#include "transtat/error.hpp"
#include "transtat/metrics.hpp"
#include "transtat/stats.hpp"

// Score tables in the usual presentation for this kind of study: one
// absolute row for the HT baseline, then relative differences for the PE and
// MT groups and for each (kind, paradigm) subgroup present in the dataset,
// with optional significance marks against the baseline.

namespace transtat {

struct ScoreRow {
  std::string label;       // HT, PE, MT, PE-NMT, ..., RBMT
  bool is_baseline = false;
  double score = 0.0;      // group mean of the absolute corpus scores
  double value = 0.0;      // absolute score for HT, percent difference otherwise
  std::string mark;        // significance mark, possibly empty
  bool best = false;       // best score in its group of rows
  std::size_t n_variants = 0;
};

struct ScoreTable {
  MetricId metric_id = MetricId::Ttr;
  std::string dataset;
  std::string direction;  // "<source_lang>-><target_lang>"
  std::vector<ScoreRow> rows;
};

// Optional per-variant statistics, parallel to AlignedDataset::variants.
struct VariantStats {
  std::optional<BootstrapCI> ci;             // interval for this variant's score
  std::optional<TTestResult> ttest_vs_ht;    // H1: HT score > variant score
};

namespace detail {

struct RowGroup {
  std::string label;
  std::vector<std::size_t> members;  // variant indices
};

}  // namespace detail

// Builds the table for one metric. `results` must be parallel to
// ds.variants, and the dataset must contain exactly one HT variant. Marks:
// with t-tests, the strongest threshold every variant of the row clears;
// with bootstrap intervals, "*" when the baseline interval is strictly above
// all of the row's intervals.
inline ScoreTable build_table(const AlignedDataset& ds,
                              std::span<const MetricResult> results,
                              std::span<const VariantStats> stats = {}) {
  if (results.size() != ds.variants.size())
    throw IncompleteResultsError(
        "build_table: " + std::to_string(results.size()) + " results for " +
        std::to_string(ds.variants.size()) + " variants");
  if (!stats.empty() && stats.size() != ds.variants.size())
    throw IncompleteResultsError("build_table: stats not parallel to variants");

  std::size_t ht_index = ds.variants.size();
  for (std::size_t i = 0; i < ds.variants.size(); ++i) {
    if (ds.variants[i].kind != VariantKind::HT) continue;
    if (ht_index != ds.variants.size())
      throw ConfigError("build_table: more than one HT variant");
    ht_index = i;
  }
  if (ht_index == ds.variants.size())
    throw ConfigError("build_table: no HT variant");

  ScoreTable table;
  table.metric_id = results.empty() ? MetricId::Ttr : results[0].metric_id;
  table.dataset = ds.name;
  table.direction = ds.source_lang + "->" + ds.target_lang;

  const double ht_score = results[ht_index].corpus_score;
  ScoreRow ht_row;
  ht_row.label = "HT";
  ht_row.is_baseline = true;
  ht_row.score = ht_score;
  ht_row.value = ht_score;
  ht_row.n_variants = 1;
  table.rows.push_back(std::move(ht_row));

  // Row families, in presentation order: kind rows, then per-paradigm rows.
  const auto members_of = [&](VariantKind kind,
                              std::optional<MtParadigm> paradigm) {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < ds.variants.size(); ++i) {
      if (ds.variants[i].kind != kind) continue;
      if (paradigm && ds.variants[i].paradigm != *paradigm) continue;
      m.push_back(i);
    }
    return m;
  };

  const std::array<MtParadigm, 3> paradigms = {MtParadigm::NMT, MtParadigm::SMT,
                                               MtParadigm::RBMT};
  std::vector<std::vector<detail::RowGroup>> families(3);
  families[0] = {{"PE", members_of(VariantKind::PE, std::nullopt)},
                 {"MT", members_of(VariantKind::MT, std::nullopt)}};
  for (MtParadigm p : paradigms)
    families[1].push_back({"PE-" + std::string(to_string(p)),
                           members_of(VariantKind::PE, p)});
  for (MtParadigm p : paradigms)
    families[2].push_back(
        {std::string(to_string(p)), members_of(VariantKind::MT, p)});

  for (const auto& family : families) {
    std::size_t present = 0;
    for (const auto& group : family) present += !group.members.empty();
    std::size_t best_row = table.rows.size();
    double best_score = 0.0;
    for (const auto& group : family) {
      if (group.members.empty()) continue;
      ScoreRow row;
      row.label = group.label;
      row.n_variants = group.members.size();
      double sum = 0.0;
      for (std::size_t i : group.members) sum += results[i].corpus_score;
      row.score = sum / static_cast<double>(group.members.size());
      row.value = relative_difference(ht_score, row.score);

      if (!stats.empty()) {
        bool all_ttests = true;
        double max_p = 0.0;
        for (std::size_t i : group.members) {
          if (stats[i].ttest_vs_ht)
            max_p = std::max(max_p, stats[i].ttest_vs_ht->p_one_tailed);
          else
            all_ttests = false;
        }
        if (all_ttests) {
          row.mark = significance_mark(max_p);
        } else if (stats[ht_index].ci) {
          std::vector<BootstrapCI> cis;
          for (std::size_t i : group.members)
            if (stats[i].ci) cis.push_back(*stats[i].ci);
          if (cis.size() == group.members.size() &&
              ci_significance(*stats[ht_index].ci, cis))
            row.mark = "*";
        }
      }

      const bool better =
          best_row == table.rows.size() ||
          (higher_is_better(table.metric_id) ? row.score > best_score
                                             : row.score < best_score);
      table.rows.push_back(std::move(row));
      if (better) {
        best_score = table.rows.back().score;
        best_row = table.rows.size() - 1;
      }
    }
    if (present >= 2) table.rows[best_row].best = true;
  }
  return table;
}

// --- rendering ---------------------------------------------------------

enum class TableFormat : std::uint8_t { Tsv, Json, Markdown };

inline std::optional<TableFormat> parse_table_format(std::string_view s) {
  if (s == "tsv") return TableFormat::Tsv;
  if (s == "json") return TableFormat::Json;
  if (s == "markdown") return TableFormat::Markdown;
  return std::nullopt;
}

namespace detail {

inline std::string format_absolute(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

inline std::string format_percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%+.2f%%", v);
  return buf;
}

inline std::string format_cell(const ScoreRow& row) {
  std::string cell = row.mark;
  cell += row.is_baseline ? format_absolute(row.value) : format_percent(row.value);
  if (row.best) cell = "**" + cell + "**";
  return cell;
}

}  // namespace detail

inline constexpr int kReportSchemaVersion = 1;

inline nlohmann::json table_to_json(const ScoreTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ScoreRow& r : table.rows) {
    rows.push_back({{"label", r.label},
                    {"is_baseline", r.is_baseline},
                    {"score", r.score},
                    {"value", r.value},
                    {"mark", r.mark},
                    {"best", r.best},
                    {"n_variants", r.n_variants}});
  }
  return {{"schema_version", kReportSchemaVersion},
          {"metric", std::string(to_string(table.metric_id))},
          {"dataset", table.dataset},
          {"direction", table.direction},
          {"rows", rows}};
}

inline ScoreTable table_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("schema_version").get<int>() != kReportSchemaVersion)
      throw ConfigError("table_from_json: unsupported schema_version");
    ScoreTable table;
    const auto metric = parse_metric_id(doc.at("metric").get<std::string>());
    if (!metric) throw ConfigError("table_from_json: unknown metric");
    table.metric_id = *metric;
    table.dataset = doc.at("dataset").get<std::string>();
    table.direction = doc.at("direction").get<std::string>();
    for (const auto& r : doc.at("rows")) {
      ScoreRow row;
      row.label = r.at("label").get<std::string>();
      row.is_baseline = r.at("is_baseline").get<bool>();
      row.score = r.at("score").get<double>();
      row.value = r.at("value").get<double>();
      row.mark = r.at("mark").get<std::string>();
      row.best = r.at("best").get<bool>();
      row.n_variants = r.at("n_variants").get<std::size_t>();
      table.rows.push_back(std::move(row));
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("table_from_json: ") + e.what());
  }
}

// Deterministic serialization. TSV and Markdown carry presentation-formatted
// numbers (4 decimals for absolute scores, 2 for percent differences); JSON
// keeps full precision and round-trips through table_from_json.
inline std::string render(const ScoreTable& table, TableFormat format) {
  switch (format) {
    case TableFormat::Json:
      return table_to_json(table).dump(2) + "\n";
    case TableFormat::Tsv: {
      std::string out = "group\tvalue\tmark\tbest\tn_variants\n";
      for (const ScoreRow& r : table.rows) {
        out += r.label;
        out += '\t';
        out += r.is_baseline ? detail::format_absolute(r.value)
                             : detail::format_percent(r.value);
        out += '\t';
        out += r.mark;
        out += '\t';
        out += r.best ? "1" : "0";
        out += '\t';
        out += std::to_string(r.n_variants);
        out += '\n';
      }
      return out;
    }
    case TableFormat::Markdown: {
      std::string out = "| Group | " + std::string(to_string(table.metric_id)) +
                        " (" + table.dataset + ", " + table.direction + ") |\n";
      out += "| --- | --- |\n";
      for (const ScoreRow& r : table.rows)
        out += "| " + r.label + " | " + detail::format_cell(r) + " |\n";
      return out;
    }
  }
  throw ArgumentError("render: unknown format");
}

}  // namespace transtat
