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

// Command-line driver. Subcommands:
//   train-lm    train a PoS n-gram model from CoNLL-U and write it as ARPA
//   perplexity  score a CoNLL-U corpus with an ARPA model
//   analyze     run the translation-variant metrics over a dataset manifest
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "transtat/transtat.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsage = 2;

constexpr std::size_t kDefaultReplicates = 1000;
constexpr double kDefaultLevel = 0.95;
constexpr std::uint64_t kDefaultSeed = 0;

// Raised for problems that are the caller's fault; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<transtat::TaggedSentence> read_conllu_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw transtat::IoError("cannot open '" + path + "'");
  try {
    return transtat::parse_conllu(in);
  } catch (const transtat::ParseError& e) {
    throw transtat::ParseError(path + ": " + e.what());
  }
}

transtat::ArpaModel read_arpa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw transtat::IoError("cannot open '" + path + "'");
  try {
    return transtat::import_arpa(in);
  } catch (const transtat::ParseError& e) {
    throw transtat::ParseError(path + ": " + e.what());
  }
}

// --- train-lm -----------------------------------------------------------

struct TrainLmOptions {
  std::string conllu_path;
  int order = 6;
  std::string out_path;
};

int cmd_train_lm(const TrainLmOptions& opt) {
  const auto corpus = read_conllu_file(opt.conllu_path);
  const auto model = transtat::NGramModel::train(corpus, opt.order);

  std::ofstream out(opt.out_path);
  if (!out) throw transtat::IoError("cannot write '" + opt.out_path + "'");
  transtat::export_arpa(model, out);
  if (!out) throw transtat::IoError("error while writing '" + opt.out_path + "'");

  std::cout << "vocabulary_size=" << transtat::kVocabSize << "\n"
            << "sentences=" << model.n_train_sentences() << "\n"
            << "order=" << model.order() << "\n";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", transtat::perplexity(model, corpus));
  std::cout << "train_perplexity=" << buf << "\n";
  return kExitOk;
}

// --- perplexity ---------------------------------------------------------

struct PerplexityOptions {
  std::string model_path;
  std::string input_path;
  bool per_sentence = false;
};

int cmd_perplexity(const PerplexityOptions& opt) {
  const auto model = read_arpa_file(opt.model_path);
  const auto corpus = read_conllu_file(opt.input_path);

  char buf[32];
  if (opt.per_sentence) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto s = transtat::sentence_logprob(model, corpus[i]);
      std::snprintf(buf, sizeof(buf), "%.6f", s.log10_prob);
      std::cout << "sentence=" << i << " log10_prob=" << buf
                << " n_scored=" << s.n_scored << "\n";
    }
  }
  std::snprintf(buf, sizeof(buf), "%.4f", transtat::perplexity(model, corpus));
  std::cout << "perplexity=" << buf << "\n";
  return kExitOk;
}

// --- analyze ------------------------------------------------------------

struct AnalysisConfig {
  std::string manifest_path;
  std::vector<std::string> metrics = {"ttr", "density", "lenratio"};
  std::string lm_sl_path;
  std::string lm_tl_path;
  std::size_t replicates = kDefaultReplicates;
  bool replicates_explicit = false;
  double level = kDefaultLevel;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string out_path;  // empty = stdout
  bool fold_case = false;
  bool count_punct = true;
  std::vector<std::string> content_tags;  // empty = default set
};

transtat::MetricId metric_from_cli_name(const std::string& name) {
  if (name == "ttr") return transtat::MetricId::Ttr;
  if (name == "density") return transtat::MetricId::LexDensity;
  if (name == "lenratio") return transtat::MetricId::LengthRatio;
  if (name == "ppdiff") return transtat::MetricId::PpDiff;
  throw UsageError("unknown metric '" + name +
                   "' (expected ttr, density, lenratio or ppdiff)");
}

AnalysisConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  AnalysisConfig cfg;
  try {
    cfg.manifest_path = doc.at("manifest").get<std::string>();
    if (doc.contains("metrics"))
      cfg.metrics = doc["metrics"].get<std::vector<std::string>>();
    if (doc.contains("lm_sl")) cfg.lm_sl_path = doc["lm_sl"].get<std::string>();
    if (doc.contains("lm_tl")) cfg.lm_tl_path = doc["lm_tl"].get<std::string>();
    if (doc.contains("bootstrap")) {
      const auto& b = doc["bootstrap"];
      if (b.contains("replicates"))
        cfg.replicates = b["replicates"].get<std::size_t>();
      if (b.contains("level")) cfg.level = b["level"].get<double>();
      if (b.contains("seed")) cfg.seed = b["seed"].get<std::uint64_t>();
    }
    if (doc.contains("format")) cfg.format = doc["format"].get<std::string>();
    if (doc.contains("out")) cfg.out_path = doc["out"].get<std::string>();
    if (doc.contains("fold_case")) cfg.fold_case = doc["fold_case"].get<bool>();
    if (doc.contains("count_punct"))
      cfg.count_punct = doc["count_punct"].get<bool>();
    if (doc.contains("content_tags"))
      cfg.content_tags = doc["content_tags"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  // Manifest paths in a config file are relative to the config file.
  const auto base = std::filesystem::path(path).parent_path();
  const auto resolve = [&](std::string& p) {
    if (!p.empty() && !std::filesystem::path(p).is_absolute())
      p = (base / p).string();
  };
  resolve(cfg.manifest_path);
  resolve(cfg.lm_sl_path);
  resolve(cfg.lm_tl_path);
  return cfg;
}

// Checks everything that can be checked before touching data files.
void validate_config(const AnalysisConfig& cfg) {
  if (cfg.manifest_path.empty()) throw UsageError("no manifest given");
  bool wants_ppdiff = false;
  for (const auto& m : cfg.metrics) {
    if (metric_from_cli_name(m) == transtat::MetricId::PpDiff)
      wants_ppdiff = true;
  }
  if (cfg.metrics.empty()) throw UsageError("empty metric list");
  if (wants_ppdiff && (cfg.lm_sl_path.empty() || cfg.lm_tl_path.empty()))
    throw UsageError("metric ppdiff needs --lm-sl and --lm-tl");
  if (!(cfg.level > 0.0 && cfg.level < 1.0))
    throw UsageError("bootstrap level must be in (0, 1)");
  if (cfg.replicates < 100) throw UsageError("need at least 100 replicates");
  if (!transtat::parse_table_format(cfg.format))
    throw UsageError("unknown output format '" + cfg.format + "'");
  for (const auto& t : cfg.content_tags)
    if (!transtat::parse_pos_tag(t))
      throw UsageError("unknown PoS tag '" + t + "' in content_tags");
}

json config_echo(const AnalysisConfig& cfg) {
  return {{"manifest", cfg.manifest_path},
          {"metrics", cfg.metrics},
          {"lm_sl", cfg.lm_sl_path},
          {"lm_tl", cfg.lm_tl_path},
          {"bootstrap",
           {{"replicates", cfg.replicates},
            {"level", cfg.level},
            {"seed", cfg.seed}}},
          {"format", cfg.format},
          {"fold_case", cfg.fold_case},
          {"count_punct", cfg.count_punct},
          {"content_tags", cfg.content_tags}};
}

// Computes one metric for every variant, plus the per-variant statistics the
// table needs (bootstrap intervals for ttr, paired t-tests for lenratio).
transtat::ScoreTable analyze_metric(const transtat::AlignedDataset& ds,
                                    transtat::MetricId metric,
                                    const AnalysisConfig& cfg,
                                    const transtat::ArpaModel* lm_sl,
                                    const transtat::ArpaModel* lm_tl) {
  transtat::PosTagSet content = transtat::kContentTags;
  if (!cfg.content_tags.empty()) {
    content = {};
    for (const auto& t : cfg.content_tags)
      content.insert(*transtat::parse_pos_tag(t));
  }

  std::size_t ht_index = ds.variants.size();
  for (std::size_t i = 0; i < ds.variants.size(); ++i)
    if (ds.variants[i].kind == transtat::VariantKind::HT) ht_index = i;

  std::vector<transtat::MetricResult> results;
  std::vector<transtat::VariantStats> stats(ds.variants.size());
  bool have_stats = false;

  for (std::size_t i = 0; i < ds.variants.size(); ++i) {
    const auto& variant = ds.variants[i];
    try {
      switch (metric) {
        case transtat::MetricId::Ttr: {
          results.push_back(
              transtat::type_token_ratio(variant.sentences, cfg.fold_case));
          const bool fold = cfg.fold_case;
          stats[i].ci = transtat::bootstrap_ci(
              variant.sentences,
              [fold](std::span<const transtat::TaggedSentence> s) {
                return transtat::type_token_ratio(s, fold).corpus_score;
              },
              cfg.level, cfg.replicates, cfg.seed);
          have_stats = true;
          break;
        }
        case transtat::MetricId::LexDensity:
          results.push_back(transtat::lexical_density(variant.sentences, content,
                                                      cfg.count_punct));
          break;
        case transtat::MetricId::LengthRatio:
          results.push_back(
              transtat::length_ratio_corpus(ds.source, variant.sentences));
          break;
        case transtat::MetricId::PpDiff: {
          transtat::MetricResult r;
          r.metric_id = transtat::MetricId::PpDiff;
          r.corpus_score = transtat::pp_diff(variant.sentences, *lm_sl, *lm_tl);
          r.n_sentences = variant.sentences.size();
          results.push_back(std::move(r));
          break;
        }
      }
    } catch (const transtat::Error& e) {
      throw transtat::Error("dataset '" + ds.name + "', variant '" +
                            variant.system_id + "': " + e.what());
    }
  }

  if (metric == transtat::MetricId::LengthRatio && ht_index < ds.variants.size()) {
    const auto& ht_ratios = *results[ht_index].per_sentence;
    for (std::size_t i = 0; i < ds.variants.size(); ++i) {
      if (i == ht_index) continue;
      try {
        stats[i].ttest_vs_ht =
            transtat::paired_t_test(ht_ratios, *results[i].per_sentence);
        have_stats = true;
      } catch (const transtat::ZeroVarianceError&) {
        std::cerr << "warning: dataset '" << ds.name << "', variant '"
                  << ds.variants[i].system_id
                  << "': degenerate length-ratio differences, no t-test\n";
      }
    }
  }

  return transtat::build_table(
      ds, results,
      have_stats ? std::span<const transtat::VariantStats>(stats)
                 : std::span<const transtat::VariantStats>());
}

int cmd_analyze(const AnalysisConfig& cfg) {
  validate_config(cfg);
  const auto format = *transtat::parse_table_format(cfg.format);

  const auto ds = transtat::load_manifest(cfg.manifest_path);

  std::optional<transtat::ArpaModel> lm_sl, lm_tl;
  std::vector<transtat::MetricId> metrics;
  for (const auto& name : cfg.metrics) metrics.push_back(metric_from_cli_name(name));
  for (transtat::MetricId m : metrics) {
    if (m != transtat::MetricId::PpDiff) continue;
    lm_sl = read_arpa_file(cfg.lm_sl_path);
    lm_tl = read_arpa_file(cfg.lm_tl_path);
  }

  std::vector<transtat::ScoreTable> tables;
  for (transtat::MetricId m : metrics)
    tables.push_back(analyze_metric(ds, m, cfg,
                                    lm_sl ? &*lm_sl : nullptr,
                                    lm_tl ? &*lm_tl : nullptr));

  std::string output;
  if (format == transtat::TableFormat::Json) {
    json doc = {{"tool", "transtat"},
                {"version", transtat::kVersion},
                {"config", config_echo(cfg)},
                {"tables", json::array()}};
    for (const auto& t : tables) doc["tables"].push_back(transtat::table_to_json(t));
    output = doc.dump(2) + "\n";
  } else {
    output += "# tool=transtat version=" + std::string(transtat::kVersion) + "\n";
    output += "# config=" + config_echo(cfg).dump() + "\n";
    for (const auto& t : tables) {
      output += "\n";
      output += transtat::render(t, format);
    }
  }

  if (cfg.out_path.empty()) {
    std::cout << output;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw transtat::IoError("cannot write '" + cfg.out_path + "'");
    out << output;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corpus metrics for comparing human, post-edited and machine "
               "translations"};
  app.set_version_flag("--version", transtat::kVersion);
  app.require_subcommand(1);

  TrainLmOptions train_opt;
  auto* train = app.add_subcommand("train-lm",
                                   "Train a PoS n-gram model and write ARPA");
  train->add_option("--conllu", train_opt.conllu_path, "Tagged CoNLL-U corpus")
      ->required();
  train->add_option("--order", train_opt.order, "Model order")
      ->check(CLI::Range(1, 9));
  train->add_option("--out", train_opt.out_path, "Output ARPA path")->required();

  PerplexityOptions ppl_opt;
  auto* ppl = app.add_subcommand("perplexity",
                                 "Score a tagged corpus with an ARPA model");
  ppl->add_option("--model", ppl_opt.model_path, "ARPA model")->required();
  ppl->add_option("--input", ppl_opt.input_path, "Tagged CoNLL-U corpus")
      ->required();
  ppl->add_flag("--per-sentence", ppl_opt.per_sentence,
                "Also print per-sentence log10 probabilities");

  AnalysisConfig cli_cfg;
  std::string config_path;
  auto* analyze = app.add_subcommand("analyze",
                                     "Compute metric tables for a dataset");
  analyze->add_option("--config", config_path, "JSON config file");
  analyze->add_option("--manifest", cli_cfg.manifest_path, "Dataset manifest");
  auto* metrics_opt =
      analyze
          ->add_option("--metrics", cli_cfg.metrics,
                       "Comma-separated subset of ttr,density,lenratio,ppdiff")
          ->delimiter(',');
  auto* lm_sl_opt = analyze->add_option("--lm-sl", cli_cfg.lm_sl_path,
                                        "Source-language ARPA model");
  auto* lm_tl_opt = analyze->add_option("--lm-tl", cli_cfg.lm_tl_path,
                                        "Target-language ARPA model");
  auto* repl_opt = analyze->add_option("--replicates", cli_cfg.replicates,
                                       "Bootstrap replicates");
  auto* level_opt =
      analyze->add_option("--level", cli_cfg.level, "Confidence level");
  auto* seed_opt = analyze->add_option("--seed", cli_cfg.seed, "Bootstrap seed");
  auto* format_opt = analyze->add_option("--format", cli_cfg.format,
                                         "Output format: tsv, json, markdown");
  auto* out_opt = analyze->add_option("--out", cli_cfg.out_path, "Output file");
  auto* fold_opt = analyze->add_flag("--fold-case", cli_cfg.fold_case,
                                     "Lowercase before counting types");
  auto* nopunct_opt =
      analyze->add_flag("--exclude-punct", "Leave PUNCT/SYM out of densities");
  auto* content_opt =
      analyze
          ->add_option("--content-tags", cli_cfg.content_tags,
                       "Override the content-word tag set")
          ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (train->parsed()) return cmd_train_lm(train_opt);
    if (ppl->parsed()) return cmd_perplexity(ppl_opt);

    AnalysisConfig cfg;
    if (!config_path.empty()) {
      cfg = load_config_file(config_path);
      // Explicit flags override the config file.
      if (!cli_cfg.manifest_path.empty()) cfg.manifest_path = cli_cfg.manifest_path;
      if (metrics_opt->count()) cfg.metrics = cli_cfg.metrics;
      if (lm_sl_opt->count()) cfg.lm_sl_path = cli_cfg.lm_sl_path;
      if (lm_tl_opt->count()) cfg.lm_tl_path = cli_cfg.lm_tl_path;
      if (repl_opt->count()) cfg.replicates = cli_cfg.replicates;
      if (level_opt->count()) cfg.level = cli_cfg.level;
      if (seed_opt->count()) cfg.seed = cli_cfg.seed;
      if (format_opt->count()) cfg.format = cli_cfg.format;
      if (out_opt->count()) cfg.out_path = cli_cfg.out_path;
      if (fold_opt->count()) cfg.fold_case = cli_cfg.fold_case;
      if (content_opt->count()) cfg.content_tags = cli_cfg.content_tags;
    } else {
      cfg = cli_cfg;
      if (!repl_opt->count()) {
        // Default replicate count, overridable for CI runs.
        if (const char* env = std::getenv("TRANSTAT_BOOTSTRAP_REPLICATES")) {
          char* end = nullptr;
          const unsigned long long v = std::strtoull(env, &end, 10);
          if (end == env || *end != '\0')
            throw UsageError("bad TRANSTAT_BOOTSTRAP_REPLICATES value");
          cfg.replicates = static_cast<std::size_t>(v);
        }
      }
    }
    if (nopunct_opt->count()) cfg.count_punct = false;
    return cmd_analyze(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const transtat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}
