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

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "transtat/corpus.hpp"
#include "transtat/error.hpp"
#include "transtat/pos.hpp"
#include "transtat/unicode.hpp"

namespace transtat {

enum class MetricId : std::uint8_t { Ttr, LexDensity, LengthRatio, PpDiff };

inline constexpr std::string_view to_string(MetricId id) {
  switch (id) {
    case MetricId::Ttr: return "ttr";
    case MetricId::LexDensity: return "lex_density";
    case MetricId::LengthRatio: return "length_ratio";
    case MetricId::PpDiff: return "pp_diff";
  }
  return "?";
}

inline std::optional<MetricId> parse_metric_id(std::string_view s) {
  if (s == "ttr") return MetricId::Ttr;
  if (s == "lex_density") return MetricId::LexDensity;
  if (s == "length_ratio") return MetricId::LengthRatio;
  if (s == "pp_diff") return MetricId::PpDiff;
  return std::nullopt;
}

// Higher TTR, density and perplexity difference mean "more HT-like"; for the
// length ratio lower is the interference-free direction.
inline constexpr bool higher_is_better(MetricId id) {
  return id != MetricId::LengthRatio;
}

struct MetricResult {
  MetricId metric_id = MetricId::Ttr;
  double corpus_score = 0.0;
  // Present for length_ratio (one entry per scored pair); absent for
  // corpus-level-only metrics.
  std::optional<std::vector<double>> per_sentence;
  std::size_t n_sentences = 0;
  // Pairs skipped because the source sentence was empty (length_ratio only).
  std::size_t n_skipped = 0;
};

// Type-token ratio: distinct token surfaces / total tokens, over the whole
// corpus. Distinctness is exact string equality; with fold_case the surfaces
// are lowercased first (ASCII + Latin-1).
inline MetricResult type_token_ratio(std::span<const TaggedSentence> sentences,
                                     bool fold_case = false) {
  std::unordered_set<std::string> types;
  std::size_t tokens = 0;
  for (const TaggedSentence& s : sentences) {
    for (const Token& t : s.tokens) {
      ++tokens;
      types.insert(fold_case ? unicode::fold_case(t.surface) : t.surface);
    }
  }
  if (tokens == 0) throw EmptyCorpusError("type_token_ratio: no tokens");
  MetricResult r;
  r.metric_id = MetricId::Ttr;
  r.corpus_score = static_cast<double>(types.size()) / static_cast<double>(tokens);
  r.n_sentences = sentences.size();
  return r;
}

// Lexical density: tokens tagged with a content tag / total tokens. With
// count_punct off, PUNCT and SYM tokens are left out of both counts.
inline MetricResult lexical_density(std::span<const TaggedSentence> sentences,
                                    PosTagSet content_tags = kContentTags,
                                    bool count_punct = true) {
  std::size_t content = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (const Token& t : sentences[i].tokens) {
      if (!t.pos)
        throw MissingTagsError("lexical_density: untagged token '" + t.surface +
                               "' in sentence " + std::to_string(i));
      const PosTag tag = *t.pos;
      if (!count_punct && (tag == PosTag::PUNCT || tag == PosTag::SYM)) continue;
      ++total;
      if (content_tags.contains(tag)) ++content;
    }
  }
  if (total == 0) throw EmptyCorpusError("lexical_density: no countable tokens");
  MetricResult r;
  r.metric_id = MetricId::LexDensity;
  r.corpus_score = static_cast<double>(content) / static_cast<double>(total);
  r.n_sentences = sentences.size();
  return r;
}

// |len(st) - len(tt)| / len(st), lengths in characters.
inline double length_ratio_sentence(const TaggedSentence& st,
                                    const TaggedSentence& tt) {
  const double ls = static_cast<double>(char_length(st));
  const double lt = static_cast<double>(char_length(tt));
  if (ls == 0.0)
    throw ArgumentError("length_ratio_sentence: source sentence has zero length");
  return std::abs(ls - lt) / ls;
}

// Sentence-level length ratios averaged over the corpus. Pairs whose source
// sentence is empty are skipped and tallied in n_skipped.
inline MetricResult length_ratio_corpus(
    std::span<const TaggedSentence> source,
    std::span<const TaggedSentence> translation) {
  if (source.size() != translation.size())
    throw AlignmentError("length_ratio_corpus: " + std::to_string(source.size()) +
                         " source vs " + std::to_string(translation.size()) +
                         " translation sentences");
  MetricResult r;
  r.metric_id = MetricId::LengthRatio;
  r.per_sentence.emplace();
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (char_length(source[i]) == 0) {
      ++r.n_skipped;
      continue;
    }
    r.per_sentence->push_back(length_ratio_sentence(source[i], translation[i]));
  }
  if (r.per_sentence->empty())
    throw EmptyCorpusError("length_ratio_corpus: no pair with non-empty source");
  double sum = 0.0;
  for (double v : *r.per_sentence) sum += v;
  r.corpus_score = sum / static_cast<double>(r.per_sentence->size());
  r.n_sentences = r.per_sentence->size();
  return r;
}

}  // namespace transtat
