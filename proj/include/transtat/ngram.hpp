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

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "transtat/corpus.hpp"
#include "transtat/error.hpp"
#include "transtat/pos.hpp"

// Interpolated Witten-Bell n-gram language models over PoS-tag sequences.
//
// The vocabulary is closed and shared across languages: the 17 Universal PoS
// tags plus the end-of-sentence marker (18 predictable symbols). The
// begin-of-sentence marker is context-only and never predicted.
//
// Probabilities follow the interpolated Witten-Bell recursion
//
//   p_m(t | h) = (c(h.t) + D(h) * p_{m-1}(t | h')) / (c(h.) + D(h))
//
// where D(h) is the number of distinct symbols observed after h, c(h.) the
// total count of observed continuations of h, h' the history with its oldest
// symbol dropped, and p_0 uniform over the 18 predictable symbols. A history
// with no observed continuation defers entirely to the next-shorter one.

namespace transtat {

// LM symbol: 0..16 are the PosTag values, 17 is EOS, 18 is BOS.
using Symbol = std::uint8_t;

inline constexpr Symbol kEosSymbol = 17;
inline constexpr Symbol kBosSymbol = 18;
inline constexpr std::size_t kVocabSize = 18;  // predictable symbols, BOS excluded
inline constexpr double kUniformBase = 1.0 / static_cast<double>(kVocabSize);

inline constexpr Symbol to_symbol(PosTag tag) {
  return static_cast<Symbol>(tag);
}

inline std::string_view symbol_name(Symbol s) {
  if (s < kNumPosTags) return to_string(static_cast<PosTag>(s));
  if (s == kEosSymbol) return "</s>";
  return "<s>";
}

namespace detail {

// An m-gram (m <= 12) packed into a u64: a leading 1 bit followed by 5 bits
// per symbol. The empty sequence packs to 1.
inline constexpr std::uint64_t kEmptyKey = 1;

inline std::uint64_t pack_gram(std::span<const Symbol> gram) {
  std::uint64_t key = kEmptyKey;
  for (Symbol s : gram) key = (key << 5) | s;
  return key;
}

inline std::vector<Symbol> unpack_gram(std::uint64_t key) {
  std::vector<Symbol> gram;
  while (key != kEmptyKey) {
    gram.push_back(static_cast<Symbol>(key & 31));
    key >>= 5;
  }
  std::reverse(gram.begin(), gram.end());
  return gram;
}

}  // namespace detail

// Raw occurrence statistics for all m-grams (m <= order) of a framed corpus.
class NGramCounts {
 public:
  struct Continuations {
    std::uint64_t total = 0;    // c(h.): summed counts of observed followers
    std::uint32_t distinct = 0; // D(h): number of distinct followers
  };

  explicit NGramCounts(int order) : order_(order) {}

  int order() const { return order_; }

  std::uint64_t count(std::span<const Symbol> gram) const {
    const auto it = counts_.find(detail::pack_gram(gram));
    return it == counts_.end() ? 0 : it->second;
  }

  Continuations continuations(std::span<const Symbol> history) const {
    const auto it = cont_.find(detail::pack_gram(history));
    return it == cont_.end() ? Continuations{} : it->second;
  }

  // Frames the sentence as (order-1) x BOS, tags..., EOS and accumulates
  // every m-gram of the framed sequence for m <= order. Follower statistics
  // are kept only for predictable symbols; BOS never counts as a follower.
  void add_sentence(std::span<const Symbol> tags) {
    framed_.clear();
    framed_.insert(framed_.end(), static_cast<std::size_t>(order_ - 1),
                   kBosSymbol);
    framed_.insert(framed_.end(), tags.begin(), tags.end());
    framed_.push_back(kEosSymbol);

    for (std::size_t start = 0; start < framed_.size(); ++start) {
      std::uint64_t key = detail::kEmptyKey;
      const std::size_t stop =
          std::min(framed_.size(), start + static_cast<std::size_t>(order_));
      for (std::size_t end = start; end < stop; ++end) {
        // pack(gram) extends pack(history) by one symbol, so the history key
        // is always key >> 5.
        const std::uint64_t history_key = key;
        key = (key << 5) | framed_[end];
        const std::uint64_t n = ++counts_[key];
        if (framed_[end] != kBosSymbol) {
          Continuations& c = cont_[history_key];
          ++c.total;
          if (n == 1) ++c.distinct;
        }
      }
    }
  }

  const std::unordered_map<std::uint64_t, std::uint64_t>& raw() const {
    return counts_;
  }

 private:
  int order_;
  std::unordered_map<std::uint64_t, std::uint64_t> counts_;
  std::unordered_map<std::uint64_t, Continuations> cont_;
  std::vector<Symbol> framed_;  // scratch
};

class NGramModel {
 public:
  static constexpr int kMaxOrder = 9;

  // Trains on a fully tagged corpus. order in [1, 9].
  static NGramModel train(std::span<const TaggedSentence> corpus, int order,
                          std::string lang = {}) {
    if (order < 1 || order > kMaxOrder)
      throw ArgumentError("train: order " + std::to_string(order) +
                          " out of range [1, " + std::to_string(kMaxOrder) + "]");
    if (corpus.empty()) throw EmptyCorpusError("train: empty corpus");
    NGramModel model(order, std::move(lang));
    std::vector<Symbol> tags;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      tags.clear();
      for (const Token& t : corpus[i].tokens) {
        if (!t.pos)
          throw MissingTagsError("train: untagged token '" + t.surface +
                                 "' in sentence " + std::to_string(i));
        tags.push_back(to_symbol(*t.pos));
      }
      model.counts_.add_sentence(tags);
      ++model.n_train_sentences_;
    }
    return model;
  }

  // A model with no training data: every query falls through to the uniform
  // base distribution.
  static NGramModel uniform(int order) {
    if (order < 1 || order > kMaxOrder)
      throw ArgumentError("uniform: order out of range");
    return NGramModel(order, {});
  }

  int order() const { return counts_.order(); }
  const std::string& lang() const { return lang_; }
  std::size_t n_train_sentences() const { return n_train_sentences_; }
  const NGramCounts& counts() const { return counts_; }

  // p(next | history). Histories longer than order-1 are truncated to their
  // most recent order-1 symbols; BOS is not a predictable symbol.
  double prob(std::span<const Symbol> history, Symbol next) const {
    if (next >= kVocabSize)
      throw ArgumentError("prob: BOS cannot appear in the predicted position");
    const std::size_t max_len = static_cast<std::size_t>(order() - 1);
    if (history.size() > max_len)
      history = history.subspan(history.size() - max_len);

    double p = kUniformBase;
    std::array<Symbol, kMaxOrder> gram;  // history suffix + next
    for (std::size_t k = 0; k <= history.size(); ++k) {
      const std::span<const Symbol> h = history.subspan(history.size() - k);
      const auto cont = counts_.continuations(h);
      if (cont.total == 0) continue;  // defer entirely to the shorter history
      std::copy(h.begin(), h.end(), gram.begin());
      gram[k] = next;
      const double c =
          static_cast<double>(counts_.count({gram.data(), k + 1}));
      const double d = static_cast<double>(cont.distinct);
      p = (c + d * p) / (static_cast<double>(cont.total) + d);
    }
    return p;
  }

 private:
  NGramModel(int order, std::string lang)
      : counts_(order), lang_(std::move(lang)) {}

  NGramCounts counts_;
  std::string lang_;
  std::size_t n_train_sentences_ = 0;
};

template <typename S>
concept PosSequenceScorer = requires(const S& s, std::span<const Symbol> h,
                                     Symbol v) {
  { s.order() } -> std::convertible_to<int>;
  { s.prob(h, v) } -> std::convertible_to<double>;
};

struct SentenceScore {
  double log10_prob = 0.0;
  std::size_t n_scored = 0;  // tags + the terminal EOS; BOS is never scored
};

template <PosSequenceScorer S>
SentenceScore sentence_logprob(const S& scorer, const TaggedSentence& sentence) {
  const std::size_t pad = static_cast<std::size_t>(scorer.order() - 1);
  std::vector<Symbol> framed(pad, kBosSymbol);
  for (const Token& t : sentence.tokens) {
    if (!t.pos)
      throw MissingTagsError("sentence_logprob: untagged token '" + t.surface +
                             "'");
    framed.push_back(to_symbol(*t.pos));
  }
  framed.push_back(kEosSymbol);

  SentenceScore score;
  for (std::size_t i = pad; i < framed.size(); ++i) {
    const std::span<const Symbol> history(framed.data() + i - pad, pad);
    score.log10_prob += std::log10(scorer.prob(history, framed[i]));
    ++score.n_scored;
  }
  return score;
}

// 10^(-(sum of log10 probs) / (number of scored events)).
template <PosSequenceScorer S>
double perplexity(const S& scorer, std::span<const TaggedSentence> corpus) {
  if (corpus.empty()) throw EmptyCorpusError("perplexity: empty corpus");
  double log10_sum = 0.0;
  std::size_t n = 0;
  for (const TaggedSentence& sentence : corpus) {
    const SentenceScore s = sentence_logprob(scorer, sentence);
    log10_sum += s.log10_prob;
    n += s.n_scored;
  }
  return std::pow(10.0, -log10_sum / static_cast<double>(n));
}

// PP(T, lm_sl) - PP(T, lm_tl). Positive means the translation reads more
// like the target language than like the source language.
template <PosSequenceScorer Sl, PosSequenceScorer Tl>
double pp_diff(std::span<const TaggedSentence> translation, const Sl& lm_sl,
               const Tl& lm_tl) {
  if (lm_sl.order() != lm_tl.order())
    throw ArgumentError("pp_diff: models have different orders (" +
                        std::to_string(lm_sl.order()) + " vs " +
                        std::to_string(lm_tl.order()) + ")");
  return perplexity(lm_sl, translation) - perplexity(lm_tl, translation);
}

}  // namespace transtat
