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

#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "transtat/error.hpp"
#include "transtat/ngram.hpp"

// ARPA backoff serialization of the interpolated Witten-Bell models.
//
// The interpolated probabilities are written as combined values, so a
// standard backoff evaluation of the file reproduces the model's
// probabilities. Backoff weights are D(h) / (c(h.) + D(h)); histories with no
// observed continuation are left without a weight (implicit 1), which matches
// the model's defer-entirely rule. All 18 predictable symbols are always
// listed as unigrams so the scorer stays total over the closed vocabulary;
// <s> and its all-BOS extensions carry a dummy -99 probability and exist only
// for their backoff weights.

namespace transtat {

namespace detail {

inline std::string format_log10(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.13g", v);
  return buf;
}

inline int gram_length(std::uint64_t key) {
  int len = 0;
  while (key != kEmptyKey) {
    key >>= 5;
    ++len;
  }
  return len;
}

}  // namespace detail

inline void export_arpa(const NGramModel& model, std::ostream& out) {
  const int order = model.order();
  const NGramCounts& counts = model.counts();

  // Gather the vocab-final grams per level, sorted by symbol sequence.
  std::vector<std::vector<std::vector<Symbol>>> grams(
      static_cast<std::size_t>(order) + 1);
  {
    std::vector<std::uint64_t> keys;
    keys.reserve(counts.raw().size());
    for (const auto& [key, n] : counts.raw()) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    for (std::uint64_t key : keys) {
      const int len = detail::gram_length(key);
      std::vector<Symbol> gram = detail::unpack_gram(key);
      if (gram.back() != kBosSymbol) grams[static_cast<std::size_t>(len)].push_back(std::move(gram));
    }
  }
  // Unigrams are the full closed vocabulary regardless of what was observed.
  grams[1].clear();
  for (Symbol v = 0; v < kVocabSize; ++v) grams[1].push_back({v});

  // All-BOS histories carry backoff weight but are not prediction events.
  std::vector<std::vector<Symbol>> bos_grams;
  for (int m = 1; m < order; ++m) {
    const std::vector<Symbol> g(static_cast<std::size_t>(m), kBosSymbol);
    if (counts.continuations(g).total > 0) bos_grams.push_back(g);
  }

  out << "\\data\\\n";
  for (int m = 1; m <= order; ++m) {
    std::size_t n = grams[static_cast<std::size_t>(m)].size();
    if (m < order)
      for (const auto& g : bos_grams)
        if (static_cast<int>(g.size()) == m) ++n;
    out << "ngram " << m << "=" << n << "\n";
  }

  const auto write_entry = [&](const std::vector<Symbol>& gram, bool dummy,
                               bool allow_bow) {
    const std::span<const Symbol> span(gram);
    if (dummy) {
      out << "-99";
    } else {
      const double p =
          model.prob(span.subspan(0, span.size() - 1), span.back());
      out << detail::format_log10(std::log10(p));
    }
    out << "\t";
    for (std::size_t i = 0; i < gram.size(); ++i) {
      if (i) out << " ";
      out << symbol_name(gram[i]);
    }
    if (allow_bow) {
      const auto cont = counts.continuations(span);
      if (cont.total > 0) {
        const double bow = static_cast<double>(cont.distinct) /
                           static_cast<double>(cont.total + cont.distinct);
        out << "\t" << detail::format_log10(std::log10(bow));
      }
    }
    out << "\n";
  };

  for (int m = 1; m <= order; ++m) {
    out << "\n\\" << m << "-grams:\n";
    for (const auto& gram : grams[static_cast<std::size_t>(m)])
      write_entry(gram, false, m < order);
    if (m < order)
      for (const auto& gram : bos_grams)
        if (static_cast<int>(gram.size()) == m) write_entry(gram, true, true);
  }
  out << "\n\\end\\\n";
}

// Backoff scorer over an imported ARPA file. Evaluates
//   p(t | h) = p(h.t)                       if h.t is listed
//            = bow(h) * p(t | h minus its oldest symbol)   otherwise
// which for files produced by export_arpa reproduces the Witten-Bell model.
class ArpaModel {
 public:
  int order() const { return order_; }

  double prob(std::span<const Symbol> history, Symbol next) const {
    if (next >= kVocabSize)
      throw ArgumentError("prob: BOS cannot appear in the predicted position");
    const std::size_t max_len = static_cast<std::size_t>(order_ - 1);
    if (history.size() > max_len)
      history = history.subspan(history.size() - max_len);
    return backoff_prob(history, next);
  }

  std::size_t size() const { return entries_.size(); }

  friend ArpaModel import_arpa(std::istream& in);

 private:
  struct Entry {
    double log10_prob = 0.0;
    double log10_bow = 0.0;
    bool has_bow = false;
  };

  double backoff_prob(std::span<const Symbol> history, Symbol next) const {
    std::array<Symbol, NGramModel::kMaxOrder> gram;
    std::copy(history.begin(), history.end(), gram.begin());
    gram[history.size()] = next;
    const auto it =
        entries_.find(detail::pack_gram({gram.data(), history.size() + 1}));
    if (it != entries_.end()) return std::pow(10.0, it->second.log10_prob);
    if (history.empty())
      throw Error("arpa: no unigram entry for " +
                  std::string(symbol_name(next)));
    double bow = 1.0;
    const auto hit = entries_.find(detail::pack_gram(history));
    if (hit != entries_.end() && hit->second.has_bow)
      bow = std::pow(10.0, hit->second.log10_bow);
    return bow * backoff_prob(history.subspan(1), next);
  }

  int order_ = 1;
  std::unordered_map<std::uint64_t, Entry> entries_;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

inline double parse_log10(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.begin(), s.end(), v);
  if (ec != std::errc{} || ptr != s.end())
    throw ParseError("bad log10 value '" + std::string(s) + "'", line_no);
  return v;
}

inline std::optional<Symbol> parse_symbol(std::string_view s) {
  if (s == "</s>") return kEosSymbol;
  if (s == "<s>") return kBosSymbol;
  if (const auto tag = parse_pos_tag(s)) return to_symbol(*tag);
  return std::nullopt;
}

}  // namespace detail

inline ArpaModel import_arpa(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  const auto next_line = [&](bool required) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    if (required) throw ParseError("unexpected end of file", line_no);
    return false;
  };

  // Anything before \data\ is preamble and is ignored.
  do {
    next_line(true);
  } while (line != "\\data\\");

  std::map<int, std::size_t> declared;
  while (true) {
    next_line(true);
    if (line.empty()) continue;
    if (line[0] == '\\') break;
    const auto fields = detail::split_fields(line);
    if (fields.size() != 2 || fields[0] != "ngram")
      throw ParseError("expected 'ngram k=N', got '" + line + "'", line_no);
    const std::size_t eq = fields[1].find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'ngram k=N', got '" + line + "'", line_no);
    int k = 0;
    std::size_t n = 0;
    const auto ks = fields[1].substr(0, eq);
    const auto ns = fields[1].substr(eq + 1);
    if (std::from_chars(ks.begin(), ks.end(), k).ec != std::errc{} ||
        std::from_chars(ns.begin(), ns.end(), n).ec != std::errc{} || k < 1 ||
        k > NGramModel::kMaxOrder)
      throw ParseError("bad ngram count line '" + line + "'", line_no);
    declared[k] = n;
  }
  if (declared.empty() || declared.rbegin()->first != static_cast<int>(declared.size()))
    throw ParseError("\\data\\ section does not declare orders 1..n", line_no);

  ArpaModel model;
  model.order_ = declared.rbegin()->first;

  // `line` currently holds the first section header.
  int level = 0;
  std::size_t seen_in_level = 0;
  while (true) {
    if (line == "\\end\\") {
      if (level != model.order_)
        throw ParseError("\\end\\ before all sections were read", line_no);
      break;
    }
    if (!line.empty() && line[0] == '\\') {
      if (level > 0 && seen_in_level != declared[level])
        throw ParseError("section " + std::to_string(level) + " declared " +
                             std::to_string(declared[level]) + " entries, found " +
                             std::to_string(seen_in_level),
                         line_no);
      const std::string expected =
          "\\" + std::to_string(level + 1) + "-grams:";
      if (line != expected)
        throw ParseError("expected '" + expected + "', got '" + line + "'",
                         line_no);
      ++level;
      seen_in_level = 0;
      next_line(true);
      continue;
    }
    if (line.empty() || detail::split_fields(line).empty()) {
      next_line(true);
      continue;
    }

    const auto fields = detail::split_fields(line);
    const std::size_t m = static_cast<std::size_t>(level);
    if (fields.size() != m + 1 && fields.size() != m + 2)
      throw ParseError("expected " + std::to_string(m + 1) + " or " +
                           std::to_string(m + 2) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    ArpaModel::Entry entry;
    entry.log10_prob = detail::parse_log10(fields[0], line_no);
    bool has_unk = false;
    std::vector<Symbol> gram;
    for (std::size_t i = 1; i <= m; ++i) {
      if (fields[i] == "<unk>") {
        has_unk = true;
        continue;
      }
      const auto sym = detail::parse_symbol(fields[i]);
      if (!sym)
        throw ParseError("unknown symbol '" + std::string(fields[i]) + "'",
                         line_no);
      gram.push_back(*sym);
    }
    if (fields.size() == m + 2) {
      entry.log10_bow = detail::parse_log10(fields[m + 1], line_no);
      entry.has_bow = true;
    }
    ++seen_in_level;
    if (!has_unk) model.entries_[detail::pack_gram(gram)] = entry;
    next_line(true);
  }

  if (seen_in_level != declared[model.order_])
    throw ParseError("section " + std::to_string(model.order_) + " declared " +
                         std::to_string(declared[model.order_]) +
                         " entries, found " + std::to_string(seen_in_level),
                     line_no);

  // The scorer must stay total over the closed vocabulary.
  for (Symbol v = 0; v < kVocabSize; ++v) {
    const std::vector<Symbol> g = {v};
    if (!model.entries_.contains(detail::pack_gram(g)))
      throw ParseError("missing unigram entry for " +
                           std::string(symbol_name(v)),
                       line_no);
  }
  return model;
}

}  // namespace transtat
