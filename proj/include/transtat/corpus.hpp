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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "transtat/error.hpp"
#include "transtat/pos.hpp"
#include "transtat/unicode.hpp"

namespace transtat {

struct Token {
  std::string surface;  // non-empty, no internal whitespace
  std::optional<PosTag> pos;
};

// A sentence as surface tokens plus optional Universal PoS tags. This is the
// unit every metric and language-model operation consumes.
struct TaggedSentence {
  std::vector<Token> tokens;

  bool fully_tagged() const {
    for (const Token& t : tokens)
      if (!t.pos) return false;
    return true;
  }
};

// Character length of the detokenized sentence: Unicode scalar count of the
// surfaces joined by single spaces. Empty sentence -> 0.
inline std::size_t char_length(const TaggedSentence& sentence) {
  if (sentence.tokens.empty()) return 0;
  std::size_t n = sentence.tokens.size() - 1;  // separating spaces
  for (const Token& t : sentence.tokens) n += unicode::scalar_count(t.surface);
  return n;
}

enum class VariantKind : std::uint8_t { HT, PE, MT };

enum class MtParadigm : std::uint8_t { RBMT, SMT, NMT, NONE };

inline constexpr std::string_view to_string(VariantKind k) {
  switch (k) {
    case VariantKind::HT: return "HT";
    case VariantKind::PE: return "PE";
    case VariantKind::MT: return "MT";
  }
  return "?";
}

inline constexpr std::string_view to_string(MtParadigm p) {
  switch (p) {
    case MtParadigm::RBMT: return "RBMT";
    case MtParadigm::SMT: return "SMT";
    case MtParadigm::NMT: return "NMT";
    case MtParadigm::NONE: return "NONE";
  }
  return "?";
}

inline std::optional<VariantKind> parse_variant_kind(std::string_view s) {
  if (s == "HT") return VariantKind::HT;
  if (s == "PE") return VariantKind::PE;
  if (s == "MT") return VariantKind::MT;
  return std::nullopt;
}

inline std::optional<MtParadigm> parse_mt_paradigm(std::string_view s) {
  if (s == "RBMT") return MtParadigm::RBMT;
  if (s == "SMT") return MtParadigm::SMT;
  if (s == "NMT") return MtParadigm::NMT;
  if (s == "NONE") return MtParadigm::NONE;
  return std::nullopt;
}

// One translation of the whole dataset: an HT, a PE or a raw MT output,
// sentence-aligned with the source.
struct TranslationVariant {
  VariantKind kind = VariantKind::HT;
  MtParadigm paradigm = MtParadigm::NONE;
  std::string system_id;
  std::vector<TaggedSentence> sentences;
};

// Source sentences aligned 1:1 with N translation variants.
struct AlignedDataset {
  std::string name;
  std::string source_lang;
  std::string target_lang;
  std::vector<TaggedSentence> source;
  std::vector<TranslationVariant> variants;

  // Throws unless all structural invariants hold.
  void validate() const {
    if (source_lang == target_lang)
      throw ConfigError("dataset '" + name + "': source_lang equals target_lang ('" +
                        source_lang + "')");
    if (variants.empty())
      throw ConfigError("dataset '" + name + "': no translation variants");
    for (const TranslationVariant& v : variants) {
      if (v.sentences.size() != source.size())
        throw AlignmentError("dataset '" + name + "': variant '" + v.system_id +
                             "' has " + std::to_string(v.sentences.size()) +
                             " sentences but source has " +
                             std::to_string(source.size()));
      const bool none = v.paradigm == MtParadigm::NONE;
      if ((v.kind == VariantKind::HT) != none)
        throw ConfigError("dataset '" + name + "': variant '" + v.system_id +
                          "' combines kind " + std::string(to_string(v.kind)) +
                          " with paradigm " + std::string(to_string(v.paradigm)));
    }
  }
};

}  // namespace transtat
