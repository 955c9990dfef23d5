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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace transtat {

// The 17 Universal Dependencies part-of-speech tags. The tagset is closed:
// everything in this toolkit (parsing, metrics, language models) works over
// exactly these values.
enum class PosTag : std::uint8_t {
  ADJ,
  ADP,
  ADV,
  AUX,
  CCONJ,
  DET,
  INTJ,
  NOUN,
  NUM,
  PART,
  PRON,
  PROPN,
  PUNCT,
  SCONJ,
  SYM,
  VERB,
  X,
};

inline constexpr std::size_t kNumPosTags = 17;

inline constexpr std::array<PosTag, kNumPosTags> kAllPosTags = {
    PosTag::ADJ,  PosTag::ADP,   PosTag::ADV,   PosTag::AUX,  PosTag::CCONJ,
    PosTag::DET,  PosTag::INTJ,  PosTag::NOUN,  PosTag::NUM,  PosTag::PART,
    PosTag::PRON, PosTag::PROPN, PosTag::PUNCT, PosTag::SCONJ, PosTag::SYM,
    PosTag::VERB, PosTag::X,
};

inline constexpr std::array<std::string_view, kNumPosTags> kPosTagNames = {
    "ADJ",  "ADP",   "ADV",   "AUX",   "CCONJ", "DET",  "INTJ", "NOUN", "NUM",
    "PART", "PRON",  "PROPN", "PUNCT", "SCONJ", "SYM",  "VERB", "X",
};

inline constexpr std::string_view to_string(PosTag tag) {
  return kPosTagNames[static_cast<std::size_t>(tag)];
}

// Returns nullopt for anything outside the closed tagset.
inline std::optional<PosTag> parse_pos_tag(std::string_view s) {
  for (std::size_t i = 0; i < kNumPosTags; ++i) {
    if (kPosTagNames[i] == s) return kAllPosTags[i];
  }
  return std::nullopt;
}

// Small value-semantic set of PoS tags.
class PosTagSet {
 public:
  constexpr PosTagSet() = default;
  constexpr PosTagSet(std::initializer_list<PosTag> tags) {
    for (PosTag t : tags) insert(t);
  }

  constexpr void insert(PosTag t) { bits_ |= bit(t); }
  constexpr bool contains(PosTag t) const { return (bits_ & bit(t)) != 0; }
  constexpr std::size_t size() const {
    std::size_t n = 0;
    for (PosTag t : kAllPosTags) n += contains(t);
    return n;
  }
  constexpr bool empty() const { return bits_ == 0; }

  static constexpr PosTagSet all() {
    PosTagSet s;
    for (PosTag t : kAllPosTags) s.insert(t);
    return s;
  }

  friend constexpr bool operator==(PosTagSet a, PosTagSet b) {
    return a.bits_ == b.bits_;
  }

 private:
  static constexpr std::uint32_t bit(PosTag t) {
    return std::uint32_t{1} << static_cast<unsigned>(t);
  }
  std::uint32_t bits_ = 0;
};

// Content words: adverbs, adjectives, nouns and verbs. AUX and PROPN are
// deliberately not included; override per call if a looser reading is wanted.
inline constexpr PosTagSet kContentTags = {PosTag::ADJ, PosTag::ADV,
                                           PosTag::NOUN, PosTag::VERB};

}  // namespace transtat
