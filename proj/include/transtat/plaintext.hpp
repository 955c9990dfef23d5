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

#include <istream>
#include <string>
#include <vector>

#include "transtat/corpus.hpp"

namespace transtat {

struct PlaintextReport {
  // 0-based indices of input lines that produced empty sentences.
  std::vector<std::size_t> empty_lines;
};

// One sentence per line, tokens split on Unicode whitespace, no tags.
// Lossless: never throws; empty lines become empty sentences and are flagged
// in the report.
inline std::vector<TaggedSentence> parse_plaintext(
    std::istream& in, PlaintextReport* report = nullptr) {
  std::vector<TaggedSentence> sentences;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    TaggedSentence sentence;
    std::string word;
    std::size_t i = 0;
    while (i < line.size()) {
      const std::size_t start = i;
      const char32_t cp = unicode::decode(line, i);
      if (unicode::is_whitespace(cp)) {
        if (!word.empty()) {
          sentence.tokens.push_back({std::move(word), std::nullopt});
          word.clear();
        }
      } else {
        word.append(line, start, i - start);
      }
    }
    if (!word.empty()) sentence.tokens.push_back({std::move(word), std::nullopt});
    if (sentence.tokens.empty() && report)
      report->empty_lines.push_back(sentences.size());
    sentences.push_back(std::move(sentence));
  }
  return sentences;
}

}  // namespace transtat
