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
#include <string_view>
#include <vector>

#include "transtat/corpus.hpp"
#include "transtat/error.hpp"

// CoNLL-U reader. Only the FORM (2) and UPOS (4) columns are used; the other
// eight are required to be present but are otherwise ignored. Comment lines,
// multiword-token range lines ("1-2") and empty-node lines ("1.1") are
// skipped; a blank line terminates the current sentence.

namespace transtat {

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// "12" -> word line, "3-5" -> range, "6.1" -> empty node, else malformed.
enum class ConlluIdKind { Word, Range, EmptyNode, Bad };

inline ConlluIdKind classify_conllu_id(std::string_view id) {
  if (all_digits(id)) return ConlluIdKind::Word;
  const std::size_t dash = id.find('-');
  if (dash != std::string_view::npos)
    return all_digits(id.substr(0, dash)) && all_digits(id.substr(dash + 1))
               ? ConlluIdKind::Range
               : ConlluIdKind::Bad;
  const std::size_t dot = id.find('.');
  if (dot != std::string_view::npos)
    return all_digits(id.substr(0, dot)) && all_digits(id.substr(dot + 1))
               ? ConlluIdKind::EmptyNode
               : ConlluIdKind::Bad;
  return ConlluIdKind::Bad;
}

inline bool has_whitespace(std::string_view s) {
  for (char c : s)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' ||
        c == '\r')
      return true;
  return false;
}

}  // namespace detail

inline std::vector<TaggedSentence> parse_conllu(std::istream& in) {
  std::vector<TaggedSentence> sentences;
  TaggedSentence current;
  std::string line;
  std::size_t line_no = 0;

  const auto flush = [&] {
    if (!current.tokens.empty()) {
      sentences.push_back(std::move(current));
      current = TaggedSentence{};
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;

    // Exactly 10 tab-separated columns.
    std::array<std::string_view, 10> col;
    std::string_view rest = line;
    std::size_t ncol = 0;
    while (true) {
      const std::size_t tab = rest.find('\t');
      if (ncol == 10)
        throw ParseError("expected 10 columns, found more", line_no);
      if (tab == std::string_view::npos) {
        col[ncol++] = rest;
        break;
      }
      col[ncol++] = rest.substr(0, tab);
      rest = rest.substr(tab + 1);
    }
    if (ncol != 10)
      throw ParseError("expected 10 columns, found " + std::to_string(ncol),
                       line_no);

    switch (detail::classify_conllu_id(col[0])) {
      case detail::ConlluIdKind::Range:
      case detail::ConlluIdKind::EmptyNode:
        continue;
      case detail::ConlluIdKind::Bad:
        throw ParseError("malformed token ID '" + std::string(col[0]) + "'",
                         line_no);
      case detail::ConlluIdKind::Word:
        break;
    }

    const std::string_view form = col[1];
    if (form.empty()) throw ParseError("empty FORM", line_no);
    if (detail::has_whitespace(form))
      throw ParseError("FORM '" + std::string(form) + "' contains whitespace",
                       line_no);

    Token token;
    token.surface = std::string(form);
    const std::string_view upos = col[3];
    if (upos != "_") {
      const auto tag = parse_pos_tag(upos);
      if (!tag)
        throw ParseError("unknown UPOS value '" + std::string(upos) + "'",
                         line_no);
      token.pos = *tag;
    }
    current.tokens.push_back(std::move(token));
  }
  flush();
  return sentences;
}

}  // namespace transtat
