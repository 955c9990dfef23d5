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

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "transtat/conllu.hpp"
#include "transtat/corpus.hpp"
#include "transtat/error.hpp"
#include "transtat/plaintext.hpp"

// Dataset manifest: a JSON document naming the source corpus and every
// translation variant. Relative paths are resolved against the manifest's
// directory.
//
//   {
//     "name": "...", "source_lang": "de", "target_lang": "en",
//     "source": {"path": "src.conllu", "format": "conllu"},
//     "variants": [
//       {"kind": "HT", "system_id": "ht1", "path": "...", "format": "text"},
//       {"kind": "PE", "paradigm": "SMT", "system_id": "...", ...}
//     ]
//   }

namespace transtat {

namespace detail {

inline std::vector<TaggedSentence> load_corpus_file(
    const std::filesystem::path& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    if (format == "conllu") return parse_conllu(in);
    if (format == "text") return parse_plaintext(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  throw ConfigError("unknown corpus format '" + format +
                    "' (expected \"conllu\" or \"text\")");
}

}  // namespace detail

inline AlignedDataset load_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open '" + manifest_path.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(manifest_path.string() + ": " + e.what());
  }

  const auto base = manifest_path.parent_path();
  const auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };

  AlignedDataset ds;
  try {
    ds.name = doc.at("name").get<std::string>();
    ds.source_lang = doc.at("source_lang").get<std::string>();
    ds.target_lang = doc.at("target_lang").get<std::string>();

    const auto& src = doc.at("source");
    ds.source = detail::load_corpus_file(resolve(src.at("path")),
                                         src.at("format").get<std::string>());

    for (const auto& v : doc.at("variants")) {
      TranslationVariant variant;
      const std::string kind = v.at("kind").get<std::string>();
      const auto parsed_kind = parse_variant_kind(kind);
      if (!parsed_kind)
        throw ConfigError("unknown variant kind '" + kind + "'");
      variant.kind = *parsed_kind;

      std::string paradigm = "NONE";
      if (v.contains("paradigm")) paradigm = v.at("paradigm").get<std::string>();
      const auto parsed_paradigm = parse_mt_paradigm(paradigm);
      if (!parsed_paradigm)
        throw ConfigError("unknown MT paradigm '" + paradigm + "'");
      variant.paradigm = *parsed_paradigm;

      variant.system_id = v.at("system_id").get<std::string>();
      variant.sentences = detail::load_corpus_file(
          resolve(v.at("path")), v.at("format").get<std::string>());
      ds.variants.push_back(std::move(variant));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(manifest_path.string() + ": " + e.what());
  }

  ds.validate();
  return ds;
}

}  // namespace transtat
