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
#include <stdexcept>
#include <string>

namespace transtat {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file. Carries a 1-based line number where known (0 if not).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Sentence counts of two corpora that must be aligned do not match.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// A PoS-dependent operation met a token without a tag.
class MissingTagsError : public Error {
 public:
  using Error::Error;
};

// A corpus-level statistic was asked of a corpus with nothing to count.
class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

// A caller violated an argument contract (bad order, empty list, zero
// baseline, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Paired test on a zero-variance difference vector.
class ZeroVarianceError : public Error {
 public:
  using Error::Error;
};

// Too many bootstrap replicates failed to produce a statistic.
class BootstrapDegenerateError : public Error {
 public:
  using Error::Error;
};

// Dataset- or run-configuration problem (bad manifest, no HT variant, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

// A result expected for every variant was missing.
class IncompleteResultsError : public Error {
 public:
  using Error::Error;
};

}  // namespace transtat
