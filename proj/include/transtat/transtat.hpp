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

#include "transtat/arpa.hpp"
#include "transtat/conllu.hpp"
#include "transtat/corpus.hpp"
#include "transtat/error.hpp"
#include "transtat/manifest.hpp"
#include "transtat/metrics.hpp"
#include "transtat/ngram.hpp"
#include "transtat/plaintext.hpp"
#include "transtat/pos.hpp"
#include "transtat/report.hpp"
#include "transtat/stats.hpp"
#include "transtat/unicode.hpp"
#include "transtat/version.hpp"
