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
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "transtat/corpus.hpp"
#include "transtat/error.hpp"

namespace transtat {

namespace detail {

// Continued fraction for the regularized incomplete beta, evaluated with the
// modified Lentz algorithm.
inline double ibeta_continued_fraction(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  const auto numer = [&](int n) {
    if (n % 2 == 0) {
      const double m = n / 2;
      return m * (b - m) * x / ((a + 2.0 * m - 1.0) * (a + 2.0 * m));
    }
    const double m = (n - 1) / 2;
    return -(a + m) * (a + b + m) * x / ((a + 2.0 * m) * (a + 2.0 * m + 1.0));
  };
  double f = 1.0, c = 1.0, d = 0.0;
  for (int n = 1; n < 10000; ++n) {
    const double an = numer(n);
    d = 1.0 + an * d;
    if (d == 0.0) d = kTiny;
    c = 1.0 + an / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double mult = c * d;
    f *= mult;
    if (std::fabs(mult - 1.0) <= kEps) break;
  }
  return f;
}

// I_x(a, b), regularized.
inline double regularized_incomplete_beta(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_prefix = a * std::log(x) + b * std::log1p(-x) -
                            (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  // The continued fraction converges fast for x below the pivot; use the
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) above it.
  if (x <= (a + 1.0) / (a + b + 2.0))
    return std::exp(log_prefix) / (a * ibeta_continued_fraction(x, a, b));
  return 1.0 -
         std::exp(log_prefix) / (b * ibeta_continued_fraction(1.0 - x, b, a));
}

}  // namespace detail

// P(T <= t) for Student's t distribution with df degrees of freedom.
inline double student_cdf(double t, double df) {
  if (df <= 0.0) throw ArgumentError("student_cdf: df must be positive");
  const double x = df / (t * t + df);
  const double half_tail =
      detail::regularized_incomplete_beta(x, df / 2.0, 0.5) / 2.0;
  return t >= 0.0 ? 1.0 - half_tail : half_tail;
}

struct TTestResult {
  double t = 0.0;
  std::size_t df = 0;
  double p_one_tailed = 1.0;
  std::size_t n = 0;
};

// One-tailed paired t-test of H1: mean(a) > mean(b).
inline TTestResult paired_t_test(std::span<const double> a,
                                 std::span<const double> b) {
  if (a.size() != b.size())
    throw ArgumentError("paired_t_test: length mismatch (" +
                        std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  const std::size_t n = a.size();
  if (n < 2) throw ArgumentError("paired_t_test: need at least 2 pairs");

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (a[i] - b[i]) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (sd == 0.0)
    throw ZeroVarianceError("paired_t_test: differences have zero variance");

  TTestResult r;
  r.n = n;
  r.df = n - 1;
  r.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  r.p_one_tailed = 1.0 - student_cdf(r.t, static_cast<double>(r.df));
  return r;
}

// "‡" below 0.001, "†" below 0.01, "*" below 0.05, else "".
inline std::string_view significance_mark(double p) {
  if (p < 0.001) return "‡";
  if (p < 0.01) return "†";
  if (p < 0.05) return "*";
  return "";
}

// 100 * (value - baseline) / baseline.
inline double relative_difference(double baseline, double value) {
  if (baseline == 0.0)
    throw ArgumentError("relative_difference: zero baseline");
  return 100.0 * (value - baseline) / baseline;
}

struct BootstrapCI {
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  std::size_t n_replicates = 0;
  std::uint64_t seed = 0;
  std::size_t n_skipped = 0;  // replicates where the statistic failed
};

using CorpusStatistic = std::function<double(std::span<const TaggedSentence>)>;

namespace detail {

// Replicate i draws from its own generator, so the replicate -> stream
// mapping is independent of evaluation order.
inline std::mt19937_64 replicate_engine(std::uint64_t seed, std::uint64_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i),
                    static_cast<std::uint32_t>(i >> 32)};
  return std::mt19937_64(seq);
}

// Empirical quantile as an order statistic: the ceil(q*n)-th smallest value.
inline double order_statistic_quantile(const std::vector<double>& sorted,
                                       double q) {
  const double rank = std::ceil(q * static_cast<double>(sorted.size()));
  const std::size_t idx =
      rank < 1.0 ? 0 : std::min(sorted.size() - 1, static_cast<std::size_t>(rank) - 1);
  return sorted[idx];
}

}  // namespace detail

// Percentile bootstrap over sentences. Replicate i resamples with
// replacement using indices mt19937_64(seed_seq{seed, i}) mod n, recomputes
// the statistic, and the interval is taken from order statistics of the
// replicate distribution at (1-level)/2 and 1-(1-level)/2. Deterministic for
// a fixed seed. Replicates on which the statistic throws are skipped and
// tallied; more than 10% skips is an error.
inline BootstrapCI bootstrap_ci(std::span<const TaggedSentence> sentences,
                                const CorpusStatistic& statistic,
                                double level = 0.95,
                                std::size_t n_replicates = 1000,
                                std::uint64_t seed = 0) {
  if (sentences.empty()) throw EmptyCorpusError("bootstrap_ci: empty corpus");
  if (n_replicates < 100)
    throw ArgumentError("bootstrap_ci: need at least 100 replicates");
  if (!(level > 0.0 && level < 1.0))
    throw ArgumentError("bootstrap_ci: level must be in (0, 1)");

  BootstrapCI ci;
  ci.level = level;
  ci.n_replicates = n_replicates;
  ci.seed = seed;
  ci.point = statistic(sentences);

  const std::size_t n = sentences.size();
  std::vector<double> replicates;
  replicates.reserve(n_replicates);
  std::vector<TaggedSentence> resample(n);
  for (std::size_t i = 0; i < n_replicates; ++i) {
    std::mt19937_64 eng = detail::replicate_engine(seed, i);
    for (std::size_t j = 0; j < n; ++j) resample[j] = sentences[eng() % n];
    try {
      replicates.push_back(statistic(resample));
    } catch (const Error&) {
      ++ci.n_skipped;
    }
  }
  if (ci.n_skipped * 10 > n_replicates)
    throw BootstrapDegenerateError(
        "bootstrap_ci: " + std::to_string(ci.n_skipped) + " of " +
        std::to_string(n_replicates) + " replicates failed");

  std::sort(replicates.begin(), replicates.end());
  const double alpha = 1.0 - level;
  ci.lower = detail::order_statistic_quantile(replicates, alpha / 2.0);
  ci.upper = detail::order_statistic_quantile(replicates, 1.0 - alpha / 2.0);
  return ci;
}

// True iff the baseline interval lies strictly above every other interval.
inline bool ci_significance(const BootstrapCI& baseline,
                            std::span<const BootstrapCI> others) {
  if (others.empty()) throw ArgumentError("ci_significance: no intervals to compare");
  for (const BootstrapCI& o : others) {
    if (o.level != baseline.level || o.n_replicates != baseline.n_replicates)
      throw ArgumentError(
          "ci_significance: intervals built with different settings");
    if (baseline.lower <= o.upper) return false;
  }
  return true;
}

}  // namespace transtat
