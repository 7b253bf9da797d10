// include/anonvoice/text-metrics.h

// Copyright 2026  The anonvoice Authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Word error rate (WER) and word information lost (WIL, Morris et al.)
// from a minimum edit-distance word alignment.

#ifndef ANONVOICE_TEXT_METRICS_H_
#define ANONVOICE_TEXT_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anonvoice/stats.h"

namespace anonvoice {

/// Lowercases, splits on whitespace and strips leading/trailing
/// non-alphanumeric characters from each token; empty tokens are dropped.
std::vector<std::string> Tokenize(std::string_view text);

struct WordAlignment {
  std::size_t hits = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;

  std::size_t RefLength() const { return hits + substitutions + deletions; }
  std::size_t HypLength() const { return hits + substitutions + insertions; }
  std::size_t Errors() const { return substitutions + deletions + insertions; }

  WordAlignment &operator+=(const WordAlignment &o) {
    hits += o.hits;
    substitutions += o.substitutions;
    deletions += o.deletions;
    insertions += o.insertions;
    return *this;
  }
  friend bool operator==(const WordAlignment &, const WordAlignment &) = default;
};

/// Unit-cost edit alignment. Among minimum-cost alignments the one with
/// more hits, then fewer substitutions, is chosen.
WordAlignment Align(std::span<const std::string> ref,
                    std::span<const std::string> hyp);

/// (S + D + I) / N_ref. Throws DataError for an empty reference.
double Wer(const WordAlignment &a);
/// 1 - (H / N_ref)(H / N_hyp); 1 when either length is zero.
double Wil(const WordAlignment &a);

struct CorpusMetrics {
  WordAlignment totals;
  double wer = 0.0;
  double wil = 0.0;
  Interval wer_ci;  // 95% percentile bootstrap over pairs
  Interval wil_ci;
  std::size_t n_pairs = 0;
  std::size_t n_bootstrap = 0;
};

/// Pooled-count WER/WIL over (reference, hypothesis) text pairs with
/// bootstrap confidence intervals, deterministic from seed.
CorpusMetrics ComputeCorpusMetrics(
    std::span<const std::pair<std::string, std::string>> pairs,
    std::size_t n_bootstrap, std::uint64_t seed);

}  // namespace anonvoice

#endif  // ANONVOICE_TEXT_METRICS_H_
