// include/anonvoice/stats.h

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

// Small hypothesis-testing helpers for the attack reports.

#ifndef ANONVOICE_STATS_H_
#define ANONVOICE_STATS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace anonvoice {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double low = 0.0;
  double high = 0.0;
  double HalfWidth() const { return 0.5 * (high - low); }
  bool Contains(double x) const { return x >= low && x <= high; }
};

/// Wilson score interval for a binomial proportion.
Interval WilsonInterval(std::size_t successes, std::size_t trials,
                        double z = kZ95);

/// Two-sided p-value of the pooled two-proportion z-test. Returns 1 when
/// both samples are all-failure or all-success (no variance to test).
double TwoProportionPValue(std::size_t x1, std::size_t n1, std::size_t x2,
                           std::size_t n2);

/// Pearson chi-square test of independence on a table of
/// `rows` x `cols` counts (row-major). Columns and rows with zero total are
/// dropped. Returns the upper-tail p-value (1 if fewer than two columns or
/// rows remain).
double ChiSquareIndependencePValue(std::span<const std::size_t> counts,
                                   std::size_t rows, std::size_t cols);

/// Standard normal CDF.
double NormalCdf(double x);

}  // namespace anonvoice

#endif  // ANONVOICE_STATS_H_
