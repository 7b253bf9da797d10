// src/stats.cc

// Copyright 2026  The anonvoice Authors

// See ../COPYING for clarification regarding multiple authors
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

#include "anonvoice/stats.h"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>

#include "anonvoice/errors.h"

namespace anonvoice {

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

Interval WilsonInterval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw ConfigError("Wilson interval of zero trials");
  if (successes > trials) throw ConfigError("more successes than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double TwoProportionPValue(std::size_t x1, std::size_t n1, std::size_t x2,
                           std::size_t n2) {
  if (n1 == 0 || n2 == 0) throw ConfigError("two-proportion test with n = 0");
  const double p1 = static_cast<double>(x1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(x2) / static_cast<double>(n2);
  const double pooled =
      static_cast<double>(x1 + x2) / static_cast<double>(n1 + n2);
  const double var = pooled * (1.0 - pooled) *
                     (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2));
  if (!(var > 0.0)) return 1.0;
  const double z = (p1 - p2) / std::sqrt(var);
  return 2.0 * (1.0 - NormalCdf(std::abs(z)));
}

double ChiSquareIndependencePValue(std::span<const std::size_t> counts,
                                   std::size_t rows, std::size_t cols) {
  if (counts.size() != rows * cols)
    throw ConfigError("contingency table size mismatch");
  std::vector<double> row_sum(rows, 0.0), col_sum(cols, 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < rows; r++)
    for (std::size_t c = 0; c < cols; c++) {
      double x = static_cast<double>(counts[r * cols + c]);
      row_sum[r] += x;
      col_sum[c] += x;
      total += x;
    }
  std::size_t live_rows = 0, live_cols = 0;
  for (double s : row_sum) live_rows += s > 0.0;
  for (double s : col_sum) live_cols += s > 0.0;
  if (live_rows < 2 || live_cols < 2) return 1.0;

  double stat = 0.0;
  for (std::size_t r = 0; r < rows; r++) {
    if (row_sum[r] == 0.0) continue;
    for (std::size_t c = 0; c < cols; c++) {
      if (col_sum[c] == 0.0) continue;
      double expected = row_sum[r] * col_sum[c] / total;
      double diff = static_cast<double>(counts[r * cols + c]) - expected;
      stat += diff * diff / expected;
    }
  }
  double df = static_cast<double>((live_rows - 1) * (live_cols - 1));
  boost::math::chi_squared dist(df);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace anonvoice
