// include/anonvoice/pca.h

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

#ifndef ANONVOICE_PCA_H_
#define ANONVOICE_PCA_H_

#include <span>
#include <vector>

#include "anonvoice/embedding.h"
#include "anonvoice/linalg.h"

namespace anonvoice {

inline constexpr double kDefaultPcaRetain = 0.95;

/// Truncated principal component model. Components are the rows of
/// `components` (m x d, orthonormal), ordered by decreasing variance.
/// component_mean/component_std describe the training data projected into
/// the m-dimensional space (sample statistics, n - 1 denominator).
struct PcaModel {
  std::vector<double> mean;
  Matrix components;
  std::vector<double> explained_variance;
  std::vector<double> component_mean;
  std::vector<double> component_std;
  double retained_fraction = 0.0;
  double total_variance = 0.0;

  std::size_t InputDim() const { return mean.size(); }
  std::size_t NumComponents() const { return components.Rows(); }

  friend bool operator==(const PcaModel &, const PcaModel &) = default;
};

/// Keeps the smallest number of components whose cumulative explained
/// variance reaches `retain` of the total. Requires at least two samples
/// with non-zero total variance and retain in (0, 1].
PcaModel PcaFit(std::span<const EmbeddingVector> data,
                double retain = kDefaultPcaRetain);

/// (v - mean) projected onto the components.
std::vector<double> PcaTransform(const PcaModel &model,
                                 std::span<const double> v);

/// mean + z^T components.
std::vector<double> PcaInverse(const PcaModel &model,
                               std::span<const double> z);

/// Projects every row of data; returns an n x m matrix.
Matrix PcaTransformAll(const PcaModel &model,
                       std::span<const EmbeddingVector> data);

}  // namespace anonvoice

#endif  // ANONVOICE_PCA_H_
