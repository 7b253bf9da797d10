// src/pca.cc

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

#include "anonvoice/pca.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "anonvoice/errors.h"

namespace anonvoice {

namespace {

// Relative slack when comparing cumulative variance against the target, so
// that retain = 1.0 is reachable despite round-off in the trailing
// (numerically zero) eigenvalues.
constexpr double kRetainSlack = 1e-10;

void CheckDim(std::size_t got, std::size_t want) {
  if (got != want)
    throw DataError("PCA dimension mismatch: got " + std::to_string(got) +
                    ", model expects " + std::to_string(want));
}

}  // namespace

PcaModel PcaFit(std::span<const EmbeddingVector> data, double retain) {
  if (!(retain > 0.0 && retain <= 1.0))
    throw ConfigError("PCA retain fraction must be in (0, 1]");
  const std::size_t n = data.size();
  if (n < 2) throw DataError("PCA needs at least 2 samples");
  const std::size_t d = data.front().Dim();
  for (const auto &v : data)
    if (v.Dim() != d) throw DataError("PCA samples of mixed dimension");

  PcaModel model;
  model.mean.assign(d, 0.0);
  for (const auto &v : data)
    for (std::size_t j = 0; j < d; j++) model.mean[j] += v[j];
  for (double &m : model.mean) m /= static_cast<double>(n);

  Matrix cov(d, d);
  std::vector<double> centered(d);
  for (const auto &v : data) {
    for (std::size_t j = 0; j < d; j++) centered[j] = v[j] - model.mean[j];
    for (std::size_t i = 0; i < d; i++) {
      double ci = centered[i];
      if (ci == 0.0) continue;
      auto row = cov.Row(i);
      for (std::size_t j = i; j < d; j++) row[j] += ci * centered[j];
    }
  }
  for (std::size_t i = 0; i < d; i++)
    for (std::size_t j = i; j < d; j++) {
      cov(i, j) /= static_cast<double>(n - 1);
      cov(j, i) = cov(i, j);
    }

  SymmetricEigen eig = JacobiEigen(cov);
  for (double &lambda : eig.values) lambda = std::max(lambda, 0.0);
  double total = 0.0;
  for (double lambda : eig.values) total += lambda;
  if (!(total > 0.0))
    throw DataError("PCA input has zero total variance");

  std::size_t m = 0;
  double cumulative = 0.0;
  while (m < d) {
    cumulative += eig.values[m++];
    if (cumulative >= retain * total * (1.0 - kRetainSlack)) break;
  }

  model.total_variance = total;
  model.retained_fraction = std::min(cumulative / total, 1.0);
  model.explained_variance.assign(eig.values.begin(), eig.values.begin() + m);
  model.components = Matrix(m, d);
  for (std::size_t r = 0; r < m; r++) {
    auto src = eig.vectors.Row(r);
    std::copy(src.begin(), src.end(), model.components.Row(r).begin());
  }

  Matrix z = PcaTransformAll(model, data);
  model.component_mean.assign(m, 0.0);
  model.component_std.assign(m, 0.0);
  for (std::size_t i = 0; i < n; i++)
    for (std::size_t k = 0; k < m; k++) model.component_mean[k] += z(i, k);
  for (double &mu : model.component_mean) mu /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; i++)
    for (std::size_t k = 0; k < m; k++) {
      double dev = z(i, k) - model.component_mean[k];
      model.component_std[k] += dev * dev;
    }
  for (double &s : model.component_std)
    s = std::sqrt(s / static_cast<double>(n - 1));
  return model;
}

std::vector<double> PcaTransform(const PcaModel &model,
                                 std::span<const double> v) {
  CheckDim(v.size(), model.InputDim());
  std::vector<double> centered(v.size());
  for (std::size_t j = 0; j < v.size(); j++) centered[j] = v[j] - model.mean[j];
  std::vector<double> z(model.NumComponents());
  for (std::size_t k = 0; k < z.size(); k++)
    z[k] = Dot(model.components.Row(k), centered);
  return z;
}

std::vector<double> PcaInverse(const PcaModel &model,
                               std::span<const double> z) {
  CheckDim(z.size(), model.NumComponents());
  std::vector<double> x = model.mean;
  for (std::size_t k = 0; k < z.size(); k++) {
    auto row = model.components.Row(k);
    for (std::size_t j = 0; j < x.size(); j++) x[j] += z[k] * row[j];
  }
  return x;
}

Matrix PcaTransformAll(const PcaModel &model,
                       std::span<const EmbeddingVector> data) {
  Matrix out(data.size(), model.NumComponents());
  for (std::size_t i = 0; i < data.size(); i++) {
    auto z = PcaTransform(model, data[i].Values());
    std::copy(z.begin(), z.end(), out.Row(i).begin());
  }
  return out;
}

}  // namespace anonvoice
