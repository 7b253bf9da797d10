// include/anonvoice/gmm.h

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

#ifndef ANONVOICE_GMM_H_
#define ANONVOICE_GMM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "anonvoice/linalg.h"
#include "anonvoice/secret-rng.h"

namespace anonvoice {

/// Full-covariance Gaussian mixture. The constructor validates the
/// parameters and caches a Cholesky factor per component; covariances are
/// stored with the diagonal ridge already added.
class GmmModel {
 public:
  GmmModel() = default;
  /// Throws NumericalError if weights do not sum to one (within 1e-9) or a
  /// covariance is not positive definite.
  GmmModel(std::vector<double> weights, std::vector<std::vector<double>> means,
           std::vector<Matrix> covariances, double ridge);

  std::size_t NumComponents() const { return weights_.size(); }
  std::size_t Dim() const { return means_.empty() ? 0 : means_[0].size(); }
  const std::vector<double> &Weights() const { return weights_; }
  const std::vector<std::vector<double>> &Means() const { return means_; }
  const std::vector<Matrix> &Covariances() const { return covariances_; }
  const Matrix &CholeskyFactor(std::size_t k) const { return cholesky_[k]; }
  double Ridge() const { return ridge_; }

  /// log N(x; mean_k, cov_k).
  double ComponentLogDensity(std::size_t k, std::span<const double> x) const;
  /// log sum_k weight_k N(x; mean_k, cov_k).
  double LogDensity(std::span<const double> x) const;

  friend bool operator==(const GmmModel &a, const GmmModel &b) {
    return a.weights_ == b.weights_ && a.means_ == b.means_ &&
           a.covariances_ == b.covariances_ && a.ridge_ == b.ridge_;
  }

 private:
  std::vector<double> weights_;
  std::vector<std::vector<double>> means_;
  std::vector<Matrix> covariances_;
  double ridge_ = 0.0;
  std::vector<Matrix> cholesky_;
  std::vector<double> log_norm_;  // -0.5 (m log 2pi + log det)
};

struct GmmFitOptions {
  std::size_t components = 20;
  int max_iters = 200;
  double tol = 1e-6;  // per-sample log-likelihood improvement
  int restarts = 10;
  double ridge = 1e-6;
  std::uint64_t seed = 0;
};

struct GmmFitResult {
  GmmModel model;
  /// Per-sample log-likelihood after each E-step of the winning restart;
  /// the last entry belongs to the returned model.
  std::vector<double> loglik_history;
  std::size_t best_restart = 0;
};

/// EM with k-means++ seeding. Every restart draws its own stream from
/// options.seed, restarts run in parallel, and the restart with the highest
/// final likelihood wins (ties go to the lower restart index).
GmmFitResult GmmFit(const Matrix &data, const GmmFitOptions &options);

/// Picks a component by weight, then returns mean + L z with z ~ N(0, I).
std::vector<double> GmmSample(const GmmModel &model, DerivedRng &rng);

/// Mean per-sample log-likelihood of the rows of data.
double GmmLogLikelihood(const GmmModel &model, const Matrix &data);

}  // namespace anonvoice

#endif  // ANONVOICE_GMM_H_
