// src/gmm.cc

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

#include "anonvoice/gmm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "anonvoice/errors.h"
#include "anonvoice/parallel.h"

namespace anonvoice {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogSumExp(std::span<const double> xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - hi);
  return hi + std::log(sum);
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); i++) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// k-means++ seeding: returns the indices of K rows of data.
std::vector<std::size_t> SeedCenters(const Matrix &data, std::size_t k,
                                     DerivedRng &rng) {
  const std::size_t n = data.Rows();
  std::vector<std::size_t> centers{
      static_cast<std::size_t>(rng.UniformIndex(n))};
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  while (centers.size() < k) {
    auto c = data.Row(centers.back());
    double total = 0.0;
    for (std::size_t i = 0; i < n; i++) {
      dist[i] = std::min(dist[i], SquaredDistance(data.Row(i), c));
      total += dist[i];
    }
    std::size_t pick = n - 1;
    if (total > 0.0) {
      double target = rng.Uniform() * total, acc = 0.0;
      for (std::size_t i = 0; i < n; i++) {
        acc += dist[i];
        if (acc > target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.UniformIndex(n));
    }
    centers.push_back(pick);
  }
  return centers;
}

// M-step from responsibilities (n x K). Components that lost all their mass
// keep their previous mean (if any) with weight zero and a ridge covariance.
GmmModel MaximizationStep(const Matrix &data, const Matrix &resp,
                          double ridge,
                          const std::vector<std::vector<double>> *prev_means) {
  const std::size_t n = data.Rows(), m = data.Cols(), k = resp.Cols();
  std::vector<double> mass(k, 0.0);
  for (std::size_t i = 0; i < n; i++)
    for (std::size_t c = 0; c < k; c++) mass[c] += resp(i, c);

  std::vector<double> weights(k);
  std::vector<std::vector<double>> means(k, std::vector<double>(m, 0.0));
  std::vector<Matrix> covs(k, Matrix(m, m));
  std::vector<double> diff(m);
  for (std::size_t c = 0; c < k; c++) {
    weights[c] = mass[c] / static_cast<double>(n);
    if (!(mass[c] > 0.0)) {
      weights[c] = 0.0;
      if (prev_means) means[c] = (*prev_means)[c];
      for (std::size_t j = 0; j < m; j++) covs[c](j, j) = ridge;
      continue;
    }
    for (std::size_t i = 0; i < n; i++) {
      double r = resp(i, c);
      if (r == 0.0) continue;
      auto x = data.Row(i);
      for (std::size_t j = 0; j < m; j++) means[c][j] += r * x[j];
    }
    for (double &v : means[c]) v /= mass[c];
    Matrix &cov = covs[c];
    for (std::size_t i = 0; i < n; i++) {
      double r = resp(i, c);
      if (r == 0.0) continue;
      auto x = data.Row(i);
      for (std::size_t j = 0; j < m; j++) diff[j] = x[j] - means[c][j];
      for (std::size_t a = 0; a < m; a++) {
        double ra = r * diff[a];
        auto row = cov.Row(a);
        for (std::size_t b = a; b < m; b++) row[b] += ra * diff[b];
      }
    }
    for (std::size_t a = 0; a < m; a++) {
      for (std::size_t b = a; b < m; b++) {
        cov(a, b) /= mass[c];
        cov(b, a) = cov(a, b);
      }
      cov(a, a) += ridge;
    }
  }
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  for (double &w : weights) w /= wsum;
  return GmmModel(std::move(weights), std::move(means), std::move(covs),
                  ridge);
}

// Fills resp with posterior responsibilities; returns mean log-likelihood.
double ExpectationStep(const GmmModel &model, const Matrix &data,
                       Matrix &resp) {
  const std::size_t n = data.Rows(), k = model.NumComponents();
  std::vector<double> logp(k);
  double total = 0.0;
  for (std::size_t i = 0; i < n; i++) {
    auto x = data.Row(i);
    for (std::size_t c = 0; c < k; c++) {
      double w = model.Weights()[c];
      logp[c] = w > 0.0 ? std::log(w) + model.ComponentLogDensity(c, x)
                        : kNegInf;
    }
    double lse = LogSumExp(logp);
    total += lse;
    for (std::size_t c = 0; c < k; c++)
      resp(i, c) = logp[c] == kNegInf ? 0.0 : std::exp(logp[c] - lse);
  }
  return total / static_cast<double>(n);
}

GmmFitResult FitOnce(const Matrix &data, const GmmFitOptions &opt,
                     DerivedRng &rng) {
  const std::size_t n = data.Rows(), k = opt.components;
  auto centers = SeedCenters(data, k, rng);

  // Hard assignment to the nearest seed (lowest index on ties).
  Matrix resp(n, k);
  for (std::size_t i = 0; i < n; i++) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; c++) {
      double d = SquaredDistance(data.Row(i), data.Row(centers[c]));
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    resp(i, best) = 1.0;
  }
  std::vector<std::vector<double>> seeds(k);
  for (std::size_t c = 0; c < k; c++) {
    auto row = data.Row(centers[c]);
    seeds[c].assign(row.begin(), row.end());
  }

  GmmFitResult result;
  result.model = MaximizationStep(data, resp, opt.ridge, &seeds);
  for (int iter = 0; iter < opt.max_iters; iter++) {
    double ll = ExpectationStep(result.model, data, resp);
    result.loglik_history.push_back(ll);
    std::size_t t = result.loglik_history.size();
    if (t >= 2 && ll - result.loglik_history[t - 2] < opt.tol) break;
    if (iter + 1 == opt.max_iters) break;
    result.model =
        MaximizationStep(data, resp, opt.ridge, &result.model.Means());
  }
  return result;
}

}  // namespace

GmmModel::GmmModel(std::vector<double> weights,
                   std::vector<std::vector<double>> means,
                   std::vector<Matrix> covariances, double ridge)
    : weights_(std::move(weights)),
      means_(std::move(means)),
      covariances_(std::move(covariances)),
      ridge_(ridge) {
  const std::size_t k = weights_.size();
  if (k == 0 || means_.size() != k || covariances_.size() != k)
    throw DataError("GMM parameter lists disagree on component count");
  double wsum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw DataError("GMM weight is negative or NaN");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw DataError("GMM weights sum to " + std::to_string(wsum));
  const std::size_t m = means_[0].size();
  for (std::size_t c = 0; c < k; c++) {
    if (means_[c].size() != m || covariances_[c].Rows() != m ||
        covariances_[c].Cols() != m)
      throw DataError("GMM component " + std::to_string(c) +
                           " has inconsistent dimensions");
    Matrix l = Cholesky(covariances_[c]);
    double logdet = 0.0;
    for (std::size_t j = 0; j < m; j++) logdet += 2.0 * std::log(l(j, j));
    log_norm_.push_back(
        -0.5 * (static_cast<double>(m) * std::log(2.0 * std::numbers::pi) +
                logdet));
    cholesky_.push_back(std::move(l));
  }
}

double GmmModel::ComponentLogDensity(std::size_t k,
                                     std::span<const double> x) const {
  if (x.size() != Dim()) throw DataError("GMM dimension mismatch");
  std::vector<double> diff(x.size());
  for (std::size_t j = 0; j < x.size(); j++) diff[j] = x[j] - means_[k][j];
  ForwardSubstitute(cholesky_[k], diff);
  double q = 0.0;
  for (double v : diff) q += v * v;
  return log_norm_[k] - 0.5 * q;
}

double GmmModel::LogDensity(std::span<const double> x) const {
  std::vector<double> terms(NumComponents());
  for (std::size_t c = 0; c < terms.size(); c++)
    terms[c] = weights_[c] > 0.0
                   ? std::log(weights_[c]) + ComponentLogDensity(c, x)
                   : kNegInf;
  return LogSumExp(terms);
}

GmmFitResult GmmFit(const Matrix &data, const GmmFitOptions &options) {
  if (options.components < 1) throw ConfigError("GMM needs at least 1 component");
  if (data.Rows() < options.components)
    throw DataError("GMM fit with " + std::to_string(data.Rows()) +
                    " samples but " + std::to_string(options.components) +
                    " components");
  if (data.Cols() == 0) throw DataError("GMM fit on zero-dimensional data");
  for (double x : data.Data())
    if (!std::isfinite(x)) throw DataError("GMM fit on non-finite data");
  if (options.restarts < 1 || options.max_iters < 1)
    throw ConfigError("GMM restarts and max_iters must be positive");

  std::vector<GmmFitResult> runs(static_cast<std::size_t>(options.restarts));
  ParallelFor(runs.size(), [&](std::size_t r) {
    DerivedRng rng = SeededRng("gmm-restart", ChildSeed(options.seed, "gmm", r));
    runs[r] = FitOnce(data, options, rng);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); r++)
    if (runs[r].loglik_history.back() > runs[best].loglik_history.back())
      best = r;
  runs[best].best_restart = best;
  return std::move(runs[best]);
}

std::vector<double> GmmSample(const GmmModel &model, DerivedRng &rng) {
  const auto &w = model.Weights();
  double u = rng.Uniform(), acc = 0.0;
  std::size_t k = w.size() - 1;
  for (std::size_t c = 0; c < w.size(); c++) {
    acc += w[c];
    if (u < acc) {
      k = c;
      break;
    }
  }
  while (w[k] == 0.0 && k > 0) k--;  // round-off fallthrough into an empty slot

  const std::size_t m = model.Dim();
  std::vector<double> z(m);
  for (double &v : z) v = rng.Normal();
  const Matrix &l = model.CholeskyFactor(k);
  std::vector<double> x = model.Means()[k];
  for (std::size_t i = 0; i < m; i++) {
    auto row = l.Row(i);
    double s = 0.0;
    for (std::size_t j = 0; j <= i; j++) s += row[j] * z[j];
    x[i] += s;
  }
  return x;
}

double GmmLogLikelihood(const GmmModel &model, const Matrix &data) {
  if (data.Cols() != model.Dim()) throw DataError("GMM dimension mismatch");
  if (data.Rows() == 0) throw DataError("GMM log-likelihood of no samples");
  double total = 0.0;
  for (std::size_t i = 0; i < data.Rows(); i++)
    total += model.LogDensity(data.Row(i));
  return total / static_cast<double>(data.Rows());
}

}  // namespace anonvoice
