// tests/unit/stats-models-test.cc

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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anonvoice/errors.h"
#include "anonvoice/gmm.h"
#include "anonvoice/linalg.h"
#include "anonvoice/model-io.h"
#include "anonvoice/pca.h"
#include "doctest.h"
#include "test-util.h"

using namespace anonvoice;

namespace {

EmbeddingVector V(std::vector<double> v) { return EmbeddingVector(std::move(v)); }

Matrix RandomSymmetric(DerivedRng &rng, std::size_t n) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; i++)
    for (std::size_t j = 0; j <= i; j++) a(i, j) = a(j, i) = rng.Normal();
  return a;
}

std::vector<EmbeddingVector> GaussianCloud(DerivedRng &rng, std::size_t n,
                                           std::vector<double> sd) {
  std::vector<EmbeddingVector> out;
  for (std::size_t i = 0; i < n; i++) {
    std::vector<double> x(sd.size());
    for (std::size_t k = 0; k < sd.size(); k++) x[k] = sd[k] * rng.Normal();
    out.push_back(V(x));
  }
  return out;
}

Matrix ToMatrix(const std::vector<std::vector<double>> &rows) {
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); r++)
    std::copy(rows[r].begin(), rows[r].end(), m.Row(r).begin());
  return m;
}

double MaxOrthoError(const Matrix &rows) {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.Rows(); i++)
    for (std::size_t j = 0; j < rows.Rows(); j++)
      worst = std::max(worst, std::abs(Dot(rows.Row(i), rows.Row(j)) -
                                       (i == j ? 1.0 : 0.0)));
  return worst;
}

}  // namespace

TEST_CASE("jacobi eigendecomposition") {
  Matrix a(2, 2);
  a(0, 0) = a(1, 1) = 2.0;
  a(0, 1) = a(1, 0) = 1.0;
  auto e = JacobiEigen(a);
  CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(std::abs(e.vectors(0, 0)) - std::sqrt(0.5)) < 1e-14);

  DerivedRng rng = SeededRng("test/jacobi", 1);
  for (std::size_t n : {1, 3, 10, 40}) {
    Matrix m = RandomSymmetric(rng, n);
    auto eig = JacobiEigen(m);
    CHECK(MaxOrthoError(eig.vectors) < 1e-10);
    CHECK(std::is_sorted(eig.values.rbegin(), eig.values.rend()));
    for (std::size_t k = 0; k < n; k++)
      for (std::size_t i = 0; i < n; i++) {
        double av = 0.0;
        for (std::size_t j = 0; j < n; j++) av += m(i, j) * eig.vectors(k, j);
        CHECK(std::abs(av - eig.values[k] * eig.vectors(k, i)) < 1e-9);
      }
  }
}

TEST_CASE("cholesky") {
  Matrix a(2, 2);
  a(0, 0) = 4;
  a(0, 1) = a(1, 0) = 2;
  a(1, 1) = 3;
  Matrix l = Cholesky(a);
  CHECK(l(0, 0) == 2.0);
  CHECK(l(1, 0) == 1.0);
  CHECK(l(1, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(l(0, 1) == 0.0);
  std::vector<double> b = {2.0, 1.0 + std::sqrt(2.0)};
  ForwardSubstitute(l, b);
  CHECK(b[0] == doctest::Approx(1.0));
  CHECK(b[1] == doctest::Approx(1.0));

  Matrix bad(2, 2);
  bad(0, 0) = 1;
  bad(0, 1) = bad(1, 0) = 2;
  bad(1, 1) = 1;
  CHECK_THROWS_AS(Cholesky(bad), NumericalError);
}

TEST_CASE("pca on rank-1 data") {
  std::vector<EmbeddingVector> line;
  for (double t : {-2.0, -0.5, 0.0, 1.0, 3.5}) line.push_back(V({t, t}));
  PcaModel m = PcaFit(line, 0.95);
  CHECK(m.NumComponents() == 1);
  CHECK(m.retained_fraction == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto &x : line) {
    auto back = PcaInverse(m, PcaTransform(m, x.Values()));
    CHECK(std::abs(back[0] - x[0]) < 1e-12);
    CHECK(std::abs(back[1] - x[1]) < 1e-12);
  }
}

TEST_CASE("pca component count") {
  DerivedRng rng = SeededRng("test/pca", 2);
  // Isotropic: two axes carry about 2/3 of the variance, so 0.95 needs all 3.
  auto iso = GaussianCloud(rng, 2000, {1, 1, 1});
  CHECK(PcaFit(iso, 0.95).NumComponents() == 3);

  auto wide = GaussianCloud(rng, 30, std::vector<double>(8, 1.0));
  CHECK(PcaFit(wide, 1.0).NumComponents() == 8);
  auto few = GaussianCloud(rng, 5, std::vector<double>(8, 1.0));
  CHECK(PcaFit(few, 1.0).NumComponents() == 4);  // min(n - 1, d)

  auto skewed = GaussianCloud(rng, 500, {10, 1, 0.1});
  PcaModel m = PcaFit(skewed, 0.9);
  CHECK(m.NumComponents() == 1);
  CHECK(std::abs(std::abs(m.components(0, 0)) - 1.0) < 1e-3);
}

TEST_CASE("pca full-retention round trip and orthonormality") {
  DerivedRng rng = SeededRng("test/pca-roundtrip", 3);
  auto data = GaussianCloud(rng, 60, {3, 2, 2, 1, 1, 0.5, 0.5, 0.1, 0.1, 0.01});
  PcaModel m = PcaFit(data, 1.0);
  CHECK(MaxOrthoError(m.components) < 1e-8);
  for (const auto &x : data) {
    auto back = PcaInverse(m, PcaTransform(m, x.Values()));
    double err = 0, norm = 0;
    for (std::size_t k = 0; k < x.Dim(); k++) {
      err += (back[k] - x[k]) * (back[k] - x[k]);
      norm += x[k] * x[k];
    }
    CHECK(std::sqrt(err / norm) < 1e-9);
  }
  auto z = PcaTransform(m, m.mean);
  for (double v : z) CHECK(std::abs(v) < 1e-12);

  // projected coordinates have the recorded spread
  Matrix all = PcaTransformAll(m, data);
  for (std::size_t c = 0; c < m.NumComponents(); c++) {
    double s = 0, s2 = 0;
    for (std::size_t r = 0; r < all.Rows(); r++) s += all(r, c);
    double mean = s / all.Rows();
    for (std::size_t r = 0; r < all.Rows(); r++)
      s2 += (all(r, c) - mean) * (all(r, c) - mean);
    CHECK(std::sqrt(s2 / (all.Rows() - 1)) ==
          doctest::Approx(m.component_std[c]).epsilon(1e-9));
    CHECK(m.explained_variance[c] ==
          doctest::Approx(s2 / (all.Rows() - 1)).epsilon(1e-9));
  }
}

TEST_CASE("pca errors") {
  std::vector<EmbeddingVector> one = {V({1, 2})};
  CHECK_THROWS_AS(PcaFit(one), DataError);
  std::vector<EmbeddingVector> same = {V({1, 2}), V({1, 2})};
  CHECK_THROWS_AS(PcaFit(same), DataError);
  std::vector<EmbeddingVector> ok = {V({1, 2}), V({2, 1})};
  CHECK_THROWS_AS(PcaFit(ok, 0.0), ConfigError);
  CHECK_THROWS_AS(PcaFit(ok, 1.5), ConfigError);
  PcaModel m = PcaFit(ok);
  std::vector<double> wrong = {1, 2, 3};
  CHECK_THROWS_AS(PcaTransform(m, wrong), DataError);
}

TEST_CASE("gmm density matches hand-computed mixture") {
  Matrix c0(2, 2), c1(2, 2);
  c0(0, 0) = 1.0;
  c0(0, 1) = c0(1, 0) = 0.3;
  c0(1, 1) = 2.0;
  c1(0, 0) = 0.5;
  c1(1, 1) = 0.25;
  GmmModel g({0.3, 0.7}, {{0.0, 0.0}, {1.0, 2.0}}, {c0, c1}, 0.0);
  // scipy.stats.multivariate_normal reference values
  std::vector<double> p0 = {0, 0}, p1 = {1, 1.5}, p2 = {-2, 3};
  CHECK(g.LogDensity(p0) == doctest::Approx(-3.364276514315933).epsilon(1e-12));
  CHECK(g.LogDensity(p1) == doctest::Approx(-1.5823196216042374).epsilon(1e-12));
  CHECK(g.LogDensity(p2) == doctest::Approx(-8.725138363637502).epsilon(1e-12));
  CHECK(GmmLogLikelihood(g, ToMatrix({p0, p1, p2})) ==
        doctest::Approx(-4.557244833185891).epsilon(1e-12));

  GmmModel single({1.0}, {{0.0, 0.0}}, {c0}, 0.0);
  CHECK(single.LogDensity(p0) ==
        doctest::Approx(-2.1614286874386144).epsilon(1e-12));

  CHECK_THROWS_AS(GmmModel({0.5, 0.6}, {{0.0}, {1.0}},
                           {Matrix::Identity(1), Matrix::Identity(1)}, 0.0),
                  DataError);
}

TEST_CASE("gmm K=1 is the sample gaussian") {
  DerivedRng rng = SeededRng("test/gmm-k1", 4);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 200; i++)
    rows.push_back({1.0 + rng.Normal(), -2.0 + 0.5 * rng.Normal(), rng.Normal()});
  Matrix x = ToMatrix(rows);
  GmmFitOptions opt;
  opt.components = 1;
  opt.restarts = 2;
  auto fit = GmmFit(x, opt);
  const auto &g = fit.model;
  for (std::size_t c = 0; c < 3; c++) {
    double mean = 0;
    for (auto &r : rows) mean += r[c];
    mean /= rows.size();
    CHECK(g.Means()[0][c] == doctest::Approx(mean).epsilon(1e-10));
    for (std::size_t d = 0; d < 3; d++) {
      double mean_d = 0;
      for (auto &r : rows) mean_d += r[d];
      mean_d /= rows.size();
      double cov = 0;
      for (auto &r : rows) cov += (r[c] - mean) * (r[d] - mean_d);
      cov /= rows.size();
      if (c == d) cov += opt.ridge;
      CHECK(g.Covariances()[0](c, d) == doctest::Approx(cov).epsilon(1e-9));
    }
  }
}

TEST_CASE("gmm recovers a two-component mixture") {
  DerivedRng rng = SeededRng("test/gmm-recover", 5);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 5000; i++) {
    double cx = rng.Uniform() < 0.5 ? -2.0 : 2.0;
    rows.push_back({cx + rng.Normal(), rng.Normal()});
  }
  GmmFitOptions opt;
  opt.components = 2;
  auto fit = GmmFit(ToMatrix(rows), opt);
  auto means = fit.model.Means();
  std::sort(means.begin(), means.end());
  CHECK(std::abs(means[0][0] + 2.0) < 0.1);
  CHECK(std::abs(means[0][1]) < 0.1);
  CHECK(std::abs(means[1][0] - 2.0) < 0.1);
  CHECK(std::abs(means[1][1]) < 0.1);
  for (double w : fit.model.Weights()) CHECK(std::abs(w - 0.5) < 0.05);
}

TEST_CASE("gmm EM is monotone and deterministic") {
  for (std::uint64_t seed = 0; seed < 20; seed++) {
    DerivedRng rng = SeededRng("test/gmm-monotone", seed);
    std::size_t d = 1 + rng.UniformIndex(4);
    std::size_t n = 30 + rng.UniformIndex(100);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < n; i++) rows.push_back(testutil::Normals(rng, d));
    GmmFitOptions opt;
    opt.components = 1 + rng.UniformIndex(4);
    opt.restarts = 3;
    opt.seed = seed;
    auto fit = GmmFit(ToMatrix(rows), opt);
    const auto &h = fit.loglik_history;
    REQUIRE(!h.empty());
    for (std::size_t k = 1; k < h.size(); k++)
      CHECK(h[k] >= h[k - 1] - 1e-9 * std::abs(h[k - 1]));
    auto again = GmmFit(ToMatrix(rows), opt);
    CHECK(again.model == fit.model);
    CHECK(again.loglik_history == fit.loglik_history);
  }
}

TEST_CASE("gmm fit errors") {
  Matrix tiny(2, 2, 1.0);
  tiny(1, 0) = 2.0;
  GmmFitOptions opt;
  opt.components = 3;
  CHECK_THROWS_AS(GmmFit(tiny, opt), DataError);
  opt.components = 1;
  CHECK_THROWS_AS(GmmFit(Matrix(5, 0), opt), DataError);
  Matrix nan(3, 1, 1.0);
  nan(1, 0) = std::nan("");
  CHECK_THROWS_AS(GmmFit(nan, opt), DataError);
}

TEST_CASE("gmm sampling") {
  const double eps = 1e-6;
  Matrix ridge_only = Matrix::Identity(2);
  for (double &v : ridge_only.MutableData()) v *= eps;
  GmmModel point({1.0}, {{0.5, -0.5}}, {ridge_only}, eps);
  DerivedRng rng = SeededRng("test/gmm-sample", 1);
  for (int i = 0; i < 100; i++) {
    auto s = GmmSample(point, rng);
    CHECK(std::abs(s[0] - 0.5) < 10 * std::sqrt(eps));
    CHECK(std::abs(s[1] + 0.5) < 10 * std::sqrt(eps));
  }

  GmmModel mix({0.25, 0.75}, {{-4.0, 1.0}, {4.0, 3.0}},
               {Matrix::Identity(2), Matrix::Identity(2)}, 0.0);
  double m0 = 0, m1 = 0;
  for (int i = 0; i < 10000; i++) {
    auto s = GmmSample(mix, rng);
    m0 += s[0];
    m1 += s[1];
  }
  CHECK(std::abs(m0 / 10000 - 2.0) < 0.05 * 4);  // component spread 8: sd ~0.035
  CHECK(std::abs(m1 / 10000 - 2.5) < 0.05);

  DerivedRng a = SeededRng("test/gmm-same", 1), b = SeededRng("test/gmm-same", 1);
  CHECK(GmmSample(mix, a) == GmmSample(mix, b));
}

TEST_CASE("model serialization round trip") {
  CHECK(EncodeDoubles(std::vector<double>{1.0, -2.5, 1e-300}) ==
        "AAAAAAAA8D8AAAAAAAAEwFnz+MIfbqUB");
  auto back = DecodeDoubles("AAAAAAAA8D8AAAAAAAAEwFnz+MIfbqUB", 3);
  CHECK(back == std::vector<double>{1.0, -2.5, 1e-300});
  CHECK_THROWS_AS(DecodeDoubles("AAAAAAAA8D8AAAAAAAAEwFnz+MIfbqUB", 2), DataError);
  CHECK_THROWS_AS(DecodeDoubles("***", SIZE_MAX), DataError);

  DerivedRng rng = SeededRng("test/model-io", 1);
  auto data = GaussianCloud(rng, 100, {2, 1, 0.5, 0.2});
  PcaModel pca = PcaFit(data, 0.95);
  CHECK(PcaFromJson(nlohmann::json::parse(PcaToJson(pca).dump())) == pca);

  GmmFitOptions opt;
  opt.components = 3;
  opt.restarts = 2;
  GmmModel gmm = GmmFit(PcaTransformAll(pca, data), opt).model;
  GmmModel gback = GmmFromJson(nlohmann::json::parse(GmmToJson(gmm).dump()));
  CHECK(gback == gmm);
  std::vector<double> probe(pca.NumComponents(), 0.1);
  CHECK(gback.LogDensity(probe) == gmm.LogDensity(probe));
}
