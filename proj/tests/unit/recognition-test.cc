// tests/unit/recognition-test.cc

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

#include <cmath>
#include <sstream>

#include "anonvoice/errors.h"
#include "anonvoice/recognition.h"
#include "doctest.h"
#include "oracles/oracles.h"
#include "test-util.h"

using namespace anonvoice;

namespace {

EmbeddingVector V(std::vector<double> v) { return EmbeddingVector(std::move(v)); }

// Scores on a coarse grid so that ties are common.
std::vector<double> GridScores(DerivedRng &rng, std::size_t n, double shift) {
  std::vector<double> out(n);
  for (double &s : out) s = std::round(4.0 * (rng.Normal() + shift)) / 4.0;
  return out;
}

}  // namespace

TEST_CASE("enroll") {
  std::vector<EmbeddingVector> one = {V({3, 4})};
  auto t = Enroll("a", one);
  CHECK(t.embedding[0] == doctest::Approx(0.6));
  CHECK(t.enrollment_count == 1);
  std::vector<EmbeddingVector> opposite = {V({1, 0}), V({-1, 0})};
  CHECK_THROWS_AS(Enroll("a", opposite), NumericalError);
  CHECK_THROWS(Enroll("a", std::vector<EmbeddingVector>{}));

  // 10 noisy copies of mu, noise of RMS norm 0.05 at d = 64
  DerivedRng rng = SeededRng("test/enroll", 1);
  auto mu = testutil::RandomUnit(rng, 64);
  std::vector<EmbeddingVector> copies;
  for (int i = 0; i < 10; i++) {
    auto x = testutil::Normals(rng, 64, 0.05 / 8.0);
    for (std::size_t k = 0; k < 64; k++) x[k] += mu[k];
    copies.push_back(V(x));
  }
  CHECK(CosineSimilarity(Enroll("mu", copies).embedding, mu) >= 0.995);
}

TEST_CASE("verify") {
  std::vector<EmbeddingVector> e = {V({1, 0})};
  auto t = Enroll("a", e);
  double th = 0.7;
  auto at = [](double angle_cos) {
    return V({angle_cos, std::sqrt(1 - angle_cos * angle_cos)});
  };
  CHECK(Verify(t, at(0.9), th) == Decision::kAccept);
  CHECK(Verify(t, at(0.1), th) == Decision::kReject);
  double s = Score(t, at(0.7));
  CHECK(Verify(t, at(0.7), s) == Decision::kAccept);
  CHECK_THROWS_AS(Verify(t, at(0.5), 1.5), ConfigError);
}

TEST_CASE("identify") {
  DerivedRng rng = SeededRng("test/identify", 2);
  std::vector<IdentityTemplate> ts;
  std::vector<EmbeddingVector> one = {testutil::RandomUnit(rng, 32)};
  ts.push_back(Enroll("solo", one));
  CHECK(Identify(ts, testutil::RandomUnit(rng, 32)) == "solo");

  ts.clear();
  for (int i = 0; i < 20; i++) {
    std::vector<EmbeddingVector> u = {testutil::RandomUnit(rng, 32)};
    ts.push_back(Enroll("spk" + std::to_string(100 + i), u));
  }
  CHECK(Identify(ts, ts[13].embedding) == "spk113");

  std::vector<IdentityTemplate> tie = {Enroll("zed", std::vector{V({1, 0})}),
                                       Enroll("amy", std::vector{V({0, 1})})};
  CHECK(Identify(tie, V({1, 1})) == "amy");
  CHECK_THROWS(Identify(std::vector<IdentityTemplate>{}, V({1, 0})));
}

TEST_CASE("roc, auc and eer worked examples") {
  std::vector<double> t1 = {0.9}, n1 = {0.1};
  auto c = ComputeRoc(t1, n1);
  CHECK(Auc(c) == 1.0);
  CHECK(Eer(c).rate == 0.0);

  std::vector<double> t2 = {0.8, 0.6}, n2 = {0.7, 0.4};
  CHECK(Auc(ComputeRoc(t2, n2)) == 0.75);

  std::vector<double> lo = {0.1, 0.2, 0.3}, hi = {0.7, 0.8, 0.9};
  CHECK(Eer(ComputeRoc(lo, hi)).rate > 0.5);

  DerivedRng rng = SeededRng("test/roc-same", 1);
  auto a = testutil::Normals(rng, 2000), b = testutil::Normals(rng, 2000);
  CHECK(std::abs(Auc(ComputeRoc(a, b)) - 0.5) < 0.03);

  CHECK_THROWS_AS(ComputeRoc(std::vector<double>{}, n1), DataError);
  std::vector<double> bad = {std::nan("")};
  CHECK_THROWS_AS(ComputeRoc(bad, n1), DataError);
}

TEST_CASE("roc matches the brute-force oracle") {
  DerivedRng rng = SeededRng("test/roc-oracle", 7);
  for (int rep = 0; rep < 100; rep++) {
    auto tar = GridScores(rng, 1 + rng.UniformIndex(50), 1.0);
    auto non = GridScores(rng, 1 + rng.UniformIndex(50), 0.0);
    auto curve = ComputeRoc(tar, non);
    auto ref = oracle::BruteRoc(tar, non);
    REQUIRE(curve.points.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); k++) {
      CHECK(curve.points[k].threshold == ref[k].threshold);
      CHECK(curve.points[k].fpr == ref[k].fpr);
      CHECK(curve.points[k].tpr == ref[k].tpr);
    }
    CHECK(std::abs(Auc(curve) - oracle::MannWhitneyAuc(tar, non)) < 1e-12);
    auto [rate, thr] = oracle::BruteEer(tar, non);
    CHECK(Eer(curve).rate == rate);
    CHECK(Eer(curve).threshold == thr);
  }
}

TEST_CASE("gaussian overlap eer") {
  DerivedRng rng = SeededRng("test/eer-gauss", 3);
  std::vector<double> tar(1000), non(1000);
  for (double &s : tar) s = 1.0 + 0.5 * rng.Normal();
  for (double &s : non) s = 0.5 * rng.Normal();
  auto e = Eer(ComputeRoc(tar, non));
  CHECK(std::abs(e.rate - 0.15865525393145707) < 0.03);
  CHECK(std::abs(e.threshold - 0.5) < 0.1);
}

TEST_CASE("threshold policies") {
  std::vector<double> tar = {0.9, 0.8, 0.7, 0.6}, non = {0.75, 0.5, 0.4, 0.3};
  auto c = ComputeRoc(tar, non);
  // FPR <= 0.25 allows accepting 0.75; the lowest such threshold is 0.6
  // (tpr 1, fpr 0.25).
  CHECK(ThresholdAt(c, ThresholdPolicy::AtFpr(0.25)) == 0.6);
  CHECK(ThresholdAt(c, ThresholdPolicy::AtFpr(0.1)) == 0.8);
  auto op = RatesAt(c, 0.65);
  CHECK(op.fpr == 0.25);
  CHECK(op.tpr == 0.75);
  CHECK(RatesAt(c, 2.0).tpr == 0.0);
  CHECK(RatesAt(c, -1.0).fpr == 1.0);

  std::vector<double> top_non = {0.95};
  auto c2 = ComputeRoc(tar, top_non);
  double t = ThresholdAt(c2, ThresholdPolicy::AtFpr(0.5));
  CHECK(t > 0.95);
  CHECK(RatesAt(c2, t).fpr == 0.0);
  std::vector<double> all_high = {0.1};
  auto c3 = ComputeRoc(all_high, top_non);
  double t3 = ThresholdAt(c3, ThresholdPolicy::AtFpr(0.5));
  CHECK(t3 > 0.95);
  CHECK(RatesAt(c3, t3).fpr == 0.0);

  CHECK(ThresholdPolicy::AtEer().Name() == "eer");
  CHECK(ThresholdPolicy::AtFpr(0.01).Name() == "fpr_0.01");
  CHECK(ThresholdPolicy::AtFpr(0.001).Name() == "fpr_0.001");
  CHECK_THROWS_AS(ThresholdPolicy::AtFpr(0.0), ConfigError);
  CHECK(StandardPolicies().size() == 3);
}

TEST_CASE("roc csv and summary") {
  std::vector<double> t2 = {0.8, 0.6}, n2 = {0.7, 0.4};
  auto c = ComputeRoc(t2, n2);
  std::ostringstream os;
  WriteRocCsv(c, os);
  CHECK(os.str() ==
        "threshold,fpr,tpr\ninf,0,0\n0.80000000000000004,0,0.5\n"
        "0.69999999999999996,0.5,0.5\n0.59999999999999998,0.5,1\n"
        "0.40000000000000002,1,1\n");
  auto policies = StandardPolicies();
  auto j = RocSummary(c, policies);
  CHECK(j["auc"] == 0.75);
  CHECK(j["n_target"] == 2);
  CHECK(j["thresholds"].contains("fpr_0.01"));
}

TEST_CASE("trial scoring") {
  DerivedRng rng = SeededRng("test/trials", 4);
  std::vector<EnrolledIdentity> ids;
  for (int i = 0; i < 6; i++) {
    EnrolledIdentity e;
    auto mu = testutil::RandomUnit(rng, 16);
    e.tmpl = Enroll("s" + std::to_string(i), std::vector{mu});
    e.gender = i % 2 ? Gender::kFemale : Gender::kMale;
    for (int k = 0; k < 3; k++) e.trials.push_back(testutil::RandomUnit(rng, 16));
    ids.push_back(std::move(e));
  }
  auto s = ScoreAllTrials(ids);
  CHECK(s.target.size() == 18);
  CHECK(s.nontarget.size() == 6 * 5 * 3);
  CHECK(s.nontarget_same_gender.size() == 6 * 2 * 3);
  CHECK(s.nontarget_cross_gender.size() == 6 * 3 * 3);
  CHECK(s.target[4] == Score(ids[1].tmpl, ids[1].trials[1]));

  TrialScores serial, parallel;
  {
    testutil::ScopedThreads one(1);
    serial = ScoreAllTrials(ids);
  }
  {
    testutil::ScopedThreads four(4);
    parallel = ScoreAllTrials(ids);
  }
  CHECK(serial.target == parallel.target);
  CHECK(serial.nontarget == parallel.nontarget);
}
