// src/recognition.cc

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

#include "anonvoice/recognition.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "anonvoice/errors.h"
#include "anonvoice/parallel.h"

namespace anonvoice {

IdentityTemplate Enroll(std::string speaker_id,
                        std::span<const EmbeddingVector> utterances) {
  if (utterances.empty())
    throw DataError("cannot enroll " + speaker_id + " from zero utterances");
  std::vector<EmbeddingVector> unit;
  unit.reserve(utterances.size());
  for (const auto &u : utterances) unit.push_back(L2Normalize(u));
  IdentityTemplate t;
  t.speaker_id = std::move(speaker_id);
  t.embedding = L2Normalize(Centroid(unit));
  t.enrollment_count = utterances.size();
  return t;
}

double Score(const IdentityTemplate &tmpl, const EmbeddingVector &utterance) {
  return CosineSimilarity(tmpl.embedding, utterance);
}

Decision Verify(const IdentityTemplate &tmpl, const EmbeddingVector &utterance,
                double threshold) {
  if (!(threshold >= -1.0 && threshold <= 1.0))
    throw ConfigError("verification threshold must lie in [-1, 1]");
  return Score(tmpl, utterance) >= threshold ? Decision::kAccept
                                             : Decision::kReject;
}

const std::string &Identify(std::span<const IdentityTemplate> templates,
                            const EmbeddingVector &utterance) {
  if (templates.empty()) throw DataError("identify over an empty template list");
  const IdentityTemplate *best = nullptr;
  double best_score = -std::numeric_limits<double>::infinity();
  for (const auto &t : templates) {
    double s = Score(t, utterance);
    if (!best || s > best_score ||
        (s == best_score && t.speaker_id < best->speaker_id)) {
      best = &t;
      best_score = s;
    }
  }
  return best->speaker_id;
}

RocCurve ComputeRoc(std::span<const double> target_scores,
                    std::span<const double> nontarget_scores) {
  if (target_scores.empty() || nontarget_scores.empty())
    throw DataError("ROC needs both target and non-target scores");
  std::vector<double> tar(target_scores.begin(), target_scores.end());
  std::vector<double> non(nontarget_scores.begin(), nontarget_scores.end());
  for (double s : tar)
    if (!std::isfinite(s)) throw DataError("non-finite target score");
  for (double s : non)
    if (!std::isfinite(s)) throw DataError("non-finite non-target score");
  std::sort(tar.begin(), tar.end(), std::greater<>());
  std::sort(non.begin(), non.end(), std::greater<>());

  RocCurve curve;
  curve.n_target = tar.size();
  curve.n_nontarget = non.size();
  const double nt = static_cast<double>(tar.size());
  const double nn = static_cast<double>(non.size());
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});

  std::size_t i = 0, j = 0;  // counts of scores >= current threshold
  while (i < tar.size() || j < non.size()) {
    double s = -std::numeric_limits<double>::infinity();
    if (i < tar.size()) s = std::max(s, tar[i]);
    if (j < non.size()) s = std::max(s, non[j]);
    while (i < tar.size() && tar[i] == s) i++;
    while (j < non.size() && non[j] == s) j++;
    curve.points.push_back({s, static_cast<double>(j) / nn,
                            static_cast<double>(i) / nt});
  }
  return curve;
}

EerResult Eer(const RocCurve &curve) {
  const auto &p = curve.points;
  // gap = FNR - FPR is non-increasing along the curve, +1 at the start and
  // -1 at the end.
  auto gap = [&](std::size_t k) { return (1.0 - p[k].tpr) - p[k].fpr; };
  std::size_t k = 1;
  while (k < p.size() && gap(k) > 0.0) k++;
  if (k == p.size()) k = p.size() - 1;
  if (gap(k) == 0.0) return {p[k].fpr, p[k].threshold};

  double g0 = gap(k - 1), g1 = gap(k);
  double alpha = g0 / (g0 - g1);
  EerResult out;
  out.rate = p[k - 1].fpr + alpha * (p[k].fpr - p[k - 1].fpr);
  if (std::isinf(p[k - 1].threshold))
    out.threshold = p[k].threshold;
  else
    out.threshold =
        p[k - 1].threshold + alpha * (p[k].threshold - p[k - 1].threshold);
  return out;
}

double Auc(const RocCurve &curve) {
  double area = 0.0;
  const auto &p = curve.points;
  for (std::size_t k = 1; k < p.size(); k++)
    area += (p[k].fpr - p[k - 1].fpr) * (p[k].tpr + p[k - 1].tpr) * 0.5;
  return area;
}

ThresholdPolicy ThresholdPolicy::AtFpr(double f) {
  if (!(f > 0.0 && f < 1.0))
    throw ConfigError("FPR threshold policy needs f in (0, 1)");
  return ThresholdPolicy(f);
}

std::string ThresholdPolicy::Name() const {
  if (IsEer()) return "eer";
  std::ostringstream os;
  os << "fpr_" << *fpr_;
  return os.str();
}

double ThresholdAt(const RocCurve &curve, const ThresholdPolicy &policy) {
  if (policy.IsEer()) return Eer(curve).threshold;
  // FPR is non-decreasing along the curve; take the last point within budget.
  const auto &p = curve.points;
  std::size_t k = 0;
  while (k + 1 < p.size() && p[k + 1].fpr <= policy.Fpr()) k++;
  if (std::isinf(p[k].threshold)) {
    // Not even the top score fits the budget: accept nothing above it.
    return std::nextafter(p[1].threshold,
                          std::numeric_limits<double>::infinity());
  }
  return p[k].threshold;
}

OperatingPoint RatesAt(const RocCurve &curve, double threshold) {
  // Last point whose threshold is still >= the requested one.
  const auto &p = curve.points;
  std::size_t k = 0;
  while (k + 1 < p.size() && p[k + 1].threshold >= threshold) k++;
  return {p[k].fpr, p[k].tpr};
}

void WriteRocCsv(const RocCurve &curve, std::ostream &out) {
  out << "threshold,fpr,tpr\n";
  std::ostringstream os;
  os.precision(17);
  for (const auto &pt : curve.points) {
    if (std::isinf(pt.threshold))
      os << "inf";
    else
      os << pt.threshold;
    os << ',' << pt.fpr << ',' << pt.tpr << '\n';
  }
  out << os.str();
}

nlohmann::ordered_json RocSummary(const RocCurve &curve,
                                  std::span<const ThresholdPolicy> policies) {
  EerResult eer = Eer(curve);
  nlohmann::ordered_json j;
  j["eer"] = eer.rate;
  j["eer_threshold"] = eer.threshold;
  j["auc"] = Auc(curve);
  j["n_target"] = curve.n_target;
  j["n_nontarget"] = curve.n_nontarget;
  nlohmann::ordered_json th = nlohmann::ordered_json::object();
  for (const auto &p : policies) th[p.Name()] = ThresholdAt(curve, p);
  j["thresholds"] = std::move(th);
  return j;
}

std::vector<ThresholdPolicy> StandardPolicies() {
  return {ThresholdPolicy::AtEer(), ThresholdPolicy::AtFpr(0.01),
          ThresholdPolicy::AtFpr(0.001)};
}

TrialScores ScoreAllTrials(std::span<const EnrolledIdentity> identities) {
  const std::size_t n = identities.size();
  std::vector<TrialScores> per(n);
  ParallelFor(n, [&](std::size_t a) {
    TrialScores &out = per[a];
    const auto &owner = identities[a];
    for (std::size_t b = 0; b < n; b++) {
      const auto &other = identities[b];
      for (const auto &u : other.trials) {
        double s = Score(owner.tmpl, u);
        if (a == b) {
          out.target.push_back(s);
        } else {
          out.nontarget.push_back(s);
          (owner.gender == other.gender ? out.nontarget_same_gender
                                        : out.nontarget_cross_gender)
              .push_back(s);
        }
      }
    }
  });
  TrialScores all;
  for (auto &p : per) {
    all.target.insert(all.target.end(), p.target.begin(), p.target.end());
    all.nontarget.insert(all.nontarget.end(), p.nontarget.begin(),
                         p.nontarget.end());
    all.nontarget_same_gender.insert(all.nontarget_same_gender.end(),
                                     p.nontarget_same_gender.begin(),
                                     p.nontarget_same_gender.end());
    all.nontarget_cross_gender.insert(all.nontarget_cross_gender.end(),
                                      p.nontarget_cross_gender.begin(),
                                      p.nontarget_cross_gender.end());
  }
  return all;
}

std::vector<EnrolledIdentity> EnrollSpeakers(const EmbeddingDataset &dataset,
                                             std::size_t enroll,
                                             std::size_t trials) {
  if (enroll == 0) throw ConfigError("enrollment needs at least 1 utterance");
  std::vector<EnrolledIdentity> out;
  for (const auto &spk : dataset.Speakers()) {
    const auto &idx = spk.record_indices;
    if (idx.size() < enroll + 1)
      throw DataError("speaker " + spk.speaker_id + " has " +
                      std::to_string(idx.size()) + " utterances, need " +
                      std::to_string(enroll + 1));
    std::vector<EmbeddingVector> enroll_utts;
    for (std::size_t k = 0; k < enroll; k++)
      enroll_utts.push_back(dataset.Record(idx[k]).embedding);
    EnrolledIdentity e;
    e.tmpl = Enroll(spk.speaker_id, enroll_utts);
    e.gender = spk.gender;
    for (std::size_t k = enroll; k < idx.size() && k < enroll + trials; k++)
      e.trials.push_back(dataset.Record(idx[k]).embedding);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace anonvoice
