// include/anonvoice/recognition.h

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

// Text-independent verification and identification over embeddings, and
// the ROC machinery used to evaluate them.

#ifndef ANONVOICE_RECOGNITION_H_
#define ANONVOICE_RECOGNITION_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anonvoice/embedding.h"
#include "json.hpp"

namespace anonvoice {

struct IdentityTemplate {
  std::string speaker_id;
  EmbeddingVector embedding;  // unit norm
  std::size_t enrollment_count = 0;
};

/// Template = normalize(mean(normalize(u) for u in utterances)).
IdentityTemplate Enroll(std::string speaker_id,
                        std::span<const EmbeddingVector> utterances);

double Score(const IdentityTemplate &tmpl, const EmbeddingVector &utterance);

enum class Decision { kAccept, kReject };

/// Accepts iff Score >= threshold (ties accept). threshold must lie in
/// [-1, 1].
Decision Verify(const IdentityTemplate &tmpl, const EmbeddingVector &utterance,
                double threshold);

/// Speaker id of the best-scoring template; ties go to the
/// lexicographically smallest id.
const std::string &Identify(std::span<const IdentityTemplate> templates,
                            const EmbeddingVector &utterance);

struct RocPoint {
  double threshold;  // accept iff score >= threshold
  double fpr;
  double tpr;
};

/// Empirical ROC. points[0] is (+inf, 0, 0); then one point per distinct
/// score in descending order, the last one being (min score, 1, 1).
struct RocCurve {
  std::vector<RocPoint> points;
  std::size_t n_target = 0;
  std::size_t n_nontarget = 0;
};

RocCurve ComputeRoc(std::span<const double> target_scores,
                    std::span<const double> nontarget_scores);

struct EerResult {
  double rate = 0.0;
  double threshold = 0.0;
};

/// Equal error rate: where FPR = 1 - TPR, linearly interpolated between
/// the two empirical points that bracket the crossing.
EerResult Eer(const RocCurve &curve);

/// Trapezoidal area under the ROC.
double Auc(const RocCurve &curve);

class ThresholdPolicy {
 public:
  static ThresholdPolicy AtEer() { return ThresholdPolicy(std::nullopt); }
  /// f must lie in (0, 1).
  static ThresholdPolicy AtFpr(double f);

  bool IsEer() const { return !fpr_; }
  double Fpr() const { return fpr_.value_or(0.0); }
  /// "eer" or "fpr_<f>", e.g. "fpr_0.01".
  std::string Name() const;

 private:
  explicit ThresholdPolicy(std::optional<double> fpr) : fpr_(fpr) {}
  std::optional<double> fpr_;
};

/// For AtFpr(f): the lowest threshold whose FPR does not exceed f, i.e. the
/// most permissive operating point that honours the false-positive budget.
double ThresholdAt(const RocCurve &curve, const ThresholdPolicy &policy);

struct OperatingPoint {
  double fpr;
  double tpr;
};

/// Rates of the curve when accepting scores >= threshold.
OperatingPoint RatesAt(const RocCurve &curve, double threshold);

/// CSV with header "threshold,fpr,tpr"; the first threshold prints as "inf".
void WriteRocCsv(const RocCurve &curve, std::ostream &out);

/// {"eer", "eer_threshold", "auc", "thresholds": {policy: value}}.
nlohmann::ordered_json RocSummary(const RocCurve &curve,
                                  std::span<const ThresholdPolicy> policies);

/// The three operating points reported alongside every ROC: EER, 1% FPR,
/// 0.1% FPR.
std::vector<ThresholdPolicy> StandardPolicies();

/// Speaker with a template built from its first utterances and the rest
/// held out as trial utterances.
struct EnrolledIdentity {
  IdentityTemplate tmpl;
  Gender gender = Gender::kMale;
  std::vector<EmbeddingVector> trials;
};

struct TrialScores {
  std::vector<double> target;
  std::vector<double> nontarget;
  std::vector<double> nontarget_same_gender;
  std::vector<double> nontarget_cross_gender;
};

/// Every template against every trial utterance: own utterances give target
/// scores, everyone else's non-target scores. Deterministic ordering;
/// parallel over templates.
TrialScores ScoreAllTrials(std::span<const EnrolledIdentity> identities);

/// Enrolls each speaker of the dataset from its first `enroll` utterances
/// and keeps up to `trials` of the following ones. Throws DataError if a
/// speaker has fewer than enroll + 1 utterances.
std::vector<EnrolledIdentity> EnrollSpeakers(const EmbeddingDataset &dataset,
                                             std::size_t enroll,
                                             std::size_t trials);

}  // namespace anonvoice

#endif  // ANONVOICE_RECOGNITION_H_
