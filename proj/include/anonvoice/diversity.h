// include/anonvoice/diversity.h

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

// Voice diversity experiment: how separable are private voices from one
// another, compared with natural voices, under the same verification
// protocol (template from the first `enroll` utterances, `trials` further
// utterances per identity as target and non-target trials).

#ifndef ANONVOICE_DIVERSITY_H_
#define ANONVOICE_DIVERSITY_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "anonvoice/channel-sim.h"
#include "anonvoice/identity-gen.h"
#include "anonvoice/recognition.h"
#include "json.hpp"

namespace anonvoice {

struct DiversityConfig {
  std::size_t identities = 500;
  std::size_t utterances = 30;
  std::size_t enroll = 10;
  std::size_t trials = 20;
  SynthesisChannel channel;
  std::uint64_t seed = 3;
};

struct Histogram {
  double low = -1.0;
  double high = 1.0;
  std::vector<std::size_t> counts;

  double BinWidth() const {
    return (high - low) / static_cast<double>(counts.size());
  }
};

Histogram MakeHistogram(std::span<const double> values, double low,
                        double high, std::size_t bins);

/// Two-peak heuristic: 50-bin histogram over the data range, 5-bin moving
/// average, local maxima of at least 5% of the tallest bin, merging
/// neighbours unless the valley between them drops to 80% of the lower
/// peak or less. Returns the number of peaks that survive.
std::size_t CountModes(std::span<const double> values);

/// Sarle's bimodality coefficient (skew^2 + 1) / (excess kurtosis + finite
/// sample term); values above 5/9 hint at bimodality.
double BimodalityCoefficient(std::span<const double> values);

struct ScoreSetSummary {
  std::string name;  // "natural" or a method name
  TrialScores scores;
  RocCurve roc;
  EerResult eer;
  double auc = 0.0;
  std::size_t nontarget_modes = 0;
  double bimodality_coefficient = 0.0;
};

ScoreSetSummary SummarizeScores(std::string name, TrialScores scores);

/// `identities` private voices of one method: identity i has gender male
/// for even i and female for odd i, a secret derived from (seed, method, i)
/// and `utterances` channel-synthesized utterances.
std::vector<EnrolledIdentity> GeneratedIdentities(
    const IdentityGenerator &generator, GenerationMethod method,
    const DiversityConfig &config);

struct DiversityResult {
  ScoreSetSummary natural;
  std::vector<std::pair<ThresholdPolicy, double>> natural_thresholds;
  std::vector<ScoreSetSummary> methods;
};

DiversityResult EvaluateDiversity(const EmbeddingDataset &natural,
                                  const IdentityGenerator &generator,
                                  std::span<const GenerationMethod> methods,
                                  const DiversityConfig &config);

/// summary.json content for one score set; natural_auc and thresholds come
/// from the natural population.
nlohmann::ordered_json ScoreSetJson(
    const ScoreSetSummary &s, double natural_auc,
    std::span<const std::pair<ThresholdPolicy, double>> natural_thresholds);

/// "bin_low,bin_high,target,nontarget,nontarget_same_gender,nontarget_cross_gender"
void WriteHistogramCsv(const TrialScores &scores, std::ostream &out,
                       std::size_t bins = 100);

}  // namespace anonvoice

#endif  // ANONVOICE_DIVERSITY_H_
