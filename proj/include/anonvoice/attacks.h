// include/anonvoice/attacks.h

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

// Monte-Carlo simulation of the two adversaries:
//
//  * privacy (de-anonymization): the adversary holds natural templates of a
//    candidate set and tries to name the speaker behind one anonymized
//    utterance by nearest-template identification;
//  * authentication (impersonation): the adversary presents an utterance to
//    a verifier enrolled with the victim's voice (natural or private) and
//    wins if it clears the natural-population EER threshold.
//
// Every round/trial draws from its own stream derived from (seed, index),
// so results are identical for any worker count.

#ifndef ANONVOICE_ATTACKS_H_
#define ANONVOICE_ATTACKS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "anonvoice/channel-sim.h"
#include "anonvoice/identity-gen.h"
#include "anonvoice/recognition.h"
#include "anonvoice/stats.h"
#include "json.hpp"

namespace anonvoice {

struct AttackReport {
  std::string attack;   // "privacy" or "auth"
  std::string variant;  // method name, or "baseline"
  std::size_t n_trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  Interval ci;  // Wilson, 95%
  double ci_halfwidth = 0.0;
  double chance_rate = 0.0;  // privacy only: 1 / candidates considered
  double threshold = 0.0;    // auth only
  nlohmann::ordered_json config;

  // Per-round detail, index-aligned.
  std::vector<std::string> victims;
  std::vector<std::uint8_t> outcomes;
  std::vector<std::string> guesses;  // privacy only: the adversary's pick

  nlohmann::ordered_json ToJson() const;
  /// "round,victim,success" rows; privacy adds a guess column.
  void WriteOutcomesCsv(std::ostream &out) const;
};

struct PrivacyAttackConfig {
  std::size_t n_candidates = 20;
  std::size_t n_rounds = 100;
  /// nullopt runs the unprotected baseline: the victim's own held-out
  /// natural utterance is presented.
  std::optional<GenerationMethod> method;
  bool gender_filtering = true;
  std::size_t enroll = 10;
  SynthesisChannel channel;
  std::uint64_t seed = 1;
};

/// Per round: draws n_candidates speakers (half per gender when gender
/// filtering is on), picks a victim among them, presents one utterance and
/// lets the adversary identify it among the candidates of the victim's
/// gender (all candidates for Random or when filtering is off).
/// `generator` may be null for the baseline.
AttackReport PrivacyAttack(const EmbeddingDataset &population,
                           const IdentityGenerator *generator,
                           const PrivacyAttackConfig &config);

enum class AuthStrategy {
  kBaselineNaturalReplay,  // natural template, natural victim utterance
  kVictimOriginalVoice,    // private template, natural victim utterance
  kRandomAnonymousVoice,   // private template, adversary's own private voice
};

std::string_view StrategyName(AuthStrategy s);
AuthStrategy ParseStrategy(std::string_view name);

struct AuthAttackConfig {
  std::size_t n_trials = 10000;
  AuthStrategy strategy = AuthStrategy::kBaselineNaturalReplay;
  GenerationMethod method = GenerationMethod::kRandom;
  /// Verification threshold; nullopt means the natural population's EER
  /// threshold, computed from `population` with the same enroll count.
  std::optional<double> threshold;
  std::size_t enroll = 10;
  SynthesisChannel channel;
  std::uint64_t seed = 2;
};

/// Natural-population verification experiment: templates from the first
/// `enroll` utterances of every speaker, all remaining utterances as trials.
struct NaturalBaseline {
  TrialScores scores;
  RocCurve roc;
  EerResult eer;
};
NaturalBaseline EvaluateNaturalPopulation(const EmbeddingDataset &population,
                                          std::size_t enroll);

AttackReport AuthAttack(const EmbeddingDataset &population,
                        const IdentityGenerator *generator,
                        const AuthAttackConfig &config);

/// Number of scores >= threshold.
std::size_t CountAtOrAbove(std::span<const double> scores, double threshold);

}  // namespace anonvoice

#endif  // ANONVOICE_ATTACKS_H_
