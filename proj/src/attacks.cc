// src/attacks.cc

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

#include "anonvoice/attacks.h"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "anonvoice/errors.h"
#include "anonvoice/parallel.h"

namespace anonvoice {

namespace {

Secret SecretFromStream(DerivedRng &rng) {
  std::vector<std::uint8_t> bytes;
  for (int w = 0; w < 4; w++) {
    std::uint64_t x = rng.NextWord();
    for (int b = 0; b < 8; b++) bytes.push_back((x >> (8 * b)) & 0xff);
  }
  return Secret(std::move(bytes));
}

// First `k` entries of a uniform random permutation of `items`.
template <typename T>
std::vector<T> SampleWithoutReplacement(std::vector<T> items, std::size_t k,
                                        DerivedRng &rng) {
  for (std::size_t i = 0; i < k; i++) {
    std::size_t j = i + rng.UniformIndex(items.size() - i);
    std::swap(items[i], items[j]);
  }
  items.resize(k);
  return items;
}

std::vector<EmbeddingVector> SpeakerUtterances(const EmbeddingDataset &ds,
                                               const SpeakerGroup &spk) {
  std::vector<EmbeddingVector> out;
  for (std::size_t i : spk.record_indices) out.push_back(ds.Record(i).embedding);
  return out;
}

void Finish(AttackReport &r) {
  r.n_trials = r.outcomes.size();
  r.successes = static_cast<std::size_t>(
      std::count(r.outcomes.begin(), r.outcomes.end(), std::uint8_t{1}));
  r.success_rate =
      static_cast<double>(r.successes) / static_cast<double>(r.n_trials);
  r.ci = WilsonInterval(r.successes, r.n_trials);
  r.ci_halfwidth = r.ci.HalfWidth();
}

}  // namespace

nlohmann::ordered_json AttackReport::ToJson() const {
  nlohmann::ordered_json j;
  j["schema"] = "anonvoice-attack-report";
  j["schema_version"] = 1;
  j["attack"] = attack;
  j["variant"] = variant;
  j["n_trials"] = n_trials;
  j["successes"] = successes;
  j["success_rate"] = success_rate;
  j["ci_method"] = "wilson";
  j["ci_low"] = ci.low;
  j["ci_high"] = ci.high;
  j["ci_halfwidth"] = ci_halfwidth;
  if (attack == "privacy") j["chance_rate"] = chance_rate;
  if (attack == "auth") j["threshold"] = threshold;
  j["config"] = config;
  return j;
}

void AttackReport::WriteOutcomesCsv(std::ostream &out) const {
  const bool with_guess = !guesses.empty();
  out << (with_guess ? "round,victim,guess,success\n" : "round,victim,success\n");
  for (std::size_t i = 0; i < outcomes.size(); i++) {
    out << i << ',' << victims[i] << ',';
    if (with_guess) out << guesses[i] << ',';
    out << int(outcomes[i]) << '\n';
  }
}

AttackReport PrivacyAttack(const EmbeddingDataset &population,
                           const IdentityGenerator *generator,
                           const PrivacyAttackConfig &cfg) {
  if (cfg.n_candidates < 2) throw ConfigError("need at least 2 candidates");
  if (cfg.n_rounds < 1) throw ConfigError("need at least 1 round");
  if (cfg.method && !generator)
    throw ConfigError("anonymized privacy attack needs a generator");

  const bool filter =
      cfg.gender_filtering && cfg.method != GenerationMethod::kRandom;
  const std::size_t per_gender = (cfg.n_candidates + 1) / 2;
  std::vector<std::size_t> male, female, everyone;
  const auto &speakers = population.Speakers();
  for (std::size_t s = 0; s < speakers.size(); s++) {
    (speakers[s].gender == Gender::kMale ? male : female).push_back(s);
    everyone.push_back(s);
  }
  if (cfg.gender_filtering) {
    if (male.size() < per_gender || female.size() < per_gender)
      throw DataError("privacy attack needs " + std::to_string(per_gender) +
                      " speakers of each gender");
  } else if (everyone.size() < cfg.n_candidates) {
    throw DataError("privacy attack needs " +
                    std::to_string(cfg.n_candidates) + " speakers");
  }
  if (cfg.method && generator->Dim() != population.Dim())
    throw DataError("generator and population dimensions differ");

  // Natural templates are the adversary's knowledge; they never change.
  std::vector<IdentityTemplate> templates(speakers.size());
  for (std::size_t s = 0; s < speakers.size(); s++) {
    auto utts = SpeakerUtterances(population, speakers[s]);
    if (utts.size() < cfg.enroll + 1)
      throw DataError("speaker " + speakers[s].speaker_id +
                      " has too few utterances for enroll=" +
                      std::to_string(cfg.enroll));
    templates[s] = Enroll(speakers[s].speaker_id,
                          std::span(utts).first(cfg.enroll));
  }

  AttackReport report;
  report.attack = "privacy";
  report.variant = cfg.method ? std::string(MethodName(*cfg.method)) : "baseline";
  report.victims.resize(cfg.n_rounds);
  report.outcomes.resize(cfg.n_rounds);
  report.guesses.resize(cfg.n_rounds);

  ParallelFor(cfg.n_rounds, [&](std::size_t round) {
    DerivedRng rng =
        SeededRng("anonvoice/privacy-round", ChildSeed(cfg.seed, "privacy", round));
    std::vector<std::size_t> candidates;
    if (cfg.gender_filtering) {
      auto m = SampleWithoutReplacement(male, cfg.n_candidates / 2, rng);
      auto f = SampleWithoutReplacement(female, cfg.n_candidates - m.size(), rng);
      candidates = m;
      candidates.insert(candidates.end(), f.begin(), f.end());
    } else {
      candidates = SampleWithoutReplacement(everyone, cfg.n_candidates, rng);
    }
    const std::size_t victim = candidates[rng.UniformIndex(candidates.size())];
    const SpeakerGroup &vs = speakers[victim];

    EmbeddingVector presented;
    if (!cfg.method) {
      const auto &idx = vs.record_indices;
      std::size_t held_out =
          cfg.enroll + rng.UniformIndex(idx.size() - cfg.enroll);
      presented = population.Record(idx[held_out]).embedding;
    } else {
      Secret secret = SecretFromStream(rng);
      GeneratedIdentity id =
          Generate(*generator, *cfg.method, vs.gender, secret);
      presented = SynthesizeUtterance(cfg.channel, id.embedding, 0);
    }

    std::vector<IdentityTemplate> considered;
    for (std::size_t c : candidates)
      if (!filter || speakers[c].gender == vs.gender)
        considered.push_back(templates[c]);
    report.victims[round] = vs.speaker_id;
    report.guesses[round] = Identify(considered, presented);
    report.outcomes[round] = report.guesses[round] == vs.speaker_id;
  });

  Finish(report);
  report.chance_rate =
      1.0 / static_cast<double>(filter ? per_gender : cfg.n_candidates);
  if (filter && cfg.n_candidates % 2 == 1)
    report.chance_rate = 0.0;  // unequal strata; no single chance level
  report.config = {{"n_candidates", cfg.n_candidates},
                   {"n_rounds", cfg.n_rounds},
                   {"method", report.variant},
                   {"gender_filtering", cfg.gender_filtering},
                   {"enroll", cfg.enroll},
                   {"channel_spread", cfg.channel.within_voice_spread},
                   {"channel_seed", cfg.channel.seed},
                   {"seed", cfg.seed}};
  return report;
}

std::string_view StrategyName(AuthStrategy s) {
  switch (s) {
    case AuthStrategy::kBaselineNaturalReplay: return "baseline";
    case AuthStrategy::kVictimOriginalVoice: return "victim_original_voice";
    case AuthStrategy::kRandomAnonymousVoice: return "random_anonymous_voice";
  }
  return "unknown";
}

AuthStrategy ParseStrategy(std::string_view name) {
  for (AuthStrategy s :
       {AuthStrategy::kBaselineNaturalReplay, AuthStrategy::kVictimOriginalVoice,
        AuthStrategy::kRandomAnonymousVoice})
    if (StrategyName(s) == name) return s;
  throw ConfigError("unknown auth strategy '" + std::string(name) + "'");
}

NaturalBaseline EvaluateNaturalPopulation(const EmbeddingDataset &population,
                                          std::size_t enroll) {
  auto identities = EnrollSpeakers(population, enroll, population.Size());
  NaturalBaseline out;
  out.scores = ScoreAllTrials(identities);
  out.roc = ComputeRoc(out.scores.target, out.scores.nontarget);
  out.eer = Eer(out.roc);
  return out;
}

std::size_t CountAtOrAbove(std::span<const double> scores, double threshold) {
  return static_cast<std::size_t>(std::count_if(
      scores.begin(), scores.end(), [&](double s) { return s >= threshold; }));
}

AttackReport AuthAttack(const EmbeddingDataset &population,
                        const IdentityGenerator *generator,
                        const AuthAttackConfig &cfg) {
  if (cfg.n_trials < 1) throw ConfigError("need at least 1 trial");
  const bool private_template =
      cfg.strategy != AuthStrategy::kBaselineNaturalReplay;
  if (private_template && !generator)
    throw ConfigError("auth strategy " + std::string(StrategyName(cfg.strategy)) +
                      " needs a generator");
  const auto &speakers = population.Speakers();
  for (const auto &s : speakers)
    if (s.record_indices.size() < cfg.enroll + 1)
      throw DataError("victim " + s.speaker_id + " has " +
                      std::to_string(s.record_indices.size()) +
                      " utterances, need " + std::to_string(cfg.enroll + 1));

  double threshold = cfg.threshold
                         ? *cfg.threshold
                         : EvaluateNaturalPopulation(population, cfg.enroll)
                               .eer.threshold;

  AttackReport report;
  report.attack = "auth";
  report.variant = std::string(StrategyName(cfg.strategy));
  report.threshold = threshold;
  report.victims.resize(cfg.n_trials);
  report.outcomes.resize(cfg.n_trials);

  ParallelFor(cfg.n_trials, [&](std::size_t t) {
    std::uint64_t trial_seed = ChildSeed(cfg.seed, "auth", t);
    DerivedRng rng = SeededRng("anonvoice/auth-trial", trial_seed);
    const SpeakerGroup &victim = speakers[rng.UniformIndex(speakers.size())];
    const auto &idx = victim.record_indices;

    IdentityTemplate tmpl;
    if (private_template) {
      DerivedRng victim_rng = SeededRng("anonvoice/auth/victim-secret", trial_seed);
      GeneratedIdentity id = Generate(*generator, cfg.method, victim.gender,
                                      SecretFromStream(victim_rng));
      auto utts = SynthesizeUtterances(cfg.channel, id.embedding, cfg.enroll);
      tmpl = Enroll(victim.speaker_id, utts);
    } else {
      std::vector<EmbeddingVector> utts;
      for (std::size_t k = 0; k < cfg.enroll; k++)
        utts.push_back(population.Record(idx[k]).embedding);
      tmpl = Enroll(victim.speaker_id, utts);
    }

    EmbeddingVector presented;
    if (cfg.strategy == AuthStrategy::kRandomAnonymousVoice) {
      DerivedRng adv_rng =
          SeededRng("anonvoice/auth/adversary-secret", trial_seed);
      GeneratedIdentity adv = Generate(*generator, cfg.method, victim.gender,
                                       SecretFromStream(adv_rng));
      presented = SynthesizeUtterance(cfg.channel, adv.embedding, cfg.enroll);
    } else {
      std::size_t held_out = cfg.enroll + rng.UniformIndex(idx.size() - cfg.enroll);
      presented = population.Record(idx[held_out]).embedding;
    }
    report.victims[t] = victim.speaker_id;
    report.outcomes[t] = Verify(tmpl, presented, threshold) == Decision::kAccept;
  });

  Finish(report);
  report.config = {{"n_trials", cfg.n_trials},
                   {"strategy", report.variant},
                   {"method", private_template ? std::string(MethodName(cfg.method))
                                               : std::string("none")},
                   {"threshold_source", cfg.threshold ? "given" : "natural_eer"},
                   {"enroll", cfg.enroll},
                   {"channel_spread", cfg.channel.within_voice_spread},
                   {"channel_seed", cfg.channel.seed},
                   {"seed", cfg.seed}};
  return report;
}

}  // namespace anonvoice
