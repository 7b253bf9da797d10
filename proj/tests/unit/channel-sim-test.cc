// tests/unit/channel-sim-test.cc

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

#include "anonvoice/channel-sim.h"
#include "anonvoice/recognition.h"
#include "doctest.h"
#include "test-util.h"

using namespace anonvoice;

TEST_CASE("population bookkeeping") {
  PopulationParams p;  // 40 speakers x 30 utterances
  auto pop = SynthPopulation(p);
  CHECK(pop.dataset.Size() == 1200);
  CHECK(pop.dataset.Dim() == 256);
  CHECK(pop.dataset.SpeakersOfGender(Gender::kMale).size() == 20);
  CHECK(pop.dataset.SpeakersOfGender(Gender::kFemale).size() == 20);
  CHECK(pop.truth.speakers.size() == 40);
  CHECK(pop.dataset.Speakers()[7].speaker_id == "spk0007");
  CHECK(pop.dataset.Speakers()[7].gender == Gender::kFemale);
  CHECK(pop.dataset.Record(31).utterance_id == "utt001");
  for (const auto &r : pop.dataset.Records()) REQUIRE(std::abs(r.embedding.Norm() - 1.0) < 1e-12);
}

TEST_CASE("noiseless utterances equal the speaker mean") {
  PopulationParams p;
  p.speakers = 6;
  p.utterances_per_speaker = 4;
  p.within_speaker_spread = 0.0;
  auto pop = SynthPopulation(p);
  for (std::size_t s = 0; s < 6; s++)
    for (std::size_t idx : pop.dataset.Speakers()[s].record_indices)
      CHECK(pop.dataset.Record(idx).embedding == pop.truth.speakers[s].identity_mean);
}

TEST_CASE("gender structure") {
  PopulationParams p;
  p.speakers = 40;
  p.utterances_per_speaker = 1;
  auto pop = SynthPopulation(p);
  auto m = GenderAnchor(Gender::kMale, 256), f = GenderAnchor(Gender::kFemale, 256);
  CHECK(CosineSimilarity(m, f) == 0.0);
  for (const auto &s : pop.truth.speakers) {
    const auto &own = s.gender == Gender::kMale ? m : f;
    const auto &other = s.gender == Gender::kMale ? f : m;
    CHECK(CosineSimilarity(s.identity_mean, own) > 0.5);
    CHECK(std::abs(CosineSimilarity(s.identity_mean, other)) < 0.3);
  }
}

TEST_CASE("natural population is nearly separable") {
  auto pop = SynthPopulation(PopulationParams{});
  auto ids = EnrollSpeakers(pop.dataset, 10, 20);
  auto s = ScoreAllTrials(ids);
  CHECK(Eer(ComputeRoc(s.target, s.nontarget)).rate < 0.01);
}

TEST_CASE("population regeneration is bit-identical") {
  PopulationParams p;
  p.speakers = 10;
  p.utterances_per_speaker = 5;
  p.seed = 77;
  auto a = SynthPopulation(p), b = SynthPopulation(p);
  CHECK(a.dataset == b.dataset);
  CHECK(PopulationTruthToJson(a.truth).dump() == PopulationTruthToJson(b.truth).dump());
  p.seed = 78;
  CHECK(!(SynthPopulation(p).dataset == a.dataset));
  auto j = PopulationTruthToJson(a.truth);
  CHECK(j["format"] == "anonvoice-population-truth");
  CHECK(j["speakers"].size() == 10);
}

TEST_CASE("channel synthesis") {
  DerivedRng rng = SeededRng("test/channel", 1);
  auto id = testutil::RandomUnit(rng, 256);

  SynthesisChannel clean{0.0, 7};
  CHECK(SynthesizeUtterance(clean, id, 3) == id);

  SynthesisChannel ch;  // sigma_c 0.03
  CHECK(SynthesizeUtterance(ch, id, 5) == SynthesizeUtterance(ch, id, 5));
  CHECK(!(SynthesizeUtterance(ch, id, 5) == SynthesizeUtterance(ch, id, 6)));
  SynthesisChannel other_seed{0.03, 8};
  CHECK(!(SynthesizeUtterance(ch, id, 5) == SynthesizeUtterance(other_seed, id, 5)));

  auto utts = SynthesizeUtterances(ch, id, 30);
  REQUIRE(utts.size() == 30);
  CHECK(utts[12] == SynthesizeUtterance(ch, id, 12));
  auto tail = SynthesizeUtterances(ch, id, 5, 25);
  CHECK(tail[0] == utts[25]);
  double worst = 1.0;
  for (std::size_t i = 0; i < 30; i++)
    for (std::size_t j = i + 1; j < 30; j++)
      worst = std::min(worst, CosineSimilarity(utts[i], utts[j]));
  CHECK(worst >= 0.99);
  for (const auto &u : utts) CHECK(u.IsNormalized());
}
