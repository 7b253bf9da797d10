// src/channel-sim.cc

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

#include "anonvoice/channel-sim.h"

#include <bit>
#include <cmath>
#include <cstdio>

#include "anonvoice/errors.h"
#include "anonvoice/model-io.h"
#include "anonvoice/secret-rng.h"

namespace anonvoice {

namespace {

std::string NumberedId(const std::string &prefix, std::size_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*zu", width, i);
  return prefix + buf;
}

// v + N(0, (spread^2 / d) I), drawn from rng.
std::vector<double> Jitter(std::span<const double> v, double spread,
                           DerivedRng &rng) {
  std::vector<double> out(v.begin(), v.end());
  double scale = spread / std::sqrt(static_cast<double>(v.size()));
  for (double &x : out) x += scale * rng.Normal();
  return out;
}

Digest IdentityDigest(const EmbeddingVector &v) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(v.Dim() * 8);
  for (double x : v.Values()) {
    std::uint64_t w = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; b++) bytes.push_back((w >> (8 * b)) & 0xff);
  }
  return Sha256(bytes);
}

}  // namespace

EmbeddingVector GenderAnchor(Gender g, std::size_t dim) {
  if (dim < 2) throw ConfigError("gender anchors need dimension >= 2");
  std::vector<double> v(dim, 0.0);
  v[g == Gender::kMale ? 0 : 1] = 1.0;
  return L2Normalize(EmbeddingVector(std::move(v)));
}

SynthesizedPopulation SynthPopulation(const PopulationParams &p) {
  if (p.speakers < 2)
    throw ConfigError("a population needs at least 2 speakers");
  if (p.utterances_per_speaker < 1)
    throw ConfigError("speakers need at least 1 utterance");
  if (!(p.between_speaker_spread > 0.0) || !(p.within_speaker_spread >= 0.0))
    throw ConfigError("spreads must be positive (sigma_w may be 0)");
  if (p.dimension < 2) throw ConfigError("dimension must be at least 2");

  DerivedRng rng = SeededRng("anonvoice/population", p.seed);
  SyntheticPopulation truth{p, {}};
  std::vector<SpeakerRecord> records;
  records.reserve(p.speakers * p.utterances_per_speaker);
  for (std::size_t s = 0; s < p.speakers; s++) {
    Gender g = s % 2 == 0 ? Gender::kMale : Gender::kFemale;
    EmbeddingVector anchor = GenderAnchor(g, p.dimension);
    EmbeddingVector mean = L2Normalize(EmbeddingVector(
        Jitter(anchor.Values(), p.between_speaker_spread, rng)));
    std::string id = NumberedId(p.id_prefix, s, 4);
    for (std::size_t u = 0; u < p.utterances_per_speaker; u++) {
      SpeakerRecord r;
      r.speaker_id = id;
      r.gender = g;
      r.utterance_id = NumberedId("utt", u, 3);
      r.embedding =
          p.within_speaker_spread == 0.0
              ? mean
              : L2Normalize(EmbeddingVector(
                    Jitter(mean.Values(), p.within_speaker_spread, rng)));
      records.push_back(std::move(r));
    }
    truth.speakers.push_back({id, g, std::move(mean)});
  }
  return {EmbeddingDataset(std::move(records)), std::move(truth)};
}

nlohmann::ordered_json PopulationTruthToJson(const SyntheticPopulation &pop) {
  nlohmann::ordered_json j;
  j["format"] = "anonvoice-population-truth";
  j["version"] = 1;
  j["seed"] = pop.params.seed;
  j["dimension"] = pop.params.dimension;
  j["between_speaker_spread"] = pop.params.between_speaker_spread;
  j["within_speaker_spread"] = pop.params.within_speaker_spread;
  j["utterances_per_speaker"] = pop.params.utterances_per_speaker;
  auto speakers = nlohmann::ordered_json::array();
  for (const auto &s : pop.speakers) {
    speakers.push_back({{"speaker_id", s.speaker_id},
                        {"gender", GenderTag(s.gender)},
                        {"identity_mean", EncodeDoubles(s.identity_mean.Values())}});
  }
  j["speakers"] = std::move(speakers);
  return j;
}

EmbeddingVector SynthesizeUtterance(const SynthesisChannel &channel,
                                    const EmbeddingVector &identity,
                                    std::uint64_t utterance_index) {
  if (!(channel.within_voice_spread >= 0.0))
    throw ConfigError("channel spread must be non-negative");
  if (!(identity.Norm() > 0.0))
    throw NumericalError("cannot synthesize from a zero-norm identity");
  if (channel.within_voice_spread == 0.0) return identity;

  Digest id = IdentityDigest(identity);
  std::string context = "anonvoice/channel/";
  context.append(HexDigest(id));
  context.push_back('/');
  context.append(std::to_string(utterance_index));
  DerivedRng rng = SeededRng(context, channel.seed);
  return L2Normalize(EmbeddingVector(
      Jitter(identity.Values(), channel.within_voice_spread, rng)));
}

std::vector<EmbeddingVector> SynthesizeUtterances(
    const SynthesisChannel &channel, const EmbeddingVector &identity,
    std::size_t count, std::uint64_t first_index) {
  std::vector<EmbeddingVector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; k++)
    out.push_back(SynthesizeUtterance(channel, identity, first_index + k));
  return out;
}

}  // namespace anonvoice
