// include/anonvoice/channel-sim.h

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

// Synthetic stand-in for real speakers and for the speech synthesis +
// embedding extraction round trip.
//
// Spreads are RMS norms: a spread sigma adds isotropic Gaussian noise with
// per-coordinate standard deviation sigma / sqrt(d), so the expected noise
// norm is about sigma whatever the dimension.

#ifndef ANONVOICE_CHANNEL_SIM_H_
#define ANONVOICE_CHANNEL_SIM_H_

#include <cstdint>
#include <string>
#include <vector>

#include "anonvoice/embedding.h"
#include "json.hpp"

namespace anonvoice {

struct PopulationParams {
  std::size_t speakers = 40;
  std::size_t utterances_per_speaker = 30;
  double between_speaker_spread = 1.0;  // sigma_b
  double within_speaker_spread = 0.05;  // sigma_w
  std::size_t dimension = kDefaultDimension;
  std::uint64_t seed = 1;
  std::string id_prefix = "spk";
};

struct SyntheticSpeaker {
  std::string speaker_id;
  Gender gender;
  EmbeddingVector identity_mean;  // unit norm
};

struct SyntheticPopulation {
  PopulationParams params;
  std::vector<SyntheticSpeaker> speakers;
};

struct SynthesizedPopulation {
  EmbeddingDataset dataset;
  SyntheticPopulation truth;
};

/// Unit anchor direction of a gender (coordinate axis 0 or 1).
EmbeddingVector GenderAnchor(Gender g, std::size_t dim);

/// Speaker s has gender male for even s, female for odd s, mean
/// normalize(anchor + N(0, sigma_b^2/d I)) and utterances
/// normalize(mean + N(0, sigma_w^2/d I)). Deterministic from the seed.
SynthesizedPopulation SynthPopulation(const PopulationParams &params);

nlohmann::ordered_json PopulationTruthToJson(const SyntheticPopulation &pop);

struct SynthesisChannel {
  double within_voice_spread = 0.03;  // sigma_c
  std::uint64_t seed = 7;
};

/// normalize(identity + N(0, sigma_c^2/d I)); the noise stream is keyed by
/// (channel seed, SHA-256 of the identity, utterance index). sigma_c = 0
/// returns the identity unchanged.
EmbeddingVector SynthesizeUtterance(const SynthesisChannel &channel,
                                    const EmbeddingVector &identity,
                                    std::uint64_t utterance_index);

/// Utterances 0 .. count-1 of an identity.
std::vector<EmbeddingVector> SynthesizeUtterances(
    const SynthesisChannel &channel, const EmbeddingVector &identity,
    std::size_t count, std::uint64_t first_index = 0);

}  // namespace anonvoice

#endif  // ANONVOICE_CHANNEL_SIM_H_
