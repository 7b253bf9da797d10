// include/anonvoice/identity-gen.h

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

// Secret-seeded voice identity generation. A private identity is a unit
// embedding that depends only on the fitted generator assets, the method,
// the gender and the user's secret; no source voice enters the computation.

#ifndef ANONVOICE_IDENTITY_GEN_H_
#define ANONVOICE_IDENTITY_GEN_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anonvoice/embedding.h"
#include "anonvoice/gmm.h"
#include "anonvoice/pca.h"
#include "anonvoice/secret-rng.h"

namespace anonvoice {

enum class GenerationMethod {
  kRandom,             // N(0, 1) per feature
  kPcaRandom,          // per-component normal in PCA space
  kMeanPoolSubset,     // mean of 10 pool entries
  kPcaGmm,             // GMM sample in PCA space
  kPoolSelection,      // one pool entry
  kTrainingSelection,  // one training voice
};

inline constexpr std::array<GenerationMethod, 6> kAllMethods = {
    GenerationMethod::kRandom,         GenerationMethod::kPcaRandom,
    GenerationMethod::kMeanPoolSubset, GenerationMethod::kPcaGmm,
    GenerationMethod::kPoolSelection,  GenerationMethod::kTrainingSelection};

inline constexpr std::size_t kMeanPoolSubsetSize = 10;

/// Stable lowercase name, e.g. "pca_gmm".
std::string_view MethodName(GenerationMethod m);
/// Inverse of MethodName; throws ConfigError for unknown names.
GenerationMethod ParseMethod(std::string_view name);
/// Every method except Random needs a gender.
bool RequiresGender(GenerationMethod m);
/// Methods whose output distribution is conditioned on the gender's assets.
bool UsesGenderAssets(GenerationMethod m);
/// Context label for DeriveRng: "anonvoice/v1/<method name>".
std::string MethodContext(GenerationMethod m);

struct GenderAssets {
  PcaModel pca;
  GmmModel gmm;
  std::vector<EmbeddingVector> pool;  // utterance-level dev embeddings
};

struct GeneratorConfig {
  double pca_retain = kDefaultPcaRetain;
  GmmFitOptions gmm;
};

/// Fitted per-gender assets plus the training-voice set. Immutable after
/// FitGenerator(); Generate() may be called concurrently.
class IdentityGenerator {
 public:
  IdentityGenerator(std::size_t dim, std::map<Gender, GenderAssets> assets,
                    std::vector<EmbeddingVector> training_voices);

  std::size_t Dim() const { return dim_; }
  /// nullptr when the development data had no records of gender g.
  const GenderAssets *Assets(Gender g) const;
  const std::vector<EmbeddingVector> &TrainingVoices() const {
    return training_voices_;
  }
  std::size_t TrainingSetSize() const { return training_voices_.size(); }

  /// Non-fatal notes from fitting (e.g. GMM components reduced).
  std::vector<std::string> warnings;

 private:
  std::size_t dim_;
  std::map<Gender, GenderAssets> assets_;
  std::vector<EmbeddingVector> training_voices_;
};

/// Fits one PCA and one GMM per gender present in dev. The GMM component
/// count is capped at the number of samples of that gender (recorded in
/// warnings). A gender absent from dev is not an error here; generating
/// for it is.
IdentityGenerator FitGenerator(const EmbeddingDataset &dev,
                               const EmbeddingDataset &training_voices,
                               const GeneratorConfig &config);

struct GeneratedIdentity {
  EmbeddingVector embedding;  // unit norm
  GenerationMethod method = GenerationMethod::kRandom;
  std::optional<Gender> gender_used;
  Digest secret_digest{};
};

/// Derives the private identity for (method, gender, secret). Throws
/// ConfigError when a required gender is missing and DataError when the
/// generator lacks the assets the method needs.
GeneratedIdentity Generate(const IdentityGenerator &generator,
                           GenerationMethod method, std::optional<Gender> gender,
                           const Secret &secret);

/// Writes the generator as one JSON file: PCA and GMM parameters for each
/// gender plus references (path and SHA-256) to the dev and training
/// dataset files the pools come from.
void SaveGenerator(const IdentityGenerator &generator, const GeneratorConfig &config,
                   const std::string &dev_path,
                   const std::string &training_path, const std::string &path);

/// Reads a file written by SaveGenerator and reloads the referenced
/// datasets, verifying their hashes. Relative dataset paths are resolved
/// against the model file's directory.
IdentityGenerator LoadGenerator(const std::string &path);

}  // namespace anonvoice

#endif  // ANONVOICE_IDENTITY_GEN_H_
