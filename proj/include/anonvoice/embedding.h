// include/anonvoice/embedding.h

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

#ifndef ANONVOICE_EMBEDDING_H_
#define ANONVOICE_EMBEDDING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace anonvoice {

inline constexpr std::size_t kDefaultDimension = 256;
inline constexpr double kUnitNormTolerance = 1e-9;

/// A real-valued speaker embedding. Entries are always finite; vectors
/// produced by L2Normalize() carry the normalized flag and have unit
/// Euclidean norm within kUnitNormTolerance.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  /// Throws DataError if any entry is NaN or infinite.
  explicit EmbeddingVector(std::vector<double> values);

  std::size_t Dim() const { return values_.size(); }
  bool Empty() const { return values_.empty(); }
  std::span<const double> Values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double Norm() const;
  bool IsNormalized() const { return normalized_; }

  /// Bitwise equality of the values; the normalized flag is ignored.
  friend bool operator==(const EmbeddingVector &a, const EmbeddingVector &b) {
    return a.values_ == b.values_;
  }

 private:
  friend EmbeddingVector L2Normalize(const EmbeddingVector &v);
  std::vector<double> values_;
  bool normalized_ = false;
};

/// Scales v to unit norm. Throws NumericalError for a zero-norm input.
EmbeddingVector L2Normalize(const EmbeddingVector &v);

/// Cosine of the angle between a and b, in [-1, 1]. Both must be non-zero
/// and of equal dimension.
double CosineSimilarity(const EmbeddingVector &a, const EmbeddingVector &b);

/// Per-coordinate arithmetic mean (no normalization).
EmbeddingVector Centroid(std::span<const EmbeddingVector> vs);

double Dot(std::span<const double> a, std::span<const double> b);

enum class Gender { kMale, kFemale };
inline constexpr Gender kGenders[] = {Gender::kMale, Gender::kFemale};

/// "m" or "f".
std::string_view GenderTag(Gender g);
/// Accepts "m" / "f"; anything else is a DataError.
Gender ParseGender(std::string_view tag);

struct SpeakerRecord {
  std::string speaker_id;
  Gender gender = Gender::kMale;
  std::string utterance_id;
  EmbeddingVector embedding;

  friend bool operator==(const SpeakerRecord &, const SpeakerRecord &) =
      default;
};

/// Utterances of one speaker, in dataset order.
struct SpeakerGroup {
  std::string speaker_id;
  Gender gender = Gender::kMale;
  std::vector<std::size_t> record_indices;
};

/// Validated, immutable set of utterance embeddings.
///
/// Construction enforces: at least one record, a shared dimension,
/// unique (speaker_id, utterance_id) pairs and one gender per speaker.
class EmbeddingDataset {
 public:
  explicit EmbeddingDataset(std::vector<SpeakerRecord> records);

  std::size_t Dim() const { return dim_; }
  std::size_t Size() const { return records_.size(); }
  const std::vector<SpeakerRecord> &Records() const { return records_; }
  const SpeakerRecord &Record(std::size_t i) const { return records_[i]; }

  /// Speakers in order of first appearance.
  const std::vector<SpeakerGroup> &Speakers() const { return speakers_; }
  std::vector<const SpeakerGroup *> SpeakersOfGender(Gender g) const;

  /// All embeddings of the given gender, in dataset order.
  std::vector<EmbeddingVector> EmbeddingsOfGender(Gender g) const;
  std::vector<EmbeddingVector> AllEmbeddings() const;

  friend bool operator==(const EmbeddingDataset &a,
                         const EmbeddingDataset &b) {
    return a.records_ == b.records_;
  }

 private:
  std::vector<SpeakerRecord> records_;
  std::size_t dim_ = 0;
  std::vector<SpeakerGroup> speakers_;
};

}  // namespace anonvoice

#endif  // ANONVOICE_EMBEDDING_H_
