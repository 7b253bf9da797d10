// src/embedding.cc

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

#include "anonvoice/embedding.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "anonvoice/errors.h"

namespace anonvoice {

EmbeddingVector::EmbeddingVector(std::vector<double> values)
    : values_(std::move(values)) {
  for (double x : values_)
    if (!std::isfinite(x))
      throw DataError("embedding contains a non-finite value");
}

double EmbeddingVector::Norm() const {
  return std::sqrt(Dot(values_, values_));
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); i++) sum += a[i] * b[i];
  return sum;
}

EmbeddingVector L2Normalize(const EmbeddingVector &v) {
  double norm = v.Norm();
  if (!(norm > 0.0))
    throw NumericalError("cannot normalize a zero-norm embedding");
  EmbeddingVector out;
  out.values_.resize(v.Dim());
  for (std::size_t i = 0; i < v.Dim(); i++) out.values_[i] = v[i] / norm;
  out.normalized_ = true;
  return out;
}

double CosineSimilarity(const EmbeddingVector &a, const EmbeddingVector &b) {
  if (a.Dim() != b.Dim())
    throw DataError("cosine similarity of embeddings with dimensions " +
                    std::to_string(a.Dim()) + " and " +
                    std::to_string(b.Dim()));
  double na = a.Norm(), nb = b.Norm();
  if (!(na > 0.0) || !(nb > 0.0))
    throw NumericalError("cosine similarity with a zero-norm embedding");
  double c = Dot(a.Values(), b.Values()) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

EmbeddingVector Centroid(std::span<const EmbeddingVector> vs) {
  if (vs.empty()) throw DataError("centroid of an empty list");
  std::size_t d = vs.front().Dim();
  std::vector<double> sum(d, 0.0);
  for (const auto &v : vs) {
    if (v.Dim() != d) throw DataError("centroid of mixed dimensions");
    for (std::size_t i = 0; i < d; i++) sum[i] += v[i];
  }
  for (double &x : sum) x /= static_cast<double>(vs.size());
  return EmbeddingVector(std::move(sum));
}

std::string_view GenderTag(Gender g) {
  return g == Gender::kMale ? "m" : "f";
}

Gender ParseGender(std::string_view tag) {
  if (tag == "m") return Gender::kMale;
  if (tag == "f") return Gender::kFemale;
  throw DataError("unknown gender tag '" + std::string(tag) + "'");
}

EmbeddingDataset::EmbeddingDataset(std::vector<SpeakerRecord> records)
    : records_(std::move(records)) {
  if (records_.empty()) throw DataError("dataset has no records");
  dim_ = records_.front().embedding.Dim();
  if (dim_ == 0) throw DataError("dataset has zero-dimensional embeddings");

  std::set<std::pair<std::string, std::string>> seen;
  std::map<std::string, std::size_t> speaker_slot;
  for (std::size_t i = 0; i < records_.size(); i++) {
    const SpeakerRecord &r = records_[i];
    if (r.embedding.Dim() != dim_)
      throw DataError("record " + r.speaker_id + "/" + r.utterance_id +
                      " has dimension " + std::to_string(r.embedding.Dim()) +
                      ", dataset dimension is " + std::to_string(dim_));
    if (!seen.emplace(r.speaker_id, r.utterance_id).second)
      throw DataError("duplicate record " + r.speaker_id + "/" +
                      r.utterance_id);
    auto [it, inserted] = speaker_slot.emplace(r.speaker_id, speakers_.size());
    if (inserted) {
      speakers_.push_back({r.speaker_id, r.gender, {}});
    } else if (speakers_[it->second].gender != r.gender) {
      throw DataError("speaker " + r.speaker_id + " has conflicting genders");
    }
    speakers_[it->second].record_indices.push_back(i);
  }
}

std::vector<const SpeakerGroup *> EmbeddingDataset::SpeakersOfGender(
    Gender g) const {
  std::vector<const SpeakerGroup *> out;
  for (const auto &s : speakers_)
    if (s.gender == g) out.push_back(&s);
  return out;
}

std::vector<EmbeddingVector> EmbeddingDataset::EmbeddingsOfGender(
    Gender g) const {
  std::vector<EmbeddingVector> out;
  for (const auto &r : records_)
    if (r.gender == g) out.push_back(r.embedding);
  return out;
}

std::vector<EmbeddingVector> EmbeddingDataset::AllEmbeddings() const {
  std::vector<EmbeddingVector> out;
  out.reserve(records_.size());
  for (const auto &r : records_) out.push_back(r.embedding);
  return out;
}

}  // namespace anonvoice
