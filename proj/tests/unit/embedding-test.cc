// tests/unit/embedding-test.cc

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
#include <limits>
#include <sstream>

#include "anonvoice/dataset-io.h"
#include "anonvoice/embedding.h"
#include "anonvoice/errors.h"
#include "doctest.h"
#include "test-util.h"

using namespace anonvoice;

namespace {

EmbeddingVector V(std::vector<double> v) { return EmbeddingVector(std::move(v)); }

std::vector<SpeakerRecord> TenRecords(std::size_t d) {
  DerivedRng rng = SeededRng("test/records", 5);
  std::vector<SpeakerRecord> out;
  for (int s = 0; s < 5; s++)
    for (int u = 0; u < 2; u++)
      out.push_back({"spk" + std::to_string(s),
                     s % 2 ? Gender::kFemale : Gender::kMale,
                     "utt" + std::to_string(u), testutil::RandomUnit(rng, d)});
  return out;
}

}  // namespace

TEST_CASE("l2 normalize") {
  auto v = L2Normalize(V({3, 4}));
  CHECK(v[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(v.IsNormalized());

  DerivedRng rng = SeededRng("test/unit", 1);
  auto u = testutil::RandomUnit(rng, 64);
  auto w = L2Normalize(u);
  for (std::size_t i = 0; i < 64; i++) CHECK(std::abs(w[i] - u[i]) < 1e-12);

  CHECK_THROWS_AS(L2Normalize(V({0, 0})), NumericalError);
}

TEST_CASE("cosine similarity") {
  CHECK(CosineSimilarity(V({1, 0}), V({1, 0})) == 1.0);
  CHECK(CosineSimilarity(V({1, 0}), V({0, 1})) == 0.0);
  CHECK(std::abs(CosineSimilarity(V({1, 1}), V({1, 0})) - 0.70710678118654752) <
        1e-9);
  CHECK_THROWS_AS(CosineSimilarity(V({1, 0}), V({1, 0, 0})), DataError);
  CHECK(CosineSimilarity(V({2, 2}), V({3, 3})) <= 1.0);
}

TEST_CASE("centroid") {
  std::vector<EmbeddingVector> two = {V({1, 0}), V({0, 1})};
  auto c = Centroid(two);
  CHECK(c[0] == 0.5);
  CHECK(c[1] == 0.5);
  std::vector<EmbeddingVector> one = {V({0.25, -3})};
  CHECK(Centroid(one) == one[0]);
  CHECK_THROWS(Centroid(std::vector<EmbeddingVector>{}));

  // 100 draws of N(mu, 0.01 I): the mean sits within 0.05 of mu everywhere
  // (per-coordinate std of the mean is 0.01).
  DerivedRng rng = SeededRng("test/centroid", 3);
  const std::size_t d = 32;
  std::vector<double> mu = testutil::Normals(rng, d);
  std::vector<EmbeddingVector> xs;
  for (int i = 0; i < 100; i++) {
    auto x = testutil::Normals(rng, d, 0.1);
    for (std::size_t k = 0; k < d; k++) x[k] += mu[k];
    xs.push_back(V(x));
  }
  auto m = Centroid(xs);
  for (std::size_t k = 0; k < d; k++) CHECK(std::abs(m[k] - mu[k]) < 0.05);
}

TEST_CASE("non-finite values rejected") {
  CHECK_THROWS_AS(V({1, std::nan("")}), DataError);
  CHECK_THROWS_AS(V({std::numeric_limits<double>::infinity()}), DataError);
}

TEST_CASE("gender tags") {
  CHECK(GenderTag(Gender::kMale) == "m");
  CHECK(ParseGender("f") == Gender::kFemale);
  CHECK_THROWS_AS(ParseGender("x"), DataError);
}

TEST_CASE("dataset validation") {
  CHECK_THROWS_AS(EmbeddingDataset{std::vector<SpeakerRecord>{}}, DataError);

  auto recs = TenRecords(256);
  recs[3].embedding = EmbeddingVector(std::vector<double>(255, 0.1));
  CHECK_THROWS_AS(EmbeddingDataset{recs}, DataError);

  recs = TenRecords(8);
  recs[1].utterance_id = recs[0].utterance_id;
  CHECK_THROWS_AS(EmbeddingDataset{recs}, DataError);

  recs = TenRecords(8);
  recs[1].gender = Gender::kFemale;  // spk0 is male in record 0
  CHECK_THROWS_AS(EmbeddingDataset{recs}, DataError);
}

TEST_CASE("dataset grouping") {
  EmbeddingDataset ds(TenRecords(8));
  CHECK(ds.Dim() == 8);
  CHECK(ds.Size() == 10);
  REQUIRE(ds.Speakers().size() == 5);
  CHECK(ds.Speakers()[2].speaker_id == "spk2");
  CHECK(ds.Speakers()[2].record_indices == std::vector<std::size_t>{4, 5});
  CHECK(ds.SpeakersOfGender(Gender::kMale).size() == 3);
  CHECK(ds.SpeakersOfGender(Gender::kFemale).size() == 2);
  CHECK(ds.EmbeddingsOfGender(Gender::kFemale).size() == 4);
  CHECK(ds.AllEmbeddings().size() == 10);
}

TEST_CASE("dataset round trip, both formats") {
  EmbeddingDataset ds(TenRecords(256));
  testutil::TempDir dir("embedding");
  for (const char *name : {"a.jsonl", "a.avec"}) {
    SaveDataset(ds, dir / name);
    EmbeddingDataset back = LoadDataset(dir / name);
    CHECK(back == ds);
  }
  CHECK_THROWS_AS(FormatFromPath("x.csv"), ConfigError);
  CHECK_THROWS_AS(LoadDataset(dir / "missing.avec"), DataError);
}

// The two-record example documented in docs/formats.md.
TEST_CASE("documented jsonl example") {
  std::istringstream in(
      "{\"speaker_id\":\"spk0000\",\"gender\":\"m\",\"utterance_id\":\"utt000\","
      "\"embedding\":[0.6,0.8,0.0]}\n"
      "{\"speaker_id\":\"spk0001\",\"gender\":\"f\",\"utterance_id\":\"utt000\","
      "\"embedding\":[0.0,0.0,1.0]}\n");
  EmbeddingDataset ds = ReadDataset(in, DatasetFormat::kJsonLines);
  CHECK(ds.Size() == 2);
  CHECK(ds.Dim() == 3);
  CHECK(ds.Record(1).gender == Gender::kFemale);
  CHECK(ds.Record(0).embedding[1] == 0.8);

  std::ostringstream out;
  WriteDataset(ds, out, DatasetFormat::kJsonLines);
  CHECK(out.str() == in.str());
}

TEST_CASE("documented binary example") {
  std::vector<SpeakerRecord> recs = {
      {"spk0000", Gender::kMale, "utt000", V({0.6, 0.8, 0.0})},
      {"spk0001", Gender::kFemale, "utt000", V({0.0, 0.0, 1.0})}};
  std::ostringstream out;
  WriteDataset(EmbeddingDataset(recs), out, DatasetFormat::kBinary);
  std::string bytes = out.str();
  // header 4+1+4, per record 4+7 + 4+6 + 1 + 3*8 = 46
  CHECK(bytes.size() == 9 + 2 * 46);
  CHECK(bytes.substr(0, 4) == "AVEC");
  CHECK(bytes[4] == 1);
  CHECK(bytes.substr(5, 4) == std::string("\x03\x00\x00\x00", 4));
  CHECK(bytes.substr(9, 4) == std::string("\x07\x00\x00\x00", 4));
  CHECK(bytes.substr(13, 7) == "spk0000");
  CHECK(bytes[30] == 'm');
  // 0.6 as little-endian IEEE-754 double
  CHECK(bytes.substr(31, 8) == std::string("\x33\x33\x33\x33\x33\x33\xe3\x3f", 8));
}

TEST_CASE("malformed input is a data error") {
  std::istringstream bad_json("{\"speaker_id\":\"a\",\"gender\":\"m\"}\n");
  CHECK_THROWS_AS(ReadDataset(bad_json, DatasetFormat::kJsonLines), DataError);
  std::istringstream not_json("hello\n");
  CHECK_THROWS_AS(ReadDataset(not_json, DatasetFormat::kJsonLines), DataError);
  std::istringstream bad_magic("NOPE\x01");
  CHECK_THROWS_AS(ReadDataset(bad_magic, DatasetFormat::kBinary), DataError);

  std::ostringstream out;
  WriteDataset(EmbeddingDataset(TenRecords(4)), out, DatasetFormat::kBinary);
  std::string trunc = out.str().substr(0, out.str().size() - 3);
  std::istringstream in(trunc);
  CHECK_THROWS_AS(ReadDataset(in, DatasetFormat::kBinary), DataError);
}
