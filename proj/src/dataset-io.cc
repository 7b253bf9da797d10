// src/dataset-io.cc

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

#include "anonvoice/dataset-io.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "anonvoice/errors.h"
#include "json.hpp"

namespace anonvoice {

namespace {

constexpr char kMagic[4] = {'A', 'V', 'E', 'C'};
constexpr std::uint8_t kBinaryVersion = 1;

void PutU32(std::ostream &out, std::uint32_t x) {
  char b[4];
  for (int i = 0; i < 4; i++) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void PutF64(std::ostream &out, double v) {
  std::uint64_t x = std::bit_cast<std::uint64_t>(v);
  char b[8];
  for (int i = 0; i < 8; i++) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void PutString(std::ostream &out, const std::string &s) {
  PutU32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void ReadExact(std::istream &in, char *buf, std::size_t n) {
  in.read(buf, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw DataError("truncated binary dataset");
}

std::uint32_t GetU32(std::istream &in) {
  unsigned char b[4];
  ReadExact(in, reinterpret_cast<char *>(b), 4);
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
         std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
}

double GetF64(std::istream &in) {
  unsigned char b[8];
  ReadExact(in, reinterpret_cast<char *>(b), 8);
  std::uint64_t x = 0;
  for (int i = 7; i >= 0; i--) x = (x << 8) | b[i];
  return std::bit_cast<double>(x);
}

std::string GetString(std::istream &in) {
  std::uint32_t n = GetU32(in);
  std::string s(n, '\0');
  if (n > 0) ReadExact(in, s.data(), n);
  return s;
}

EmbeddingDataset ReadBinary(std::istream &in) {
  char magic[4];
  ReadExact(in, magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw DataError("not an AVEC dataset (bad magic)");
  char version;
  ReadExact(in, &version, 1);
  if (static_cast<std::uint8_t>(version) != kBinaryVersion)
    throw DataError("unsupported AVEC version " +
                    std::to_string(static_cast<std::uint8_t>(version)));
  std::uint32_t dim = GetU32(in);
  if (dim == 0) throw DataError("AVEC header declares dimension 0");

  std::vector<SpeakerRecord> records;
  while (in.peek() != std::char_traits<char>::eof()) {
    SpeakerRecord r;
    r.speaker_id = GetString(in);
    r.utterance_id = GetString(in);
    char g;
    ReadExact(in, &g, 1);
    r.gender = ParseGender(std::string_view(&g, 1));
    std::vector<double> values(dim);
    for (auto &v : values) v = GetF64(in);
    r.embedding = EmbeddingVector(std::move(values));
    records.push_back(std::move(r));
  }
  return EmbeddingDataset(std::move(records));
}

void WriteBinary(const EmbeddingDataset &ds, std::ostream &out) {
  out.write(kMagic, 4);
  out.put(static_cast<char>(kBinaryVersion));
  PutU32(out, static_cast<std::uint32_t>(ds.Dim()));
  for (const auto &r : ds.Records()) {
    PutString(out, r.speaker_id);
    PutString(out, r.utterance_id);
    out.put(GenderTag(r.gender)[0]);
    for (double v : r.embedding.Values()) PutF64(out, v);
  }
}

EmbeddingDataset ReadJsonLines(std::istream &in) {
  std::vector<SpeakerRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      SpeakerRecord r;
      r.speaker_id = j.at("speaker_id").get<std::string>();
      r.gender = ParseGender(j.at("gender").get<std::string>());
      r.utterance_id = j.at("utterance_id").get<std::string>();
      r.embedding =
          EmbeddingVector(j.at("embedding").get<std::vector<double>>());
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception &e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return EmbeddingDataset(std::move(records));
}

void WriteJsonLines(const EmbeddingDataset &ds, std::ostream &out) {
  for (const auto &r : ds.Records()) {
    nlohmann::ordered_json j;
    j["speaker_id"] = r.speaker_id;
    j["gender"] = GenderTag(r.gender);
    j["utterance_id"] = r.utterance_id;
    j["embedding"] = std::vector<double>(r.embedding.Values().begin(),
                                         r.embedding.Values().end());
    out << j.dump() << '\n';
  }
}

}  // namespace

DatasetFormat FormatFromPath(const std::string &path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) ==
               0;
  };
  if (ends_with(".jsonl")) return DatasetFormat::kJsonLines;
  if (ends_with(".avec")) return DatasetFormat::kBinary;
  throw ConfigError("cannot infer dataset format of '" + path +
                    "' (expected .jsonl or .avec)");
}

EmbeddingDataset ReadDataset(std::istream &in, DatasetFormat format) {
  return format == DatasetFormat::kBinary ? ReadBinary(in) : ReadJsonLines(in);
}

void WriteDataset(const EmbeddingDataset &dataset, std::ostream &out,
                  DatasetFormat format) {
  if (format == DatasetFormat::kBinary)
    WriteBinary(dataset, out);
  else
    WriteJsonLines(dataset, out);
}

EmbeddingDataset LoadDataset(const std::string &path, DatasetFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset " + path);
  return ReadDataset(in, format);
}

EmbeddingDataset LoadDataset(const std::string &path) {
  return LoadDataset(path, FormatFromPath(path));
}

void SaveDataset(const EmbeddingDataset &dataset, const std::string &path,
                 DatasetFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write dataset " + path);
  WriteDataset(dataset, out, format);
  if (!out) throw DataError("write failed for " + path);
}

void SaveDataset(const EmbeddingDataset &dataset, const std::string &path) {
  SaveDataset(dataset, path, FormatFromPath(path));
}

}  // namespace anonvoice
