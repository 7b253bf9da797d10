// include/anonvoice/dataset-io.h

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

// Embedding dataset files. Two formats, both documented in docs/formats.md:
//
//   .jsonl  one JSON object per line:
//           {"speaker_id":..,"gender":"m"|"f","utterance_id":..,"embedding":[..]}
//   .avec   "AVEC", version byte 1, u32le dimension, then per record
//           u32le-prefixed speaker id, u32le-prefixed utterance id,
//           gender byte ('m' or 'f'), dimension x f64le.

#ifndef ANONVOICE_DATASET_IO_H_
#define ANONVOICE_DATASET_IO_H_

#include <iosfwd>
#include <string>

#include "anonvoice/embedding.h"

namespace anonvoice {

enum class DatasetFormat { kJsonLines, kBinary };

/// Picks the format from the file extension (.jsonl or .avec).
DatasetFormat FormatFromPath(const std::string &path);

EmbeddingDataset ReadDataset(std::istream &in, DatasetFormat format);
void WriteDataset(const EmbeddingDataset &dataset, std::ostream &out,
                  DatasetFormat format);

EmbeddingDataset LoadDataset(const std::string &path, DatasetFormat format);
EmbeddingDataset LoadDataset(const std::string &path);
void SaveDataset(const EmbeddingDataset &dataset, const std::string &path,
                 DatasetFormat format);
void SaveDataset(const EmbeddingDataset &dataset, const std::string &path);

}  // namespace anonvoice

#endif  // ANONVOICE_DATASET_IO_H_
