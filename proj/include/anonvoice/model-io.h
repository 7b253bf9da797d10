// include/anonvoice/model-io.h

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

// JSON encoding of PCA and GMM parameters. Real-valued arrays are stored as
// base64 of their little-endian IEEE-754 doubles, so values survive a
// round trip bit-exactly.

#ifndef ANONVOICE_MODEL_IO_H_
#define ANONVOICE_MODEL_IO_H_

#include <span>
#include <string>
#include <vector>

#include "anonvoice/gmm.h"
#include "anonvoice/pca.h"
#include "json.hpp"

namespace anonvoice {

inline constexpr int kModelFileVersion = 1;

std::string EncodeDoubles(std::span<const double> values);
/// Throws DataError on malformed base64 or if the element count differs
/// from `expected` (pass SIZE_MAX to accept any count).
std::vector<double> DecodeDoubles(const std::string &b64,
                                  std::size_t expected);

nlohmann::ordered_json PcaToJson(const PcaModel &pca);
PcaModel PcaFromJson(const nlohmann::json &j);

nlohmann::ordered_json GmmToJson(const GmmModel &gmm);
GmmModel GmmFromJson(const nlohmann::json &j);

}  // namespace anonvoice

#endif  // ANONVOICE_MODEL_IO_H_
