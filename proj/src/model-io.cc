// src/model-io.cc

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

#include "anonvoice/model-io.h"

#include <sodium.h>

#include <bit>
#include <cstdint>
#include <limits>

#include "anonvoice/errors.h"

namespace anonvoice {

namespace {

constexpr int kVariant = sodium_base64_VARIANT_ORIGINAL;

Matrix MatrixFromJson(const nlohmann::json &j) {
  std::size_t rows = j.at("rows").get<std::size_t>();
  std::size_t cols = j.at("cols").get<std::size_t>();
  Matrix m(rows, cols);
  m.MutableData() = DecodeDoubles(j.at("data").get<std::string>(), rows * cols);
  return m;
}

nlohmann::ordered_json MatrixToJson(const Matrix &m) {
  nlohmann::ordered_json j;
  j["rows"] = m.Rows();
  j["cols"] = m.Cols();
  j["data"] = EncodeDoubles(m.Data());
  return j;
}

}  // namespace

std::string EncodeDoubles(std::span<const double> values) {
  if (sodium_init() < 0) throw NumericalError("libsodium failed to initialize");
  std::vector<unsigned char> bytes(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); i++) {
    std::uint64_t x = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; b++) bytes[8 * i + b] = (x >> (8 * b)) & 0xff;
  }
  std::string out(sodium_base64_ENCODED_LEN(bytes.size(), kVariant), '\0');
  sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(),
                    kVariant);
  out.resize(out.size() - 1);  // drop the terminating NUL
  return out;
}

std::vector<double> DecodeDoubles(const std::string &b64,
                                  std::size_t expected) {
  if (sodium_init() < 0) throw NumericalError("libsodium failed to initialize");
  std::vector<unsigned char> bytes(b64.size());
  std::size_t len = 0;
  if (sodium_base642bin(bytes.data(), bytes.size(), b64.data(), b64.size(),
                        nullptr, &len, nullptr, kVariant) != 0 ||
      len % 8 != 0)
    throw DataError("malformed base64 float array");
  std::size_t count = len / 8;
  if (expected != std::numeric_limits<std::size_t>::max() && count != expected)
    throw DataError("float array has " + std::to_string(count) +
                    " values, expected " + std::to_string(expected));
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; i++) {
    std::uint64_t x = 0;
    for (int b = 7; b >= 0; b--) x = (x << 8) | bytes[8 * i + b];
    out[i] = std::bit_cast<double>(x);
  }
  return out;
}

nlohmann::ordered_json PcaToJson(const PcaModel &pca) {
  nlohmann::ordered_json j;
  j["input_dim"] = pca.InputDim();
  j["num_components"] = pca.NumComponents();
  j["retained_fraction"] = pca.retained_fraction;
  j["total_variance"] = EncodeDoubles(std::span(&pca.total_variance, 1));
  j["mean"] = EncodeDoubles(pca.mean);
  j["components"] = MatrixToJson(pca.components);
  j["explained_variance"] = EncodeDoubles(pca.explained_variance);
  j["component_mean"] = EncodeDoubles(pca.component_mean);
  j["component_std"] = EncodeDoubles(pca.component_std);
  return j;
}

PcaModel PcaFromJson(const nlohmann::json &j) {
  try {
    PcaModel pca;
    std::size_t d = j.at("input_dim").get<std::size_t>();
    std::size_t m = j.at("num_components").get<std::size_t>();
    pca.retained_fraction = j.at("retained_fraction").get<double>();
    pca.total_variance =
        DecodeDoubles(j.at("total_variance").get<std::string>(), 1)[0];
    pca.mean = DecodeDoubles(j.at("mean").get<std::string>(), d);
    pca.components = MatrixFromJson(j.at("components"));
    if (pca.components.Rows() != m || pca.components.Cols() != d)
      throw DataError("PCA components have the wrong shape");
    pca.explained_variance =
        DecodeDoubles(j.at("explained_variance").get<std::string>(), m);
    pca.component_mean =
        DecodeDoubles(j.at("component_mean").get<std::string>(), m);
    pca.component_std =
        DecodeDoubles(j.at("component_std").get<std::string>(), m);
    return pca;
  } catch (const nlohmann::json::exception &e) {
    throw DataError(std::string("malformed PCA model: ") + e.what());
  }
}

nlohmann::ordered_json GmmToJson(const GmmModel &gmm) {
  nlohmann::ordered_json j;
  j["num_components"] = gmm.NumComponents();
  j["dim"] = gmm.Dim();
  double ridge = gmm.Ridge();
  j["ridge"] = EncodeDoubles(std::span(&ridge, 1));
  j["weights"] = EncodeDoubles(gmm.Weights());
  auto means = nlohmann::ordered_json::array();
  auto covs = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < gmm.NumComponents(); c++) {
    means.push_back(EncodeDoubles(gmm.Means()[c]));
    covs.push_back(MatrixToJson(gmm.Covariances()[c]));
  }
  j["means"] = std::move(means);
  j["covariances"] = std::move(covs);
  return j;
}

GmmModel GmmFromJson(const nlohmann::json &j) {
  try {
    std::size_t k = j.at("num_components").get<std::size_t>();
    std::size_t m = j.at("dim").get<std::size_t>();
    double ridge = DecodeDoubles(j.at("ridge").get<std::string>(), 1)[0];
    auto weights = DecodeDoubles(j.at("weights").get<std::string>(), k);
    std::vector<std::vector<double>> means;
    std::vector<Matrix> covs;
    for (std::size_t c = 0; c < k; c++) {
      means.push_back(DecodeDoubles(j.at("means").at(c).get<std::string>(), m));
      covs.push_back(MatrixFromJson(j.at("covariances").at(c)));
    }
    return GmmModel(std::move(weights), std::move(means), std::move(covs),
                    ridge);
  } catch (const nlohmann::json::exception &e) {
    throw DataError(std::string("malformed GMM model: ") + e.what());
  }
}

}  // namespace anonvoice
