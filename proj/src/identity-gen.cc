// src/identity-gen.cc

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

#include "anonvoice/identity-gen.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "anonvoice/dataset-io.h"
#include "anonvoice/errors.h"
#include "anonvoice/model-io.h"

namespace anonvoice {

namespace fs = std::filesystem;

namespace {

struct MethodInfo {
  GenerationMethod method;
  std::string_view name;
};

constexpr MethodInfo kMethodNames[] = {
    {GenerationMethod::kRandom, "random"},
    {GenerationMethod::kPcaRandom, "pca_random"},
    {GenerationMethod::kMeanPoolSubset, "mean_pool_subset"},
    {GenerationMethod::kPcaGmm, "pca_gmm"},
    {GenerationMethod::kPoolSelection, "pool_selection"},
    {GenerationMethod::kTrainingSelection, "training_selection"},
};

const GenderAssets &RequireAssets(const IdentityGenerator &gen, Gender g,
                                  GenerationMethod m) {
  const GenderAssets *a = gen.Assets(g);
  if (!a)
    throw DataError(std::string(MethodName(m)) +
                    ": generator has no fitted assets for gender '" +
                    std::string(GenderTag(g)) + "'");
  return *a;
}

EmbeddingVector MeanOfSubset(const std::vector<EmbeddingVector> &pool,
                             DerivedRng &rng) {
  const std::size_t p = pool.size();
  if (p < kMeanPoolSubsetSize)
    throw DataError("mean_pool_subset needs at least " +
                    std::to_string(kMeanPoolSubsetSize) +
                    " pool entries, have " + std::to_string(p));
  // Partial Fisher-Yates: the first ten slots end up a uniform draw without
  // replacement.
  std::vector<std::size_t> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < kMeanPoolSubsetSize; i++) {
    std::size_t j = i + static_cast<std::size_t>(rng.UniformIndex(p - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(kMeanPoolSubsetSize);
  // Summation order is fixed so the result depends on the subset only.
  std::sort(idx.begin(), idx.end());
  std::vector<EmbeddingVector> chosen;
  for (std::size_t i : idx) chosen.push_back(pool[i]);
  return Centroid(chosen);
}

}  // namespace

std::string_view MethodName(GenerationMethod m) {
  for (const auto &info : kMethodNames)
    if (info.method == m) return info.name;
  return "unknown";
}

GenerationMethod ParseMethod(std::string_view name) {
  for (const auto &info : kMethodNames)
    if (info.name == name) return info.method;
  throw ConfigError("unknown generation method '" + std::string(name) + "'");
}

bool RequiresGender(GenerationMethod m) {
  return m != GenerationMethod::kRandom;
}

bool UsesGenderAssets(GenerationMethod m) {
  return m != GenerationMethod::kRandom &&
         m != GenerationMethod::kTrainingSelection;
}

std::string MethodContext(GenerationMethod m) {
  return "anonvoice/v1/" + std::string(MethodName(m));
}

IdentityGenerator::IdentityGenerator(std::size_t dim,
                                     std::map<Gender, GenderAssets> assets,
                                     std::vector<EmbeddingVector> training)
    : dim_(dim), assets_(std::move(assets)), training_voices_(std::move(training)) {
  for (const auto &v : training_voices_)
    if (v.Dim() != dim_)
      throw DataError("training voice dimension differs from generator");
}

const GenderAssets *IdentityGenerator::Assets(Gender g) const {
  auto it = assets_.find(g);
  return it == assets_.end() ? nullptr : &it->second;
}

IdentityGenerator FitGenerator(const EmbeddingDataset &dev,
                               const EmbeddingDataset &training_voices,
                               const GeneratorConfig &config) {
  if (training_voices.Dim() != dev.Dim())
    throw DataError("training voices have dimension " +
                    std::to_string(training_voices.Dim()) +
                    ", development data " + std::to_string(dev.Dim()));
  std::map<Gender, GenderAssets> assets;
  std::vector<std::string> warnings;
  for (Gender g : kGenders) {
    std::vector<EmbeddingVector> pool = dev.EmbeddingsOfGender(g);
    if (pool.empty()) {
      warnings.push_back("no development data for gender '" +
                         std::string(GenderTag(g)) + "'");
      continue;
    }
    GenderAssets a;
    a.pca = PcaFit(pool, config.pca_retain);
    Matrix projected = PcaTransformAll(a.pca, pool);
    GmmFitOptions opt = config.gmm;
    if (opt.components > pool.size()) {
      warnings.push_back("gender '" + std::string(GenderTag(g)) +
                         "': GMM components reduced from " +
                         std::to_string(opt.components) + " to " +
                         std::to_string(pool.size()));
      opt.components = pool.size();
    }
    opt.seed = ChildSeed(config.gmm.seed, "gmm-gender",
                         static_cast<std::uint64_t>(g));
    a.gmm = GmmFit(projected, opt).model;
    a.pool = std::move(pool);
    assets.emplace(g, std::move(a));
  }
  IdentityGenerator gen(dev.Dim(), std::move(assets),
                        training_voices.AllEmbeddings());
  gen.warnings = std::move(warnings);
  return gen;
}

GeneratedIdentity Generate(const IdentityGenerator &generator,
                           GenerationMethod method, std::optional<Gender> gender,
                           const Secret &secret) {
  if (RequiresGender(method) && !gender)
    throw ConfigError(std::string(MethodName(method)) + " requires a gender");

  GeneratedIdentity out;
  out.method = method;
  out.secret_digest = secret.Fingerprint();
  out.gender_used = RequiresGender(method) ? gender : std::nullopt;
  DerivedRng rng = DeriveRng(secret, MethodContext(method));

  switch (method) {
    case GenerationMethod::kRandom: {
      std::vector<double> v(generator.Dim());
      for (double &x : v) x = rng.Normal();
      out.embedding = L2Normalize(EmbeddingVector(std::move(v)));
      break;
    }
    case GenerationMethod::kPcaRandom: {
      const PcaModel &pca = RequireAssets(generator, *gender, method).pca;
      std::vector<double> z(pca.NumComponents());
      for (std::size_t k = 0; k < z.size(); k++)
        z[k] = pca.component_mean[k] + pca.component_std[k] * rng.Normal();
      out.embedding = L2Normalize(EmbeddingVector(PcaInverse(pca, z)));
      break;
    }
    case GenerationMethod::kMeanPoolSubset: {
      const auto &pool = RequireAssets(generator, *gender, method).pool;
      out.embedding = L2Normalize(MeanOfSubset(pool, rng));
      break;
    }
    case GenerationMethod::kPcaGmm: {
      const GenderAssets &a = RequireAssets(generator, *gender, method);
      std::vector<double> z = GmmSample(a.gmm, rng);
      out.embedding = L2Normalize(EmbeddingVector(PcaInverse(a.pca, z)));
      break;
    }
    case GenerationMethod::kPoolSelection: {
      const auto &pool = RequireAssets(generator, *gender, method).pool;
      if (pool.empty()) throw DataError("pool_selection: empty pool");
      out.embedding = L2Normalize(pool[rng.UniformIndex(pool.size())]);
      break;
    }
    case GenerationMethod::kTrainingSelection: {
      const auto &voices = generator.TrainingVoices();
      if (voices.empty())
        throw DataError("training_selection: empty training-voice set");
      out.embedding = L2Normalize(voices[rng.UniformIndex(voices.size())]);
      break;
    }
  }
  return out;
}

void SaveGenerator(const IdentityGenerator &generator,
                   const GeneratorConfig &config, const std::string &dev_path,
                   const std::string &training_path, const std::string &path) {
  fs::path base = fs::absolute(fs::path(path)).parent_path();
  auto reference = [&](const std::string &p) {
    nlohmann::ordered_json j;
    j["path"] = fs::relative(fs::absolute(p), base).generic_string();
    j["sha256"] = HexDigest(FileSha256(p));
    return j;
  };

  nlohmann::ordered_json j;
  j["format"] = "anonvoice-models";
  j["version"] = kModelFileVersion;
  j["dimension"] = generator.Dim();
  j["config"] = {{"pca_retain", config.pca_retain},
                 {"gmm_components", config.gmm.components},
                 {"gmm_max_iters", config.gmm.max_iters},
                 {"gmm_tol", config.gmm.tol},
                 {"gmm_restarts", config.gmm.restarts},
                 {"gmm_ridge", config.gmm.ridge},
                 {"gmm_seed", config.gmm.seed}};
  nlohmann::ordered_json genders = nlohmann::ordered_json::object();
  for (Gender g : kGenders) {
    const GenderAssets *a = generator.Assets(g);
    if (!a) continue;
    genders[std::string(GenderTag(g))] = {{"pca", PcaToJson(a->pca)},
                                          {"gmm", GmmToJson(a->gmm)},
                                          {"pool_size", a->pool.size()}};
  }
  j["genders"] = std::move(genders);
  j["dev_dataset"] = reference(dev_path);
  j["training_dataset"] = reference(training_path);
  j["training_set_size"] = generator.TrainingSetSize();

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write model file " + path);
  out << j.dump(1) << '\n';
}

IdentityGenerator LoadGenerator(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw DataError("model file " + path + ": " + e.what());
  }
  if (!j.contains("version"))
    throw DataError("model file " + path + " has no version field");
  if (j["version"] != kModelFileVersion)
    throw DataError("unsupported model file version " + j["version"].dump());

  fs::path base = fs::absolute(fs::path(path)).parent_path();
  auto load_ref = [&](const char *key) {
    const auto &ref = j.at(key);
    fs::path p = ref.at("path").get<std::string>();
    if (p.is_relative()) p = base / p;
    std::string want = ref.at("sha256").get<std::string>();
    if (HexDigest(FileSha256(p.string())) != want)
      throw DataError(std::string(key) + " " + p.string() +
                      " does not match the hash recorded in " + path);
    return LoadDataset(p.string());
  };

  try {
    EmbeddingDataset dev = load_ref("dev_dataset");
    EmbeddingDataset training = load_ref("training_dataset");
    std::size_t dim = j.at("dimension").get<std::size_t>();
    if (dev.Dim() != dim || training.Dim() != dim)
      throw DataError("referenced datasets disagree with model dimension");
    std::map<Gender, GenderAssets> assets;
    for (const auto &[tag, entry] : j.at("genders").items()) {
      Gender g = ParseGender(tag);
      GenderAssets a;
      a.pca = PcaFromJson(entry.at("pca"));
      a.gmm = GmmFromJson(entry.at("gmm"));
      a.pool = dev.EmbeddingsOfGender(g);
      if (a.pool.size() != entry.at("pool_size").get<std::size_t>())
        throw DataError("pool size for gender '" + tag +
                        "' differs from the model file");
      assets.emplace(g, std::move(a));
    }
    return IdentityGenerator(dim, std::move(assets), training.AllEmbeddings());
  } catch (const nlohmann::json::exception &e) {
    throw DataError("model file " + path + ": " + e.what());
  }
}

}  // namespace anonvoice
