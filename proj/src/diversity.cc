// src/diversity.cc

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

#include "anonvoice/diversity.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "anonvoice/errors.h"
#include "anonvoice/parallel.h"

namespace anonvoice {

namespace {

constexpr std::size_t kModeBins = 50;
constexpr std::size_t kModeSmoothing = 5;
constexpr double kModeMinHeight = 0.05;
constexpr double kModeValleyRatio = 0.8;

double Mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

Histogram MakeHistogram(std::span<const double> values, double low,
                        double high, std::size_t bins) {
  if (bins == 0 || !(high > low)) throw ConfigError("bad histogram range");
  Histogram h{low, high, std::vector<std::size_t>(bins, 0)};
  for (double v : values) {
    double pos = (v - low) / (high - low) * static_cast<double>(bins);
    std::size_t b = pos <= 0.0 ? 0 : static_cast<std::size_t>(pos);
    h.counts[std::min(b, bins - 1)]++;
  }
  return h;
}

std::size_t CountModes(std::span<const double> values) {
  if (values.size() < 2) return values.size();
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  if (*lo_it == *hi_it) return 1;
  Histogram h = MakeHistogram(values, *lo_it, *hi_it, kModeBins);

  std::vector<double> smooth(kModeBins, 0.0);
  const std::size_t half = kModeSmoothing / 2;
  for (std::size_t b = 0; b < kModeBins; b++) {
    std::size_t from = b >= half ? b - half : 0;
    std::size_t to = std::min(kModeBins - 1, b + half);
    double s = 0.0;
    for (std::size_t k = from; k <= to; k++) s += static_cast<double>(h.counts[k]);
    smooth[b] = s / static_cast<double>(to - from + 1);
  }
  double tallest = *std::max_element(smooth.begin(), smooth.end());

  std::vector<std::size_t> peaks;
  for (std::size_t b = 0; b < kModeBins; b++) {
    double left = b > 0 ? smooth[b - 1] : -1.0;
    double right = b + 1 < kModeBins ? smooth[b + 1] : -1.0;
    if (smooth[b] > left && smooth[b] >= right &&
        smooth[b] >= kModeMinHeight * tallest)
      peaks.push_back(b);
  }

  std::vector<std::size_t> kept;
  for (std::size_t p : peaks) {
    if (kept.empty()) {
      kept.push_back(p);
      continue;
    }
    std::size_t q = kept.back();
    double valley = *std::min_element(smooth.begin() + q, smooth.begin() + p + 1);
    if (valley <= kModeValleyRatio * std::min(smooth[p], smooth[q]))
      kept.push_back(p);
    else if (smooth[p] > smooth[q])
      kept.back() = p;
  }
  return kept.size();
}

double BimodalityCoefficient(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  if (values.size() < 4) return 0.0;
  double mean = Mean(values), m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : values) {
    double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) return 0.0;
  double skew = m3 / std::pow(m2, 1.5);
  double excess = m4 / (m2 * m2) - 3.0;
  return (skew * skew + 1.0) /
         (excess + 3.0 * (n - 1.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0)));
}

ScoreSetSummary SummarizeScores(std::string name, TrialScores scores) {
  ScoreSetSummary s;
  s.name = std::move(name);
  s.roc = ComputeRoc(scores.target, scores.nontarget);
  s.eer = Eer(s.roc);
  s.auc = Auc(s.roc);
  s.nontarget_modes = CountModes(scores.nontarget);
  s.bimodality_coefficient = BimodalityCoefficient(scores.nontarget);
  s.scores = std::move(scores);
  return s;
}

std::vector<EnrolledIdentity> GeneratedIdentities(
    const IdentityGenerator &generator, GenerationMethod method,
    const DiversityConfig &config) {
  if (config.enroll == 0 || config.enroll >= config.utterances)
    throw ConfigError("diversity: need 0 < enroll < utterances");
  if (config.identities < 2) throw ConfigError("diversity: need 2 identities");
  std::vector<EnrolledIdentity> out(config.identities);
  const std::string method_name(MethodName(method));
  ParallelFor(config.identities, [&](std::size_t i) {
    Gender g = i % 2 == 0 ? Gender::kMale : Gender::kFemale;
    DerivedRng rng = SeededRng("anonvoice/diversity/secret",
                               ChildSeed(config.seed, method_name, i));
    std::vector<std::uint8_t> bytes;
    for (int w = 0; w < 4; w++) {
      std::uint64_t x = rng.NextWord();
      for (int b = 0; b < 8; b++) bytes.push_back((x >> (8 * b)) & 0xff);
    }
    GeneratedIdentity id = Generate(generator, method, g, Secret(bytes));
    auto utts = SynthesizeUtterances(config.channel, id.embedding,
                                     config.enroll + config.trials);
    char label[32];
    std::snprintf(label, sizeof(label), "%s%04zu", "gen", i);
    EnrolledIdentity &e = out[i];
    e.tmpl = Enroll(label, std::span(utts).first(config.enroll));
    e.gender = g;
    e.trials.assign(utts.begin() + static_cast<std::ptrdiff_t>(config.enroll),
                    utts.end());
  });
  return out;
}

DiversityResult EvaluateDiversity(const EmbeddingDataset &natural,
                                  const IdentityGenerator &generator,
                                  std::span<const GenerationMethod> methods,
                                  const DiversityConfig &config) {
  if (config.enroll == 0 || config.enroll >= config.utterances)
    throw ConfigError("diversity: need 0 < enroll < utterances");
  if (config.trials == 0 || config.enroll + config.trials > config.utterances)
    throw ConfigError("diversity: need 0 < trials <= utterances - enroll");

  DiversityResult result;
  auto natural_ids = EnrollSpeakers(natural, config.enroll, config.trials);
  result.natural = SummarizeScores("natural", ScoreAllTrials(natural_ids));
  for (const auto &p : StandardPolicies())
    result.natural_thresholds.emplace_back(p, ThresholdAt(result.natural.roc, p));
  for (GenerationMethod m : methods) {
    auto ids = GeneratedIdentities(generator, m, config);
    result.methods.push_back(
        SummarizeScores(std::string(MethodName(m)), ScoreAllTrials(ids)));
  }
  return result;
}

nlohmann::ordered_json ScoreSetJson(
    const ScoreSetSummary &s, double natural_auc,
    std::span<const std::pair<ThresholdPolicy, double>> natural_thresholds) {
  nlohmann::ordered_json j;
  j["schema"] = "anonvoice-diversity-summary";
  j["schema_version"] = 1;
  j["name"] = s.name;
  j["n_target"] = s.roc.n_target;
  j["n_nontarget"] = s.roc.n_nontarget;
  j["eer"] = s.eer.rate;
  j["eer_threshold"] = s.eer.threshold;
  j["auc"] = s.auc;
  j["auc_gap_vs_natural"] = natural_auc - s.auc;
  j["target_mean"] = Mean(s.scores.target);
  j["nontarget_mean"] = Mean(s.scores.nontarget);
  j["nontarget_same_gender_mean"] = Mean(s.scores.nontarget_same_gender);
  j["nontarget_cross_gender_mean"] = Mean(s.scores.nontarget_cross_gender);
  j["nontarget_modes"] = s.nontarget_modes;
  j["nontarget_bimodal"] = s.nontarget_modes >= 2;
  j["bimodality_coefficient"] = s.bimodality_coefficient;
  nlohmann::ordered_json own = nlohmann::ordered_json::object();
  for (const auto &p : StandardPolicies()) own[p.Name()] = ThresholdAt(s.roc, p);
  j["thresholds"] = std::move(own);
  nlohmann::ordered_json ops = nlohmann::ordered_json::object();
  for (const auto &[policy, threshold] : natural_thresholds) {
    OperatingPoint op = RatesAt(s.roc, threshold);
    ops[policy.Name()] = {
        {"threshold", threshold}, {"fpr", op.fpr}, {"tpr", op.tpr}};
  }
  j["at_natural_thresholds"] = std::move(ops);
  return j;
}

void WriteHistogramCsv(const TrialScores &scores, std::ostream &out,
                       std::size_t bins) {
  Histogram t = MakeHistogram(scores.target, -1.0, 1.0, bins);
  Histogram n = MakeHistogram(scores.nontarget, -1.0, 1.0, bins);
  Histogram ns = MakeHistogram(scores.nontarget_same_gender, -1.0, 1.0, bins);
  Histogram nc = MakeHistogram(scores.nontarget_cross_gender, -1.0, 1.0, bins);
  std::ostringstream os;
  os.precision(17);
  os << "bin_low,bin_high,target,nontarget,nontarget_same_gender,"
        "nontarget_cross_gender\n";
  for (std::size_t b = 0; b < bins; b++) {
    double lo = t.low + t.BinWidth() * static_cast<double>(b);
    os << lo << ',' << lo + t.BinWidth() << ',' << t.counts[b] << ','
       << n.counts[b] << ',' << ns.counts[b] << ',' << nc.counts[b] << '\n';
  }
  out << os.str();
}

}  // namespace anonvoice
