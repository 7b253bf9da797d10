// src/cli.cc

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

#include "anonvoice/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "anonvoice/attacks.h"
#include "anonvoice/channel-sim.h"
#include "anonvoice/dataset-io.h"
#include "anonvoice/diversity.h"
#include "anonvoice/errors.h"
#include "anonvoice/identity-gen.h"
#include "anonvoice/text-metrics.h"
#include "json.hpp"

namespace anonvoice {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Options shared by the experiment commands.

struct PopulationOptions {
  std::string path;  // empty: synthesize from params
  PopulationParams params;
};

struct GeneratorOptions {
  std::string models;  // empty: fit from synthetic dev/training sets
  PopulationParams dev;
  PopulationParams training;
  GeneratorConfig config;
};

GeneratorOptions DefaultGeneratorOptions() {
  GeneratorOptions o;
  o.dev.speakers = 100;
  o.dev.utterances_per_speaker = 5;
  o.dev.seed = 101;
  o.dev.id_prefix = "dev";
  o.training.speakers = 96;
  o.training.utterances_per_speaker = 1;
  o.training.seed = 202;
  o.training.id_prefix = "tts";
  return o;
}

// Unset paths appear as "" in config.resolved, so the checks accept empty.
const CLI::Validator kOptionalFile(
    [](std::string &v) {
      return v.empty() ? std::string() : CLI::ExistingFile(v);
    },
    "FILE");

std::string JoinComma(const std::vector<std::string> &v) {
  std::string out;
  for (const auto &s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

void AddSynthOptions(CLI::App *c, PopulationParams &p, const std::string &prefix,
                     bool with_counts) {
  if (with_counts) {
    c->add_option("--" + prefix + "speakers", p.speakers, "Number of speakers");
    c->add_option("--" + prefix + "utterances", p.utterances_per_speaker,
                  "Utterances per speaker");
  }
  c->add_option("--" + prefix + "sigma-b", p.between_speaker_spread,
                "Between-speaker spread (RMS norm)");
  c->add_option("--" + prefix + "sigma-w", p.within_speaker_spread,
                "Within-speaker spread (RMS norm)");
  c->add_option("--" + prefix + "seed", p.seed, "Synthesis seed");
}

void AddPopulationOptions(CLI::App *c, PopulationOptions &o, bool with_counts) {
  c->add_option("--population", o.path,
                "Natural population dataset (.jsonl or .avec); synthesized "
                "when omitted")
      ->check(kOptionalFile);
  AddSynthOptions(c, o.params, "pop-", with_counts);
  c->add_option("--dim", o.params.dimension, "Embedding dimension");
}

void AddGeneratorOptions(CLI::App *c, GeneratorOptions &o) {
  c->add_option("--models", o.models,
                "Generator model file from fit-models; fitted on synthetic "
                "data when omitted")
      ->check(kOptionalFile);
  AddSynthOptions(c, o.dev, "dev-", true);
  c->add_option("--training-voices", o.training.speakers,
                "Size of the synthetic training-voice set");
  c->add_option("--training-seed", o.training.seed, "Training-voice seed");
  c->add_option("--retain", o.config.pca_retain, "PCA retained variance");
  c->add_option("--components", o.config.gmm.components, "GMM components");
  c->add_option("--restarts", o.config.gmm.restarts, "GMM restarts");
  c->add_option("--max-iters", o.config.gmm.max_iters, "GMM EM iterations");
  c->add_option("--tol", o.config.gmm.tol, "GMM convergence tolerance");
  c->add_option("--ridge", o.config.gmm.ridge, "GMM covariance ridge");
  c->add_option("--gmm-seed", o.config.gmm.seed, "GMM seed");
}

void AddChannelOptions(CLI::App *c, SynthesisChannel &ch) {
  c->add_option("--sigma-c", ch.within_voice_spread,
                "Channel spread for private voices (RMS norm)");
  c->add_option("--channel-seed", ch.seed, "Channel seed");
}

EmbeddingDataset BuildPopulation(const PopulationOptions &o) {
  if (!o.path.empty()) return LoadDataset(o.path);
  return SynthPopulation(o.params).dataset;
}

IdentityGenerator BuildGenerator(const GeneratorOptions &o, std::size_t dim) {
  if (!o.models.empty()) {
    IdentityGenerator g = LoadGenerator(o.models);
    if (g.Dim() != dim)
      throw DataError("generator dimension " + std::to_string(g.Dim()) +
                      " does not match population dimension " +
                      std::to_string(dim));
    return g;
  }
  PopulationParams dev = o.dev, training = o.training;
  dev.dimension = training.dimension = dim;
  return FitGenerator(SynthPopulation(dev).dataset,
                      SynthPopulation(training).dataset, o.config);
}

void RequirePositive(std::size_t v, const char *name) {
  if (v == 0) throw ConfigError(std::string(name) + " must be positive");
}

std::vector<GenerationMethod> ParseMethods(const std::vector<std::string> &names) {
  std::vector<GenerationMethod> out;
  for (const auto &n : names) out.push_back(ParseMethod(n));
  if (out.empty()) throw ConfigError("no methods selected");
  return out;
}

void WriteText(const fs::path &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
  if (!f) throw ConfigError("write failed: " + path.string());
}

void WriteJson(const fs::path &path, const Json &j) {
  WriteText(path, j.dump(2) + "\n");
}

std::string ReadText(const fs::path &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(f), {});
}

fs::path PrepareOutDir(const std::string &dir, const CLI::App *app) {
  fs::path out(dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ConfigError("cannot create " + dir + ": " + ec.message());
  WriteText(out / "config.resolved",
            "[" + app->get_name() + "]\n" + app->config_to_str(true, false));
  return out;
}

Json WarningsJson(const IdentityGenerator &g) {
  Json w = Json::array();
  for (const auto &s : g.warnings) w.push_back(s);
  return w;
}

// Commands.

struct SynthArgs {
  PopulationParams params;
  std::string out;
};

void CmdSynthPopulation(const SynthArgs &a) {
  RequirePositive(a.params.speakers, "speakers");
  RequirePositive(a.params.utterances_per_speaker, "utterances");
  SynthesizedPopulation pop = SynthPopulation(a.params);
  SaveDataset(pop.dataset, a.out);
  WriteJson(a.out + ".truth.json", PopulationTruthToJson(pop.truth));
}

struct FitArgs {
  std::string dev, training, out;
  GeneratorConfig config;
};

void CmdFitModels(const FitArgs &a, std::ostream &err) {
  IdentityGenerator g =
      FitGenerator(LoadDataset(a.dev), LoadDataset(a.training), a.config);
  for (const auto &w : g.warnings) err << "warning: " << w << "\n";
  SaveGenerator(g, a.config, a.dev, a.training, a.out);
}

struct GenArgs {
  std::string models, method, gender, secret_file, out;
};

void CmdGenIdentity(const GenArgs &a) {
  IdentityGenerator g = LoadGenerator(a.models);
  std::optional<Gender> gender;
  if (!a.gender.empty()) gender = ParseGender(a.gender);
  std::string raw = ReadText(a.secret_file);
  Secret secret(std::vector<std::uint8_t>(raw.begin(), raw.end()));
  GeneratedIdentity id = Generate(g, ParseMethod(a.method), gender, secret);
  Json j;
  j["format"] = "anonvoice-identity";
  j["version"] = 1;
  j["method"] = std::string(MethodName(id.method));
  j["gender"] = id.gender_used ? Json(std::string(GenderTag(*id.gender_used)))
                               : Json(nullptr);
  j["secret_sha256"] = HexDigest(id.secret_digest);
  j["dimension"] = id.embedding.Dim();
  Json values = Json::array();
  for (double v : id.embedding.Values()) values.push_back(v);
  j["embedding"] = std::move(values);
  WriteJson(a.out, j);
}

struct DiversityArgs {
  PopulationOptions population;
  GeneratorOptions generator = DefaultGeneratorOptions();
  DiversityConfig diversity;
  std::vector<std::string> methods;
  std::string out;
};

void WriteScoreSet(const fs::path &dir, const ScoreSetSummary &s,
                   const Json &summary) {
  fs::create_directories(dir);
  std::ostringstream roc, hist;
  WriteRocCsv(s.roc, roc);
  WriteHistogramCsv(s.scores, hist);
  WriteText(dir / "roc.csv", roc.str());
  WriteText(dir / "histogram.csv", hist.str());
  WriteJson(dir / "summary.json", summary);
}

void CmdEvalDiversity(DiversityArgs a, const CLI::App *app) {
  const DiversityConfig &c = a.diversity;
  RequirePositive(c.identities, "identities");
  RequirePositive(c.utterances, "utterances");
  RequirePositive(c.enroll, "enroll");
  RequirePositive(c.trials, "trials");
  if (c.enroll >= c.utterances) throw ConfigError("enroll must be < utterances");
  if (c.enroll + c.trials > c.utterances)
    throw ConfigError("enroll + trials must not exceed utterances");
  auto methods = ParseMethods(a.methods);
  fs::path out = PrepareOutDir(a.out, app);

  // The natural reference follows the same protocol as the private voices.
  a.population.params.speakers = c.identities;
  a.population.params.utterances_per_speaker = c.utterances;
  EmbeddingDataset natural = BuildPopulation(a.population);
  IdentityGenerator gen = BuildGenerator(a.generator, natural.Dim());
  DiversityResult r = EvaluateDiversity(natural, gen, methods, c);

  Json run;
  run["schema"] = "anonvoice-eval-diversity";
  run["schema_version"] = 1;
  run["identities"] = c.identities;
  run["utterances"] = c.utterances;
  run["enroll"] = c.enroll;
  run["trials"] = c.trials;
  run["sigma_c"] = c.channel.within_voice_spread;
  run["seed"] = c.seed;
  run["warnings"] = WarningsJson(gen);
  Json nat = ScoreSetJson(r.natural, r.natural.auc, r.natural_thresholds);
  WriteScoreSet(out / "natural", r.natural, nat);
  run["natural"] = std::move(nat);
  Json per = Json::object();
  for (const auto &m : r.methods) {
    Json j = ScoreSetJson(m, r.natural.auc, r.natural_thresholds);
    WriteScoreSet(out / m.name, m, j);
    per[m.name] = std::move(j);
  }
  run["methods"] = std::move(per);
  WriteJson(out / "summary.json", run);
}

struct PrivacyArgs {
  PopulationOptions population;
  GeneratorOptions generator = DefaultGeneratorOptions();
  PrivacyAttackConfig attack;
  bool no_gender_filter = false;
  std::vector<std::string> methods;
  bool outcomes_csv = false;
  std::string out;
};

void WriteReport(const fs::path &dir, const AttackReport &r, bool csv) {
  fs::create_directories(dir);
  WriteJson(dir / "report.json", r.ToJson());
  if (csv) {
    std::ostringstream os;
    r.WriteOutcomesCsv(os);
    WriteText(dir / "outcomes.csv", os.str());
  }
}

bool AnyMethod(const std::vector<std::string> &names) {
  return std::any_of(names.begin(), names.end(),
                     [](const std::string &n) { return n != "baseline"; });
}

void CmdAttackPrivacy(const PrivacyArgs &a, const CLI::App *app) {
  RequirePositive(a.attack.n_rounds, "rounds");
  if (a.attack.n_candidates < 2) throw ConfigError("candidates must be >= 2");
  if (a.methods.empty()) throw ConfigError("no methods selected");
  for (const auto &m : a.methods)
    if (m != "baseline") ParseMethod(m);
  fs::path out = PrepareOutDir(a.out, app);
  EmbeddingDataset pop = BuildPopulation(a.population);
  std::optional<IdentityGenerator> gen;
  if (AnyMethod(a.methods)) gen.emplace(BuildGenerator(a.generator, pop.Dim()));

  Json run;
  run["schema"] = "anonvoice-attack-privacy";
  run["schema_version"] = 1;
  run["warnings"] = gen ? WarningsJson(*gen) : Json::array();
  Json reports = Json::object();
  for (const auto &m : a.methods) {
    PrivacyAttackConfig cfg = a.attack;
    cfg.gender_filtering = !a.no_gender_filter;
    if (m != "baseline") cfg.method = ParseMethod(m);
    AttackReport r = PrivacyAttack(pop, gen ? &*gen : nullptr, cfg);
    WriteReport(out / m, r, a.outcomes_csv);
    reports[m] = r.ToJson();
  }
  run["reports"] = std::move(reports);
  WriteJson(out / "summary.json", run);
}

struct AuthArgs {
  PopulationOptions population;
  GeneratorOptions generator = DefaultGeneratorOptions();
  AuthAttackConfig attack;
  std::optional<double> threshold;
  std::vector<std::string> strategies;
  std::vector<std::string> methods;
  bool outcomes_csv = false;
  std::string out;
};

void CmdAttackAuth(const AuthArgs &a, const CLI::App *app) {
  RequirePositive(a.attack.n_trials, "trials");
  if (a.strategies.empty()) throw ConfigError("no strategies selected");
  std::vector<AuthStrategy> strategies;
  for (const auto &s : a.strategies) strategies.push_back(ParseStrategy(s));
  auto methods = ParseMethods(a.methods);
  fs::path out = PrepareOutDir(a.out, app);
  EmbeddingDataset pop = BuildPopulation(a.population);
  bool need_gen = std::any_of(strategies.begin(), strategies.end(), [](auto s) {
    return s != AuthStrategy::kBaselineNaturalReplay;
  });
  std::optional<IdentityGenerator> gen;
  if (need_gen) gen.emplace(BuildGenerator(a.generator, pop.Dim()));

  NaturalBaseline natural = EvaluateNaturalPopulation(pop, a.attack.enroll);
  double threshold = a.threshold.value_or(natural.eer.threshold);

  Json run;
  run["schema"] = "anonvoice-attack-auth";
  run["schema_version"] = 1;
  run["threshold"] = threshold;
  run["natural_eer"] = natural.eer.rate;
  run["natural_eer_threshold"] = natural.eer.threshold;
  OperatingPoint op = RatesAt(natural.roc, threshold);
  run["natural_fpr_at_threshold"] = op.fpr;
  run["natural_tpr_at_threshold"] = op.tpr;
  run["warnings"] = gen ? WarningsJson(*gen) : Json::array();
  Json reports = Json::object();
  for (AuthStrategy s : strategies) {
    std::vector<std::optional<GenerationMethod>> variants;
    if (s == AuthStrategy::kBaselineNaturalReplay)
      variants.push_back(std::nullopt);
    else
      variants.assign(methods.begin(), methods.end());
    for (const auto &m : variants) {
      AuthAttackConfig cfg = a.attack;
      cfg.strategy = s;
      cfg.threshold = threshold;
      if (m) cfg.method = *m;
      std::string name(StrategyName(s));
      if (m) name += "_" + std::string(MethodName(*m));
      AttackReport r = AuthAttack(pop, gen ? &*gen : nullptr, cfg);
      WriteReport(out / name, r, a.outcomes_csv);
      reports[name] = r.ToJson();
    }
  }
  run["reports"] = std::move(reports);
  WriteJson(out / "summary.json", run);
}

struct TextArgs {
  std::string ref_dir, hyp_dir, out;
  std::size_t bootstrap = 1000;
  std::uint64_t seed = 0;
};

Json AlignmentJson(const WordAlignment &a) {
  return {{"hits", a.hits},
          {"substitutions", a.substitutions},
          {"deletions", a.deletions},
          {"insertions", a.insertions},
          {"ref_words", a.RefLength()},
          {"hyp_words", a.HypLength()}};
}

void CmdTextMetrics(const TextArgs &a) {
  std::vector<std::string> names;
  for (const auto &e : fs::directory_iterator(a.ref_dir))
    if (e.is_regular_file()) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  if (names.empty()) throw DataError("no reference files in " + a.ref_dir);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto &n : names) {
    fs::path hyp = fs::path(a.hyp_dir) / n;
    if (!fs::is_regular_file(hyp))
      throw DataError("no hypothesis file for " + n);
    pairs.emplace_back(ReadText(fs::path(a.ref_dir) / n), ReadText(hyp));
  }
  CorpusMetrics m = ComputeCorpusMetrics(pairs, a.bootstrap, a.seed);

  Json j;
  j["schema"] = "anonvoice-text-metrics";
  j["schema_version"] = 1;
  j["n_pairs"] = m.n_pairs;
  j["totals"] = AlignmentJson(m.totals);
  j["wer"] = m.wer;
  j["wil"] = m.wil;
  j["wer_ci"] = {{"low", m.wer_ci.low}, {"high", m.wer_ci.high}};
  j["wil_ci"] = {{"low", m.wil_ci.low}, {"high", m.wil_ci.high}};
  j["ci_method"] = "percentile_bootstrap";
  j["n_bootstrap"] = m.n_bootstrap;
  j["seed"] = a.seed;
  Json files = Json::array();
  for (std::size_t i = 0; i < names.size(); i++) {
    WordAlignment al = Align(Tokenize(pairs[i].first), Tokenize(pairs[i].second));
    Json f = AlignmentJson(al);
    f["file"] = names[i];
    f["wer"] = al.RefLength() ? Json(Wer(al)) : Json(nullptr);
    f["wil"] = Wil(al);
    files.push_back(std::move(f));
  }
  j["files"] = std::move(files);
  WriteJson(a.out, j);
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  CLI::App app("Secret-seeded private voice identities and their evaluation",
               "anonvoice");
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "TOML/INI config file; flags override it");
  app.require_subcommand(1);

  SynthArgs synth;
  auto *c_synth = app.add_subcommand("synth-population",
                                     "Write a synthetic speaker population");
  c_synth->add_option("--speakers", synth.params.speakers, "Number of speakers");
  c_synth->add_option("--utterances", synth.params.utterances_per_speaker,
                      "Utterances per speaker");
  c_synth->add_option("--sigma-b", synth.params.between_speaker_spread,
                      "Between-speaker spread (RMS norm)");
  c_synth->add_option("--sigma-w", synth.params.within_speaker_spread,
                      "Within-speaker spread (RMS norm)");
  c_synth->add_option("--dim", synth.params.dimension, "Embedding dimension");
  c_synth->add_option("--seed", synth.params.seed, "Synthesis seed");
  c_synth->add_option("--id-prefix", synth.params.id_prefix, "Speaker id prefix");
  c_synth->add_option("--out", synth.out, "Output dataset (.jsonl or .avec)")
      ->required();

  FitArgs fit;
  auto *c_fit = app.add_subcommand("fit-models", "Fit the identity generator");
  c_fit->add_option("--dev", fit.dev, "Development dataset")
      ->required()
      ->check(CLI::ExistingFile);
  c_fit->add_option("--training", fit.training, "Training-voice dataset")
      ->required()
      ->check(CLI::ExistingFile);
  c_fit->add_option("--out", fit.out, "Output model file (JSON)")->required();
  c_fit->add_option("--retain", fit.config.pca_retain, "PCA retained variance");
  c_fit->add_option("--components", fit.config.gmm.components, "GMM components");
  c_fit->add_option("--restarts", fit.config.gmm.restarts, "GMM restarts");
  c_fit->add_option("--max-iters", fit.config.gmm.max_iters, "GMM EM iterations");
  c_fit->add_option("--tol", fit.config.gmm.tol, "GMM convergence tolerance");
  c_fit->add_option("--ridge", fit.config.gmm.ridge, "GMM covariance ridge");
  c_fit->add_option("--seed", fit.config.gmm.seed, "GMM seed");

  GenArgs gen;
  auto *c_gen = app.add_subcommand("gen-identity",
                                   "Derive a private voice from a secret");
  c_gen->add_option("--models", gen.models, "Model file from fit-models")
      ->required()
      ->check(CLI::ExistingFile);
  c_gen->add_option("--method", gen.method, "Generation method")->required();
  c_gen->add_option("--gender", gen.gender, "m or f")
      ->check(CLI::IsMember({"", "m", "f"}));
  c_gen->add_option("--secret-file", gen.secret_file,
                    "File whose exact bytes are the secret")
      ->required()
      ->check(CLI::ExistingFile);
  c_gen->add_option("--out", gen.out, "Output identity (JSON)")->required();

  const std::vector<std::string> all_methods = {
      "random",  "pca_random",     "mean_pool_subset",
      "pca_gmm", "pool_selection", "training_selection"};

  DiversityArgs div;
  div.methods = all_methods;
  auto *c_div = app.add_subcommand("eval-diversity",
                                   "Compare private and natural voice diversity");
  AddPopulationOptions(c_div, div.population, false);
  AddGeneratorOptions(c_div, div.generator);
  AddChannelOptions(c_div, div.diversity.channel);
  c_div->add_option("--identities", div.diversity.identities,
                    "Identities per method (and natural speakers)");
  c_div->add_option("--utterances", div.diversity.utterances,
                    "Utterances per identity");
  c_div->add_option("--enroll", div.diversity.enroll, "Enrollment utterances");
  c_div->add_option("--trials", div.diversity.trials, "Trial utterances");
  c_div->add_option("--methods", div.methods, "Methods to evaluate")
      ->delimiter(',')
      ->default_str(JoinComma(div.methods));
  c_div->add_option("--seed", div.diversity.seed, "Identity secret seed");
  c_div->add_option("--out", div.out, "Output directory")->required();

  PrivacyArgs priv;
  priv.methods = all_methods;
  priv.methods.insert(priv.methods.begin(), "baseline");
  auto *c_priv = app.add_subcommand("attack-privacy",
                                    "De-anonymization attack");
  AddPopulationOptions(c_priv, priv.population, true);
  AddGeneratorOptions(c_priv, priv.generator);
  AddChannelOptions(c_priv, priv.attack.channel);
  c_priv->add_option("--candidates", priv.attack.n_candidates,
                     "Candidate speakers per round");
  c_priv->add_option("--rounds", priv.attack.n_rounds, "Rounds");
  c_priv->add_option("--enroll", priv.attack.enroll, "Enrollment utterances");
  c_priv->add_flag("--no-gender-filter", priv.no_gender_filter,
                   "Adversary ignores gender");
  c_priv->add_option("--methods", priv.methods,
                     "Variants: baseline and/or method names")
      ->delimiter(',')
      ->default_str(JoinComma(priv.methods));
  c_priv->add_option("--seed", priv.attack.seed, "Attack seed");
  c_priv->add_flag("--outcomes-csv", priv.outcomes_csv,
                   "Also write per-round outcomes");
  c_priv->add_option("--out", priv.out, "Output directory")->required();

  AuthArgs auth;
  auth.methods = all_methods;
  auth.strategies = {"baseline", "victim_original_voice",
                     "random_anonymous_voice"};
  auto *c_auth = app.add_subcommand("attack-auth",
                                    "Authentication (impersonation) attack");
  AddPopulationOptions(c_auth, auth.population, true);
  AddGeneratorOptions(c_auth, auth.generator);
  AddChannelOptions(c_auth, auth.attack.channel);
  c_auth->add_option("--trials", auth.attack.n_trials, "Trials per variant");
  c_auth->add_option("--enroll", auth.attack.enroll, "Enrollment utterances");
  c_auth->add_option("--threshold", auth.threshold,
                     "Verification threshold; natural EER threshold if unset");
  c_auth->add_option("--strategies", auth.strategies, "Attack strategies")
      ->delimiter(',')
      ->default_str(JoinComma(auth.strategies));
  c_auth->add_option("--methods", auth.methods, "Generation methods")
      ->delimiter(',')
      ->default_str(JoinComma(auth.methods));
  c_auth->add_option("--seed", auth.attack.seed, "Attack seed");
  c_auth->add_flag("--outcomes-csv", auth.outcomes_csv,
                   "Also write per-trial outcomes");
  c_auth->add_option("--out", auth.out, "Output directory")->required();

  TextArgs text;
  auto *c_text = app.add_subcommand("text-metrics",
                                    "WER/WIL over paired transcript files");
  c_text->add_option("--ref-dir", text.ref_dir, "Reference transcripts")
      ->required()
      ->check(CLI::ExistingDirectory);
  c_text->add_option("--hyp-dir", text.hyp_dir, "Hypothesis transcripts")
      ->required()
      ->check(CLI::ExistingDirectory);
  c_text->add_option("--out", text.out, "Output report (JSON)")->required();
  c_text->add_option("--bootstrap", text.bootstrap, "Bootstrap resamples");
  c_text->add_option("--seed", text.seed, "Bootstrap seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "config error: " << e.what() << "\n";
    return ExitCodeFor(ErrorKind::kConfig);
  }

  try {
    if (c_synth->parsed()) CmdSynthPopulation(synth);
    if (c_fit->parsed()) CmdFitModels(fit, err);
    if (c_gen->parsed()) CmdGenIdentity(gen);
    if (c_div->parsed()) CmdEvalDiversity(div, c_div);
    if (c_priv->parsed()) CmdAttackPrivacy(priv, c_priv);
    if (c_auth->parsed()) CmdAttackAuth(auth, c_auth);
    if (c_text->parsed()) CmdTextMetrics(text);
  } catch (const Error &e) {
    static const char *kLabel[] = {"config", "data", "numerical"};
    err << kLabel[static_cast<int>(e.kind())] << " error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const fs::filesystem_error &e) {
    err << "data error: " << e.what() << "\n";
    return ExitCodeFor(ErrorKind::kData);
  }
  return 0;
}

}  // namespace anonvoice
