// src/text-metrics.cc

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

#include "anonvoice/text-metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <tuple>

#include "anonvoice/errors.h"
#include "anonvoice/secret-rng.h"

namespace anonvoice {

namespace {

bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)); }

// Lexicographic preference among alignments: fewer edits, more hits, fewer
// substitutions. All three are additive along a path, so the DP stays exact.
auto Key(const WordAlignment &a) {
  return std::make_tuple(a.Errors(), -static_cast<long long>(a.hits),
                         a.substitutions);
}

// Linear-interpolated percentile of a sorted sample.
double Percentile(const std::vector<double> &sorted, double q) {
  if (sorted.size() == 1) return sorted[0];
  double pos = q * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double PooledWer(const WordAlignment &a) {
  return a.RefLength() == 0 ? 0.0 : Wer(a);
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) {
    std::size_t b = 0, e = word.size();
    while (b < e && !IsAlnum(word[b])) b++;
    while (e > b && !IsAlnum(word[e - 1])) e--;
    if (b == e) continue;
    std::string tok = word.substr(b, e - b);
    for (char &c : tok)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(std::move(tok));
  }
  return out;
}

WordAlignment Align(std::span<const std::string> ref,
                    std::span<const std::string> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  // best[i][j]: preferred alignment of ref[0:i] with hyp[0:j].
  std::vector<WordAlignment> prev(m + 1), cur(m + 1);
  for (std::size_t j = 1; j <= m; j++) prev[j].insertions = j;
  for (std::size_t i = 1; i <= n; i++) {
    cur[0] = WordAlignment{};
    cur[0].deletions = i;
    for (std::size_t j = 1; j <= m; j++) {
      WordAlignment diag = prev[j - 1];
      if (ref[i - 1] == hyp[j - 1])
        diag.hits++;
      else
        diag.substitutions++;
      WordAlignment del = prev[j];
      del.deletions++;
      WordAlignment ins = cur[j - 1];
      ins.insertions++;
      WordAlignment best = diag;
      if (Key(del) < Key(best)) best = del;
      if (Key(ins) < Key(best)) best = ins;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double Wer(const WordAlignment &a) {
  if (a.RefLength() == 0) throw DataError("WER of an empty reference");
  return static_cast<double>(a.Errors()) / static_cast<double>(a.RefLength());
}

double Wil(const WordAlignment &a) {
  if (a.RefLength() == 0 || a.HypLength() == 0) return 1.0;
  double h = static_cast<double>(a.hits);
  return 1.0 - (h / static_cast<double>(a.RefLength())) *
                   (h / static_cast<double>(a.HypLength()));
}

CorpusMetrics ComputeCorpusMetrics(
    std::span<const std::pair<std::string, std::string>> pairs,
    std::size_t n_bootstrap, std::uint64_t seed) {
  if (pairs.empty()) throw DataError("corpus metrics of an empty corpus");
  std::vector<WordAlignment> per;
  per.reserve(pairs.size());
  CorpusMetrics out;
  for (const auto &[ref, hyp] : pairs) {
    per.push_back(Align(Tokenize(ref), Tokenize(hyp)));
    out.totals += per.back();
  }
  out.n_pairs = pairs.size();
  out.n_bootstrap = n_bootstrap;
  out.wer = Wer(out.totals);
  out.wil = Wil(out.totals);
  if (n_bootstrap == 0) {
    out.wer_ci = {out.wer, out.wer};
    out.wil_ci = {out.wil, out.wil};
    return out;
  }

  DerivedRng rng = SeededRng("anonvoice/bootstrap", seed);
  std::vector<double> wers, wils;
  wers.reserve(n_bootstrap);
  wils.reserve(n_bootstrap);
  for (std::size_t b = 0; b < n_bootstrap; b++) {
    WordAlignment total;
    for (std::size_t k = 0; k < per.size(); k++)
      total += per[rng.UniformIndex(per.size())];
    wers.push_back(PooledWer(total));
    wils.push_back(Wil(total));
  }
  std::sort(wers.begin(), wers.end());
  std::sort(wils.begin(), wils.end());
  out.wer_ci = {Percentile(wers, 0.025), Percentile(wers, 0.975)};
  out.wil_ci = {Percentile(wils, 0.025), Percentile(wils, 0.975)};
  return out;
}

}  // namespace anonvoice
