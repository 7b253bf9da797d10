// src/secret-rng.cc

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

#include "anonvoice/secret-rng.h"

#include <sodium.h>

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>

#include "anonvoice/errors.h"

namespace anonvoice {

namespace {

void EnsureSodium() {
  static const int status = sodium_init();
  if (status < 0) throw NumericalError("libsodium failed to initialize");
}

std::array<std::uint8_t, 8> LittleEndian(std::uint64_t x) {
  std::array<std::uint8_t, 8> out;
  for (int i = 0; i < 8; i++) out[i] = static_cast<std::uint8_t>(x >> (8 * i));
  return out;
}

}  // namespace

Digest Sha256(std::span<const std::uint8_t> bytes) {
  EnsureSodium();
  Digest d;
  crypto_hash_sha256(d.data(), bytes.data(), bytes.size());
  return d;
}

Digest Sha256(std::string_view bytes) {
  return Sha256(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t *>(bytes.data()), bytes.size()));
}

std::string HexDigest(const Digest &d) {
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint8_t b : d) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 15]);
  }
  return out;
}

Digest FileSha256(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return Sha256(bytes);
}

Secret::Secret(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
  if (bytes_.empty()) throw ConfigError("secret must not be empty");
}

Secret Secret::FromString(std::string_view s) {
  return Secret(std::vector<std::uint8_t>(s.begin(), s.end()));
}

DerivedRng::DerivedRng(const Digest &key) : key_(key) { EnsureSodium(); }

void DerivedRng::Refill() {
  static_assert(crypto_stream_chacha20_KEYBYTES == 32);
  std::array<std::uint8_t, 64> zeros{}, out{};
  std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
  crypto_stream_chacha20_xor_ic(out.data(), zeros.data(), out.size(),
                                nonce.data(), block_counter_, key_.data());
  block_counter_++;
  for (std::size_t w = 0; w < 8; w++) {
    std::uint64_t x = 0;
    for (int i = 7; i >= 0; i--) x = (x << 8) | out[8 * w + i];
    block_[w] = x;
  }
  pos_ = 0;
}

std::uint64_t DerivedRng::NextWord() {
  if (pos_ == block_.size()) Refill();
  return block_[pos_++];
}

double DerivedRng::Uniform() {
  return static_cast<double>(NextWord() >> 11) * 0x1.0p-53;
}

double DerivedRng::Normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double u1 = Uniform(), u2 = Uniform();
  // 1 - u1 lies in (0, 1], keeping the logarithm finite.
  double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return radius * std::cos(angle);
}

std::uint64_t DerivedRng::UniformIndex(std::uint64_t n) {
  if (n == 0) throw ConfigError("UniformIndex over an empty range");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  // 2^64 mod n; words at or above 2^64 - rem would bias the low residues.
  std::uint64_t rem = (kMax % n + 1) % n;
  while (true) {
    std::uint64_t w = NextWord();
    if (rem == 0 || w <= kMax - rem) return w % n;
  }
}

DerivedRng DeriveRng(const Secret &secret, std::string_view context) {
  std::vector<std::uint8_t> material(context.begin(), context.end());
  material.push_back(0x00);
  auto s = secret.Bytes();
  material.insert(material.end(), s.begin(), s.end());
  return DerivedRng(Sha256(material));
}

DerivedRng SeededRng(std::string_view context, std::uint64_t seed) {
  auto le = LittleEndian(seed);
  return DeriveRng(Secret(std::vector<std::uint8_t>(le.begin(), le.end())),
                   context);
}

std::uint64_t ChildSeed(std::uint64_t seed, std::string_view label,
                        std::uint64_t index) {
  std::string material(label);
  material.push_back('\0');
  auto a = LittleEndian(seed), b = LittleEndian(index);
  material.append(a.begin(), a.end());
  material.append(b.begin(), b.end());
  Digest d = Sha256(material);
  std::uint64_t x = 0;
  for (int i = 7; i >= 0; i--) x = (x << 8) | d[i];
  return x;
}

}  // namespace anonvoice
