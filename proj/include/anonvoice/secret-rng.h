// include/anonvoice/secret-rng.h

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

#ifndef ANONVOICE_SECRET_RNG_H_
#define ANONVOICE_SECRET_RNG_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace anonvoice {

using Digest = std::array<std::uint8_t, 32>;

Digest Sha256(std::span<const std::uint8_t> bytes);
Digest Sha256(std::string_view bytes);
std::string HexDigest(const Digest &d);

/// SHA-256 of a file's contents. Throws DataError if unreadable.
Digest FileSha256(const std::string &path);

/// A user-known secret: arbitrary non-empty bytes.
class Secret {
 public:
  /// Throws ConfigError if bytes is empty.
  explicit Secret(std::vector<std::uint8_t> bytes);
  static Secret FromString(std::string_view s);

  std::span<const std::uint8_t> Bytes() const { return bytes_; }
  Digest Fingerprint() const { return Sha256(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

/// Deterministic random stream: the ChaCha20 keystream (64-bit block
/// counter, all-zero nonce) under a 32-byte key, read as little-endian
/// 64-bit words.
///
/// Uniform() takes the top 53 bits of one word; Normal() applies Box-Muller
/// to two consecutive uniforms and returns the sine variate on the next call.
/// Instances are cheap and not thread-safe; give each worker its own.
class DerivedRng {
 public:
  explicit DerivedRng(const Digest &key);

  std::uint64_t NextWord();
  /// Uniform in [0, 1).
  double Uniform();
  /// Standard normal variate.
  double Normal();
  /// Uniform integer in [0, n) by rejection sampling (no modulo bias).
  std::uint64_t UniformIndex(std::uint64_t n);

 private:
  void Refill();

  Digest key_;
  std::uint64_t block_counter_ = 0;
  std::array<std::uint64_t, 8> block_{};
  std::size_t pos_ = 8;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Stream for a secret under a context label:
/// key = SHA-256(context || 0x00 || secret).
DerivedRng DeriveRng(const Secret &secret, std::string_view context);

/// Stream for a numeric simulation seed; the seed's eight little-endian
/// bytes act as the secret.
DerivedRng SeededRng(std::string_view context, std::uint64_t seed);

/// Derives a child seed, e.g. one per trial, so work items can run in any
/// order and still see the same stream.
std::uint64_t ChildSeed(std::uint64_t seed, std::string_view label,
                        std::uint64_t index);

}  // namespace anonvoice

#endif  // ANONVOICE_SECRET_RNG_H_
