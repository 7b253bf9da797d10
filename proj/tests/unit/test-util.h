// tests/unit/test-util.h

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

#ifndef ANONVOICE_TESTS_TEST_UTIL_H_
#define ANONVOICE_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "anonvoice/embedding.h"
#include "anonvoice/secret-rng.h"

namespace testutil {

inline std::vector<double> Normals(anonvoice::DerivedRng &rng, std::size_t n,
                                   double sd = 1.0) {
  std::vector<double> v(n);
  for (double &x : v) x = sd * rng.Normal();
  return v;
}

inline anonvoice::EmbeddingVector RandomUnit(anonvoice::DerivedRng &rng,
                                             std::size_t d) {
  return anonvoice::L2Normalize(anonvoice::EmbeddingVector(Normals(rng, d)));
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("anonvoice-test-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path &path() const { return path_; }
  std::string operator/(const std::string &name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline std::string Slurp(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

// Sets ANONVOICE_THREADS for the lifetime of the object.
class ScopedThreads {
 public:
  explicit ScopedThreads(int n) {
    if (const char *old = std::getenv("ANONVOICE_THREADS")) old_ = old;
    setenv("ANONVOICE_THREADS", std::to_string(n).c_str(), 1);
  }
  ~ScopedThreads() {
    if (old_.empty())
      unsetenv("ANONVOICE_THREADS");
    else
      setenv("ANONVOICE_THREADS", old_.c_str(), 1);
  }

 private:
  std::string old_;
};

}  // namespace testutil

#endif  // ANONVOICE_TESTS_TEST_UTIL_H_
