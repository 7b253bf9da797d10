// include/anonvoice/errors.h

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

#ifndef ANONVOICE_ERRORS_H_
#define ANONVOICE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace anonvoice {

/// Failure categories. The command-line front end maps each category to a
/// distinct exit status (see ExitCodeFor).
enum class ErrorKind {
  kConfig,     // invalid parameters or configuration
  kData,       // malformed, inconsistent or insufficient input data
  kNumerical,  // degenerate math (zero norm, Cholesky failure, ...)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &what)
      : Error(ErrorKind::kConfig, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string &what)
      : Error(ErrorKind::kData, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string &what)
      : Error(ErrorKind::kNumerical, what) {}
};

inline int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return 2;
    case ErrorKind::kData: return 3;
    case ErrorKind::kNumerical: return 4;
  }
  return 1;
}

}  // namespace anonvoice

#endif  // ANONVOICE_ERRORS_H_
