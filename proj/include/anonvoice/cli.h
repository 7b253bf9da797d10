// include/anonvoice/cli.h

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

// Command-line front end. RunCli is the whole program minus main(), so the
// tests can drive it in-process.

#ifndef ANONVOICE_CLI_H_
#define ANONVOICE_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace anonvoice {

/// args excludes the program name. Returns the process exit code:
/// 0 success, 2 config error, 3 data error, 4 numerical failure.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

}  // namespace anonvoice

#endif  // ANONVOICE_CLI_H_
