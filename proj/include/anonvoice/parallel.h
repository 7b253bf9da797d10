// include/anonvoice/parallel.h

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

#ifndef ANONVOICE_PARALLEL_H_
#define ANONVOICE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace anonvoice {

/// Worker count: ANONVOICE_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t WorkerCount();

/// Calls body(i) for every i in [0, n), spread over WorkerCount() threads.
/// Work items must write only to their own output slot; callers reduce the
/// slots in index order so results never depend on scheduling. The first
/// exception thrown by any item is rethrown after all workers finish.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)> &body);

}  // namespace anonvoice

#endif  // ANONVOICE_PARALLEL_H_
