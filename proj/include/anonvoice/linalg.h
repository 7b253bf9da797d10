// include/anonvoice/linalg.h

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

#ifndef ANONVOICE_LINALG_H_
#define ANONVOICE_LINALG_H_

#include <cstddef>
#include <span>
#include <vector>

namespace anonvoice {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix Identity(std::size_t n);

  std::size_t Rows() const { return rows_; }
  std::size_t Cols() const { return cols_; }
  double &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<double> Row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> Row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> Data() const { return data_; }
  std::vector<double> &MutableData() { return data_; }

  friend bool operator==(const Matrix &, const Matrix &) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // row i is the eigenvector of values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Iterates until
/// the off-diagonal Frobenius norm falls below tol times the matrix norm.
/// Throws NumericalError if it fails to converge within max_sweeps.
SymmetricEigen JacobiEigen(const Matrix &a, double tol = 1e-12,
                           int max_sweeps = 100);

/// Lower-triangular L with L L^T = a. Throws NumericalError if a is not
/// positive definite.
Matrix Cholesky(const Matrix &a);

/// Solves L y = b for lower-triangular L, in place.
void ForwardSubstitute(const Matrix &lower, std::span<double> b);

}  // namespace anonvoice

#endif  // ANONVOICE_LINALG_H_
