// src/linalg.cc

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

#include "anonvoice/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "anonvoice/errors.h"

namespace anonvoice {

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; i++) m(i, i) = 1.0;
  return m;
}

namespace {

double OffDiagonalNorm(const Matrix &a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.Rows(); i++)
    for (std::size_t j = i + 1; j < a.Cols(); j++) sum += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace

SymmetricEigen JacobiEigen(const Matrix &input, double tol, int max_sweeps) {
  const std::size_t n = input.Rows();
  if (n != input.Cols()) throw NumericalError("JacobiEigen: matrix not square");
  Matrix a = input;
  // Accumulates rotations; column k of v ends up as eigenvector k.
  Matrix v = Matrix::Identity(n);

  double scale = 0.0;
  for (double x : a.Data()) scale += x * x;
  scale = std::sqrt(scale);
  const double threshold = tol * (scale > 0.0 ? scale : 1.0);

  int sweep = 0;
  for (; sweep < max_sweeps && OffDiagonalNorm(a) > threshold; sweep++) {
    for (std::size_t p = 0; p + 1 < n; p++) {
      for (std::size_t q = p + 1; q < n; q++) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double app = a(p, p), aqq = a(q, q);
        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;

        for (std::size_t k = 0; k < n; k++) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; k++) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; k++) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (OffDiagonalNorm(a) > threshold)
    throw NumericalError("Jacobi eigendecomposition did not converge in " +
                         std::to_string(max_sweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i) > a(j, j);
  });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  out.sweeps = sweep;
  for (std::size_t r = 0; r < n; r++) {
    out.values[r] = a(order[r], order[r]);
    for (std::size_t k = 0; k < n; k++) out.vectors(r, k) = v(k, order[r]);
  }
  return out;
}

Matrix Cholesky(const Matrix &a) {
  const std::size_t n = a.Rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; j++) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; k++) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0))
      throw NumericalError("Cholesky failed: matrix not positive definite");
    double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; i++) {
      double sum = a(i, j);
      for (std::size_t k = 0; k < j; k++) sum -= l(i, k) * l(j, k);
      l(i, j) = sum / ljj;
    }
  }
  return l;
}

void ForwardSubstitute(const Matrix &lower, std::span<double> b) {
  for (std::size_t i = 0; i < lower.Rows(); i++) {
    double sum = b[i];
    auto row = lower.Row(i);
    for (std::size_t k = 0; k < i; k++) sum -= row[k] * b[k];
    b[i] = sum / row[i];
  }
}

}  // namespace anonvoice
