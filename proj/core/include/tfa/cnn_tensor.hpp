// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <cstddef>
#include <vector>

namespace tfa {

/// Dense row-major tensor of doubles; images use NHWC order.
struct Tensor {
  std::vector<size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<size_t> s);

  size_t numel() const { return data.size(); }
  size_t dim(size_t i) const { return shape[i]; }
  bool same_shape(const Tensor& o) const { return shape == o.shape; }
};

size_t numel_of(const std::vector<size_t>& shape);

/// Throws if any element is non-finite (every layer output is checked).
void check_finite(const Tensor& t, const char* what);

/// New tensor holding rows[idx[0]], rows[idx[1]], ... of a tensor whose
/// first dimension indexes rows/examples.
Tensor gather_rows(const Tensor& t, const std::vector<size_t>& idx);

// Row-major matrix products, C overwritten. Dimension names: C is (m x n).
// a is (m x k)
void gemm_nn(const double* a, const double* b, double* c, size_t m, size_t k,
             size_t n);  // b is (k x n)
void gemm_nt(const double* a, const double* b, double* c, size_t m, size_t k,
             size_t n);  // b is (n x k), used transposed
void gemm_tn(const double* a, const double* b, double* c, size_t m, size_t k,
             size_t n);  // a is (k x m), used transposed

}  // namespace tfa
