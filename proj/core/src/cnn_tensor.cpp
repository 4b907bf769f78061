// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/cnn_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace tfa {

size_t numel_of(const std::vector<size_t>& shape) {
  size_t n = 1;
  for (size_t d : shape) {
    if (d == 0) throw std::invalid_argument("zero tensor dimension");
    n *= d;
  }
  return n;
}

Tensor::Tensor(std::vector<size_t> s)
    : shape(std::move(s)), data(numel_of(shape), 0.0) {}

void check_finite(const Tensor& t, const char* what) {
  for (double v : t.data) {
    if (!std::isfinite(v)) {
      throw std::runtime_error(std::string("non-finite value in ") + what);
    }
  }
}

Tensor gather_rows(const Tensor& t, const std::vector<size_t>& idx) {
  if (t.shape.empty()) throw std::invalid_argument("cannot gather a scalar");
  const size_t per = t.numel() / t.dim(0);
  std::vector<size_t> shape = t.shape;
  shape[0] = idx.size();
  Tensor out(shape);
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= t.dim(0)) throw std::out_of_range("gather index");
    std::copy_n(t.data.data() + idx[i] * per, per, out.data.data() + i * per);
  }
  return out;
}

void gemm_nn(const double* a, const double* b, double* c, size_t m, size_t k,
             size_t n) {
  std::memset(c, 0, m * n * sizeof(double));
  for (size_t i = 0; i < m; ++i) {
    const double* ai = a + i * k;
    double* ci = c + i * n;
    for (size_t l = 0; l < k; ++l) {
      const double av = ai[l];
      const double* bl = b + l * n;
      for (size_t j = 0; j < n; ++j) ci[j] += av * bl[j];
    }
  }
}

void gemm_nt(const double* a, const double* b, double* c, size_t m, size_t k,
             size_t n) {
  for (size_t i = 0; i < m; ++i) {
    const double* ai = a + i * k;
    double* ci = c + i * n;
    for (size_t j = 0; j < n; ++j) {
      const double* bj = b + j * k;
      double acc = 0.0;
      for (size_t l = 0; l < k; ++l) acc += ai[l] * bj[l];
      ci[j] = acc;
    }
  }
}

void gemm_tn(const double* a, const double* b, double* c, size_t m, size_t k,
             size_t n) {
  std::memset(c, 0, m * n * sizeof(double));
  for (size_t l = 0; l < k; ++l) {
    const double* al = a + l * m;
    const double* bl = b + l * n;
    for (size_t i = 0; i < m; ++i) {
      const double av = al[i];
      double* ci = c + i * n;
      for (size_t j = 0; j < n; ++j) ci[j] += av * bl[j];
    }
  }
}

}  // namespace tfa
