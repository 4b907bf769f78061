// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <complex>
#include <cstddef>

namespace tfa {

/// In-place forward DFT, X[k] = sum_n x[n] e^{-j 2 pi k n / N}. Any n >= 1.
void fft(std::complex<double>* data, size_t n);

/// In-place inverse DFT including the 1/n factor, so ifft(fft(x)) == x.
void ifft(std::complex<double>* data, size_t n);

/// Smallest power of two >= n (handy for zero-padded fast convolution).
size_t next_pow2(size_t n);

}  // namespace tfa
