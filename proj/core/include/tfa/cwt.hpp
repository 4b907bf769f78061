// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <complex>
#include <cstddef>
#include <string>

#include "tfa/audio.hpp"
#include "tfa/tf_matrix.hpp"

namespace tfa {

enum class WaveletKind { analytic_morlet };

struct CwtConfig {
  int scale_min = 2;
  int scale_max = 129;  // inclusive; 2..129 gives 128 scale rows
  size_t translation_step = 1;
  WaveletKind wavelet = WaveletKind::analytic_morlet;
  double omega0 = 6.0;
  double support_radius = 4.0;  // kernel truncated at |t| <= radius * scale
};

/// psi(t) = pi^(-1/4) * exp(j*omega0*t) * exp(-t^2/2).
std::complex<double> wavelet_eval(double t, double omega0);

/// X(a,k) = (1/sqrt(a)) * sum_n x(n) psi*((n-k)/a), the sum truncated to
/// |n-k| <= support_radius*a with zeros outside the signal. Rows are scales
/// scale_min..scale_max; columns are translations k = 0, step, 2*step, ...
/// (ceil(M/step) of them). Literal evaluation of the transform sum; serves
/// as the oracle for cwt_fft.
ComplexMatrix cwt_direct(const AudioSignal& signal, const CwtConfig& config);

/// Same output contract as cwt_direct (per-scale correlation with the same
/// sampled truncated kernel), but each scale picks direct evaluation or
/// FFT-based fast convolution by estimated cost, so sparse translations
/// (large translation_step) stay cheap while dense ones use the FFT.
ComplexMatrix cwt_fft(const AudioSignal& signal, const CwtConfig& config);

/// values[a][k] = |X(a,k)|^2, row_coords = scale numbers ascending,
/// time_step = translation_step/fs.
TfMatrix scalogram(const ComplexMatrix& coeffs, const CwtConfig& config,
                   int sample_rate_hz);

/// Nominal center frequency of scale a: (omega0/2*pi) * fs / a. For axis
/// labeling and band selection only — never used in the transform itself.
double scale_to_frequency_hz(double scale, double omega0, int sample_rate_hz);

std::string to_json(const CwtConfig& config);

}  // namespace tfa
