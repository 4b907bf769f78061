// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tfa/audio.hpp"
#include "tfa/tf_matrix.hpp"

namespace tfa {

enum class WindowKind { hann, rectangular };

std::string to_string(WindowKind k);
WindowKind window_kind_from_string(const std::string& s);

struct StftConfig {
  size_t frame_size_n = 1024;
  size_t hop_size_h = 512;  // conventional default: half the frame
  WindowKind window = WindowKind::hann;
  bool center_pad = true;
};

/// hann is the periodic form w[i] = 0.5 * (1 - cos(2*pi*i/n)); rectangular
/// is all ones.
std::vector<double> make_window(WindowKind kind, size_t n);

/// Windowed hopped DFT keeping bins k = 0..N/2 (rows) over frames (cols).
/// With center_pad the signal is zero-padded by N/2 on each side and frames
/// start at m*H in the padded signal for m = 0..floor(M/H), so the output
/// has floor(M/H)+1 columns; without padding, frames must lie entirely
/// inside the signal.
ComplexMatrix stft(const AudioSignal& signal, const StftConfig& config);

/// Same framing but keeps all N bins; used where the two-sided spectrum is
/// needed (e.g. energy bookkeeping).
ComplexMatrix stft_full_spectrum(const AudioSignal& signal,
                                 const StftConfig& config);

/// values[k][m] = |X(m,k)|^2, row_coords[k] = k*fs/N, time_step = H/fs.
TfMatrix power_spectrogram(const ComplexMatrix& coeffs,
                           const StftConfig& config, int sample_rate_hz);

std::string to_json(const StftConfig& config);

}  // namespace tfa
