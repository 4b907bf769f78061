// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfa {

/// Discrete real-valued waveform. Samples are dimensionless amplitudes,
/// nominally in [-1, 1].
struct AudioSignal {
  std::vector<double> samples;
  int sample_rate_hz = 0;

  size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

struct WavError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument unless the signal is non-empty, finite and
/// has a positive sample rate.
void validate(const AudioSignal& s);

double peak_amplitude(const AudioSignal& s);

/// Reads a PCM WAV file (16-bit integer or 32-bit float). Multichannel
/// input is downmixed to mono by arithmetic mean; 16-bit samples are
/// scaled to [-1, 1] by dividing by 32768.
///
/// Throws WavError with a distinct message for an unreadable file, an
/// unsupported encoding, and a zero-length payload.
AudioSignal load_wav(const std::filesystem::path& path);

/// Writes mono 16-bit PCM. Samples are clamped to [-1, 1] and scaled by
/// 32768 (the inverse of load_wav's scaling), so values on the 16-bit grid
/// round-trip exactly.
void save_wav(const std::filesystem::path& path, const AudioSignal& s);

/// Divides every sample by max(|samples|) so the output peak is exactly 1.
/// Throws std::domain_error on an all-zero signal: a silent input has no
/// peak to normalize by, and passing zeros through would poison every
/// downstream heatmap.
AudioSignal peak_normalize(const AudioSignal& s);

}  // namespace tfa
