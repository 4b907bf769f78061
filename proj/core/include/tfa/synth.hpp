// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tfa/audio.hpp"

namespace tfa {

enum class SynthKind {
  tone,
  multi_tone_plus_impulses,
  stationary_machine,
  impulsive_machine,
};

std::string to_string(SynthKind k);
SynthKind synth_kind_from_string(const std::string& s);

/// Recipe for a deterministic test/demo/dataset signal. Only the fields
/// belonging to `kind` are consulted; the rest keep their defaults.
struct SynthSpec {
  SynthKind kind = SynthKind::tone;
  double duration_s = 1.0;
  uint64_t seed = 0;

  // tone / multi_tone_plus_impulses
  std::vector<double> frequencies_hz = {1000.0};
  std::vector<double> tone_amplitudes = {};  // defaults to 1.0 each
  std::vector<double> impulse_times_s = {};
  double impulse_amplitude = 1.0;

  // stationary_machine: harmonic_multiples[i] * fundamental_hz at
  // harmonic_amplitudes[i].
  double fundamental_hz = 150.0;
  std::vector<double> harmonic_multiples = {1.0, 2.0, 3.0};
  std::vector<double> harmonic_amplitudes = {1.0, 0.5, 0.25};

  // impulsive_machine: decaying rings every period +- uniform jitter. The
  // short default decay keeps each ring broadband (click-like), so it
  // excites a wide range of analysis scales, not just the carrier.
  double impulse_period_s = 0.1;
  double impulse_jitter_s = 0.002;
  double ring_decay_s = 0.0005;
  double ring_freq_hz = 3000.0;
  bool double_impulse = false;      // every second ring becomes a pair
  double double_spacing_s = 0.010;  // gap inside the pair

  std::optional<double> noise_snr_db;

  bool operator==(const SynthSpec&) const = default;
};

/// Clean signal plus the (already SNR-scaled) noise that synthesize() adds
/// on top. Exposed so tests can measure realized signal/noise powers
/// independently of the mixed output.
struct SynthParts {
  AudioSignal clean;
  std::vector<double> noise;  // same length as clean; all zero without SNR
};

/// Deterministic synthesis: same (spec, sample_rate_hz) gives bit-identical
/// output. Event placement and noise use independent seed streams, so
/// clearing noise_snr_db does not move any impulse.
SynthParts synthesize_parts(const SynthSpec& spec, int sample_rate_hz);
AudioSignal synthesize(const SynthSpec& spec, int sample_rate_hz);

std::string to_json(const SynthSpec& spec);
SynthSpec synth_spec_from_json(const std::string& json_text);

}  // namespace tfa
