// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tfa/audio.hpp"
#include "tfa/render.hpp"

namespace tfa {

/// Fixed test signal and analysis settings for the resolution demo: two
/// close tones plus two close impulses, analyzed with a short window, a
/// long window, and a wavelet transform. The windows are chosen so each
/// STFT resolves exactly one structure; omega0 = 12 narrows the wavelet's
/// frequency response enough to separate the tone ridges while small
/// scales still localize the impulses.
struct ResolutionDemoConfig {
  int sample_rate_hz = 16000;
  double duration_s = 1.0;
  double tone_a_hz = 500.0;
  double tone_b_hz = 600.0;
  double impulse_a_s = 0.48;
  double impulse_b_s = 0.52;

  int short_frame_n = 64;
  int short_hop_h = 32;
  int long_frame_n = 2048;
  int long_hop_h = 1024;

  double omega0 = 12.0;
  int scale_min = 4;  // keeps the wavelet center frequency below Nyquist
  int scale_max = 131;

  // Peak counting: a local maximum counts only if its prominence is at
  // least this fraction of the slice's value range.
  double peak_prominence = 0.2;

  // Slice bounds. Time profiles sum rows whose frequency is above
  // highband_hz (tone-free); tone profiles average columns within a
  // frequency band around the tones; the ridge profile averages columns in
  // an impulse-free interval.
  double highband_hz = 2000.0;
  double tone_band_short_hz[2] = {250.0, 1000.0};
  double tone_band_long_hz[2] = {300.0, 800.0};
  int impulse_scale_max = 8;
  size_t ridge_cols[2] = {1000, 6000};
};

struct DemoCheck {
  std::string name;
  int expected = 0;
  int counted = 0;
  bool pass = false;
};

struct DemoOutcome {
  std::vector<DemoCheck> checks;
  bool all_pass = false;
  std::vector<std::string> image_paths;  // waveform, short, long, scalogram
  std::string verdict_path;
};

/// Counts interior local maxima whose prominence is at least
/// min_prominence * (max - min) of the slice. Prominence is the height
/// above the higher of the two key saddles; a side's saddle is the lowest
/// sample before the first strictly higher one (or the slice edge).
/// Plateaus count once; slice endpoints never count.
int count_local_maxima(const std::vector<double>& slice, double min_prominence);

/// Renders the signal as a min/max-per-column line raster.
HeatmapImage waveform_raster(const AudioSignal& signal, int width, int height);

/// Builds the two-tone/two-impulse signal, runs all three transforms,
/// writes four PNGs plus verdict.json into out_dir, and returns the peak
/// counts: the short window must resolve the impulse pair but merge the
/// tones, the long window the reverse, and the scalogram must resolve both.
DemoOutcome run_resolution_demo(const std::filesystem::path& out_dir,
                                const ResolutionDemoConfig& config = {});

}  // namespace tfa
