// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/demo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tfa/cwt.hpp"
#include "tfa/png_io.hpp"
#include "tfa/stft.hpp"
#include "tfa/synth.hpp"

namespace tfa {

namespace {

// Sums the rows whose coordinate lies in [lo, hi]; one entry per column.
std::vector<double> time_profile(const TfMatrix& m, double lo, double hi) {
  std::vector<double> out(m.cols, 0.0);
  for (size_t r = 0; r < m.rows; ++r) {
    if (m.row_coords[r] < lo || m.row_coords[r] > hi) continue;
    for (size_t c = 0; c < m.cols; ++c) out[c] += m.at(r, c);
  }
  return out;
}

// Averages columns [col_lo, col_hi] for the rows whose coordinate lies in
// [lo, hi]; one entry per kept row, in row order.
std::vector<double> axis_profile(const TfMatrix& m, size_t col_lo,
                                 size_t col_hi, double lo, double hi) {
  col_hi = std::min(col_hi, m.cols - 1);
  if (col_lo > col_hi) throw std::invalid_argument("empty column span");
  std::vector<double> out;
  for (size_t r = 0; r < m.rows; ++r) {
    if (m.row_coords[r] < lo || m.row_coords[r] > hi) continue;
    double acc = 0.0;
    for (size_t c = col_lo; c <= col_hi; ++c) acc += m.at(r, c);
    out.push_back(acc / double(col_hi - col_lo + 1));
  }
  return out;
}

DemoCheck make_check(const std::string& name, int expected,
                     const std::vector<double>& slice, double prominence) {
  DemoCheck check;
  check.name = name;
  check.expected = expected;
  check.counted = count_local_maxima(slice, prominence);
  check.pass = check.counted == expected;
  return check;
}

}  // namespace

int count_local_maxima(const std::vector<double>& slice,
                       double min_prominence) {
  const size_t n = slice.size();
  if (n < 3) return 0;
  const auto [lo_it, hi_it] = std::minmax_element(slice.begin(), slice.end());
  const double range = *hi_it - *lo_it;
  if (!(range > 0.0)) return 0;
  const double threshold = min_prominence * range;

  int count = 0;
  for (size_t i = 0; i < n;) {
    size_t j = i;  // [i, j] is a plateau of equal values
    while (j + 1 < n && slice[j + 1] == slice[i]) ++j;
    const bool left_lower = i > 0 && slice[i - 1] < slice[i];
    const bool right_lower = j + 1 < n && slice[j + 1] < slice[i];
    if (left_lower && right_lower) {
      double left_min = slice[i];
      for (size_t k = i; k-- > 0;) {
        if (slice[k] > slice[i]) break;
        left_min = std::min(left_min, slice[k]);
      }
      double right_min = slice[i];
      for (size_t k = j + 1; k < n; ++k) {
        if (slice[k] > slice[i]) break;
        right_min = std::min(right_min, slice[k]);
      }
      if (slice[i] - std::max(left_min, right_min) >= threshold) ++count;
    }
    i = j + 1;
  }
  return count;
}

HeatmapImage waveform_raster(const AudioSignal& signal, int width,
                             int height) {
  validate(signal);
  if (width < 1 || height < 1) {
    throw std::invalid_argument("raster size must be positive");
  }
  HeatmapImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(size_t(width) * height * 3, 255);

  const double peak = std::max(peak_amplitude(signal), 1e-12);
  const size_t m = signal.samples.size();
  auto to_y = [&](double v) {
    const double unit = std::clamp(v / peak, -1.0, 1.0);
    return int(std::lround((1.0 - unit) * 0.5 * (height - 1)));
  };
  const int mid_y = to_y(0.0);
  for (int x = 0; x < width; ++x) {
    uint8_t* mid = img.px(x, mid_y);
    mid[0] = mid[1] = mid[2] = 200;
  }
  for (int x = 0; x < width; ++x) {
    const size_t lo = size_t(double(x) * m / width);
    size_t hi = size_t(double(x + 1) * m / width);
    hi = std::max(hi, lo + 1);
    double vmin = signal.samples[lo], vmax = vmin;
    for (size_t i = lo; i < std::min(hi, m); ++i) {
      vmin = std::min(vmin, signal.samples[i]);
      vmax = std::max(vmax, signal.samples[i]);
    }
    const int y_top = to_y(vmax), y_bot = to_y(vmin);
    for (int y = y_top; y <= y_bot; ++y) {
      uint8_t* p = img.px(x, y);
      p[0] = 0;
      p[1] = 0;
      p[2] = 128;
    }
  }
  return img;
}

DemoOutcome run_resolution_demo(const std::filesystem::path& out_dir,
                                const ResolutionDemoConfig& config) {
  std::filesystem::create_directories(out_dir);

  SynthSpec spec;
  spec.kind = SynthKind::multi_tone_plus_impulses;
  spec.duration_s = config.duration_s;
  spec.frequencies_hz = {config.tone_a_hz, config.tone_b_hz};
  spec.tone_amplitudes = {1.0, 1.0};
  spec.impulse_times_s = {config.impulse_a_s, config.impulse_b_s};
  spec.impulse_amplitude = 1.0;
  const AudioSignal signal =
      peak_normalize(synthesize(spec, config.sample_rate_hz));

  StftConfig short_cfg{size_t(config.short_frame_n),
                       size_t(config.short_hop_h)};
  StftConfig long_cfg{size_t(config.long_frame_n), size_t(config.long_hop_h)};
  const TfMatrix short_spec = power_spectrogram(stft(signal, short_cfg),
                                                short_cfg,
                                                config.sample_rate_hz);
  const TfMatrix long_spec = power_spectrogram(stft(signal, long_cfg),
                                               long_cfg,
                                               config.sample_rate_hz);
  CwtConfig cwt_cfg;
  cwt_cfg.scale_min = config.scale_min;
  cwt_cfg.scale_max = config.scale_max;
  cwt_cfg.omega0 = config.omega0;
  const TfMatrix scal =
      scalogram(cwt_fft(signal, cwt_cfg), cwt_cfg, config.sample_rate_hz);

  const double nyquist = config.sample_rate_hz / 2.0;
  const double p = config.peak_prominence;
  DemoOutcome out;
  out.checks = {
      make_check("short_window_time_peaks", 2,
                 time_profile(short_spec, config.highband_hz, nyquist), p),
      make_check("short_window_frequency_peaks", 1,
                 axis_profile(short_spec, 0, short_spec.cols - 1,
                              config.tone_band_short_hz[0],
                              config.tone_band_short_hz[1]),
                 p),
      make_check("long_window_frequency_peaks", 2,
                 axis_profile(long_spec, 0, long_spec.cols - 1,
                              config.tone_band_long_hz[0],
                              config.tone_band_long_hz[1]),
                 p),
      make_check("long_window_time_peaks", 1,
                 time_profile(long_spec, config.highband_hz, nyquist), p),
      make_check("scalogram_time_peaks", 2,
                 time_profile(scal, config.scale_min,
                              double(config.impulse_scale_max)),
                 p),
      make_check("scalogram_frequency_peaks", 2,
                 axis_profile(scal, config.ridge_cols[0], config.ridge_cols[1],
                              config.scale_min, config.scale_max),
                 p),
  };
  out.all_pass = std::all_of(out.checks.begin(), out.checks.end(),
                             [](const DemoCheck& c) { return c.pass; });

  const ColorMap map = ColorMap::jet_like();
  auto write_tf = [&](const TfMatrix& m, const std::string& name) {
    const std::string path = (out_dir / name).string();
    save_png(path, render_heatmap(to_db(m), map, 512, 256));
    out.image_paths.push_back(path);
  };
  const std::string wave_path = (out_dir / "waveform.png").string();
  save_png(wave_path, waveform_raster(signal, 512, 160));
  out.image_paths.push_back(wave_path);
  write_tf(short_spec, "spectrogram_short.png");
  write_tf(long_spec, "spectrogram_long.png");
  write_tf(scal, "scalogram.png");

  nlohmann::json verdict;
  verdict["signal"] = {{"sample_rate_hz", config.sample_rate_hz},
                       {"duration_s", config.duration_s},
                       {"tones_hz", {config.tone_a_hz, config.tone_b_hz}},
                       {"impulses_s", {config.impulse_a_s, config.impulse_b_s}}};
  verdict["transforms"] = {
      {"short_window_n", config.short_frame_n},
      {"long_window_n", config.long_frame_n},
      {"omega0", config.omega0},
      {"scales", {config.scale_min, config.scale_max}}};
  auto checks = nlohmann::json::array();
  for (const DemoCheck& c : out.checks) {
    checks.push_back({{"name", c.name},
                      {"expected", c.expected},
                      {"counted", c.counted},
                      {"pass", c.pass}});
  }
  verdict["checks"] = checks;
  verdict["all_pass"] = out.all_pass;
  auto images = nlohmann::json::array();
  for (const std::string& path : out.image_paths) {
    images.push_back(std::filesystem::path(path).filename().string());
  }
  verdict["images"] = images;

  out.verdict_path = (out_dir / "verdict.json").string();
  std::ofstream file(out.verdict_path);
  if (!file) throw std::runtime_error("cannot write " + out.verdict_path);
  file << verdict.dump(2) << "\n";
  return out;
}

}  // namespace tfa
