// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/stft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tfa/fft.hpp"

namespace tfa {

namespace {

void check(const StftConfig& c) {
  if (c.frame_size_n == 0) throw std::invalid_argument("frame size must be > 0");
  if (c.hop_size_h == 0 || c.hop_size_h > c.frame_size_n) {
    throw std::invalid_argument("hop size must satisfy 0 < H <= N");
  }
}

ComplexMatrix run_stft(const AudioSignal& sig, const StftConfig& cfg,
                       bool full_spectrum) {
  validate(sig);
  check(cfg);
  const size_t n = cfg.frame_size_n;
  const size_t hop = cfg.hop_size_h;
  const size_t m_total = sig.samples.size();

  size_t cols;
  ptrdiff_t first_start;  // frame 0 start, in signal coordinates
  if (cfg.center_pad) {
    cols = m_total / hop + 1;
    first_start = -static_cast<ptrdiff_t>(n / 2);
  } else {
    if (m_total < n) {
      throw std::invalid_argument(
          "signal shorter than one frame and center padding is off");
    }
    cols = (m_total - n) / hop + 1;
    first_start = 0;
  }

  const std::vector<double> window = make_window(cfg.window, n);
  ComplexMatrix out(full_spectrum ? n : n / 2 + 1, cols);
  std::vector<std::complex<double>> frame(n);
  for (size_t m = 0; m < cols; ++m) {
    const ptrdiff_t start = first_start + static_cast<ptrdiff_t>(m * hop);
    for (size_t i = 0; i < n; ++i) {
      const ptrdiff_t src = start + static_cast<ptrdiff_t>(i);
      const double v = (src >= 0 && src < static_cast<ptrdiff_t>(m_total))
                           ? sig.samples[src]
                           : 0.0;
      frame[i] = v * window[i];
    }
    fft(frame.data(), n);
    for (size_t k = 0; k < out.rows; ++k) out.at(k, m) = frame[k];
  }
  return out;
}

}  // namespace

std::string to_string(WindowKind k) {
  return k == WindowKind::hann ? "hann" : "rectangular";
}

WindowKind window_kind_from_string(const std::string& s) {
  if (s == "hann") return WindowKind::hann;
  if (s == "rectangular") return WindowKind::rectangular;
  throw std::invalid_argument("unknown window kind: " + s);
}

std::vector<double> make_window(WindowKind kind, size_t n) {
  if (n == 0) throw std::invalid_argument("window length must be > 0");
  std::vector<double> w(n, 1.0);
  if (kind == WindowKind::hann) {
    for (size_t i = 0; i < n; ++i) {
      w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * double(i) / double(n)));
    }
  }
  return w;
}

ComplexMatrix stft(const AudioSignal& signal, const StftConfig& config) {
  return run_stft(signal, config, false);
}

ComplexMatrix stft_full_spectrum(const AudioSignal& signal,
                                 const StftConfig& config) {
  return run_stft(signal, config, true);
}

TfMatrix power_spectrogram(const ComplexMatrix& coeffs,
                           const StftConfig& config, int sample_rate_hz) {
  check(config);
  if (sample_rate_hz <= 0) {
    throw std::invalid_argument("sample rate must be positive");
  }
  const size_t n = config.frame_size_n;
  if (coeffs.rows != n / 2 + 1) {
    throw std::invalid_argument("coefficient rows do not match frame size");
  }
  TfMatrix out;
  out.rows = coeffs.rows;
  out.cols = coeffs.cols;
  out.values.resize(out.rows * out.cols);
  for (size_t i = 0; i < coeffs.values.size(); ++i) {
    out.values[i] = std::norm(coeffs.values[i]);
  }
  out.row_axis = RowAxis::frequency_hz;
  out.row_coords.resize(out.rows);
  for (size_t k = 0; k < out.rows; ++k) {
    out.row_coords[k] = double(k) * sample_rate_hz / double(n);
  }
  out.time_step_s = double(config.hop_size_h) / sample_rate_hz;
  out.kind = TfKind::spectrogram;
  validate(out, /*require_nonnegative=*/true);
  return out;
}

std::string to_json(const StftConfig& c) {
  nlohmann::json j;
  j["frame_size_n"] = c.frame_size_n;
  j["hop_size_h"] = c.hop_size_h;
  j["window"] = to_string(c.window);
  j["center_pad"] = c.center_pad;
  return j.dump();
}

}  // namespace tfa
