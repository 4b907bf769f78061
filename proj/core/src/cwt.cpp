// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/cwt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "tfa/fft.hpp"

namespace tfa {

namespace {

void check(const CwtConfig& c) {
  if (c.scale_min < 1) throw std::invalid_argument("scale_min must be >= 1");
  if (c.scale_max <= c.scale_min) {
    throw std::invalid_argument("scale_max must exceed scale_min");
  }
  if (c.translation_step == 0) {
    throw std::invalid_argument("translation_step must be >= 1");
  }
  if (c.support_radius <= 0) {
    throw std::invalid_argument("support_radius must be positive");
  }
}

// Sampled correlation kernel for one scale: h[d+R] = (1/sqrt(a)) *
// psi*(d/a) for d in [-R, R]. Split into real/imag parts for the hot loop.
struct Kernel {
  ptrdiff_t radius;
  std::vector<double> re, im;
};

Kernel make_kernel(int scale, const CwtConfig& cfg) {
  Kernel k;
  k.radius = static_cast<ptrdiff_t>(cfg.support_radius * scale);
  const size_t len = 2 * k.radius + 1;
  k.re.resize(len);
  k.im.resize(len);
  const double norm = 1.0 / std::sqrt(double(scale));
  for (ptrdiff_t d = -k.radius; d <= k.radius; ++d) {
    const std::complex<double> v =
        norm * std::conj(wavelet_eval(double(d) / scale, cfg.omega0));
    k.re[d + k.radius] = v.real();
    k.im[d + k.radius] = v.imag();
  }
  return k;
}

void correlate_direct(const std::vector<double>& x, const Kernel& k,
                      size_t step, std::complex<double>* row, size_t ncols) {
  const ptrdiff_t m = static_cast<ptrdiff_t>(x.size());
  for (size_t col = 0; col < ncols; ++col) {
    const ptrdiff_t t = static_cast<ptrdiff_t>(col * step);
    const ptrdiff_t lo = std::max<ptrdiff_t>(-k.radius, -t);
    const ptrdiff_t hi = std::min<ptrdiff_t>(k.radius, m - 1 - t);
    double acc_re = 0.0, acc_im = 0.0;
    const double* xs = x.data() + t;
    const double* kr = k.re.data() + k.radius;
    const double* ki = k.im.data() + k.radius;
    for (ptrdiff_t d = lo; d <= hi; ++d) {
      acc_re += xs[d] * kr[d];
      acc_im += xs[d] * ki[d];
    }
    row[col] = {acc_re, acc_im};
  }
}

// y(k) = (x conv g)(k + R) with g the reversed kernel; one circular FFT
// convolution sized to hold the full linear convolution.
void correlate_fft(const std::vector<std::complex<double>>& x_spectrum,
                   size_t fft_len, const Kernel& k, size_t step,
                   std::complex<double>* row, size_t ncols) {
  std::vector<std::complex<double>> g(fft_len, 0.0);
  const size_t len = 2 * k.radius + 1;
  for (size_t i = 0; i < len; ++i) {
    g[i] = {k.re[len - 1 - i], k.im[len - 1 - i]};
  }
  fft(g.data(), fft_len);
  for (size_t i = 0; i < fft_len; ++i) g[i] *= x_spectrum[i];
  ifft(g.data(), fft_len);
  for (size_t col = 0; col < ncols; ++col) {
    row[col] = g[col * step + k.radius];
  }
}

ComplexMatrix run_cwt(const AudioSignal& sig, const CwtConfig& cfg,
                      bool allow_fft) {
  validate(sig);
  check(cfg);
  const size_t m = sig.samples.size();
  const size_t step = cfg.translation_step;
  const size_t ncols = (m + step - 1) / step;
  const size_t nrows = static_cast<size_t>(cfg.scale_max - cfg.scale_min + 1);
  ComplexMatrix out(nrows, ncols);

  // One signal spectrum, sized for the largest kernel, serves every scale
  // that takes the FFT route.
  const ptrdiff_t max_radius =
      static_cast<ptrdiff_t>(cfg.support_radius * cfg.scale_max);
  const size_t fft_len = next_pow2(m + 2 * static_cast<size_t>(max_radius));
  std::vector<std::complex<double>> x_spectrum;

  for (int scale = cfg.scale_min; scale <= cfg.scale_max; ++scale) {
    const Kernel kernel = make_kernel(scale, cfg);
    std::complex<double>* row =
        out.values.data() + size_t(scale - cfg.scale_min) * ncols;

    const double taps = double(2 * kernel.radius + 1);
    const double direct_cost = double(ncols) * taps * 4.0;
    const double lg = std::log2(double(fft_len));
    const double fft_cost = 10.0 * fft_len * lg + 6.0 * fft_len;
    if (allow_fft && fft_cost < direct_cost) {
      if (x_spectrum.empty()) {
        x_spectrum.assign(fft_len, 0.0);
        for (size_t i = 0; i < m; ++i) x_spectrum[i] = sig.samples[i];
        fft(x_spectrum.data(), fft_len);
      }
      correlate_fft(x_spectrum, fft_len, kernel, step, row, ncols);
    } else {
      correlate_direct(sig.samples, kernel, step, row, ncols);
    }
  }
  return out;
}

}  // namespace

std::complex<double> wavelet_eval(double t, double omega0) {
  constexpr double quartic_root_pi = 0.7511255444649425;  // pi^(-1/4)
  const double envelope = quartic_root_pi * std::exp(-0.5 * t * t);
  return {envelope * std::cos(omega0 * t), envelope * std::sin(omega0 * t)};
}

ComplexMatrix cwt_direct(const AudioSignal& signal, const CwtConfig& config) {
  return run_cwt(signal, config, /*allow_fft=*/false);
}

ComplexMatrix cwt_fft(const AudioSignal& signal, const CwtConfig& config) {
  return run_cwt(signal, config, /*allow_fft=*/true);
}

TfMatrix scalogram(const ComplexMatrix& coeffs, const CwtConfig& config,
                   int sample_rate_hz) {
  check(config);
  if (sample_rate_hz <= 0) {
    throw std::invalid_argument("sample rate must be positive");
  }
  const size_t nrows = static_cast<size_t>(config.scale_max - config.scale_min + 1);
  if (coeffs.rows != nrows) {
    throw std::invalid_argument("coefficient rows do not match scale range");
  }
  TfMatrix out;
  out.rows = coeffs.rows;
  out.cols = coeffs.cols;
  out.values.resize(out.rows * out.cols);
  for (size_t i = 0; i < coeffs.values.size(); ++i) {
    out.values[i] = std::norm(coeffs.values[i]);
  }
  out.row_axis = RowAxis::scale;
  out.row_coords.resize(nrows);
  for (size_t i = 0; i < nrows; ++i) {
    out.row_coords[i] = double(config.scale_min + int(i));
  }
  out.time_step_s = double(config.translation_step) / sample_rate_hz;
  out.kind = TfKind::scalogram;
  validate(out, /*require_nonnegative=*/true);
  return out;
}

double scale_to_frequency_hz(double scale, double omega0, int sample_rate_hz) {
  return omega0 / (2.0 * std::numbers::pi) * sample_rate_hz / scale;
}

std::string to_json(const CwtConfig& c) {
  nlohmann::json j;
  j["scale_min"] = c.scale_min;
  j["scale_max"] = c.scale_max;
  j["translation_step"] = c.translation_step;
  j["wavelet"] = "analytic_morlet";
  j["omega0"] = c.omega0;
  j["support_radius"] = c.support_radius;
  return j.dump();
}

}  // namespace tfa
