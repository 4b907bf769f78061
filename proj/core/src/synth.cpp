// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tfa/rng.hpp"

namespace tfa {

namespace {

using std::numbers::pi;

void check_below_nyquist(double f, int fs) {
  if (f >= fs / 2.0) {
    throw std::invalid_argument("synth frequency " + std::to_string(f) +
                                " Hz is at or above Nyquist for fs=" +
                                std::to_string(fs));
  }
}

void add_tone(std::vector<double>& x, double f, double amp, int fs) {
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] += amp * std::sin(2.0 * pi * f * (double(i) / fs));
  }
}

// One decaying ring: amp * exp(-t/tau) * sin(2*pi*f*t) from onset_s on.
void add_ring(std::vector<double>& x, double onset_s, const SynthSpec& s,
              int fs) {
  const size_t start = static_cast<size_t>(std::llround(onset_s * fs));
  const size_t span = static_cast<size_t>(std::llround(8.0 * s.ring_decay_s * fs));
  for (size_t i = start; i < x.size() && i <= start + span; ++i) {
    const double t = double(i - start) / fs;
    x[i] += std::exp(-t / s.ring_decay_s) * std::sin(2.0 * pi * s.ring_freq_hz * t);
  }
}

double mean_power(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc / x.size();
}

}  // namespace

std::string to_string(SynthKind k) {
  switch (k) {
    case SynthKind::tone: return "tone";
    case SynthKind::multi_tone_plus_impulses: return "multi_tone_plus_impulses";
    case SynthKind::stationary_machine: return "stationary_machine";
    case SynthKind::impulsive_machine: return "impulsive_machine";
  }
  throw std::logic_error("bad SynthKind");
}

SynthKind synth_kind_from_string(const std::string& s) {
  if (s == "tone") return SynthKind::tone;
  if (s == "multi_tone_plus_impulses") return SynthKind::multi_tone_plus_impulses;
  if (s == "stationary_machine") return SynthKind::stationary_machine;
  if (s == "impulsive_machine") return SynthKind::impulsive_machine;
  throw std::invalid_argument("unknown synth kind: " + s);
}

SynthParts synthesize_parts(const SynthSpec& spec, int sample_rate_hz) {
  if (spec.duration_s <= 0) {
    throw std::invalid_argument("synth duration must be positive");
  }
  if (sample_rate_hz <= 0) {
    throw std::invalid_argument("sample rate must be positive");
  }
  const size_t n = static_cast<size_t>(std::llround(spec.duration_s * sample_rate_hz));
  if (n == 0) {
    throw std::invalid_argument("synth duration shorter than one sample");
  }
  std::vector<double> x(n, 0.0);

  switch (spec.kind) {
    case SynthKind::tone:
    case SynthKind::multi_tone_plus_impulses: {
      for (size_t i = 0; i < spec.frequencies_hz.size(); ++i) {
        const double f = spec.frequencies_hz[i];
        check_below_nyquist(f, sample_rate_hz);
        const double amp =
            i < spec.tone_amplitudes.size() ? spec.tone_amplitudes[i] : 1.0;
        add_tone(x, f, amp, sample_rate_hz);
      }
      for (double t : spec.impulse_times_s) {
        if (t < 0 || t >= spec.duration_s) {
          throw std::invalid_argument("impulse time outside [0, duration)");
        }
        x[static_cast<size_t>(std::llround(t * sample_rate_hz))] +=
            spec.impulse_amplitude;
      }
      break;
    }
    case SynthKind::stationary_machine: {
      if (spec.harmonic_multiples.size() != spec.harmonic_amplitudes.size()) {
        throw std::invalid_argument(
            "harmonic_multiples and harmonic_amplitudes differ in length");
      }
      for (size_t i = 0; i < spec.harmonic_multiples.size(); ++i) {
        const double f = spec.harmonic_multiples[i] * spec.fundamental_hz;
        check_below_nyquist(f, sample_rate_hz);
        add_tone(x, f, spec.harmonic_amplitudes[i], sample_rate_hz);
      }
      break;
    }
    case SynthKind::impulsive_machine: {
      check_below_nyquist(spec.ring_freq_hz, sample_rate_hz);
      if (spec.impulse_period_s <= 0 ||
          spec.impulse_jitter_s >= spec.impulse_period_s) {
        throw std::invalid_argument("impulse period/jitter out of range");
      }
      Rng events(seed_for(spec.seed, "events"));
      // Jitter is applied to each inter-onset interval, so consecutive
      // onsets are period +- jitter apart (not 2x jitter).
      double onset = 0.5 * spec.impulse_period_s +
                     events.uniform(-spec.impulse_jitter_s, spec.impulse_jitter_s);
      for (size_t k = 0; onset < spec.duration_s; ++k) {
        add_ring(x, onset, spec, sample_rate_hz);
        if (spec.double_impulse && k % 2 == 1) {
          add_ring(x, onset + spec.double_spacing_s, spec, sample_rate_hz);
        }
        onset += spec.impulse_period_s +
                 events.uniform(-spec.impulse_jitter_s, spec.impulse_jitter_s);
      }
      break;
    }
  }

  SynthParts parts;
  parts.clean.samples = std::move(x);
  parts.clean.sample_rate_hz = sample_rate_hz;
  parts.noise.assign(n, 0.0);

  if (spec.noise_snr_db) {
    const double p_signal = mean_power(parts.clean.samples);
    if (p_signal == 0.0) {
      throw std::domain_error("cannot set an SNR against a silent signal");
    }
    Rng noise(seed_for(spec.seed, "noise"));
    for (double& v : parts.noise) v = noise.gaussian();
    // Scale by the measured (not nominal) noise power so the realized
    // 10*log10(P_signal/P_noise) hits the target exactly.
    const double p_target = p_signal * std::pow(10.0, -*spec.noise_snr_db / 10.0);
    const double gain = std::sqrt(p_target / mean_power(parts.noise));
    for (double& v : parts.noise) v *= gain;
  }
  return parts;
}

AudioSignal synthesize(const SynthSpec& spec, int sample_rate_hz) {
  SynthParts parts = synthesize_parts(spec, sample_rate_hz);
  AudioSignal out = std::move(parts.clean);
  for (size_t i = 0; i < out.samples.size(); ++i) out.samples[i] += parts.noise[i];
  validate(out);
  return out;
}

std::string to_json(const SynthSpec& s) {
  nlohmann::json j;
  j["kind"] = to_string(s.kind);
  j["duration_s"] = s.duration_s;
  j["seed"] = s.seed;
  j["frequencies_hz"] = s.frequencies_hz;
  j["tone_amplitudes"] = s.tone_amplitudes;
  j["impulse_times_s"] = s.impulse_times_s;
  j["impulse_amplitude"] = s.impulse_amplitude;
  j["fundamental_hz"] = s.fundamental_hz;
  j["harmonic_multiples"] = s.harmonic_multiples;
  j["harmonic_amplitudes"] = s.harmonic_amplitudes;
  j["impulse_period_s"] = s.impulse_period_s;
  j["impulse_jitter_s"] = s.impulse_jitter_s;
  j["ring_decay_s"] = s.ring_decay_s;
  j["ring_freq_hz"] = s.ring_freq_hz;
  j["double_impulse"] = s.double_impulse;
  j["double_spacing_s"] = s.double_spacing_s;
  if (s.noise_snr_db) {
    j["noise_snr_db"] = *s.noise_snr_db;
  } else {
    j["noise_snr_db"] = nullptr;
  }
  return j.dump();
}

SynthSpec synth_spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bad synth spec JSON: ") + e.what());
  }
  SynthSpec s;
  s.kind = synth_kind_from_string(j.at("kind").get<std::string>());
  s.duration_s = j.value("duration_s", s.duration_s);
  s.seed = j.value("seed", s.seed);
  s.frequencies_hz = j.value("frequencies_hz", s.frequencies_hz);
  s.tone_amplitudes = j.value("tone_amplitudes", s.tone_amplitudes);
  s.impulse_times_s = j.value("impulse_times_s", s.impulse_times_s);
  s.impulse_amplitude = j.value("impulse_amplitude", s.impulse_amplitude);
  s.fundamental_hz = j.value("fundamental_hz", s.fundamental_hz);
  s.harmonic_multiples = j.value("harmonic_multiples", s.harmonic_multiples);
  s.harmonic_amplitudes = j.value("harmonic_amplitudes", s.harmonic_amplitudes);
  s.impulse_period_s = j.value("impulse_period_s", s.impulse_period_s);
  s.impulse_jitter_s = j.value("impulse_jitter_s", s.impulse_jitter_s);
  s.ring_decay_s = j.value("ring_decay_s", s.ring_decay_s);
  s.ring_freq_hz = j.value("ring_freq_hz", s.ring_freq_hz);
  s.double_impulse = j.value("double_impulse", s.double_impulse);
  s.double_spacing_s = j.value("double_spacing_s", s.double_spacing_s);
  if (j.contains("noise_snr_db") && !j["noise_snr_db"].is_null()) {
    s.noise_snr_db = j["noise_snr_db"].get<double>();
  }
  return s;
}

}  // namespace tfa
