// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace tfa {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatIeeeFloat = 3;
constexpr uint16_t kFormatExtensible = 0xfffe;

struct Reader {
  std::ifstream in;
  std::filesystem::path path;

  void read(void* dst, size_t n) {
    in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (!in) {
      throw WavError("unreadable WAV file (truncated): " + path.string());
    }
  }
  uint32_t u32() {
    unsigned char b[4];
    read(b, 4);
    return b[0] | b[1] << 8 | b[2] << 16 | uint32_t(b[3]) << 24;
  }
  uint16_t u16() {
    unsigned char b[2];
    read(b, 2);
    return static_cast<uint16_t>(b[0] | b[1] << 8);
  }
  void skip(uint32_t n) {
    in.seekg(n, std::ios::cur);
    if (!in) {
      throw WavError("unreadable WAV file (truncated): " + path.string());
    }
  }
};

void put_u32(std::ofstream& out, uint32_t v) {
  char b[4] = {char(v), char(v >> 8), char(v >> 16), char(v >> 24)};
  out.write(b, 4);
}

void put_u16(std::ofstream& out, uint16_t v) {
  char b[2] = {char(v), char(v >> 8)};
  out.write(b, 2);
}

}  // namespace

void validate(const AudioSignal& s) {
  if (s.samples.empty()) {
    throw std::invalid_argument("audio signal has no samples");
  }
  if (s.sample_rate_hz <= 0) {
    throw std::invalid_argument("audio sample rate must be positive");
  }
  for (double v : s.samples) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("audio signal contains a non-finite sample");
    }
  }
}

double peak_amplitude(const AudioSignal& s) {
  double peak = 0.0;
  for (double v : s.samples) peak = std::max(peak, std::abs(v));
  return peak;
}

AudioSignal load_wav(const std::filesystem::path& path) {
  Reader r{std::ifstream(path, std::ios::binary), path};
  if (!r.in) {
    throw WavError("unreadable WAV file (cannot open): " + path.string());
  }

  char riff[4], wave[4];
  r.read(riff, 4);
  r.u32();  // overall size, unused
  r.read(wave, 4);
  if (std::memcmp(riff, "RIFF", 4) != 0 || std::memcmp(wave, "WAVE", 4) != 0) {
    throw WavError("unreadable WAV file (not RIFF/WAVE): " + path.string());
  }

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool have_fmt = false;
  std::vector<unsigned char> payload;
  bool have_data = false;

  while (!have_data) {
    char id[4];
    r.in.read(id, 4);
    if (!r.in) break;  // clean end of file: no data chunk found
    uint32_t size = r.u32();
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) {
        throw WavError("unreadable WAV file (malformed fmt chunk): " +
                       path.string());
      }
      format = r.u16();
      channels = r.u16();
      rate = r.u32();
      r.u32();  // byte rate
      r.u16();  // block align
      bits = r.u16();
      if (format == kFormatExtensible && size >= 40) {
        r.u16();               // extension size
        r.u16();               // valid bits
        r.u32();               // channel mask
        format = r.u16();      // first two bytes of the subformat GUID
        r.skip(size - 16 - 10);
      } else {
        r.skip(size - 16);
      }
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      payload.resize(size);
      if (size > 0) r.read(payload.data(), size);
      have_data = true;
    } else {
      r.skip(size + (size & 1));  // chunks are word-aligned
    }
  }

  if (!have_fmt || !have_data) {
    throw WavError("unreadable WAV file (missing fmt or data chunk): " +
                   path.string());
  }
  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatIeeeFloat && bits == 32;
  if (!pcm16 && !float32) {
    throw WavError("unsupported WAV encoding (format tag " +
                   std::to_string(format) + ", " + std::to_string(bits) +
                   "-bit); only 16-bit PCM and 32-bit float are handled: " +
                   path.string());
  }
  if (channels == 0) {
    throw WavError("unreadable WAV file (zero channels): " + path.string());
  }
  const size_t bytes_per_sample = bits / 8;
  const size_t frame_bytes = bytes_per_sample * channels;
  const size_t frames = payload.size() / frame_bytes;
  if (frames == 0) {
    throw WavError("WAV file has a zero-length payload: " + path.string());
  }

  AudioSignal out;
  out.sample_rate_hz = static_cast<int>(rate);
  out.samples.resize(frames);
  const unsigned char* p = payload.data();
  for (size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (uint16_t c = 0; c < channels; ++c) {
      const unsigned char* q = p + i * frame_bytes + c * bytes_per_sample;
      if (pcm16) {
        int16_t v = static_cast<int16_t>(q[0] | q[1] << 8);
        acc += v / 32768.0;
      } else {
        uint32_t u = q[0] | q[1] << 8 | q[2] << 16 | uint32_t(q[3]) << 24;
        float f;
        std::memcpy(&f, &u, 4);
        acc += f;
      }
    }
    out.samples[i] = acc / channels;
  }
  validate(out);
  return out;
}

void save_wav(const std::filesystem::path& path, const AudioSignal& s) {
  validate(s);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw WavError("cannot open WAV file for writing: " + path.string());
  }
  const uint32_t data_bytes = static_cast<uint32_t>(s.samples.size() * 2);
  out.write("RIFF", 4);
  put_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<uint32_t>(s.sample_rate_hz));
  put_u32(out, static_cast<uint32_t>(s.sample_rate_hz) * 2);
  put_u16(out, 2);   // block align
  put_u16(out, 16);  // bits per sample
  out.write("data", 4);
  put_u32(out, data_bytes);
  for (double v : s.samples) {
    double scaled = std::round(std::clamp(v, -1.0, 1.0) * 32768.0);
    int16_t q = static_cast<int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    char b[2] = {char(uint16_t(q)), char(uint16_t(q) >> 8)};
    out.write(b, 2);
  }
  if (!out) {
    throw WavError("failed writing WAV file: " + path.string());
  }
}

AudioSignal peak_normalize(const AudioSignal& s) {
  validate(s);
  const double peak = peak_amplitude(s);
  if (peak == 0.0) {
    throw std::domain_error(
        "cannot normalize: signal is silent (max |amplitude| = 0, division "
        "by zero)");
  }
  AudioSignal out = s;
  for (double& v : out.samples) v /= peak;
  return out;
}

}  // namespace tfa
