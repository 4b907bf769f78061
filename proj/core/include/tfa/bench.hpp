// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <string>
#include <vector>

#include "tfa/audio.hpp"
#include "tfa/cwt.hpp"
#include "tfa/dataset.hpp"
#include "tfa/stft.hpp"

namespace tfa {

enum class TransformKind { spectrogram, scalogram };

std::string to_string(TransformKind k);
TransformKind transform_kind_from_string(const std::string& s);

struct BenchResult {
  TransformKind kind = TransformKind::spectrogram;
  std::string label;
  size_t signal_length = 0;
  int repeats = 0;
  std::vector<double> times_s;
  double median_s = 0.0;
  double mean_s = 0.0;
};

struct TransformConfigs {
  StftConfig stft;
  CwtConfig cwt;
  int sample_rate_hz = 16000;
};

/// Times transform + energy-matrix computation (no rendering, no I/O) on a
/// monotonic clock: one discarded warmup, then `repeats` >= 3 measured
/// runs. The scalogram arm uses the production (fast) transform path.
BenchResult time_transform(TransformKind kind, const AudioSignal& signal,
                           const TransformConfigs& configs, int repeats = 5);

/// Single-file times reported by the reference study on its hardware, and
/// its whole-corpus extrapolations; printed alongside measurements for
/// orientation, never asserted. The study's whole-dataset deviation cell
/// repeats the scalogram total (392,814.2) instead of the difference of its
/// own totals (382,363.18); reports note this and always compute deviations
/// by subtraction.
inline constexpr double kReferenceSingleSpectrogramS = 0.58;
inline constexpr double kReferenceSingleScalogramS = 22.38;
inline constexpr double kReferenceTotalSpectrogramS = 10451.02;
inline constexpr double kReferenceTotalScalogramS = 392814.2;
inline constexpr double kReferenceReportedTotalDeviationS = 392814.2;

struct BenchReport {
  std::string csv;
  std::string json;
};

/// Medians per result, scalogram/spectrogram ratios, and whole-dataset
/// extrapolation (median * file_count) per result.
BenchReport bench_report(const std::vector<BenchResult>& results,
                         size_t file_count = kMimiiCorpusFileCount);

}  // namespace tfa
