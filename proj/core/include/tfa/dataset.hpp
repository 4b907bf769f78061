// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfa/audio.hpp"
#include "tfa/synth.hpp"

namespace tfa {

enum class Label { normal = 0, abnormal = 1 };

enum class MachineType {
  fan,
  pump,
  slider,
  valve,
  synth_stationary,
  synth_impulsive,
};

enum class SynthFamily { stationary, impulsive };

std::string to_string(Label l);
std::string to_string(MachineType m);
std::string to_string(SynthFamily f);
Label label_from_string(const std::string& s);
MachineType machine_type_from_string(const std::string& s);
SynthFamily synth_family_from_string(const std::string& s);

struct LabeledExample {
  std::string source;  // WAV path, or an identifier for synthetic examples
  Label label = Label::normal;
  MachineType machine_type = MachineType::fan;
  std::optional<double> snr_db;
  std::optional<SynthSpec> synth;  // inline recipe when the example is synthetic
};

struct DatasetManifest {
  std::vector<LabeledExample> examples;
  uint64_t split_seed = 0;
  double val_fraction = 0.2;
};

/// Published size of the full reference corpus (all machines, one SNR sweep);
/// used only to extrapolate whole-dataset costs in benchmark reports.
inline constexpr size_t kMimiiCorpusFileCount = 18019;

struct MimiiScanOptions {
  // Path-component names that decide the label; anything under neither is
  // skipped. Configurable because corpus layouts vary.
  std::string normal_dir = "normal";
  std::string abnormal_dir = "abnormal";
};

/// Recursively collects .wav files under `root`, labeling each by which of
/// the configured directory components its path contains, in lexicographic
/// path order. Errors on a missing directory or if nothing matched.
DatasetManifest scan_mimii(const std::filesystem::path& root,
                           MachineType machine_type, double snr_db,
                           const MimiiScanOptions& options = {});

/// Balanced two-class synthetic set, n_per_class >= 2 each. Stationary
/// family: normal = harmonics {1,2,3}*f0 at amplitudes {1.0, 0.5, 0.25};
/// abnormal adds an inharmonic 2.37*f0 tone at amplitude 0.4; f0 drawn per
/// example from [140, 160] Hz. Impulsive family: normal = decaying impulse
/// rings every 100 ms +- 2 ms; abnormal turns every second ring into a
/// double impulse 10 ms apart. All examples mixed to snr_db. Deterministic
/// in (args, seed).
DatasetManifest generate_synthetic_dataset(int n_per_class, SynthFamily family,
                                           double snr_db, uint64_t seed,
                                           double duration_s = 1.0);

/// Stratified, seeded (train, validation) split: per label, round(n *
/// val_fraction) examples go to validation (at least 1, at most n-1).
/// Errors if any label has fewer than 2 examples.
std::pair<DatasetManifest, DatasetManifest> split(const DatasetManifest& m);

/// JSON lines, one LabeledExample per line.
void save_manifest(const std::filesystem::path& path, const DatasetManifest& m);
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Synthesizes inline-spec examples at sample_rate_hz; loads WAV-backed
/// examples from disk (their own stored rate wins).
AudioSignal materialize(const LabeledExample& example, int sample_rate_hz);

}  // namespace tfa
