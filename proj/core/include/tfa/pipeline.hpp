// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tfa/bench.hpp"
#include "tfa/cnn_train.hpp"
#include "tfa/cwt.hpp"
#include "tfa/dataset.hpp"
#include "tfa/metrics.hpp"
#include "tfa/render.hpp"
#include "tfa/stft.hpp"

namespace tfa {

struct PipelineConfig {
  StftConfig stft;
  CwtConfig cwt;
  RenderConfig render;
  TrainConfig train;
  int sample_rate_hz = 16000;
  int runs = 10;
  uint64_t seed = 1;
  double val_fraction = 0.2;
  int jobs = 1;
};

std::string to_json(const PipelineConfig& config);

/// Applies the fields present in `json_text` on top of `base` (missing
/// fields keep their base values), so config files can be partial.
PipelineConfig pipeline_config_from_json(const std::string& json_text,
                                         const PipelineConfig& base = {});

/// One example through the published order of operations: materialize,
/// peak-normalize, transform, dB-scale, color-map.
HeatmapImage render_example(const LabeledExample& example, TransformKind kind,
                            const PipelineConfig& config);

struct RenderedDataset {
  Tensor images;            // (N, H, W, 3), values 0..255
  std::vector<int> labels;  // 1 = abnormal
};

/// Renders every manifest example (worker pool of config.jobs threads;
/// output independent of scheduling).
RenderedDataset render_dataset(const DatasetManifest& manifest,
                               TransformKind kind,
                               const PipelineConfig& config);

/// Writes one PNG per example into out_dir (0000_normal.png, ...) and
/// returns the paths in manifest order.
std::vector<std::string> render_manifest_to_dir(
    const DatasetManifest& manifest, TransformKind kind,
    const PipelineConfig& config, const std::filesystem::path& out_dir);

struct SingleRunResult {
  Model model;
  TrainReport report;
  double val_auc = 0.0;
  uint64_t run_seed = 0;
};

/// One seeded train/eval cycle: run_seed = seed_for(config.seed,
/// "run-<run_index>") fixes the split, weight init, shuffling and dropout.
/// Pass a prerendered dataset to skip rendering when looping over runs.
SingleRunResult run_training_run(const DatasetManifest& manifest,
                                 TransformKind kind,
                                 const PipelineConfig& config, int run_index,
                                 const RenderedDataset* prerendered = nullptr);

/// config.runs seeded train/eval cycles: run i derives run_seed =
/// seed_for(config.seed, "run-i"), which fixes that run's split, weight
/// init, shuffling and dropout — arms that share config.seed therefore
/// train on identical splits. With artifacts_dir set, writes
/// summary_<kind>.json and the run-0 weights.
EvalSummary evaluate_manifest(const DatasetManifest& manifest,
                              TransformKind kind, const PipelineConfig& config,
                              const std::filesystem::path& artifacts_dir = {});

struct CompareOutcome {
  EvalSummary spectrogram;
  EvalSummary scalogram;
  std::string csv;
};

/// Both arms on the same manifest and seeds; writes dataset.jsonl,
/// per-arm summaries/weights, and compare.csv with columns
/// (config, machine_or_family, snr_db, mean_auc, paper_reference_auc).
/// The reference column is filled only for corpus machine types that have
/// published values; synthetic families leave it blank.
CompareOutcome run_compare(const DatasetManifest& manifest,
                           const std::string& machine_or_family,
                           std::optional<double> snr_db,
                           const PipelineConfig& config,
                           const std::filesystem::path& out_dir);

}  // namespace tfa
