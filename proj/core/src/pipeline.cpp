// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "tfa/png_io.hpp"
#include "tfa/rng.hpp"

namespace tfa {

namespace {

ColorMap colormap_from_json(const nlohmann::json& stops) {
  ColorMap map;
  for (const auto& s : stops) {
    const auto& rgb = s.at("rgb");
    map.stops.push_back({s.at("pos").get<double>(), rgb.at(0).get<uint8_t>(),
                         rgb.at(1).get<uint8_t>(), rgb.at(2).get<uint8_t>()});
  }
  return map;
}

TfMatrix transform_power(const AudioSignal& sig, TransformKind kind,
                         const PipelineConfig& c) {
  if (kind == TransformKind::spectrogram) {
    return power_spectrogram(stft(sig, c.stft), c.stft, c.sample_rate_hz);
  }
  return scalogram(cwt_fft(sig, c.cwt), c.cwt, c.sample_rate_hz);
}

// Runs fn(i) for i in [0, n) on config.jobs threads. Each index writes only
// its own output slots, so results do not depend on scheduling.
void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::optional<double> reference_auc_for(const std::string& machine,
                                        TransformKind kind) {
  for (const auto& row : kReferenceAucByMachine) {
    if (machine == row.machine) {
      return kind == TransformKind::spectrogram ? row.spectrogram
                                                : row.scalogram;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string to_json(const PipelineConfig& c) {
  nlohmann::json j;
  j["stft"] = nlohmann::json::parse(to_json(c.stft));
  j["cwt"] = nlohmann::json::parse(to_json(c.cwt));
  j["render"] = nlohmann::json::parse(to_json(c.render));
  j["train"] = {{"epochs", c.train.epochs},
                {"batch_size", c.train.batch_size},
                {"learning_rate", c.train.learning_rate},
                {"optimizer", to_string(c.train.optimizer)}};
  j["sample_rate_hz"] = c.sample_rate_hz;
  j["runs"] = c.runs;
  j["seed"] = c.seed;
  j["val_fraction"] = c.val_fraction;
  j["jobs"] = c.jobs;
  return j.dump(2);
}

PipelineConfig pipeline_config_from_json(const std::string& json_text,
                                         const PipelineConfig& base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bad pipeline config JSON: ") +
                                e.what());
  }
  PipelineConfig c = base;
  if (j.contains("stft")) {
    const auto& s = j["stft"];
    c.stft.frame_size_n = s.value("frame_size_n", c.stft.frame_size_n);
    c.stft.hop_size_h = s.value("hop_size_h", c.stft.hop_size_h);
    if (s.contains("window")) {
      c.stft.window = window_kind_from_string(s["window"].get<std::string>());
    }
    c.stft.center_pad = s.value("center_pad", c.stft.center_pad);
  }
  if (j.contains("cwt")) {
    const auto& s = j["cwt"];
    c.cwt.scale_min = s.value("scale_min", c.cwt.scale_min);
    c.cwt.scale_max = s.value("scale_max", c.cwt.scale_max);
    c.cwt.translation_step = s.value("translation_step", c.cwt.translation_step);
    c.cwt.omega0 = s.value("omega0", c.cwt.omega0);
    c.cwt.support_radius = s.value("support_radius", c.cwt.support_radius);
  }
  if (j.contains("render")) {
    const auto& s = j["render"];
    c.render.width = s.value("width", c.render.width);
    c.render.height = s.value("height", c.render.height);
    c.render.floor_db = s.value("floor_db", c.render.floor_db);
    if (s.contains("colormap")) c.render.map = colormap_from_json(s["colormap"]);
  }
  if (j.contains("train")) {
    const auto& s = j["train"];
    c.train.epochs = s.value("epochs", c.train.epochs);
    c.train.batch_size = s.value("batch_size", c.train.batch_size);
    c.train.learning_rate = s.value("learning_rate", c.train.learning_rate);
    if (s.contains("optimizer")) {
      c.train.optimizer =
          optimizer_from_string(s["optimizer"].get<std::string>());
    }
  }
  c.sample_rate_hz = j.value("sample_rate_hz", c.sample_rate_hz);
  c.runs = j.value("runs", c.runs);
  c.seed = j.value("seed", c.seed);
  c.val_fraction = j.value("val_fraction", c.val_fraction);
  c.jobs = j.value("jobs", c.jobs);
  return c;
}

HeatmapImage render_example(const LabeledExample& example, TransformKind kind,
                            const PipelineConfig& config) {
  const AudioSignal sig =
      peak_normalize(materialize(example, config.sample_rate_hz));
  const TfMatrix db = to_db(transform_power(sig, kind, config),
                            config.render.floor_db);
  return render_heatmap(db, config.render.map, config.render.width,
                        config.render.height);
}

RenderedDataset render_dataset(const DatasetManifest& manifest,
                               TransformKind kind,
                               const PipelineConfig& config) {
  if (manifest.examples.empty()) throw std::invalid_argument("empty manifest");
  const size_t n = manifest.examples.size();
  const size_t h = config.render.height, w = config.render.width;
  RenderedDataset out;
  out.images = Tensor({n, h, w, 3});
  out.labels.resize(n);
  parallel_for(n, config.jobs, [&](size_t i) {
    const HeatmapImage img = render_example(manifest.examples[i], kind, config);
    double* dst = out.images.data.data() + i * h * w * 3;
    for (size_t p = 0; p < img.pixels.size(); ++p) dst[p] = img.pixels[p];
    out.labels[i] = manifest.examples[i].label == Label::abnormal ? 1 : 0;
  });
  return out;
}

std::vector<std::string> render_manifest_to_dir(
    const DatasetManifest& manifest, TransformKind kind,
    const PipelineConfig& config, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const size_t n = manifest.examples.size();
  std::vector<std::string> paths(n);
  for (size_t i = 0; i < n; ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "%04zu_%s_%s.png", i,
                  to_string(manifest.examples[i].label).c_str(),
                  to_string(kind).c_str());
    paths[i] = (out_dir / name).string();
  }
  parallel_for(n, config.jobs, [&](size_t i) {
    save_png(paths[i], render_example(manifest.examples[i], kind, config));
  });
  return paths;
}

SingleRunResult run_training_run(const DatasetManifest& manifest,
                                 TransformKind kind,
                                 const PipelineConfig& config, int run_index,
                                 const RenderedDataset* prerendered) {
  RenderedDataset local;
  if (!prerendered) {
    local = render_dataset(manifest, kind, config);
    prerendered = &local;
  }
  const RenderedDataset& rendered = *prerendered;
  if (rendered.labels.size() != manifest.examples.size()) {
    throw std::invalid_argument("prerendered dataset does not match manifest");
  }

  std::unordered_map<std::string, size_t> index_of;
  for (size_t i = 0; i < manifest.examples.size(); ++i) {
    if (!index_of.emplace(manifest.examples[i].source, i).second) {
      throw std::invalid_argument("duplicate example source: " +
                                  manifest.examples[i].source);
    }
  }
  auto indices_for = [&](const DatasetManifest& part) {
    std::vector<size_t> idx;
    idx.reserve(part.examples.size());
    for (const LabeledExample& e : part.examples) {
      idx.push_back(index_of.at(e.source));
    }
    return idx;
  };

  SingleRunResult result;
  result.run_seed = seed_for(config.seed, "run-" + std::to_string(run_index));

  DatasetManifest with_seed = manifest;
  with_seed.split_seed = seed_for(result.run_seed, "split");
  with_seed.val_fraction = config.val_fraction;
  const auto [train_part, val_part] = split(with_seed);

  const std::vector<size_t> train_idx = indices_for(train_part);
  const std::vector<size_t> val_idx = indices_for(val_part);
  Tensor train_images = gather_rows(rendered.images, train_idx);
  Tensor val_images = gather_rows(rendered.images, val_idx);
  std::vector<int> train_labels, val_labels;
  for (size_t i : train_idx) train_labels.push_back(rendered.labels[i]);
  for (size_t i : val_idx) val_labels.push_back(rendered.labels[i]);

  result.model = build_model(
      ModelConfig::default_stack(config.render.height, config.render.width),
      seed_for(result.run_seed, "init"));
  TrainConfig tc = config.train;
  tc.seed = seed_for(result.run_seed, "train");
  result.report = train(result.model, train_images, train_labels, val_images,
                        val_labels, tc);

  ScoredLabels scored{predict(result.model, val_images), val_labels};
  result.val_auc = auc_trapezoid(scored);
  return result;
}

EvalSummary evaluate_manifest(const DatasetManifest& manifest,
                              TransformKind kind, const PipelineConfig& config,
                              const std::filesystem::path& artifacts_dir) {
  if (config.runs < 1) throw std::invalid_argument("runs must be >= 1");
  const RenderedDataset rendered = render_dataset(manifest, kind, config);

  std::vector<double> aucs;
  std::vector<uint64_t> run_seeds;
  for (int run = 0; run < config.runs; ++run) {
    const SingleRunResult result =
        run_training_run(manifest, kind, config, run, &rendered);
    run_seeds.push_back(result.run_seed);
    aucs.push_back(result.val_auc);

    if (!artifacts_dir.empty() && run == 0) {
      std::filesystem::create_directories(artifacts_dir);
      save_model(artifacts_dir / ("model_" + to_string(kind) + "_run0.bin"),
                 result.model);
    }
  }

  const EvalSummary summary = aggregate_runs(aucs, run_seeds);
  if (!artifacts_dir.empty()) {
    std::ofstream out(artifacts_dir / ("summary_" + to_string(kind) + ".json"));
    out << to_json(summary) << "\n";
  }
  return summary;
}

CompareOutcome run_compare(const DatasetManifest& manifest,
                           const std::string& machine_or_family,
                           std::optional<double> snr_db,
                           const PipelineConfig& config,
                           const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  save_manifest(out_dir / "dataset.jsonl", manifest);

  CompareOutcome outcome;
  outcome.spectrogram = evaluate_manifest(manifest, TransformKind::spectrogram,
                                          config, out_dir);
  outcome.scalogram =
      evaluate_manifest(manifest, TransformKind::scalogram, config, out_dir);

  std::string csv =
      "config,machine_or_family,snr_db,mean_auc,paper_reference_auc\n";
  for (TransformKind kind :
       {TransformKind::spectrogram, TransformKind::scalogram}) {
    const EvalSummary& s = kind == TransformKind::spectrogram
                               ? outcome.spectrogram
                               : outcome.scalogram;
    csv += to_string(kind) + "," + machine_or_family + ",";
    csv += snr_db ? format_double(*snr_db) : "";
    csv += "," + format_double(s.mean_auc) + ",";
    if (auto ref = reference_auc_for(machine_or_family, kind)) {
      csv += format_double(*ref);
    }
    csv += "\n";
  }
  outcome.csv = csv;
  std::ofstream out(out_dir / "compare.csv");
  if (!out) {
    throw std::runtime_error("cannot write " +
                             (out_dir / "compare.csv").string());
  }
  out << csv;
  return outcome;
}

}  // namespace tfa
