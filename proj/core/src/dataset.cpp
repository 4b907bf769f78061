// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tfa/rng.hpp"

namespace tfa {

std::string to_string(Label l) {
  return l == Label::normal ? "normal" : "abnormal";
}

std::string to_string(MachineType m) {
  switch (m) {
    case MachineType::fan: return "fan";
    case MachineType::pump: return "pump";
    case MachineType::slider: return "slider";
    case MachineType::valve: return "valve";
    case MachineType::synth_stationary: return "synth_stationary";
    case MachineType::synth_impulsive: return "synth_impulsive";
  }
  throw std::logic_error("bad MachineType");
}

std::string to_string(SynthFamily f) {
  return f == SynthFamily::stationary ? "stationary" : "impulsive";
}

Label label_from_string(const std::string& s) {
  if (s == "normal") return Label::normal;
  if (s == "abnormal") return Label::abnormal;
  throw std::invalid_argument("unknown label: " + s);
}

MachineType machine_type_from_string(const std::string& s) {
  if (s == "fan") return MachineType::fan;
  if (s == "pump") return MachineType::pump;
  if (s == "slider") return MachineType::slider;
  if (s == "valve") return MachineType::valve;
  if (s == "synth_stationary") return MachineType::synth_stationary;
  if (s == "synth_impulsive") return MachineType::synth_impulsive;
  throw std::invalid_argument("unknown machine type: " + s);
}

SynthFamily synth_family_from_string(const std::string& s) {
  if (s == "stationary") return SynthFamily::stationary;
  if (s == "impulsive") return SynthFamily::impulsive;
  throw std::invalid_argument("unknown synth family: " + s);
}

DatasetManifest scan_mimii(const std::filesystem::path& root,
                           MachineType machine_type, double snr_db,
                           const MimiiScanOptions& options) {
  if (!std::filesystem::is_directory(root)) {
    throw std::runtime_error("dataset directory does not exist: " +
                             root.string());
  }
  DatasetManifest m;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext != ".wav") continue;
    std::optional<Label> label;
    for (const auto& part : entry.path()) {
      if (part == options.abnormal_dir) label = Label::abnormal;
      else if (part == options.normal_dir && !label) label = Label::normal;
    }
    if (!label) continue;
    m.examples.push_back({entry.path().string(), *label, machine_type, snr_db,
                          std::nullopt});
  }
  if (m.examples.empty()) {
    throw std::runtime_error("no files found under " + root.string());
  }
  std::sort(m.examples.begin(), m.examples.end(),
            [](const auto& a, const auto& b) { return a.source < b.source; });
  return m;
}

DatasetManifest generate_synthetic_dataset(int n_per_class, SynthFamily family,
                                           double snr_db, uint64_t seed,
                                           double duration_s) {
  if (n_per_class < 2) {
    throw std::invalid_argument("need at least 2 examples per class");
  }
  DatasetManifest m;
  m.split_seed = seed;
  for (Label label : {Label::normal, Label::abnormal}) {
    for (int i = 0; i < n_per_class; ++i) {
      const std::string id = to_string(family) + ":" + to_string(label) + ":" +
                             (i < 10 ? "000" : i < 100 ? "00" : i < 1000 ? "0" : "") +
                             std::to_string(i);
      SynthSpec spec;
      spec.duration_s = duration_s;
      spec.seed = seed_for(seed, "example-" + id);
      spec.noise_snr_db = snr_db;
      if (family == SynthFamily::stationary) {
        Rng f0(seed_for(seed, "f0-" + id));
        spec.kind = SynthKind::stationary_machine;
        spec.fundamental_hz = f0.uniform(140.0, 160.0);
        if (label == Label::abnormal) {
          spec.harmonic_multiples.push_back(2.37);
          spec.harmonic_amplitudes.push_back(0.4);
        }
      } else {
        spec.kind = SynthKind::impulsive_machine;
        spec.double_impulse = label == Label::abnormal;
      }
      m.examples.push_back({"synth:" + id, label,
                            family == SynthFamily::stationary
                                ? MachineType::synth_stationary
                                : MachineType::synth_impulsive,
                            snr_db, spec});
    }
  }
  return m;
}

std::pair<DatasetManifest, DatasetManifest> split(const DatasetManifest& m) {
  if (m.examples.empty()) throw std::invalid_argument("empty manifest");
  if (!(m.val_fraction > 0.0 && m.val_fraction < 1.0)) {
    throw std::invalid_argument("val_fraction must lie in (0, 1)");
  }
  DatasetManifest train{{}, m.split_seed, m.val_fraction};
  DatasetManifest val{{}, m.split_seed, m.val_fraction};
  std::vector<bool> in_val(m.examples.size(), false);
  for (Label label : {Label::normal, Label::abnormal}) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < m.examples.size(); ++i) {
      if (m.examples[i].label == label) idx.push_back(i);
    }
    if (idx.size() < 2) {
      throw std::invalid_argument("label '" + to_string(label) +
                                  "' has fewer than 2 examples");
    }
    Rng rng(seed_for(m.split_seed, "split-" + to_string(label)));
    for (size_t i = idx.size() - 1; i > 0; --i) {
      std::swap(idx[i], idx[rng.below(i + 1)]);
    }
    size_t n_val = static_cast<size_t>(
        std::llround(m.val_fraction * double(idx.size())));
    n_val = std::clamp<size_t>(n_val, 1, idx.size() - 1);
    for (size_t i = 0; i < n_val; ++i) in_val[idx[i]] = true;
  }
  for (size_t i = 0; i < m.examples.size(); ++i) {
    (in_val[i] ? val : train).examples.push_back(m.examples[i]);
  }
  return {std::move(train), std::move(val)};
}

void save_manifest(const std::filesystem::path& path,
                   const DatasetManifest& m) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  for (const LabeledExample& e : m.examples) {
    nlohmann::json j;
    j["source"] = e.source;
    j["label"] = to_string(e.label);
    j["machine_type"] = to_string(e.machine_type);
    if (e.snr_db) j["snr_db"] = *e.snr_db; else j["snr_db"] = nullptr;
    if (e.synth) j["synth"] = nlohmann::json::parse(to_json(*e.synth));
    out << j.dump() << "\n";
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  DatasetManifest m;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error("bad manifest line " + std::to_string(lineno) +
                               " in " + path.string() + ": " + e.what());
    }
    LabeledExample e;
    e.source = j.at("source").get<std::string>();
    e.label = label_from_string(j.at("label").get<std::string>());
    e.machine_type =
        machine_type_from_string(j.at("machine_type").get<std::string>());
    if (j.contains("snr_db") && !j["snr_db"].is_null()) {
      e.snr_db = j["snr_db"].get<double>();
    }
    if (j.contains("synth")) e.synth = synth_spec_from_json(j["synth"].dump());
    m.examples.push_back(std::move(e));
  }
  return m;
}

AudioSignal materialize(const LabeledExample& example, int sample_rate_hz) {
  if (example.synth) return synthesize(*example.synth, sample_rate_hz);
  return load_wav(example.source);
}

}  // namespace tfa
