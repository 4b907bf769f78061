// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tfa/audio.hpp"
#include "tfa/bench.hpp"
#include "tfa/cwt.hpp"
#include "tfa/dataset.hpp"
#include "tfa/demo.hpp"
#include "tfa/metrics.hpp"
#include "tfa/pipeline.hpp"
#include "tfa/png_io.hpp"
#include "tfa/render.hpp"
#include "tfa/rng.hpp"
#include "tfa/stft.hpp"
#include "tfa/synth.hpp"
#include "tfa/tfm_io.hpp"

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

bool set_by_user(const CLI::Option* o) { return o && o->count() > 0; }

// Staging area for the flags shared by the pipeline subcommands. Values are
// resolved in three layers: library defaults, then the --config file (also
// reachable via TFA_CONFIG), then any flag the user actually passed.
struct PipelineCli {
  std::string config_path;
  tfa::PipelineConfig v;
  std::string window_name = "hann";

  CLI::Option* o_n = nullptr;
  CLI::Option* o_hop = nullptr;
  CLI::Option* o_window = nullptr;
  CLI::Option* o_scale_min = nullptr;
  CLI::Option* o_scale_max = nullptr;
  CLI::Option* o_step = nullptr;
  CLI::Option* o_omega0 = nullptr;
  CLI::Option* o_width = nullptr;
  CLI::Option* o_height = nullptr;
  CLI::Option* o_floor_db = nullptr;
  CLI::Option* o_epochs = nullptr;
  CLI::Option* o_batch = nullptr;
  CLI::Option* o_lr = nullptr;
  CLI::Option* o_runs = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_val_fraction = nullptr;
  CLI::Option* o_jobs = nullptr;
  CLI::Option* o_sample_rate = nullptr;

  void add_config(CLI::App* c) {
    c->add_option("--config", config_path,
                  "JSON pipeline config file (flags override its values)")
        ->envname("TFA_CONFIG")
        ->check(CLI::ExistingFile);
  }

  void add_stft(CLI::App* c) {
    o_n = c->add_option("--n", v.stft.frame_size_n, "STFT frame size N");
    o_hop = c->add_option("--hop", v.stft.hop_size_h, "STFT hop size H");
    o_window = c->add_option("--window", window_name,
                             "STFT window: hann or rectangular");
  }

  void add_cwt(CLI::App* c) {
    o_scale_min = c->add_option("--scale-min", v.cwt.scale_min,
                                "smallest wavelet scale");
    o_scale_max = c->add_option("--scale-max", v.cwt.scale_max,
                                "largest wavelet scale (inclusive)");
    o_step = c->add_option("--step", v.cwt.translation_step,
                           "wavelet translation step in samples");
    o_omega0 = c->add_option("--omega0", v.cwt.omega0,
                             "wavelet center frequency (rad)");
  }

  void add_render(CLI::App* c) {
    o_width = c->add_option("--width", v.render.width, "output image width");
    o_height =
        c->add_option("--height", v.render.height, "output image height");
    o_floor_db = c->add_option("--floor-db", v.render.floor_db,
                               "dB range kept below the per-image maximum");
  }

  void add_train(CLI::App* c) {
    o_epochs = c->add_option("--epochs", v.train.epochs, "training epochs");
    o_batch = c->add_option("--batch", v.train.batch_size, "mini-batch size");
    o_lr = c->add_option("--lr", v.train.learning_rate, "learning rate");
  }

  void add_eval(CLI::App* c) {
    o_runs = c->add_option("--runs", v.runs, "seeded train/eval cycles");
    o_seed = c->add_option("--seed", v.seed, "root seed");
    o_val_fraction = c->add_option("--val-fraction", v.val_fraction,
                                   "validation fraction of each class");
    o_jobs = c->add_option("--jobs", v.jobs, "render worker threads");
    o_sample_rate = c->add_option("--sample-rate", v.sample_rate_hz,
                                  "sample rate for synthetic examples");
  }

  tfa::PipelineConfig resolve() const {
    tfa::PipelineConfig c;
    if (!config_path.empty()) {
      c = tfa::pipeline_config_from_json(read_file(config_path));
    }
    if (set_by_user(o_n)) c.stft.frame_size_n = v.stft.frame_size_n;
    if (set_by_user(o_hop)) c.stft.hop_size_h = v.stft.hop_size_h;
    if (set_by_user(o_window)) {
      c.stft.window = tfa::window_kind_from_string(window_name);
    }
    if (set_by_user(o_scale_min)) c.cwt.scale_min = v.cwt.scale_min;
    if (set_by_user(o_scale_max)) c.cwt.scale_max = v.cwt.scale_max;
    if (set_by_user(o_step)) c.cwt.translation_step = v.cwt.translation_step;
    if (set_by_user(o_omega0)) c.cwt.omega0 = v.cwt.omega0;
    if (set_by_user(o_width)) c.render.width = v.render.width;
    if (set_by_user(o_height)) c.render.height = v.render.height;
    if (set_by_user(o_floor_db)) c.render.floor_db = v.render.floor_db;
    if (set_by_user(o_epochs)) c.train.epochs = v.train.epochs;
    if (set_by_user(o_batch)) c.train.batch_size = v.train.batch_size;
    if (set_by_user(o_lr)) c.train.learning_rate = v.train.learning_rate;
    if (set_by_user(o_runs)) c.runs = v.runs;
    if (set_by_user(o_seed)) c.seed = v.seed;
    if (set_by_user(o_val_fraction)) c.val_fraction = v.val_fraction;
    if (set_by_user(o_jobs)) c.jobs = v.jobs;
    if (set_by_user(o_sample_rate)) c.sample_rate_hz = v.sample_rate_hz;
    return c;
  }
};

tfa::TfMatrix transform_signal(const tfa::AudioSignal& sig,
                               tfa::TransformKind kind,
                               const tfa::PipelineConfig& pc, bool direct) {
  if (kind == tfa::TransformKind::spectrogram) {
    return tfa::power_spectrogram(tfa::stft(sig, pc.stft), pc.stft,
                                  sig.sample_rate_hz);
  }
  const tfa::ComplexMatrix coeffs =
      direct ? tfa::cwt_direct(sig, pc.cwt) : tfa::cwt_fft(sig, pc.cwt);
  return tfa::scalogram(coeffs, pc.cwt, sig.sample_rate_hz);
}

// Deterministic 10 s machine-like signal used when `bench` gets no --signal.
tfa::AudioSignal default_bench_signal(int sample_rate_hz) {
  tfa::SynthSpec spec;
  spec.kind = tfa::SynthKind::stationary_machine;
  spec.duration_s = 10.0;
  spec.seed = 42;
  spec.noise_snr_db = 0.0;
  return tfa::peak_normalize(tfa::synthesize(spec, sample_rate_hz));
}

std::string sanitize_id(const std::string& id) {
  std::string out = id;
  for (char& ch : out) {
    if (ch == ':' || ch == '/' || ch == '\\') ch = '_';
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-frequency analysis toolkit: transforms, rendering, "
               "training and benchmarks"};
  app.require_subcommand(1);
  int exit_code = 0;

  // --- normalize ------------------------------------------------------
  struct {
    std::string in, out;
  } nrm;
  auto* normalize =
      app.add_subcommand("normalize", "Peak-normalize a WAV file");
  normalize->add_option("input", nrm.in, "input WAV")
      ->required()
      ->check(CLI::ExistingFile);
  normalize->add_option("--out,-o", nrm.out, "output WAV")->required();
  normalize->callback([&] {
    const tfa::AudioSignal sig = tfa::load_wav(nrm.in);
    tfa::save_wav(nrm.out, tfa::peak_normalize(sig));
    std::cout << "wrote " << nrm.out << " (" << sig.samples.size()
              << " samples at " << sig.sample_rate_hz << " Hz)\n";
  });

  // --- transform ------------------------------------------------------
  struct {
    std::string in, out, kind;
    bool raw = false;
    bool direct = false;
    PipelineCli cli;
  } tr;
  auto* transform = app.add_subcommand(
      "transform", "WAV -> time-frequency matrix (TFM + JSON sidecar)");
  transform->add_option("input", tr.in, "input WAV")
      ->required()
      ->check(CLI::ExistingFile);
  transform->add_option("--kind", tr.kind, "spectrogram or scalogram")
      ->required();
  transform->add_option("--out,-o", tr.out, "output TFM path")->required();
  transform->add_flag("--raw", tr.raw, "skip peak normalization");
  transform->add_flag("--direct", tr.direct,
                      "force the direct (non-FFT) wavelet path");
  tr.cli.add_config(transform);
  tr.cli.add_stft(transform);
  tr.cli.add_cwt(transform);
  transform->callback([&] {
    const tfa::TransformKind kind = tfa::transform_kind_from_string(tr.kind);
    tfa::AudioSignal sig = tfa::load_wav(tr.in);
    if (!tr.raw) sig = tfa::peak_normalize(sig);
    const tfa::PipelineConfig pc = tr.cli.resolve();
    const tfa::TfMatrix m = transform_signal(sig, kind, pc, tr.direct);
    tfa::save_tfm(tr.out, m,
                  kind == tfa::TransformKind::spectrogram
                      ? tfa::to_json(pc.stft)
                      : tfa::to_json(pc.cwt));
    std::cout << "wrote " << tr.out << " (" << m.rows << "x" << m.cols
              << ")\n";
  });

  // --- render ---------------------------------------------------------
  struct {
    std::string in, out;
    bool no_db = false;
    PipelineCli cli;
  } rd;
  auto* render =
      app.add_subcommand("render", "time-frequency matrix -> PNG heatmap");
  render->add_option("input", rd.in, "input TFM")
      ->required()
      ->check(CLI::ExistingFile);
  render->add_option("--out,-o", rd.out, "output PNG path")->required();
  render->add_flag("--no-db", rd.no_db,
                   "matrix is already scaled; skip dB conversion");
  rd.cli.add_config(render);
  rd.cli.add_render(render);
  render->callback([&] {
    const tfa::PipelineConfig pc = rd.cli.resolve();
    tfa::TfMatrix m = tfa::load_tfm(rd.in);
    if (!rd.no_db) m = tfa::to_db(m, pc.render.floor_db);
    tfa::save_png(rd.out, tfa::render_heatmap(m, pc.render.map,
                                              pc.render.width,
                                              pc.render.height));
    std::cout << "wrote " << rd.out << " (" << pc.render.width << "x"
              << pc.render.height << ")\n";
  });

  // --- synth ----------------------------------------------------------
  struct {
    std::string family, out_dir;
    int n_per_class = 64;
    double snr_db = 6.0;
    double duration_s = 1.0;
    uint64_t seed = 1;
    int sample_rate_hz = 16000;
  } sy;
  auto* synth = app.add_subcommand(
      "synth", "generate a labeled synthetic dataset (WAVs + manifest)");
  synth->add_option("--family", sy.family, "stationary or impulsive")
      ->required();
  synth->add_option("--n-per-class", sy.n_per_class, "examples per class");
  synth->add_option("--snr", sy.snr_db, "noise mix level in dB");
  synth->add_option("--duration", sy.duration_s, "example length in seconds");
  synth->add_option("--seed", sy.seed, "root seed");
  synth->add_option("--sample-rate", sy.sample_rate_hz, "sample rate in Hz");
  synth->add_option("--out-dir", sy.out_dir, "output directory")->required();
  synth->callback([&] {
    tfa::DatasetManifest m = tfa::generate_synthetic_dataset(
        sy.n_per_class, tfa::synth_family_from_string(sy.family), sy.snr_db,
        sy.seed, sy.duration_s);
    std::filesystem::create_directories(sy.out_dir);
    for (tfa::LabeledExample& e : m.examples) {
      const std::string name = sanitize_id(e.source) + ".wav";
      tfa::save_wav(std::filesystem::path(sy.out_dir) / name,
                    tfa::materialize(e, sy.sample_rate_hz));
      e.source = name;  // the inline recipe stays authoritative
    }
    const auto manifest_path =
        std::filesystem::path(sy.out_dir) / "manifest.jsonl";
    tfa::save_manifest(manifest_path, m);
    std::cout << "wrote " << m.examples.size() << " examples + "
              << manifest_path.string() << "\n";
  });

  // --- split ----------------------------------------------------------
  struct {
    std::string manifest, out_train = "train.jsonl", out_val = "val.jsonl";
    double val_fraction = 0.2;
    uint64_t seed = 0;
    CLI::Option* o_val = nullptr;
    CLI::Option* o_seed = nullptr;
  } sp;
  auto* split_cmd = app.add_subcommand(
      "split", "stratified seeded train/validation manifest split");
  split_cmd->add_option("--manifest", sp.manifest, "input manifest")
      ->required()
      ->check(CLI::ExistingFile);
  sp.o_val = split_cmd->add_option("--val-fraction", sp.val_fraction,
                                   "validation fraction of each class");
  sp.o_seed = split_cmd->add_option("--seed", sp.seed, "split seed");
  split_cmd->add_option("--out-train", sp.out_train, "train manifest path");
  split_cmd->add_option("--out-val", sp.out_val, "validation manifest path");
  split_cmd->callback([&] {
    tfa::DatasetManifest m = tfa::load_manifest(sp.manifest);
    if (set_by_user(sp.o_seed)) m.split_seed = sp.seed;
    if (set_by_user(sp.o_val)) m.val_fraction = sp.val_fraction;
    const auto [train_part, val_part] = tfa::split(m);
    tfa::save_manifest(sp.out_train, train_part);
    tfa::save_manifest(sp.out_val, val_part);
    std::cout << "wrote " << sp.out_train << " ("
              << train_part.examples.size() << ") and " << sp.out_val << " ("
              << val_part.examples.size() << ")\n";
  });

  // --- train ----------------------------------------------------------
  struct {
    std::string manifest, kind, out;
    PipelineCli cli;
  } tn;
  auto* train_cmd = app.add_subcommand(
      "train", "render a manifest and train one seeded classifier");
  train_cmd->add_option("--manifest", tn.manifest, "dataset manifest")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--kind", tn.kind, "spectrogram or scalogram")
      ->required();
  train_cmd->add_option("--out,-o", tn.out, "output model path")->required();
  tn.cli.add_config(train_cmd);
  tn.cli.add_stft(train_cmd);
  tn.cli.add_cwt(train_cmd);
  tn.cli.add_render(train_cmd);
  tn.cli.add_train(train_cmd);
  tn.cli.add_eval(train_cmd);
  train_cmd->callback([&] {
    const tfa::PipelineConfig pc = tn.cli.resolve();
    const tfa::DatasetManifest m = tfa::load_manifest(tn.manifest);
    const tfa::SingleRunResult r = tfa::run_training_run(
        m, tfa::transform_kind_from_string(tn.kind), pc, 0);
    tfa::save_model(tn.out, r.model);
    std::cout << tfa::to_json(r.report) << "\n";
    std::cout << "validation auc " << r.val_auc << "; wrote " << tn.out
              << "\n";
  });

  // --- evaluate -------------------------------------------------------
  struct {
    std::string manifest, kind, out_dir;
    PipelineCli cli;
  } ev;
  auto* evaluate = app.add_subcommand(
      "evaluate", "N seeded train/eval cycles -> per-run and mean AUC");
  evaluate->add_option("--manifest", ev.manifest, "dataset manifest")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--kind", ev.kind, "spectrogram or scalogram")
      ->required();
  evaluate->add_option("--out-dir", ev.out_dir,
                       "artifact directory (summary + run-0 weights)");
  ev.cli.add_config(evaluate);
  ev.cli.add_stft(evaluate);
  ev.cli.add_cwt(evaluate);
  ev.cli.add_render(evaluate);
  ev.cli.add_train(evaluate);
  ev.cli.add_eval(evaluate);
  evaluate->callback([&] {
    const tfa::PipelineConfig pc = ev.cli.resolve();
    const tfa::DatasetManifest m = tfa::load_manifest(ev.manifest);
    const tfa::EvalSummary summary = tfa::evaluate_manifest(
        m, tfa::transform_kind_from_string(ev.kind), pc, ev.out_dir);
    std::cout << tfa::to_json(summary) << "\n";
  });

  // --- bench ----------------------------------------------------------
  struct {
    std::string kind = "both", signal, out;
    int repeats = 5;
    PipelineCli cli;
  } bn;
  auto* bench = app.add_subcommand(
      "bench", "time the transforms (medians over repeats + report)");
  bench->add_option("--kind", bn.kind, "spectrogram, scalogram or both");
  bench->add_option("--signal", bn.signal, "WAV to analyze (default: "
                    "deterministic 10 s synthetic signal)")
      ->check(CLI::ExistingFile);
  bench->add_option("--repeats", bn.repeats, "measured repeats (>= 3)");
  bench->add_option("--out", bn.out,
                    "report path; writes <out> as CSV plus a .json sibling");
  bn.cli.add_config(bench);
  bn.cli.add_stft(bench);
  bn.cli.add_cwt(bench);
  bench->callback([&] {
    const tfa::PipelineConfig pc = bn.cli.resolve();
    const tfa::AudioSignal sig =
        bn.signal.empty() ? default_bench_signal(pc.sample_rate_hz)
                          : tfa::peak_normalize(tfa::load_wav(bn.signal));
    tfa::TransformConfigs configs{pc.stft, pc.cwt, sig.sample_rate_hz};
    std::vector<tfa::BenchResult> results;
    if (bn.kind == "spectrogram" || bn.kind == "both") {
      results.push_back(time_transform(tfa::TransformKind::spectrogram, sig,
                                       configs, bn.repeats));
    }
    if (bn.kind == "scalogram" || bn.kind == "both") {
      results.push_back(time_transform(tfa::TransformKind::scalogram, sig,
                                       configs, bn.repeats));
    }
    if (results.empty()) {
      throw std::invalid_argument("unknown bench kind: " + bn.kind);
    }
    const tfa::BenchReport report = tfa::bench_report(results);
    std::cout << report.csv;
    if (!bn.out.empty()) {
      write_file(bn.out, report.csv);
      std::filesystem::path json_path(bn.out);
      json_path.replace_extension(".json");
      write_file(json_path, report.json);
      std::cout << "wrote " << bn.out << " and " << json_path.string()
                << "\n";
    }
  });

  // --- demo-resolution --------------------------------------------------
  struct {
    std::string out_dir;
  } dm;
  auto* demo = app.add_subcommand(
      "demo-resolution",
      "two tones + two impulses through short/long windows and wavelets; "
      "counts resolved peaks and writes four PNGs + verdict.json");
  demo->add_option("--out-dir", dm.out_dir, "output directory")->required();
  demo->callback([&] {
    const tfa::DemoOutcome out = tfa::run_resolution_demo(dm.out_dir);
    std::cout << read_file(out.verdict_path);
    for (const tfa::DemoCheck& c : out.checks) {
      std::cout << (c.pass ? "pass  " : "FAIL  ") << c.name << ": counted "
                << c.counted << ", expected " << c.expected << "\n";
    }
    std::cout << (out.all_pass ? "verdict: pass" : "verdict: fail") << "\n";
    if (!out.all_pass) exit_code = 1;
  });

  // --- compare ----------------------------------------------------------
  struct {
    std::string family, manifest, name, out_dir;
    int n_per_class = 64;
    double snr_db = 6.0;
    double duration_s = 1.0;
    CLI::Option* o_snr = nullptr;
    PipelineCli cli;
  } cp;
  auto* compare = app.add_subcommand(
      "compare",
      "run both transform arms on one dataset with shared seeds and splits; "
      "writes dataset.jsonl, summaries, weights and compare.csv");
  compare->add_option("--family", cp.family,
                      "synthesize this family: stationary or impulsive");
  compare->add_option("--manifest", cp.manifest, "use an existing manifest")
      ->check(CLI::ExistingFile)
      ->excludes("--family");
  compare->add_option("--name", cp.name,
                      "dataset label for the report (default: family name)");
  cp.o_snr = compare->add_option("--snr", cp.snr_db, "noise mix level in dB");
  compare->add_option("--n-per-class", cp.n_per_class, "examples per class");
  compare->add_option("--duration", cp.duration_s,
                      "example length in seconds");
  compare->add_option("--out-dir", cp.out_dir, "output directory")->required();
  cp.cli.add_config(compare);
  cp.cli.add_stft(compare);
  cp.cli.add_cwt(compare);
  cp.cli.add_render(compare);
  cp.cli.add_train(compare);
  cp.cli.add_eval(compare);
  compare->callback([&] {
    const tfa::PipelineConfig pc = cp.cli.resolve();
    tfa::DatasetManifest m;
    std::string name = cp.name;
    std::optional<double> snr;
    if (!cp.family.empty()) {
      m = tfa::generate_synthetic_dataset(
          cp.n_per_class, tfa::synth_family_from_string(cp.family), cp.snr_db,
          pc.seed, cp.duration_s);
      if (name.empty()) name = cp.family;
      snr = cp.snr_db;
    } else if (!cp.manifest.empty()) {
      m = tfa::load_manifest(cp.manifest);
      if (name.empty()) name = "custom";
      if (set_by_user(cp.o_snr)) snr = cp.snr_db;
    } else {
      throw std::invalid_argument("pass --family or --manifest");
    }
    const tfa::CompareOutcome outcome =
        tfa::run_compare(m, name, snr, pc, cp.out_dir);
    std::cout << outcome.csv;
    std::cout << "spectrogram mean auc " << outcome.spectrogram.mean_auc
              << ", scalogram mean auc " << outcome.scalogram.mean_auc
              << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
