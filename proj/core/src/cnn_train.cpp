// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/cnn_train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tfa/metrics.hpp"
#include "tfa/rng.hpp"

namespace tfa {

namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-7;

struct AdamState {
  std::vector<Tensor> m_w, v_w, m_b, v_b;
  long t = 0;
};

void adam_update(Tensor& param, const Tensor& grad, Tensor& m, Tensor& v,
                 double lr, long t) {
  const double bc1 = 1.0 - std::pow(kBeta1, double(t));
  const double bc2 = 1.0 - std::pow(kBeta2, double(t));
  for (size_t i = 0; i < param.data.size(); ++i) {
    const double g = grad.data[i];
    m.data[i] = kBeta1 * m.data[i] + (1.0 - kBeta1) * g;
    v.data[i] = kBeta2 * v.data[i] + (1.0 - kBeta2) * g * g;
    param.data[i] -=
        lr * (m.data[i] / bc1) / (std::sqrt(v.data[i] / bc2) + kAdamEps);
  }
}

}  // namespace

std::string to_string(Optimizer o) {
  return o == Optimizer::adam ? "adam" : "sgd";
}

Optimizer optimizer_from_string(const std::string& s) {
  if (s == "adam") return Optimizer::adam;
  if (s == "sgd") return Optimizer::sgd;
  throw std::invalid_argument("unknown optimizer: " + s);
}

TrainReport train(Model& model, const Tensor& train_images,
                  const std::vector<int>& train_labels,
                  const Tensor& val_images, const std::vector<int>& val_labels,
                  const TrainConfig& config) {
  if (config.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (config.batch_size < 1) {
    throw std::invalid_argument("batch_size must be >= 1");
  }
  if (!(config.learning_rate > 0)) {
    throw std::invalid_argument("learning_rate must be positive");
  }
  const size_t n = train_images.dim(0);
  if (n == 0 || train_labels.size() != n) {
    throw std::invalid_argument("train set empty or labels mismatched");
  }
  const bool has_val = val_images.numel() > 0;
  if (has_val && val_labels.size() != val_images.dim(0)) {
    throw std::invalid_argument("validation labels mismatched");
  }

  AdamState adam;
  if (config.optimizer == Optimizer::adam) {
    for (const Layer& l : model.layers) {
      adam.m_w.emplace_back(l.weight.data.empty() ? Tensor{} : Tensor(l.weight.shape));
      adam.v_w.emplace_back(l.weight.data.empty() ? Tensor{} : Tensor(l.weight.shape));
      adam.m_b.emplace_back(l.bias.data.empty() ? Tensor{} : Tensor(l.bias.shape));
      adam.v_b.emplace_back(l.bias.data.empty() ? Tensor{} : Tensor(l.bias.shape));
    }
  }

  TrainReport report;
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Rng shuffle(seed_for(config.seed, "shuffle-e" + std::to_string(epoch)));
    for (size_t i = n - 1; i > 0; --i) {
      std::swap(order[i], order[shuffle.below(i + 1)]);
    }

    double loss_sum = 0.0;
    size_t steps = 0;
    bool diverged = false;
    for (size_t off = 0; off < n; off += size_t(config.batch_size)) {
      const size_t end = std::min(n, off + size_t(config.batch_size));
      std::vector<size_t> idx(order.begin() + off, order.begin() + end);
      Tensor batch = gather_rows(train_images, idx);
      std::vector<int> batch_labels(idx.size());
      for (size_t i = 0; i < idx.size(); ++i) {
        batch_labels[i] = train_labels[idx[i]];
      }
      const uint64_t step_seed =
          seed_for(config.seed, "dropout-e" + std::to_string(epoch) + "-s" +
                                    std::to_string(steps));
      Gradients grads;
      double loss;
      try {
        loss = loss_and_gradients(model, batch, one_hot(batch_labels, 2),
                                  /*training=*/true, step_seed, &grads);
      } catch (const std::runtime_error&) {
        diverged = true;  // non-finite loss or activations
        break;
      }
      loss_sum += loss;
      ++steps;

      ++adam.t;
      for (size_t li = 0; li < model.layers.size(); ++li) {
        Layer& l = model.layers[li];
        if (!l.has_params()) continue;
        if (config.optimizer == Optimizer::adam) {
          adam_update(l.weight, grads.weight[li], adam.m_w[li], adam.v_w[li],
                      config.learning_rate, adam.t);
          adam_update(l.bias, grads.bias[li], adam.m_b[li], adam.v_b[li],
                      config.learning_rate, adam.t);
        } else {
          for (size_t i = 0; i < l.weight.data.size(); ++i) {
            l.weight.data[i] -= config.learning_rate * grads.weight[li].data[i];
          }
          for (size_t i = 0; i < l.bias.data.size(); ++i) {
            l.bias.data[i] -= config.learning_rate * grads.bias[li].data[i];
          }
        }
      }
    }

    if (steps > 0) report.epoch_loss.push_back(loss_sum / double(steps));
    if (diverged) {
      report.diverged = true;
      break;
    }
    if (has_val) {
      ScoredLabels scored{predict(model, val_images), val_labels};
      report.epoch_val_auc.push_back(auc_trapezoid(scored));
    }
  }

  const std::vector<double> train_scores = predict(model, train_images);
  size_t correct = 0;
  for (size_t i = 0; i < n; ++i) {
    const int pred = train_scores[i] >= 0.5 ? 1 : 0;
    if (pred == train_labels[i]) ++correct;
  }
  report.final_train_accuracy = double(correct) / double(n);
  return report;
}

std::string to_json(const TrainReport& r) {
  nlohmann::json j;
  j["epoch_loss"] = r.epoch_loss;
  j["epoch_val_auc"] = r.epoch_val_auc;
  j["final_train_accuracy"] = r.final_train_accuracy;
  j["diverged"] = r.diverged;
  return j.dump(2);
}

namespace {

constexpr char kModelMagic[4] = {'T', 'F', 'A', 'M'};

void write_doubles_le(std::ofstream& out, const std::vector<double>& v) {
  for (double d : v) {
    uint64_t u;
    std::memcpy(&u, &d, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char(u >> (8 * i));
    out.write(b, 8);
  }
}

void read_doubles_le(std::ifstream& in, std::vector<double>& v,
                     const std::filesystem::path& path) {
  for (double& d : v) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("truncated model file: " + path.string());
    uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= uint64_t(b[i]) << (8 * i);
    std::memcpy(&d, &u, 8);
  }
}

}  // namespace

void save_model(const std::filesystem::path& path, const Model& model) {
  nlohmann::json header;
  header["input_height"] = model.input_height;
  header["input_width"] = model.input_width;
  header["input_channels"] = model.input_channels;
  header["init_seed"] = model.init_seed;
  auto layers = nlohmann::json::array();
  for (const Layer& l : model.layers) {
    layers.push_back({{"op", to_string(l.spec.op)},
                      {"filters", l.spec.filters},
                      {"kernel", l.spec.kernel},
                      {"units", l.spec.units},
                      {"rate", l.spec.rate},
                      {"scale", l.spec.scale}});
  }
  header["layers"] = layers;
  const std::string header_text = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out.write(kModelMagic, 4);
  const uint32_t len = static_cast<uint32_t>(header_text.size());
  char b[4] = {char(len), char(len >> 8), char(len >> 16), char(len >> 24)};
  out.write(b, 4);
  out.write(header_text.data(), std::streamsize(header_text.size()));
  for (const Layer& l : model.layers) {
    write_doubles_le(out, l.weight.data);
    write_doubles_le(out, l.bias.data);
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kModelMagic, 4) != 0) {
    throw std::runtime_error("not a model file: " + path.string());
  }
  unsigned char lb[4];
  in.read(reinterpret_cast<char*>(lb), 4);
  if (!in) throw std::runtime_error("truncated model file: " + path.string());
  const uint32_t len = lb[0] | lb[1] << 8 | lb[2] << 16 | uint32_t(lb[3]) << 24;
  std::string header_text(len, '\0');
  in.read(header_text.data(), len);
  if (!in) throw std::runtime_error("truncated model file: " + path.string());

  nlohmann::json header = nlohmann::json::parse(header_text);
  ModelConfig config;
  config.input_height = header.at("input_height").get<int>();
  config.input_width = header.at("input_width").get<int>();
  config.input_channels = header.at("input_channels").get<int>();
  for (const auto& lj : header.at("layers")) {
    LayerSpec spec;
    spec.op = layer_op_from_string(lj.at("op").get<std::string>());
    spec.filters = lj.at("filters").get<int>();
    spec.kernel = lj.at("kernel").get<int>();
    spec.units = lj.at("units").get<int>();
    spec.rate = lj.at("rate").get<double>();
    spec.scale = lj.at("scale").get<double>();
    config.layers.push_back(spec);
  }
  Model model = build_model(config, header.at("init_seed").get<uint64_t>());
  for (Layer& l : model.layers) {
    read_doubles_le(in, l.weight.data, path);
    read_doubles_le(in, l.bias.data, path);
  }
  return model;
}

}  // namespace tfa
