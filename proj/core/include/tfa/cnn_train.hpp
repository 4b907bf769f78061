// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tfa/cnn_model.hpp"

namespace tfa {

enum class Optimizer { adam, sgd };

std::string to_string(Optimizer o);
Optimizer optimizer_from_string(const std::string& s);

struct TrainConfig {
  int epochs = 30;
  int batch_size = 32;
  double learning_rate = 1e-3;
  Optimizer optimizer = Optimizer::adam;
  uint64_t seed = 0;
};

struct TrainReport {
  std::vector<double> epoch_loss;     // mean batch loss per epoch
  std::vector<double> epoch_val_auc;  // empty when no validation set given
  double final_train_accuracy = 0.0;
  bool diverged = false;
};

/// Deterministic mini-batch training: shuffle order, dropout masks and
/// optimizer state all derive from config.seed, so identical inputs give
/// bit-identical final weights. Adam uses beta1=0.9, beta2=0.999, eps=1e-7.
/// A non-finite loss stops training early with diverged=true and the report
/// filled up to that point. Pass empty val tensors to skip validation AUC.
TrainReport train(Model& model, const Tensor& train_images,
                  const std::vector<int>& train_labels,
                  const Tensor& val_images, const std::vector<int>& val_labels,
                  const TrainConfig& config);

std::string to_json(const TrainReport& report);

/// File layout: magic "TFAM", uint32 LE header length, JSON header (input
/// dims, layer specs, init seed), then every parameter tensor's doubles as
/// IEEE-754 64-bit little-endian, in layer order, weight before bias.
void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace tfa
