// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfa/cnn_tensor.hpp"

namespace tfa {

enum class LayerOp {
  rescale,
  conv_relu,
  maxpool,  // 2x2, stride 2, valid
  flatten,
  dense_relu,
  dropout,
  dense_softmax,
};

std::string to_string(LayerOp op);
LayerOp layer_op_from_string(const std::string& s);

struct LayerSpec {
  LayerOp op;
  int filters = 0;      // conv_relu
  int kernel = 3;       // conv_relu
  int units = 0;        // dense_relu / dense_softmax
  double rate = 0.0;    // dropout
  double scale = 1.0;   // rescale
};

struct ModelConfig {
  int input_height = 64;
  int input_width = 64;
  int input_channels = 3;
  std::vector<LayerSpec> layers;

  /// The fixed classifier stack: rescale(1/255), conv 16/3x3 + relu,
  /// maxpool, conv 32 + relu, maxpool, conv 64 + relu, maxpool, flatten,
  /// dense 128 + relu, dropout 0.25, dense 256 + relu, dropout 0.25,
  /// dense 2 + softmax.
  static ModelConfig default_stack(int height, int width);

  /// Same layer-type sequence at toy sizes (two convs, one pool, small
  /// dense head) — valid on inputs as small as 8x8, cheap enough for
  /// finite-difference gradient checks.
  static ModelConfig tiny_stack(int height, int width);
};

/// Layer with resolved shapes; weight layout: conv (K*K*Cin, F) with the
/// row index ordered (ky, kx, ci); dense (in, units). Biases are length-F
/// or length-units vectors.
struct Layer {
  LayerSpec spec;
  int in_h = 0, in_w = 0, in_c = 0;
  int out_h = 0, out_w = 0, out_c = 0;
  Tensor weight, bias;  // empty for parameterless ops
  bool has_params() const { return !weight.data.empty(); }
};

struct Model {
  int input_height = 0, input_width = 0, input_channels = 0;
  uint64_t init_seed = 0;
  std::vector<Layer> layers;
  size_t param_count() const;
};

/// Shape-propagates the stack and initializes weights with uniform
/// Glorot-style fan scaling (limit sqrt(6/(fan_in+fan_out))) from the
/// seeded generator; biases zero. Errors if any conv/pool underflows to an
/// empty spatial dim.
Model build_model(const ModelConfig& config, uint64_t seed);

struct ForwardCache {
  std::vector<Tensor> acts;  // acts[0] = batch, acts[i+1] = layer i output
  std::vector<std::vector<size_t>> pool_argmax;   // per layer (empty if n/a)
  std::vector<std::vector<double>> dropout_gain;  // 0 or 1/(1-rate), per elem
  std::vector<Tensor> im2col;                     // per conv layer
};

/// Runs the stack on a (B, H, W, C) batch. Dropout draws its masks from
/// dropout_seed and is active only when training. Returns (B, 2) class
/// probabilities (softmax rows).
Tensor forward(const Model& model, const Tensor& batch, bool training,
               uint64_t dropout_seed, ForwardCache* cache = nullptr);

struct Gradients {
  double loss = 0.0;
  std::vector<Tensor> weight, bias;  // aligned with model.layers
};

/// Mean categorical cross-entropy, -sum(y * log(p + 1e-12))/B, plus
/// reverse-mode gradients for every parameter. labels_onehot is (B, 2).
/// Throws if the loss is not finite.
double loss_and_gradients(const Model& model, const Tensor& batch,
                          const Tensor& labels_onehot, bool training,
                          uint64_t dropout_seed, Gradients* grads);

/// Abnormal-class probability (softmax column 1) per image, dropout off.
std::vector<double> predict(const Model& model, const Tensor& images);

Tensor one_hot(const std::vector<int>& labels, size_t num_classes);

}  // namespace tfa
