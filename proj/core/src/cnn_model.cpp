// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/cnn_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfa/rng.hpp"

namespace tfa {

namespace {

constexpr double kLogEps = 1e-12;

void affine_forward(const Tensor& in_mat, const Tensor& w, const Tensor& b,
                    Tensor& out_mat) {
  const size_t m = in_mat.dim(0), k = in_mat.dim(1), n = w.dim(1);
  gemm_nn(in_mat.data.data(), w.data.data(), out_mat.data.data(), m, k, n);
  for (size_t i = 0; i < m; ++i) {
    double* row = out_mat.data.data() + i * n;
    for (size_t j = 0; j < n; ++j) row[j] += b.data[j];
  }
}

// dW = in^T * g, db = column sums of g, din = g * W^T.
void affine_backward(const Tensor& in_mat, const Tensor& w, const Tensor& g,
                     Tensor& dw, Tensor& db, Tensor& din) {
  const size_t m = in_mat.dim(0), k = in_mat.dim(1), n = w.dim(1);
  gemm_tn(in_mat.data.data(), g.data.data(), dw.data.data(), k, m, n);
  std::fill(db.data.begin(), db.data.end(), 0.0);
  for (size_t i = 0; i < m; ++i) {
    const double* row = g.data.data() + i * n;
    for (size_t j = 0; j < n; ++j) db.data[j] += row[j];
  }
  gemm_nt(g.data.data(), w.data.data(), din.data.data(), m, n, k);
}

void im2col(const Tensor& in, int kernel, Tensor& patches) {
  const size_t b = in.dim(0), h = in.dim(1), w = in.dim(2), c = in.dim(3);
  const size_t oh = h - kernel + 1, ow = w - kernel + 1;
  double* dst = patches.data.data();
  for (size_t bi = 0; bi < b; ++bi) {
    for (size_t oy = 0; oy < oh; ++oy) {
      for (size_t ox = 0; ox < ow; ++ox) {
        for (int ky = 0; ky < kernel; ++ky) {
          const double* src =
              in.data.data() + ((bi * h + oy + ky) * w + ox) * c;
          const size_t run = size_t(kernel) * c;  // kx and ci are contiguous
          std::copy(src, src + run, dst);
          dst += run;
        }
      }
    }
  }
}

void col2im(const Tensor& dpatches, int kernel, Tensor& din) {
  const size_t b = din.dim(0), h = din.dim(1), w = din.dim(2), c = din.dim(3);
  const size_t oh = h - kernel + 1, ow = w - kernel + 1;
  std::fill(din.data.begin(), din.data.end(), 0.0);
  const double* src = dpatches.data.data();
  for (size_t bi = 0; bi < b; ++bi) {
    for (size_t oy = 0; oy < oh; ++oy) {
      for (size_t ox = 0; ox < ow; ++ox) {
        for (int ky = 0; ky < kernel; ++ky) {
          double* dst = din.data.data() + ((bi * h + oy + ky) * w + ox) * c;
          const size_t run = size_t(kernel) * c;
          for (size_t i = 0; i < run; ++i) dst[i] += src[i];
          src += run;
        }
      }
    }
  }
}

void softmax_rows(Tensor& t) {
  const size_t rows = t.dim(0), cols = t.dim(1);
  for (size_t i = 0; i < rows; ++i) {
    double* row = t.data.data() + i * cols;
    const double mx = *std::max_element(row, row + cols);
    double sum = 0.0;
    for (size_t j = 0; j < cols; ++j) sum += row[j] = std::exp(row[j] - mx);
    for (size_t j = 0; j < cols; ++j) row[j] /= sum;
  }
}

}  // namespace

std::string to_string(LayerOp op) {
  switch (op) {
    case LayerOp::rescale: return "rescale";
    case LayerOp::conv_relu: return "conv_relu";
    case LayerOp::maxpool: return "maxpool";
    case LayerOp::flatten: return "flatten";
    case LayerOp::dense_relu: return "dense_relu";
    case LayerOp::dropout: return "dropout";
    case LayerOp::dense_softmax: return "dense_softmax";
  }
  throw std::logic_error("bad LayerOp");
}

LayerOp layer_op_from_string(const std::string& s) {
  for (LayerOp op : {LayerOp::rescale, LayerOp::conv_relu, LayerOp::maxpool,
                     LayerOp::flatten, LayerOp::dense_relu, LayerOp::dropout,
                     LayerOp::dense_softmax}) {
    if (to_string(op) == s) return op;
  }
  throw std::invalid_argument("unknown layer op: " + s);
}

ModelConfig ModelConfig::default_stack(int height, int width) {
  ModelConfig c;
  c.input_height = height;
  c.input_width = width;
  c.layers = {
      {.op = LayerOp::rescale, .scale = 1.0 / 255.0},
      {.op = LayerOp::conv_relu, .filters = 16, .kernel = 3},
      {.op = LayerOp::maxpool},
      {.op = LayerOp::conv_relu, .filters = 32, .kernel = 3},
      {.op = LayerOp::maxpool},
      {.op = LayerOp::conv_relu, .filters = 64, .kernel = 3},
      {.op = LayerOp::maxpool},
      {.op = LayerOp::flatten},
      {.op = LayerOp::dense_relu, .units = 128},
      {.op = LayerOp::dropout, .rate = 0.25},
      {.op = LayerOp::dense_relu, .units = 256},
      {.op = LayerOp::dropout, .rate = 0.25},
      {.op = LayerOp::dense_softmax, .units = 2},
  };
  return c;
}

ModelConfig ModelConfig::tiny_stack(int height, int width) {
  ModelConfig c;
  c.input_height = height;
  c.input_width = width;
  c.layers = {
      {.op = LayerOp::rescale, .scale = 1.0 / 255.0},
      {.op = LayerOp::conv_relu, .filters = 4, .kernel = 3},
      {.op = LayerOp::maxpool},
      {.op = LayerOp::conv_relu, .filters = 6, .kernel = 3},
      {.op = LayerOp::flatten},
      {.op = LayerOp::dense_relu, .units = 8},
      {.op = LayerOp::dropout, .rate = 0.25},
      {.op = LayerOp::dense_softmax, .units = 2},
  };
  return c;
}

size_t Model::param_count() const {
  size_t n = 0;
  for (const Layer& l : layers) n += l.weight.numel() + l.bias.numel();
  return n;
}

Model build_model(const ModelConfig& config, uint64_t seed) {
  if (config.input_height < 1 || config.input_width < 1 ||
      config.input_channels < 1) {
    throw std::invalid_argument("input dimensions must be positive");
  }
  if (config.layers.empty() ||
      config.layers.back().op != LayerOp::dense_softmax) {
    throw std::invalid_argument("layer stack must end in dense_softmax");
  }
  Model m;
  m.input_height = config.input_height;
  m.input_width = config.input_width;
  m.input_channels = config.input_channels;
  m.init_seed = seed;

  int h = config.input_height, w = config.input_width, c = config.input_channels;
  bool flat = false;
  for (size_t li = 0; li < config.layers.size(); ++li) {
    const LayerSpec& spec = config.layers[li];
    Layer layer;
    layer.spec = spec;
    layer.in_h = h;
    layer.in_w = w;
    layer.in_c = c;
    double fan_in = 0, fan_out = 0;
    switch (spec.op) {
      case LayerOp::rescale:
        break;
      case LayerOp::conv_relu: {
        if (flat) throw std::invalid_argument("conv after flatten");
        if (spec.kernel < 1 || spec.filters < 1) {
          throw std::invalid_argument("bad conv spec");
        }
        h -= spec.kernel - 1;
        w -= spec.kernel - 1;
        if (h < 1 || w < 1) {
          throw std::invalid_argument(
              "input too small for the layer stack (conv at layer " +
              std::to_string(li) + ")");
        }
        const size_t taps = size_t(spec.kernel) * spec.kernel * c;
        layer.weight = Tensor({taps, size_t(spec.filters)});
        layer.bias = Tensor({size_t(spec.filters)});
        fan_in = double(taps);
        fan_out = double(spec.kernel) * spec.kernel * spec.filters;
        c = spec.filters;
        break;
      }
      case LayerOp::maxpool:
        if (flat) throw std::invalid_argument("pool after flatten");
        h /= 2;
        w /= 2;
        if (h < 1 || w < 1) {
          throw std::invalid_argument(
              "input too small for the layer stack (pool at layer " +
              std::to_string(li) + ")");
        }
        break;
      case LayerOp::flatten:
        c = h * w * c;
        h = w = 1;
        flat = true;
        break;
      case LayerOp::dense_relu:
      case LayerOp::dense_softmax: {
        if (!flat) throw std::invalid_argument("dense before flatten");
        if (spec.units < 1) throw std::invalid_argument("bad dense spec");
        layer.weight = Tensor({size_t(c), size_t(spec.units)});
        layer.bias = Tensor({size_t(spec.units)});
        fan_in = double(c);
        fan_out = double(spec.units);
        c = spec.units;
        break;
      }
      case LayerOp::dropout:
        if (!(spec.rate >= 0.0 && spec.rate < 1.0)) {
          throw std::invalid_argument("dropout rate must lie in [0, 1)");
        }
        break;
    }
    layer.out_h = h;
    layer.out_w = w;
    layer.out_c = c;
    if (layer.has_params()) {
      Rng rng(seed_for(seed, "init-layer-" + std::to_string(li)));
      const double limit = std::sqrt(6.0 / (fan_in + fan_out));
      for (double& v : layer.weight.data) v = rng.uniform(-limit, limit);
      // biases stay zero
    }
    m.layers.push_back(std::move(layer));
  }
  if (m.layers.back().spec.units != 2) {
    throw std::invalid_argument("final softmax layer must have 2 units");
  }
  return m;
}

Tensor forward(const Model& model, const Tensor& batch, bool training,
               uint64_t dropout_seed, ForwardCache* cache) {
  if (batch.shape.size() != 4 || int(batch.dim(1)) != model.input_height ||
      int(batch.dim(2)) != model.input_width ||
      int(batch.dim(3)) != model.input_channels) {
    throw std::invalid_argument("batch shape does not match model input");
  }
  const size_t b = batch.dim(0);

  ForwardCache local;
  ForwardCache& cc = cache ? *cache : local;
  cc.acts.assign(1, batch);
  cc.pool_argmax.assign(model.layers.size(), {});
  cc.dropout_gain.assign(model.layers.size(), {});
  cc.im2col.assign(model.layers.size(), Tensor{});

  for (size_t li = 0; li < model.layers.size(); ++li) {
    const Layer& l = model.layers[li];
    const Tensor& in = cc.acts.back();
    Tensor out;
    switch (l.spec.op) {
      case LayerOp::rescale: {
        out = in;
        for (double& v : out.data) v *= l.spec.scale;
        break;
      }
      case LayerOp::conv_relu: {
        const size_t oh = l.out_h, ow = l.out_w, taps = l.weight.dim(0);
        Tensor& patches = cc.im2col[li];
        patches = Tensor({b * oh * ow, taps});
        im2col(in, l.spec.kernel, patches);
        Tensor flat_out({b * oh * ow, size_t(l.spec.filters)});
        affine_forward(patches, l.weight, l.bias, flat_out);
        for (double& v : flat_out.data) v = std::max(v, 0.0);
        out = std::move(flat_out);
        out.shape = {b, oh, ow, size_t(l.spec.filters)};
        break;
      }
      case LayerOp::maxpool: {
        const size_t ih = l.in_h, iw = l.in_w, ch = l.in_c;
        const size_t oh = l.out_h, ow = l.out_w;
        out = Tensor({b, oh, ow, ch});
        auto& argmax = cc.pool_argmax[li];
        argmax.resize(out.numel());
        for (size_t bi = 0; bi < b; ++bi) {
          for (size_t oy = 0; oy < oh; ++oy) {
            for (size_t ox = 0; ox < ow; ++ox) {
              for (size_t ci = 0; ci < ch; ++ci) {
                size_t best = ((bi * ih + 2 * oy) * iw + 2 * ox) * ch + ci;
                double best_v = in.data[best];
                for (int dy = 0; dy < 2; ++dy) {
                  for (int dx = 0; dx < 2; ++dx) {
                    const size_t idx =
                        ((bi * ih + 2 * oy + dy) * iw + 2 * ox + dx) * ch + ci;
                    if (in.data[idx] > best_v) {
                      best_v = in.data[idx];
                      best = idx;
                    }
                  }
                }
                const size_t oidx = ((bi * oh + oy) * ow + ox) * ch + ci;
                out.data[oidx] = best_v;
                argmax[oidx] = best;
              }
            }
          }
        }
        break;
      }
      case LayerOp::flatten: {
        out = in;
        out.shape = {b, size_t(l.out_c)};
        break;
      }
      case LayerOp::dense_relu: {
        out = Tensor({b, size_t(l.spec.units)});
        affine_forward(in, l.weight, l.bias, out);
        for (double& v : out.data) v = std::max(v, 0.0);
        break;
      }
      case LayerOp::dropout: {
        out = in;
        auto& gain = cc.dropout_gain[li];
        gain.assign(out.numel(), 1.0);
        if (training && l.spec.rate > 0.0) {
          Rng rng(seed_for(dropout_seed, "dropout-" + std::to_string(li)));
          const double keep_gain = 1.0 / (1.0 - l.spec.rate);
          for (size_t i = 0; i < gain.size(); ++i) {
            gain[i] = rng.uniform01() < l.spec.rate ? 0.0 : keep_gain;
            out.data[i] *= gain[i];
          }
        }
        break;
      }
      case LayerOp::dense_softmax: {
        out = Tensor({b, size_t(l.spec.units)});
        affine_forward(in, l.weight, l.bias, out);
        softmax_rows(out);
        break;
      }
    }
    check_finite(out, to_string(l.spec.op).c_str());
    cc.acts.push_back(std::move(out));
  }
  return cc.acts.back();
}

double loss_and_gradients(const Model& model, const Tensor& batch,
                          const Tensor& labels_onehot, bool training,
                          uint64_t dropout_seed, Gradients* grads) {
  ForwardCache cache;
  const Tensor probs = forward(model, batch, training, dropout_seed, &cache);
  const size_t b = probs.dim(0), classes = probs.dim(1);
  if (labels_onehot.shape != std::vector<size_t>{b, classes}) {
    throw std::invalid_argument("labels_onehot shape mismatch");
  }

  double loss = 0.0;
  for (size_t i = 0; i < probs.numel(); ++i) {
    loss -= labels_onehot.data[i] * std::log(probs.data[i] + kLogEps);
  }
  loss /= double(b);
  if (!std::isfinite(loss)) {
    throw std::runtime_error("training loss is not finite");
  }
  if (!grads) return loss;

  grads->loss = loss;
  grads->weight.assign(model.layers.size(), Tensor{});
  grads->bias.assign(model.layers.size(), Tensor{});

  // d(loss)/d(prob), then back through every layer.
  Tensor g = probs;
  for (size_t i = 0; i < g.numel(); ++i) {
    g.data[i] = -labels_onehot.data[i] / (probs.data[i] + kLogEps) / double(b);
  }

  for (size_t li = model.layers.size(); li-- > 0;) {
    const Layer& l = model.layers[li];
    const Tensor& in = cache.acts[li];
    const Tensor& out = cache.acts[li + 1];
    Tensor gin;
    switch (l.spec.op) {
      case LayerOp::rescale: {
        gin = std::move(g);
        for (double& v : gin.data) v *= l.spec.scale;
        break;
      }
      case LayerOp::conv_relu: {
        const size_t rows = size_t(l.out_h) * l.out_w * batch.dim(0);
        Tensor gm = std::move(g);
        gm.shape = {rows, size_t(l.spec.filters)};
        for (size_t i = 0; i < gm.numel(); ++i) {
          if (out.data[i] <= 0.0) gm.data[i] = 0.0;
        }
        grads->weight[li] = Tensor(l.weight.shape);
        grads->bias[li] = Tensor(l.bias.shape);
        Tensor dpatches(cache.im2col[li].shape);
        affine_backward(cache.im2col[li], l.weight, gm, grads->weight[li],
                        grads->bias[li], dpatches);
        gin = Tensor(in.shape);
        col2im(dpatches, l.spec.kernel, gin);
        break;
      }
      case LayerOp::maxpool: {
        gin = Tensor(in.shape);
        const auto& argmax = cache.pool_argmax[li];
        for (size_t i = 0; i < g.numel(); ++i) {
          gin.data[argmax[i]] += g.data[i];
        }
        break;
      }
      case LayerOp::flatten: {
        gin = std::move(g);
        gin.shape = in.shape;
        break;
      }
      case LayerOp::dense_relu: {
        Tensor gm = std::move(g);
        for (size_t i = 0; i < gm.numel(); ++i) {
          if (out.data[i] <= 0.0) gm.data[i] = 0.0;
        }
        grads->weight[li] = Tensor(l.weight.shape);
        grads->bias[li] = Tensor(l.bias.shape);
        gin = Tensor(in.shape);
        affine_backward(in, l.weight, gm, grads->weight[li], grads->bias[li],
                        gin);
        break;
      }
      case LayerOp::dropout: {
        gin = std::move(g);
        const auto& gain = cache.dropout_gain[li];
        for (size_t i = 0; i < gin.numel(); ++i) gin.data[i] *= gain[i];
        break;
      }
      case LayerOp::dense_softmax: {
        // out holds softmax probabilities p; g is dL/dp. For each row,
        // dL/dz_j = p_j * (g_j - sum_i g_i p_i).
        Tensor gz(g.shape);
        const size_t n = g.dim(1);
        for (size_t bi = 0; bi < g.dim(0); ++bi) {
          const double* p = out.data.data() + bi * n;
          const double* gr = g.data.data() + bi * n;
          double dot = 0.0;
          for (size_t j = 0; j < n; ++j) dot += gr[j] * p[j];
          double* dst = gz.data.data() + bi * n;
          for (size_t j = 0; j < n; ++j) dst[j] = p[j] * (gr[j] - dot);
        }
        grads->weight[li] = Tensor(l.weight.shape);
        grads->bias[li] = Tensor(l.bias.shape);
        gin = Tensor(in.shape);
        affine_backward(in, l.weight, gz, grads->weight[li], grads->bias[li],
                        gin);
        break;
      }
    }
    g = std::move(gin);
  }
  return loss;
}

std::vector<double> predict(const Model& model, const Tensor& images) {
  const Tensor probs = forward(model, images, /*training=*/false, 0, nullptr);
  std::vector<double> out(probs.dim(0));
  for (size_t i = 0; i < out.size(); ++i) out[i] = probs.data[i * 2 + 1];
  return out;
}

Tensor one_hot(const std::vector<int>& labels, size_t num_classes) {
  Tensor t({labels.size(), num_classes});
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || size_t(labels[i]) >= num_classes) {
      throw std::invalid_argument("label out of range");
    }
    t.data[i * num_classes + size_t(labels[i])] = 1.0;
  }
  return t;
}

}  // namespace tfa
