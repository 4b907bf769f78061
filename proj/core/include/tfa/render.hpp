// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfa/tf_matrix.hpp"

namespace tfa {

struct ColorStop {
  double pos;  // in [0,1], strictly increasing across stops
  uint8_t r, g, b;
};

struct ColorMap {
  std::vector<ColorStop> stops;

  /// Dark blue through cyan and yellow to dark red.
  static ColorMap jet_like();
};

struct HeatmapImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // 3 bytes per pixel, row-major from top-left

  uint8_t* px(int x, int y) { return pixels.data() + 3 * (size_t(y) * width + x); }
  const uint8_t* px(int x, int y) const {
    return pixels.data() + 3 * (size_t(y) * width + x);
  }
};

struct RenderConfig {
  int width = 128;
  int height = 128;
  double floor_db = 80.0;  // dynamic range kept below the per-image maximum
  ColorMap map = ColorMap::jet_like();
};

/// v <- 10*log10(v + 1e-12), then clamped to [max - |floor_db|, max].
TfMatrix to_db(const TfMatrix& m, double floor_db = 80.0);

/// Min-max normalizes per image, resamples bilinearly to the requested
/// size, and color-maps. Row 0 of the matrix (lowest frequency/scale) lands
/// at the bottom of the image; time runs left to right. A constant matrix
/// renders entirely in the position-0 color.
HeatmapImage render_heatmap(const TfMatrix& m, const ColorMap& map,
                            int out_width, int out_height);

std::string to_json(const RenderConfig& config);

}  // namespace tfa
