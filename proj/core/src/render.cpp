// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tfa {

namespace {

void check_map(const ColorMap& map) {
  if (map.stops.size() < 2 || map.stops.front().pos != 0.0 ||
      map.stops.back().pos != 1.0) {
    throw std::invalid_argument("colormap must span positions 0.0 to 1.0");
  }
  for (size_t i = 1; i < map.stops.size(); ++i) {
    if (!(map.stops[i].pos > map.stops[i - 1].pos)) {
      throw std::invalid_argument("colormap positions must strictly increase");
    }
  }
}

void lookup(const ColorMap& map, double v, uint8_t* rgb) {
  v = std::clamp(v, 0.0, 1.0);
  size_t hi = 1;
  while (hi + 1 < map.stops.size() && map.stops[hi].pos < v) ++hi;
  const ColorStop& a = map.stops[hi - 1];
  const ColorStop& b = map.stops[hi];
  const double t = (v - a.pos) / (b.pos - a.pos);
  rgb[0] = static_cast<uint8_t>(std::lround(a.r + t * (b.r - a.r)));
  rgb[1] = static_cast<uint8_t>(std::lround(a.g + t * (b.g - a.g)));
  rgb[2] = static_cast<uint8_t>(std::lround(a.b + t * (b.b - a.b)));
}

// Bilinear sample of a rows x cols grid at fractional (row, col), clamped
// at the borders.
double sample(const std::vector<double>& grid, size_t rows, size_t cols,
              double r, double c) {
  r = std::clamp(r, 0.0, double(rows - 1));
  c = std::clamp(c, 0.0, double(cols - 1));
  const size_t r0 = static_cast<size_t>(r);
  const size_t c0 = static_cast<size_t>(c);
  const size_t r1 = std::min(r0 + 1, rows - 1);
  const size_t c1 = std::min(c0 + 1, cols - 1);
  const double fr = r - double(r0);
  const double fc = c - double(c0);
  const double top = grid[r0 * cols + c0] * (1 - fc) + grid[r0 * cols + c1] * fc;
  const double bot = grid[r1 * cols + c0] * (1 - fc) + grid[r1 * cols + c1] * fc;
  return top * (1 - fr) + bot * fr;
}

}  // namespace

ColorMap ColorMap::jet_like() {
  return {{
      {0.0, 0, 0, 128},
      {0.25, 0, 0, 255},
      {0.5, 0, 255, 255},
      {0.75, 255, 255, 0},
      {0.875, 255, 0, 0},
      {1.0, 128, 0, 0},
  }};
}

TfMatrix to_db(const TfMatrix& m, double floor_db) {
  validate(m, /*require_nonnegative=*/true);
  TfMatrix out = m;
  double max_db = -std::numeric_limits<double>::infinity();
  for (double& v : out.values) {
    v = 10.0 * std::log10(v + 1e-12);
    max_db = std::max(max_db, v);
  }
  const double floor = max_db - std::abs(floor_db);
  for (double& v : out.values) v = std::clamp(v, floor, max_db);
  return out;
}

HeatmapImage render_heatmap(const TfMatrix& m, const ColorMap& map,
                            int out_width, int out_height) {
  validate(m);
  check_map(map);
  if (out_width <= 0 || out_height <= 0) {
    throw std::invalid_argument("output image dimensions must be positive");
  }

  const auto [lo_it, hi_it] = std::minmax_element(m.values.begin(), m.values.end());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<double> norm(m.values.size(), 0.0);
  if (hi > lo) {
    for (size_t i = 0; i < norm.size(); ++i) {
      norm[i] = (m.values[i] - lo) / (hi - lo);
    }
  }

  HeatmapImage img;
  img.width = out_width;
  img.height = out_height;
  img.pixels.resize(size_t(out_width) * out_height * 3);
  const double row_scale = double(m.rows) / out_height;
  const double col_scale = double(m.cols) / out_width;
  for (int y = 0; y < out_height; ++y) {
    // Image rows run top-down; matrix row 0 must end up at the bottom.
    const double src_r = (double(out_height - 1 - y) + 0.5) * row_scale - 0.5;
    for (int x = 0; x < out_width; ++x) {
      const double src_c = (double(x) + 0.5) * col_scale - 0.5;
      lookup(map, sample(norm, m.rows, m.cols, src_r, src_c), img.px(x, y));
    }
  }
  return img;
}

std::string to_json(const RenderConfig& c) {
  nlohmann::json j;
  j["width"] = c.width;
  j["height"] = c.height;
  j["floor_db"] = c.floor_db;
  auto stops = nlohmann::json::array();
  for (const ColorStop& s : c.map.stops) {
    stops.push_back({{"pos", s.pos}, {"rgb", {s.r, s.g, s.b}}});
  }
  j["colormap"] = stops;
  return j.dump();
}

}  // namespace tfa
