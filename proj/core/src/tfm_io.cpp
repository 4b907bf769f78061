// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/tfm_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tfa {

std::string to_string(RowAxis a) {
  return a == RowAxis::frequency_hz ? "frequency_hz" : "scale";
}

std::string to_string(TfKind k) {
  return k == TfKind::spectrogram ? "spectrogram" : "scalogram";
}

RowAxis row_axis_from_string(const std::string& s) {
  if (s == "frequency_hz") return RowAxis::frequency_hz;
  if (s == "scale") return RowAxis::scale;
  throw std::invalid_argument("unknown row axis: " + s);
}

TfKind tf_kind_from_string(const std::string& s) {
  if (s == "spectrogram") return TfKind::spectrogram;
  if (s == "scalogram") return TfKind::scalogram;
  throw std::invalid_argument("unknown matrix kind: " + s);
}

void validate(const TfMatrix& m, bool require_nonnegative) {
  if (m.rows == 0 || m.cols == 0) {
    throw std::invalid_argument("matrix has an empty dimension");
  }
  if (m.values.size() != m.rows * m.cols) {
    throw std::invalid_argument("matrix value count does not match shape");
  }
  if (m.row_coords.size() != m.rows) {
    throw std::invalid_argument("row_coords length does not match row count");
  }
  for (size_t i = 1; i < m.row_coords.size(); ++i) {
    if (!(m.row_coords[i] > m.row_coords[i - 1])) {
      throw std::invalid_argument("row_coords must be strictly increasing");
    }
  }
  for (double v : m.values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("matrix contains a non-finite value");
    }
    if (require_nonnegative && v < 0) {
      throw std::invalid_argument("power matrix contains a negative value");
    }
  }
}

namespace {

constexpr char kMagic[4] = {'T', 'F', 'M', '1'};

void put_u32(std::ofstream& out, uint32_t v) {
  char b[4] = {char(v), char(v >> 8), char(v >> 16), char(v >> 24)};
  out.write(b, 4);
}

uint32_t get_u32(std::ifstream& in, const std::filesystem::path& path) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("truncated TFM file: " + path.string());
  return b[0] | b[1] << 8 | b[2] << 16 | uint32_t(b[3]) << 24;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

}  // namespace

void save_tfm(const std::filesystem::path& path, const TfMatrix& m,
              const std::string& config_echo_json) {
  validate(m);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out.write(kMagic, 4);
  put_u32(out, static_cast<uint32_t>(m.rows));
  put_u32(out, static_cast<uint32_t>(m.cols));
  for (double v : m.values) {
    float f = static_cast<float>(v);
    uint32_t u;
    std::memcpy(&u, &f, 4);
    put_u32(out, u);
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
  out.close();

  nlohmann::json side;
  side["kind"] = to_string(m.kind);
  side["row_axis"] = to_string(m.row_axis);
  side["row_coords"] = m.row_coords;
  side["time_step_s"] = m.time_step_s;
  side["config"] = nlohmann::json::parse(config_echo_json);
  std::ofstream js(sidecar_path(path));
  if (!js) {
    throw std::runtime_error("cannot open sidecar for writing: " +
                             sidecar_path(path).string());
  }
  js << side.dump(2) << "\n";
}

TfMatrix load_tfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("not a TFM file: " + path.string());
  }
  TfMatrix m;
  m.rows = get_u32(in, path);
  m.cols = get_u32(in, path);
  m.values.resize(m.rows * m.cols);
  for (double& v : m.values) {
    uint32_t u = get_u32(in, path);
    float f;
    std::memcpy(&f, &u, 4);
    v = f;
  }
  m.row_coords.resize(m.rows);
  for (size_t i = 0; i < m.rows; ++i) m.row_coords[i] = double(i);

  std::ifstream js(sidecar_path(path));
  if (js) {
    nlohmann::json side = nlohmann::json::parse(js);
    m.kind = tf_kind_from_string(side.at("kind").get<std::string>());
    m.row_axis = row_axis_from_string(side.at("row_axis").get<std::string>());
    m.row_coords = side.at("row_coords").get<std::vector<double>>();
    m.time_step_s = side.at("time_step_s").get<double>();
  }
  validate(m);
  return m;
}

}  // namespace tfa
