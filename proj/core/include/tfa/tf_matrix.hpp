// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace tfa {

enum class RowAxis { frequency_hz, scale };
enum class TfKind { spectrogram, scalogram };

std::string to_string(RowAxis a);
std::string to_string(TfKind k);
RowAxis row_axis_from_string(const std::string& s);
TfKind tf_kind_from_string(const std::string& s);

/// Time-frequency energy matrix: rows are frequency bins or scales (row 0 =
/// lowest coordinate, row_coords strictly increasing), columns are time.
/// Values are >= 0 when the matrix holds power (straight out of a
/// transform); a dB-converted matrix holds negative values by design.
struct TfMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> values;  // rows * cols, row-major
  RowAxis row_axis = RowAxis::frequency_hz;
  std::vector<double> row_coords;  // one physical coordinate per row
  double time_step_s = 0.0;
  TfKind kind = TfKind::spectrogram;

  double& at(size_t r, size_t c) { return values[r * cols + c]; }
  double at(size_t r, size_t c) const { return values[r * cols + c]; }
};

/// Checks shape consistency, finiteness, and strictly monotonic row_coords.
/// With require_nonnegative, additionally enforces values >= 0 (power
/// domain).
void validate(const TfMatrix& m, bool require_nonnegative = false);

/// Complex transform coefficients, same [row][time] layout as TfMatrix.
struct ComplexMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<std::complex<double>> values;

  ComplexMatrix() = default;
  ComplexMatrix(size_t r, size_t c) : rows(r), cols(c), values(r * c) {}

  std::complex<double>& at(size_t r, size_t c) { return values[r * cols + c]; }
  std::complex<double> at(size_t r, size_t c) const {
    return values[r * cols + c];
  }
};

}  // namespace tfa
