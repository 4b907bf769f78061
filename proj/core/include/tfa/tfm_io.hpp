// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <filesystem>
#include <string>

#include "tfa/tf_matrix.hpp"

namespace tfa {

/// Binary layout: magic "TFM1", uint32 LE rows, uint32 LE cols, then
/// rows*cols IEEE-754 32-bit LE values row-major. Axis metadata goes to a
/// sidecar `<path>.json` holding {kind, row_axis, row_coords, time_step_s,
/// config}; `config_echo_json` is embedded there verbatim (pass "{}" if
/// there is nothing to echo).
void save_tfm(const std::filesystem::path& path, const TfMatrix& m,
              const std::string& config_echo_json = "{}");

/// Reads the binary matrix and, when present, the sidecar's axis metadata.
/// Values come back with 32-bit precision; missing sidecar leaves default
/// axes (frequency_hz, coords 0..rows-1, time_step 0).
TfMatrix load_tfm(const std::filesystem::path& path);

}  // namespace tfa
