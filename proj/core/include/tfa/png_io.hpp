// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <filesystem>

#include "tfa/render.hpp"

namespace tfa {

/// 8-bit RGB PNG, no alpha.
void save_png(const std::filesystem::path& path, const HeatmapImage& img);

/// Reads an 8-bit RGB PNG written by save_png (grayscale/alpha variants are
/// expanded/stripped to plain RGB).
HeatmapImage load_png(const std::filesystem::path& path);

}  // namespace tfa
