// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tfa {

uint64_t splitmix64(uint64_t x);
uint64_t fnv1a64(std::string_view s);

/// Derives the seed of a named random stream from a root seed. All
/// randomness in the pipeline fans out from one root seed through labeled
/// streams ("split/3", "train/3", ...) so that independent stages and both
/// comparison arms see identical draws.
uint64_t seed_for(uint64_t root_seed, std::string_view stream_label);

/// Deterministic random source: mt19937_64 with explicit uniform and
/// Box-Muller Gaussian mappings. std::*_distribution is implementation
/// defined, so we spell the mappings out to keep generated datasets
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  /// Uniform in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Bounded integer in [0, n), n >= 1.
  uint64_t below(uint64_t n) { return gen_() % n; }

  /// Standard normal via Box-Muller; draws come out in a fixed order.
  double gaussian();

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tfa
