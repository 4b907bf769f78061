// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace tfa {

namespace {

// fftw_execute_dft is thread-safe; plan creation is not, so the cache takes
// a lock only on the first transform of a given (size, direction).
class PlanCache {
 public:
  fftw_plan get(size_t n, int sign) {
    std::scoped_lock lock(mu_);
    auto it = plans_.find({n, sign});
    if (it != plans_.end()) return it->second;
    std::vector<fftw_complex> scratch(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), scratch.data(),
                                   scratch.data(), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(std::make_pair(n, sign), p);
    return p;
  }

  ~PlanCache() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex mu_;
  std::map<std::pair<size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void execute(std::complex<double>* data, size_t n, int sign) {
  if (n == 0) throw std::invalid_argument("fft of zero-length buffer");
  if (n == 1) return;
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(cache().get(n, sign), raw, raw);
}

}  // namespace

void fft(std::complex<double>* data, size_t n) {
  execute(data, n, FFTW_FORWARD);
}

void ifft(std::complex<double>* data, size_t n) {
  execute(data, n, FFTW_BACKWARD);
  const double inv = 1.0 / static_cast<double>(n);
  for (size_t i = 0; i < n; ++i) data[i] *= inv;
}

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace tfa
