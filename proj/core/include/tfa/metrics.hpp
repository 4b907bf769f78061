// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tfa {

struct ScoredLabels {
  std::vector<double> scores;
  std::vector<int> labels;  // 1 = abnormal, 0 = normal
};

struct EvalSummary {
  std::vector<double> per_run_auc;
  double mean_auc = 0.0;
  std::vector<uint64_t> run_seeds;
};

/// ROC integration: sort by score descending, sweep thresholds grouping
/// tied scores into one step, integrate TPR over FPR by trapezoids.
double auc_trapezoid(const ScoredLabels& data);

/// Independent oracle: exact enumeration over all (abnormal, normal) pairs,
/// ties counting one half. Agrees with auc_trapezoid to 1e-9.
double auc_pairwise(const ScoredLabels& data);

EvalSummary aggregate_runs(const std::vector<double>& per_run_auc,
                           const std::vector<uint64_t>& run_seeds);

std::string to_json(const EvalSummary& s);

/// AUC values reported by the reference study this harness mirrors. Shipped
/// so reports can print them side by side with measured results; they are
/// NOT reproduction targets (the source corpus is not bundled).
struct SnrReferenceAuc {
  double snr_db;
  double baseline, scalogram, spectrogram;
};
inline constexpr SnrReferenceAuc kReferenceAucBySnr[] = {
    {-6.0, 0.893, 0.921, 0.981},
    {0.0, 0.942, 0.964, 0.992},
    {6.0, 0.975, 0.988, 0.997},
};

struct MachineReferenceAuc {
  const char* machine;
  double scalogram, spectrogram;
};
inline constexpr MachineReferenceAuc kReferenceAucByMachine[] = {
    {"fan", 0.934, 0.988},
    {"pump", 0.962, 0.991},
    {"slider", 0.947, 0.995},
    {"valve", 0.987, 0.984},
};

}  // namespace tfa
