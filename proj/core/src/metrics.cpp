// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tfa Authors

#include "tfa/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tfa {

namespace {

void check(const ScoredLabels& d) {
  if (d.scores.size() != d.labels.size()) {
    throw std::invalid_argument("scores and labels differ in length");
  }
  size_t pos = 0;
  for (int l : d.labels) {
    if (l != 0 && l != 1) throw std::invalid_argument("labels must be 0 or 1");
    pos += size_t(l);
  }
  if (pos == 0 || pos == d.labels.size()) {
    throw std::invalid_argument("AUC needs both classes present");
  }
}

}  // namespace

double auc_trapezoid(const ScoredLabels& data) {
  check(data);
  std::vector<size_t> order(data.scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return data.scores[a] > data.scores[b];
  });

  double total_pos = 0, total_neg = 0;
  for (int l : data.labels) (l ? total_pos : total_neg) += 1.0;

  double area = 0.0;
  double tp = 0, fp = 0;
  size_t i = 0;
  while (i < order.size()) {
    // One threshold step per group of tied scores.
    size_t j = i;
    double group_pos = 0, group_neg = 0;
    while (j < order.size() && data.scores[order[j]] == data.scores[order[i]]) {
      (data.labels[order[j]] ? group_pos : group_neg) += 1.0;
      ++j;
    }
    const double tp2 = tp + group_pos, fp2 = fp + group_neg;
    area += (fp2 - fp) / total_neg * (tp + tp2) / (2.0 * total_pos);
    tp = tp2;
    fp = fp2;
    i = j;
  }
  return area;
}

double auc_pairwise(const ScoredLabels& data) {
  check(data);
  double wins = 0.0;
  size_t pairs = 0;
  for (size_t i = 0; i < data.scores.size(); ++i) {
    if (!data.labels[i]) continue;
    for (size_t j = 0; j < data.scores.size(); ++j) {
      if (data.labels[j]) continue;
      ++pairs;
      if (data.scores[i] > data.scores[j]) wins += 1.0;
      else if (data.scores[i] == data.scores[j]) wins += 0.5;
    }
  }
  return wins / double(pairs);
}

EvalSummary aggregate_runs(const std::vector<double>& per_run_auc,
                           const std::vector<uint64_t>& run_seeds) {
  if (per_run_auc.empty()) throw std::invalid_argument("no runs to aggregate");
  EvalSummary s;
  s.per_run_auc = per_run_auc;
  s.run_seeds = run_seeds;
  s.mean_auc = std::accumulate(per_run_auc.begin(), per_run_auc.end(), 0.0) /
               double(per_run_auc.size());
  return s;
}

std::string to_json(const EvalSummary& s) {
  nlohmann::json j;
  j["per_run_auc"] = s.per_run_auc;
  j["mean_auc"] = s.mean_auc;
  j["run_seeds"] = s.run_seeds;
  return j.dump(2);
}

}  // namespace tfa
