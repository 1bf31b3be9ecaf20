#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "segscope/core.hpp"

namespace segscope {

struct Prediction {
    std::string id;
    int y_true = 0;      // desired outcome, {0,1}
    double score = 0.0;  // in [0,1]
    int y_hat = 0;       // predicted label, {0,1}
};

struct PredictionSet {
    std::vector<Prediction> items;
    std::optional<double> threshold;  // recorded when this artifact produced y_hat
};

PredictionSet build_predictions(std::vector<Prediction> items,
                                std::optional<double> threshold = std::nullopt);

struct GroupRate {
    int group = 0;
    std::size_t count = 0;
    std::size_t predicted_positive = 0;
    std::size_t actual_positive = 0;
    double positive_rate = 0.0;        // P(y_hat = 1 | group)
    std::optional<double> tpr;         // P(y_hat = 1 | group, y = 1); empty if no positives
};

std::vector<GroupRate> group_rates(const PredictionSet& preds, const GroupAssignment& a);

/// Max pairwise |P(y_hat=1 | g) - P(y_hat=1 | h)|; 0 means parity holds.
double dp_gap(const PredictionSet& preds, const GroupAssignment& a);

/// Max pairwise true-positive-rate difference; every group needs a positive.
double eo_gap(const PredictionSet& preds, const GroupAssignment& a);

struct ModelManifest {
    std::vector<std::string> inputs;  // declared feature names of an external model
};

struct FtuReport {
    bool ok = true;
    std::vector<std::string> offenders;  // protected names the manifest uses
};

FtuReport ftu_check(const ModelManifest& manifest, const std::set<std::string>& protected_names);

struct EoAdjustment {
    std::map<int, double> thresholds;  // per-group decision threshold
    PredictionSet adjusted;            // y_hat recomputed as score > threshold(group)
    double gap_before = 0.0;
    double gap_after = 0.0;
    bool within_tolerance = false;
};

/// Per-group thresholds minimizing the max pairwise TPR gap, swept over the
/// observed score values plus {0,1}. The result never exceeds the gap of the
/// best single shared threshold, and ties resolve deterministically (highest
/// achievable TPR window, then the largest threshold realizing each rate).
EoAdjustment eo_adjust(const PredictionSet& preds, const GroupAssignment& a, double tolerance);

/// Balanced accuracy of the assignment against reference labels, maximized
/// over group-label permutations; 1.0 = perfect recovery up to relabeling.
double alignment_score(const GroupAssignment& a, const std::map<std::string, int>& reference);
double alignment_score(const GroupAssignment& a, const Population& pop);

}  // namespace segscope
