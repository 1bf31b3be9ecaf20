#pragma once

#include <vector>

#include "segscope/core.hpp"
#include "segscope/linalg.hpp"

namespace segscope {

/// One row per edge, in canonical edge order: the endpoint feature vectors
/// averaged, so entries land in {0, 0.5, 1}.
RealMatrix aggregate_edges(const SocialGraph& graph, const Population& pop);

struct NetworkDetectOptions {
    std::size_t components = 1;
    ThresholdPolicy policy;
    bool standardize = false;
};

/// Edge-aggregation pipeline: edge rows -> center -> covariance -> top-m
/// components -> per-individual threshold bits. Every population member is
/// classified, isolated nodes included.
GroupAssignment detect_network_groups(const SocialGraph& graph, const Population& pop,
                                      const NetworkDetectOptions& options = {});

/// e[i][j] = fraction of edge-ends connecting group i to group j; a and b are
/// the row and column sums. Undirected: each edge counts once per direction,
/// normalized by 2|E|, so e is symmetric with total mass 1.
struct MixingMatrix {
    std::vector<int> group_ids;  // sorted distinct labels indexing e
    RealMatrix e;
    std::vector<double> a;
    std::vector<double> b;
};

MixingMatrix mixing_matrix(const SocialGraph& graph, const GroupAssignment& assignment);

struct AssortativityReport {
    double r = 0.0;  // (sum e_ii - sum a_i b_i) / (1 - sum a_i b_i), <= 1
    MixingMatrix mixing;
    std::size_t group_count = 0;
};

AssortativityReport assortativity(const MixingMatrix& mixing);

}  // namespace segscope
