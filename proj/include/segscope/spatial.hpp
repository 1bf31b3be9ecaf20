#pragma once

#include <string>
#include <vector>

#include "segscope/core.hpp"
#include "segscope/linalg.hpp"

namespace segscope {

/// Per-tract feature prevalence: summed bits divided by resident count.
struct TractProfile {
    std::string tract_id;
    std::size_t count = 0;
    std::vector<double> profile;
};

struct TractAggregation {
    std::vector<TractProfile> profiles;      // tract_ids order, empty tracts omitted
    std::vector<std::string> warnings;       // one per omitted empty tract
};

TractAggregation aggregate_tracts(const Population& pop, const TractMap& tracts);

struct SpatialDetectOptions {
    std::size_t components = 1;
    ThresholdPolicy policy;
    bool weight_by_population = false;  // weight tract rows by resident count
    bool standardize = false;           // scale centered columns to unit variance
};

/// Tract-aggregation pipeline: profiles -> center -> covariance -> top-m
/// components -> per-individual threshold bits. Individuals are centered on
/// the tract-level mean (the mean the components were computed against).
GroupAssignment detect_spatial_groups(const Population& pop, const TractMap& tracts,
                                      const SpatialDetectOptions& options = {});

struct TractGroupCounts {
    std::string tract_id;
    double first = 0.0;   // members of the first audited group
    double second = 0.0;  // members of the second audited group
};

struct DissimilarityTerm {
    std::string tract_id;
    double first_share = 0.0;   // w_i / W
    double second_share = 0.0;  // b_i / B
};

struct DissimilarityReport {
    double d = 0.0;  // 1/2 sum |w_i/W - b_i/B|, in [0,1]
    std::vector<DissimilarityTerm> terms;
    int group_first = 0;
    int group_second = 1;
};

DissimilarityReport dissimilarity(const std::vector<TractGroupCounts>& counts,
                                  int group_first = 0, int group_second = 1);

/// Tallies the two groups per tract from an assignment, then applies the
/// index. Works without a population (the assignment defines the universe).
DissimilarityReport dissimilarity_for_groups(const TractMap& tracts, const GroupAssignment& a,
                                             int group_first, int group_second);

DissimilarityReport dissimilarity_for_assignment(const Population& pop, const TractMap& tracts,
                                                 const GroupAssignment& a, int group_first,
                                                 int group_second);

}  // namespace segscope
