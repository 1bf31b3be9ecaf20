#pragma once

// Internal helpers shared by the spatial and network detectors.

#include <string>
#include <vector>

#include "segscope/core.hpp"
#include "segscope/linalg.hpp"

namespace segscope::detail {

std::vector<double> feature_doubles(const Individual& ind);

// Linear-interpolation quantile of the values (copy is sorted internally).
double quantile_linear(std::vector<double> values, double q);

struct ComponentBasis {
    std::vector<PrincipalComponent> components;
    std::vector<double> mean;
    std::vector<double> scale;  // empty unless standardized
};

// Centers (and optionally standardizes) the aggregate rows, checks for the
// all-rows-identical degenerate case, and extracts the top m components.
// Non-empty weights switch to the row-weighted mean and covariance.
ComponentBasis extract_basis(const RealMatrix& aggregate, const std::vector<double>& weights,
                             std::size_t m, bool standardize);

// Scores every individual against the basis and packs threshold bits into a
// group id (bit c set iff score on component c exceeds its threshold; exact
// ties fall to 0).
GroupAssignment classify(const Population& pop, const ComponentBasis& basis,
                         const ThresholdPolicy& policy, const std::string& method);

}  // namespace segscope::detail
