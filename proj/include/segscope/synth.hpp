#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "segscope/core.hpp"
#include "segscope/fairness.hpp"

namespace segscope {

/// Latent two-group population: each individual draws latent label g with
/// P(g=1) = latent_fraction, and every feature bit is g XOR Bernoulli(flip_noise).
struct PopulationSynthConfig {
    std::size_t n = 1000;
    std::size_t k = 6;
    double latent_fraction = 0.5;  // in (0,1)
    double flip_noise = 0.1;       // in [0, 0.5)
    std::uint64_t seed = 1;

    void validate() const;
};

struct SpatialSynthConfig {
    std::size_t n = 2000;
    std::size_t k = 6;
    double latent_fraction = 0.5;
    double flip_noise = 0.1;
    std::size_t tracts = 20;
    std::size_t capacity = 150;    // per tract; tracts * capacity >= n
    double tolerance = 0.5;        // unhappy below this same-group fraction
    std::size_t max_iters = 200;
    std::uint64_t seed = 1;

    void validate() const;
    PopulationSynthConfig population() const;
};

struct GraphSynthConfig {
    std::size_t n = 1000;
    std::size_t k = 6;
    double latent_fraction = 0.5;
    double flip_noise = 0.1;
    double p_in = 0.02;   // same-latent-group link probability, in [0,1]
    double p_out = 0.002; // cross-group link probability, p_in > p_out
    std::uint64_t seed = 1;

    void validate() const;
    PopulationSynthConfig population() const;
};

/// Symmetric triangular density centered on `mode` with the given half-width,
/// clipped to [0,1].
struct TriangularParams {
    double mode = 0.5;
    double half_width = 0.25;
};

struct GroupOutcomeParams {
    double base_rate = 0.5;     // P(Y = 1) for the group
    TriangularParams positive;  // score distribution when Y = 1
    TriangularParams negative;  // score distribution when Y = 0
};

struct OutcomeSynthConfig {
    std::vector<GroupOutcomeParams> groups;  // one entry per group id, ascending
    double threshold = 0.5;                  // shared decision threshold
    std::uint64_t seed = 1;

    void validate() const;
};

Population gen_population(const PopulationSynthConfig& cfg);

struct SchellingResult {
    TractMap map;
    std::size_t iterations = 0;          // move phases executed
    double latent_dissimilarity = 0.0;   // D of the latent groups, final layout
};

/// Classic relocation dynamics: uniform random placement respecting tract
/// capacities, then every individual whose same-latent-group share among
/// co-residents falls below the tolerance moves (in seeded random order) to a
/// uniformly chosen other tract with vacancy. Stops when no one is unhappy or
/// after max_iters phases. An individual with no co-residents is content.
SchellingResult schelling_sort(const Population& pop, const SpatialSynthConfig& cfg);

/// Planted-partition graph: each unordered pair links independently with
/// probability p_in when latent groups match, else p_out.
SocialGraph gen_homophily_graph(const Population& pop, const GraphSynthConfig& cfg);

/// Outcomes and scores per group: Y ~ Bernoulli(base_rate), score from the
/// configured triangular distribution, y_hat = score > threshold.
PredictionSet gen_outcomes(const Population& pop, const GroupAssignment& assignment,
                           const OutcomeSynthConfig& cfg);

double sample_triangular(const TriangularParams& params, SeededRng& rng);

}  // namespace segscope
