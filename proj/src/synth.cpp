#include "segscope/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "segscope/spatial.hpp"

namespace segscope {
namespace {

// Each generator stage draws from its own substream so adding draws to one
// stage never shifts another. Draw order within a stage is part of the
// determinism contract and is documented at each site.
constexpr std::uint64_t kStageMix = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kStagePopulation = 1;
constexpr std::uint64_t kStagePlacement = 2;
constexpr std::uint64_t kStageMoves = 3;
constexpr std::uint64_t kStageGraph = 4;
constexpr std::uint64_t kStageOutcomes = 5;

SeededRng stage_rng(std::uint64_t seed, std::uint64_t stage) {
    return SeededRng(seed ^ (stage * kStageMix));
}

std::string padded_id(char prefix, std::size_t index, std::size_t count) {
    int width = 1;
    for (std::size_t top = count > 0 ? count - 1 : 0; top >= 10; top /= 10) ++width;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%c%0*zu", prefix, width, index);
    return buf;
}

void validate_population_part(std::size_t n, std::size_t k, double latent_fraction,
                              double flip_noise) {
    if (n < 2) fail(Errc::InvalidConfig, "population size must be at least 2");
    if (k < 1) fail(Errc::InvalidConfig, "feature count must be at least 1");
    if (!(latent_fraction > 0.0 && latent_fraction < 1.0))
        fail(Errc::InvalidConfig, "latent_fraction must lie in (0, 1)");
    if (!(flip_noise >= 0.0 && flip_noise < 0.5))
        fail(Errc::InvalidConfig, "flip_noise must lie in [0, 0.5)");
}

}  // namespace

void PopulationSynthConfig::validate() const {
    validate_population_part(n, k, latent_fraction, flip_noise);
}

void SpatialSynthConfig::validate() const {
    validate_population_part(n, k, latent_fraction, flip_noise);
    if (tracts < 2) fail(Errc::InvalidConfig, "need at least 2 tracts");
    if (capacity < 1) fail(Errc::InvalidConfig, "tract capacity must be at least 1");
    if (tracts * capacity < n)
        fail(Errc::CapacityInfeasible, "tracts * capacity is below the population size");
    if (!(tolerance >= 0.0 && tolerance <= 1.0))
        fail(Errc::InvalidConfig, "tolerance must lie in [0, 1]");
}

PopulationSynthConfig SpatialSynthConfig::population() const {
    return {n, k, latent_fraction, flip_noise, seed};
}

void GraphSynthConfig::validate() const {
    validate_population_part(n, k, latent_fraction, flip_noise);
    if (!(p_out >= 0.0 && p_in <= 1.0 && p_in > p_out))
        fail(Errc::InvalidConfig, "link probabilities must satisfy 0 <= p_out < p_in <= 1");
}

PopulationSynthConfig GraphSynthConfig::population() const {
    return {n, k, latent_fraction, flip_noise, seed};
}

void OutcomeSynthConfig::validate() const {
    if (groups.empty()) fail(Errc::InvalidConfig, "outcome config needs at least one group");
    if (!(threshold >= 0.0 && threshold <= 1.0))
        fail(Errc::InvalidConfig, "threshold must lie in [0, 1]");
    for (const GroupOutcomeParams& g : groups) {
        if (!(g.base_rate >= 0.0 && g.base_rate <= 1.0))
            fail(Errc::InvalidConfig, "base_rate must lie in [0, 1]");
        for (const TriangularParams* t : {&g.positive, &g.negative}) {
            if (!(t->mode >= 0.0 && t->mode <= 1.0))
                fail(Errc::InvalidConfig, "triangular mode must lie in [0, 1]");
            if (!(t->half_width > 0.0))
                fail(Errc::InvalidConfig, "triangular half_width must be positive");
        }
    }
}

// Per individual, in id order: one draw for the latent label, then one draw
// per feature bit.
Population gen_population(const PopulationSynthConfig& cfg) {
    cfg.validate();
    SeededRng rng = stage_rng(cfg.seed, kStagePopulation);

    std::vector<FeatureSchema::Feature> features;
    features.reserve(cfg.k);
    constexpr FeatureCategory kCycle[] = {FeatureCategory::Phenotype, FeatureCategory::Class,
                                          FeatureCategory::Nationality};
    for (std::size_t j = 0; j < cfg.k; ++j) {
        FeatureCategory cat = kCycle[j % 3];
        features.push_back({std::string(category_name(cat)) + "_" + std::to_string(j), cat});
    }

    std::vector<Individual> rows;
    rows.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        Individual ind;
        ind.id = padded_id('p', i, cfg.n);
        int g = rng.bernoulli(cfg.latent_fraction) ? 1 : 0;
        ind.latent_group = g;
        ind.features.bits.reserve(cfg.k);
        for (std::size_t j = 0; j < cfg.k; ++j) {
            int bit = g ^ (rng.bernoulli(cfg.flip_noise) ? 1 : 0);
            ind.features.bits.push_back(static_cast<std::uint8_t>(bit));
        }
        rows.push_back(std::move(ind));
    }
    return build_population(make_schema(std::move(features)), std::move(rows));
}

SchellingResult schelling_sort(const Population& pop, const SpatialSynthConfig& cfg) {
    cfg.validate();
    if (!pop.has_latent())
        fail(Errc::MissingReference, "relocation dynamics need latent groups");
    const std::size_t n = pop.individuals.size();
    if (n > cfg.tracts * cfg.capacity)
        fail(Errc::CapacityInfeasible, "population exceeds total tract capacity");

    // Initial placement: shuffle one slot per unit of capacity and hand the
    // first n out in individual order — uniform among capacity-respecting
    // layouts. Placement and moves use separate substreams.
    SeededRng place = stage_rng(cfg.seed, kStagePlacement);
    std::vector<std::size_t> slots;
    slots.reserve(cfg.tracts * cfg.capacity);
    for (std::size_t t = 0; t < cfg.tracts; ++t)
        for (std::size_t c = 0; c < cfg.capacity; ++c) slots.push_back(t);
    place.shuffle(slots);

    std::vector<std::size_t> tract_of(n);
    std::vector<std::size_t> occupancy(cfg.tracts, 0);
    for (std::size_t i = 0; i < n; ++i) {
        tract_of[i] = slots[i];
        ++occupancy[slots[i]];
    }

    std::vector<int> latent(n);
    for (std::size_t i = 0; i < n; ++i) {
        latent[i] = *pop.individuals[i].latent_group;
        if (latent[i] < 0) fail(Errc::InvalidArgument, "latent labels must be non-negative");
    }

    // counts[t][g]: residents of tract t with latent label g (labels are 0/1
    // from gen_population; anything else is counted under its own bucket).
    int max_label = 0;
    for (int g : latent) max_label = std::max(max_label, g);
    const std::size_t labels = static_cast<std::size_t>(max_label) + 1;
    std::vector<std::vector<std::size_t>> counts(cfg.tracts,
                                                 std::vector<std::size_t>(labels, 0));
    for (std::size_t i = 0; i < n; ++i) ++counts[tract_of[i]][latent[i]];

    auto unhappy = [&](std::size_t i) {
        std::size_t t = tract_of[i];
        std::size_t same = counts[t][latent[i]] - 1;  // co-residents only
        std::size_t total = occupancy[t] - 1;
        if (total == 0) return false;
        return static_cast<double>(same) / static_cast<double>(total) < cfg.tolerance;
    };

    SeededRng moves = stage_rng(cfg.seed, kStageMoves);
    std::size_t iterations = 0;
    std::vector<std::size_t> movers;
    std::vector<std::size_t> candidates;
    while (iterations < cfg.max_iters) {
        movers.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (unhappy(i)) movers.push_back(i);
        if (movers.empty()) break;

        // One phase: snapshot the unhappy set, visit it in shuffled order, and
        // send each mover to a uniformly chosen other tract with a vacancy at
        // that moment. A mover with nowhere to go stays put.
        moves.shuffle(movers);
        for (std::size_t i : movers) {
            std::size_t from = tract_of[i];
            candidates.clear();
            for (std::size_t t = 0; t < cfg.tracts; ++t)
                if (t != from && occupancy[t] < cfg.capacity) candidates.push_back(t);
            if (candidates.empty()) continue;
            std::size_t to = candidates[moves.uniform_below(candidates.size())];
            --occupancy[from];
            --counts[from][latent[i]];
            ++occupancy[to];
            ++counts[to][latent[i]];
            tract_of[i] = to;
        }
        ++iterations;
    }

    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pairs.emplace_back(pop.individuals[i].id, padded_id('t', tract_of[i], cfg.tracts));

    SchellingResult result;
    result.map = make_tract_map(pop, pairs);
    result.iterations = iterations;

    std::vector<TractGroupCounts> d_counts;
    for (std::size_t t = 0; t < cfg.tracts; ++t) {
        if (occupancy[t] == 0) continue;
        TractGroupCounts row;
        row.tract_id = padded_id('t', t, cfg.tracts);
        row.first = static_cast<double>(counts[t][0]);
        row.second = labels > 1 ? static_cast<double>(counts[t][1]) : 0.0;
        d_counts.push_back(std::move(row));
    }
    result.latent_dissimilarity = dissimilarity(d_counts).d;
    return result;
}

// One Bernoulli draw per unordered pair, visited in (i, j) order with i < j.
SocialGraph gen_homophily_graph(const Population& pop, const GraphSynthConfig& cfg) {
    cfg.validate();
    if (!pop.has_latent())
        fail(Errc::MissingReference, "homophily graph needs latent groups");
    SeededRng rng = stage_rng(cfg.seed, kStageGraph);
    const std::size_t n = pop.individuals.size();

    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool same = pop.individuals[i].latent_group == pop.individuals[j].latent_group;
            double p = same ? cfg.p_in : cfg.p_out;
            if (rng.bernoulli(p))
                edges.emplace_back(pop.individuals[i].id, pop.individuals[j].id);
        }
    }
    return build_graph(pop, edges);
}

double sample_triangular(const TriangularParams& params, SeededRng& rng) {
    double u = rng.next_double();
    double h = params.half_width;
    double x = u < 0.5 ? params.mode - h + h * std::sqrt(2.0 * u)
                       : params.mode + h - h * std::sqrt(2.0 * (1.0 - u));
    return std::clamp(x, 0.0, 1.0);
}

// Per individual, in population order: one draw for the outcome, one for the
// score.
PredictionSet gen_outcomes(const Population& pop, const GroupAssignment& assignment,
                           const OutcomeSynthConfig& cfg) {
    cfg.validate();
    SeededRng rng = stage_rng(cfg.seed, kStageOutcomes);

    std::vector<Prediction> items;
    items.reserve(pop.individuals.size());
    for (const Individual& ind : pop.individuals) {
        auto it = assignment.group_of.find(ind.id);
        if (it == assignment.group_of.end())
            fail(Errc::UnassignedNode, "no group for individual '" + ind.id + "'");
        int g = it->second;
        if (g < 0 || static_cast<std::size_t>(g) >= cfg.groups.size())
            fail(Errc::UnknownGroup,
                 "no outcome parameters for group " + std::to_string(g));
        const GroupOutcomeParams& params = cfg.groups[static_cast<std::size_t>(g)];

        Prediction p;
        p.id = ind.id;
        p.y_true = rng.bernoulli(params.base_rate) ? 1 : 0;
        p.score = sample_triangular(p.y_true ? params.positive : params.negative, rng);
        p.y_hat = p.score > cfg.threshold ? 1 : 0;
        items.push_back(std::move(p));
    }
    return build_predictions(std::move(items), cfg.threshold);
}

}  // namespace segscope
