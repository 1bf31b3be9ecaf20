#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace segscope {

// Every failure mode has a typed code. Input/validation errors map to CLI
// exit 2, domain errors (degenerate or empty-group conditions) to exit 3.
enum class Errc {
    DuplicateId,
    NonBinaryFeature,
    LengthMismatch,
    PartialLatentLabels,
    SelfLoop,
    UnknownNode,
    TooFewRows,
    AsymmetricMatrix,
    InvalidArgument,
    UnknownGroup,
    UnassignedNode,
    MissingReference,
    CapacityInfeasible,
    ParseError,
    InvalidConfig,
    DegenerateSegregation,
    EmptyGroup,
    NoPositives,
    UndefinedAssortativity,
    EmptyGraph,
};

const char* errc_name(Errc kind);
bool is_domain_error(Errc kind);

class Error : public std::runtime_error {
public:
    Error(Errc kind, const std::string& message)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + message), kind_(kind) {}

    Errc kind() const { return kind_; }

private:
    Errc kind_;
};

[[noreturn]] void fail(Errc kind, const std::string& message);

enum class FeatureCategory { Phenotype, Class, Nationality };

const char* category_name(FeatureCategory c);
std::optional<FeatureCategory> parse_category(const std::string& name);

/// Ordered binary feature layout. Feature names are unique and each carries
/// one of the three category tags.
struct FeatureSchema {
    struct Feature {
        std::string name;
        FeatureCategory category;
    };

    std::vector<Feature> features;

    std::size_t size() const { return features.size(); }
};

FeatureSchema make_schema(std::vector<FeatureSchema::Feature> features);

struct FeatureVector {
    std::vector<std::uint8_t> bits;  // entries in {0,1}, length == schema size
};

struct Individual {
    std::string id;
    FeatureVector features;
    std::optional<int> latent_group;  // reference label, never used by detection
};

/// Immutable after construction via build_population.
struct Population {
    FeatureSchema schema;
    std::vector<Individual> individuals;  // input row order preserved
    std::map<std::string, std::size_t> index_by_id;

    bool has_latent() const;
    const Individual* find(const std::string& id) const;
};

Population build_population(FeatureSchema schema, std::vector<Individual> rows);

struct TractMap {
    std::map<std::string, std::string> tract_of;  // individual id -> tract id
    std::vector<std::string> tract_ids;           // ordered, first appearance
};

/// Validates that every individual in pop is mapped and >= 2 tracts are referenced.
TractMap make_tract_map(const Population& pop,
                        const std::vector<std::pair<std::string, std::string>>& assignments);

/// File-driven variant without a population to check against.
TractMap make_tract_map(const std::vector<std::pair<std::string, std::string>>& assignments);

/// Undirected simple graph. Edges are stored canonically: each pair ordered
/// (first < second), the list sorted and deduplicated.
struct SocialGraph {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
};

SocialGraph build_graph(const Population& pop,
                        const std::vector<std::pair<std::string, std::string>>& edges);

/// File-driven variant: the node set is the union of edge endpoints.
SocialGraph build_graph(const std::vector<std::pair<std::string, std::string>>& edges);

struct AssignmentProvenance {
    std::string method;  // "spatial" | "network" | "reference" | "file"
    std::vector<double> component_eigenvalues;
    std::vector<std::vector<double>> component_vectors;
    std::vector<double> mean;       // feature-space mean the scores were centered on
    std::vector<double> scale;      // per-feature divisor; empty unless standardized
    std::string threshold_policy;
    std::vector<double> thresholds; // one per component
};

/// Group label per individual plus how the labels were produced.
struct GroupAssignment {
    std::map<std::string, int> group_of;
    AssignmentProvenance provenance;

    std::vector<int> group_ids() const;  // sorted distinct labels
};

GroupAssignment make_reference_assignment(const Population& pop);
GroupAssignment make_assignment(const std::vector<std::pair<std::string, int>>& pairs,
                                const std::string& method = "file");

/// Deterministic pseudorandom stream. Engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; draws below are defined on top of the
/// raw 64-bit stream so results are identical across platforms:
///   next_double  = (next_u64() >> 11) * 2^-53            (uniform [0,1))
///   bernoulli(p) = next_double() < p
///   uniform_below(n) = rejection-sampled next_u64() % n  (unbiased)
///   shuffle      = Fisher-Yates from the top index down
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    std::size_t uniform_below(std::size_t n);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Rule for turning component scores into group bits. CenteredZero splits at
/// the aggregate mean (threshold 0 on the centered projection); Quantile(q)
/// splits the observed individual scores at quantile q (linear interpolation
/// between order statistics). A score exactly at the threshold gets bit 0.
struct ThresholdPolicy {
    enum class Kind { CenteredZero, Quantile };

    Kind kind = Kind::CenteredZero;
    double quantile = 0.5;

    static ThresholdPolicy centered_zero() { return {}; }
    static ThresholdPolicy at_quantile(double q);
    static ThresholdPolicy parse(const std::string& text);
    std::string str() const;
};

}  // namespace segscope
