#include "segscope/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace segscope {

const char* errc_name(Errc kind) {
    switch (kind) {
        case Errc::DuplicateId: return "DuplicateId";
        case Errc::NonBinaryFeature: return "NonBinaryFeature";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::PartialLatentLabels: return "PartialLatentLabels";
        case Errc::SelfLoop: return "SelfLoop";
        case Errc::UnknownNode: return "UnknownNode";
        case Errc::TooFewRows: return "TooFewRows";
        case Errc::AsymmetricMatrix: return "AsymmetricMatrix";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::UnknownGroup: return "UnknownGroup";
        case Errc::UnassignedNode: return "UnassignedNode";
        case Errc::MissingReference: return "MissingReference";
        case Errc::CapacityInfeasible: return "CapacityInfeasible";
        case Errc::ParseError: return "ParseError";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::DegenerateSegregation: return "DegenerateSegregation";
        case Errc::EmptyGroup: return "EmptyGroup";
        case Errc::NoPositives: return "NoPositives";
        case Errc::UndefinedAssortativity: return "UndefinedAssortativity";
        case Errc::EmptyGraph: return "EmptyGraph";
    }
    return "UnknownError";
}

bool is_domain_error(Errc kind) {
    switch (kind) {
        case Errc::DegenerateSegregation:
        case Errc::EmptyGroup:
        case Errc::NoPositives:
        case Errc::UndefinedAssortativity:
        case Errc::EmptyGraph:
            return true;
        default:
            return false;
    }
}

void fail(Errc kind, const std::string& message) { throw Error(kind, message); }

const char* category_name(FeatureCategory c) {
    switch (c) {
        case FeatureCategory::Phenotype: return "phenotype";
        case FeatureCategory::Class: return "class";
        case FeatureCategory::Nationality: return "nationality";
    }
    return "?";
}

std::optional<FeatureCategory> parse_category(const std::string& name) {
    if (name == "phenotype") return FeatureCategory::Phenotype;
    if (name == "class") return FeatureCategory::Class;
    if (name == "nationality") return FeatureCategory::Nationality;
    return std::nullopt;
}

FeatureSchema make_schema(std::vector<FeatureSchema::Feature> features) {
    if (features.empty()) fail(Errc::InvalidArgument, "schema must have at least one feature");
    std::set<std::string> seen;
    for (const auto& f : features) {
        if (f.name.empty()) fail(Errc::InvalidArgument, "feature name must be non-empty");
        if (!seen.insert(f.name).second)
            fail(Errc::DuplicateId, "duplicate feature name '" + f.name + "'");
    }
    return FeatureSchema{std::move(features)};
}

bool Population::has_latent() const {
    return !individuals.empty() && individuals.front().latent_group.has_value();
}

const Individual* Population::find(const std::string& id) const {
    auto it = index_by_id.find(id);
    if (it == index_by_id.end()) return nullptr;
    return &individuals[it->second];
}

Population build_population(FeatureSchema schema, std::vector<Individual> rows) {
    if (rows.empty()) fail(Errc::InvalidArgument, "population must have at least one row");

    Population pop;
    pop.schema = std::move(schema);
    const std::size_t k = pop.schema.size();

    std::size_t with_latent = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.features.bits.size() != k) {
            std::ostringstream msg;
            msg << "row '" << row.id << "' has " << row.features.bits.size()
                << " feature bits, schema expects " << k;
            fail(Errc::LengthMismatch, msg.str());
        }
        for (std::uint8_t b : row.features.bits) {
            if (b > 1)
                fail(Errc::NonBinaryFeature,
                     "row '" + row.id + "' has a feature entry outside {0,1}");
        }
        if (!pop.index_by_id.emplace(row.id, i).second)
            fail(Errc::DuplicateId, "duplicate individual id '" + row.id + "'");
        if (row.latent_group) ++with_latent;
    }
    if (with_latent != 0 && with_latent != rows.size())
        fail(Errc::PartialLatentLabels, "latent labels present for only some individuals");

    pop.individuals = std::move(rows);
    return pop;
}

namespace {

TractMap tract_map_from_pairs(
    const std::vector<std::pair<std::string, std::string>>& assignments) {
    TractMap map;
    std::set<std::string> listed;
    for (const auto& [id, tract] : assignments) {
        if (!map.tract_of.emplace(id, tract).second)
            fail(Errc::DuplicateId, "individual '" + id + "' mapped to more than one tract");
        if (listed.insert(tract).second) map.tract_ids.push_back(tract);
    }
    if (map.tract_ids.size() < 2)
        fail(Errc::InvalidArgument, "tract map must reference at least 2 tracts");
    return map;
}

}  // namespace

TractMap make_tract_map(const Population& pop,
                        const std::vector<std::pair<std::string, std::string>>& assignments) {
    TractMap map = tract_map_from_pairs(assignments);
    for (const auto& [id, tract] : map.tract_of) {
        (void)tract;
        if (!pop.find(id)) fail(Errc::UnknownNode, "tract map references unknown id '" + id + "'");
    }
    for (const auto& ind : pop.individuals) {
        if (!map.tract_of.count(ind.id))
            fail(Errc::MissingReference, "individual '" + ind.id + "' has no tract assignment");
    }
    return map;
}

TractMap make_tract_map(const std::vector<std::pair<std::string, std::string>>& assignments) {
    return tract_map_from_pairs(assignments);
}

SocialGraph build_graph(const Population& pop,
                        const std::vector<std::pair<std::string, std::string>>& edges) {
    SocialGraph g;
    g.nodes.reserve(pop.individuals.size());
    for (const auto& ind : pop.individuals) g.nodes.push_back(ind.id);

    std::set<std::pair<std::string, std::string>> canonical;
    for (const auto& [a, b] : edges) {
        if (a == b) fail(Errc::SelfLoop, "self-loop on '" + a + "'");
        if (!pop.find(a)) fail(Errc::UnknownNode, "edge endpoint '" + a + "' not in population");
        if (!pop.find(b)) fail(Errc::UnknownNode, "edge endpoint '" + b + "' not in population");
        canonical.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    }
    g.edges.assign(canonical.begin(), canonical.end());
    return g;
}

SocialGraph build_graph(const std::vector<std::pair<std::string, std::string>>& edges) {
    std::set<std::string> nodes;
    std::set<std::pair<std::string, std::string>> canonical;
    for (const auto& [a, b] : edges) {
        if (a == b) fail(Errc::SelfLoop, "self-loop on '" + a + "'");
        nodes.insert(a);
        nodes.insert(b);
        canonical.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    }
    SocialGraph g;
    g.nodes.assign(nodes.begin(), nodes.end());
    g.edges.assign(canonical.begin(), canonical.end());
    return g;
}

std::vector<int> GroupAssignment::group_ids() const {
    std::set<int> ids;
    for (const auto& [id, g] : group_of) {
        (void)id;
        ids.insert(g);
    }
    return std::vector<int>(ids.begin(), ids.end());
}

GroupAssignment make_reference_assignment(const Population& pop) {
    if (!pop.has_latent())
        fail(Errc::MissingReference, "population carries no latent reference labels");
    GroupAssignment a;
    a.provenance.method = "reference";
    for (const auto& ind : pop.individuals) a.group_of[ind.id] = *ind.latent_group;
    return a;
}

GroupAssignment make_assignment(const std::vector<std::pair<std::string, int>>& pairs,
                                const std::string& method) {
    if (pairs.empty()) fail(Errc::InvalidArgument, "assignment must cover at least one individual");
    GroupAssignment a;
    a.provenance.method = method;
    for (const auto& [id, g] : pairs) {
        if (g < 0) fail(Errc::InvalidArgument, "negative group id for '" + id + "'");
        if (!a.group_of.emplace(id, g).second)
            fail(Errc::DuplicateId, "individual '" + id + "' assigned twice");
    }
    return a;
}

std::size_t SeededRng::uniform_below(std::size_t n) {
    if (n == 0) fail(Errc::InvalidArgument, "uniform_below(0)");
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return static_cast<std::size_t>(x % bound);
}

ThresholdPolicy ThresholdPolicy::at_quantile(double q) {
    if (!(q >= 0.0 && q <= 1.0))
        fail(Errc::InvalidConfig, "quantile must lie in [0,1]");
    ThresholdPolicy p;
    p.kind = Kind::Quantile;
    p.quantile = q;
    return p;
}

ThresholdPolicy ThresholdPolicy::parse(const std::string& text) {
    if (text == "centered-zero") return centered_zero();
    const std::string prefix = "quantile:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string num = text.substr(prefix.size());
        try {
            std::size_t used = 0;
            double q = std::stod(num, &used);
            if (used != num.size()) throw std::invalid_argument(num);
            return at_quantile(q);
        } catch (const std::logic_error&) {
            fail(Errc::InvalidConfig, "bad quantile value '" + num + "'");
        }
    }
    fail(Errc::InvalidConfig,
         "unknown threshold policy '" + text + "' (expected centered-zero or quantile:Q)");
}

std::string ThresholdPolicy::str() const {
    if (kind == Kind::CenteredZero) return "centered-zero";
    std::ostringstream out;
    out << "quantile:" << quantile;
    return out.str();
}

}  // namespace segscope
