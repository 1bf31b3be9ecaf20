#include "segscope/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "detect_util.hpp"

namespace segscope {

TractAggregation aggregate_tracts(const Population& pop, const TractMap& tracts) {
    for (const auto& ind : pop.individuals)
        if (!tracts.tract_of.count(ind.id))
            fail(Errc::MissingReference, "individual '" + ind.id + "' has no tract assignment");

    const std::size_t k = pop.schema.size();
    std::map<std::string, TractProfile> sums;
    for (const auto& tract : tracts.tract_ids)
        sums[tract] = TractProfile{tract, 0, std::vector<double>(k, 0.0)};

    for (const auto& ind : pop.individuals) {
        auto& acc = sums.at(tracts.tract_of.at(ind.id));
        acc.count += 1;
        for (std::size_t j = 0; j < k; ++j)
            acc.profile[j] += static_cast<double>(ind.features.bits[j]);
    }

    TractAggregation out;
    for (const auto& tract : tracts.tract_ids) {
        TractProfile p = sums.at(tract);
        if (p.count == 0) {
            out.warnings.push_back("tract '" + tract + "' has no residents; omitted");
            continue;
        }
        for (double& v : p.profile) v /= static_cast<double>(p.count);
        out.profiles.push_back(std::move(p));
    }
    return out;
}

GroupAssignment detect_spatial_groups(const Population& pop, const TractMap& tracts,
                                      const SpatialDetectOptions& options) {
    TractAggregation agg = aggregate_tracts(pop, tracts);
    if (agg.profiles.size() < 2)
        fail(Errc::InvalidArgument, "detection needs at least 2 non-empty tracts");

    const std::size_t k = pop.schema.size();
    RealMatrix rows = RealMatrix::zeros(agg.profiles.size(), k);
    for (std::size_t i = 0; i < agg.profiles.size(); ++i)
        for (std::size_t j = 0; j < k; ++j) rows.at(i, j) = agg.profiles[i].profile[j];

    std::vector<double> weights;
    if (options.weight_by_population) {
        weights.reserve(agg.profiles.size());
        for (const auto& p : agg.profiles) weights.push_back(static_cast<double>(p.count));
    }

    detail::ComponentBasis basis =
        detail::extract_basis(rows, weights, options.components, options.standardize);
    return detail::classify(pop, basis, options.policy, "spatial");
}

DissimilarityReport dissimilarity(const std::vector<TractGroupCounts>& counts, int group_first,
                                  int group_second) {
    double total_first = 0.0;
    double total_second = 0.0;
    for (const auto& c : counts) {
        if (c.first < 0.0 || c.second < 0.0)
            fail(Errc::InvalidArgument, "negative tract count for '" + c.tract_id + "'");
        total_first += c.first;
        total_second += c.second;
    }
    if (total_first <= 0.0)
        fail(Errc::EmptyGroup, "group " + std::to_string(group_first) + " has no members");
    if (total_second <= 0.0)
        fail(Errc::EmptyGroup, "group " + std::to_string(group_second) + " has no members");

    DissimilarityReport report;
    report.group_first = group_first;
    report.group_second = group_second;
    double sum = 0.0;
    for (const auto& c : counts) {
        DissimilarityTerm term;
        term.tract_id = c.tract_id;
        term.first_share = c.first / total_first;
        term.second_share = c.second / total_second;
        sum += std::abs(term.first_share - term.second_share);
        report.terms.push_back(std::move(term));
    }
    report.d = 0.5 * sum;
    return report;
}

DissimilarityReport dissimilarity_for_groups(const TractMap& tracts, const GroupAssignment& a,
                                             int group_first, int group_second) {
    if (group_first == group_second)
        fail(Errc::InvalidArgument, "dissimilarity needs two distinct groups");
    const auto present = a.group_ids();
    auto has = [&](int g) { return std::binary_search(present.begin(), present.end(), g); };
    if (!has(group_first))
        fail(Errc::UnknownGroup, "group " + std::to_string(group_first) + " not in assignment");
    if (!has(group_second))
        fail(Errc::UnknownGroup, "group " + std::to_string(group_second) + " not in assignment");

    std::map<std::string, TractGroupCounts> tally;
    for (const auto& tract : tracts.tract_ids) tally[tract] = TractGroupCounts{tract, 0.0, 0.0};

    for (const auto& [id, g] : a.group_of) {
        auto it = tracts.tract_of.find(id);
        if (it == tracts.tract_of.end())
            fail(Errc::MissingReference, "individual '" + id + "' has no tract assignment");
        auto& counts = tally.at(it->second);
        if (g == group_first) counts.first += 1.0;
        else if (g == group_second) counts.second += 1.0;
    }

    std::vector<TractGroupCounts> counts;
    counts.reserve(tracts.tract_ids.size());
    for (const auto& tract : tracts.tract_ids) counts.push_back(tally.at(tract));
    return dissimilarity(counts, group_first, group_second);
}

DissimilarityReport dissimilarity_for_assignment(const Population& pop, const TractMap& tracts,
                                                 const GroupAssignment& a, int group_first,
                                                 int group_second) {
    for (const auto& ind : pop.individuals)
        if (!a.group_of.count(ind.id))
            fail(Errc::UnassignedNode, "individual '" + ind.id + "' has no group");
    return dissimilarity_for_groups(tracts, a, group_first, group_second);
}

}  // namespace segscope
