#include "segscope/network.hpp"

#include <algorithm>
#include <cmath>

#include "detect_util.hpp"

namespace segscope {

RealMatrix aggregate_edges(const SocialGraph& graph, const Population& pop) {
    if (graph.edges.empty()) fail(Errc::EmptyGraph, "graph has no edges to aggregate");

    const std::size_t k = pop.schema.size();
    RealMatrix rows = RealMatrix::zeros(graph.edges.size(), k);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const Individual* u = pop.find(graph.edges[e].first);
        const Individual* v = pop.find(graph.edges[e].second);
        if (!u || !v) fail(Errc::UnknownNode, "edge endpoint not in population");
        for (std::size_t j = 0; j < k; ++j)
            rows.at(e, j) = 0.5 * (static_cast<double>(u->features.bits[j]) +
                                   static_cast<double>(v->features.bits[j]));
    }
    return rows;
}

GroupAssignment detect_network_groups(const SocialGraph& graph, const Population& pop,
                                      const NetworkDetectOptions& options) {
    RealMatrix rows = aggregate_edges(graph, pop);
    detail::ComponentBasis basis =
        detail::extract_basis(rows, {}, options.components, options.standardize);
    return detail::classify(pop, basis, options.policy, "network");
}

MixingMatrix mixing_matrix(const SocialGraph& graph, const GroupAssignment& assignment) {
    if (graph.edges.empty()) fail(Errc::EmptyGraph, "graph has no edges");

    MixingMatrix mix;
    mix.group_ids = assignment.group_ids();
    const std::size_t g = mix.group_ids.size();

    auto index_of = [&](const std::string& node) {
        auto it = assignment.group_of.find(node);
        if (it == assignment.group_of.end())
            fail(Errc::UnassignedNode, "node '" + node + "' has no group assignment");
        const auto pos =
            std::lower_bound(mix.group_ids.begin(), mix.group_ids.end(), it->second);
        return static_cast<std::size_t>(pos - mix.group_ids.begin());
    };

    mix.e = RealMatrix::zeros(g, g);
    const double end_count = 2.0 * static_cast<double>(graph.edges.size());
    for (const auto& [u, v] : graph.edges) {
        const std::size_t gu = index_of(u);
        const std::size_t gv = index_of(v);
        mix.e.at(gu, gv) += 1.0 / end_count;
        mix.e.at(gv, gu) += 1.0 / end_count;
    }

    mix.a.assign(g, 0.0);
    mix.b.assign(g, 0.0);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            mix.a[i] += mix.e.at(i, j);
            mix.b[j] += mix.e.at(i, j);
        }
    return mix;
}

AssortativityReport assortativity(const MixingMatrix& mixing) {
    const std::size_t g = mixing.group_ids.size();
    if (mixing.e.rows != g || mixing.e.cols != g || mixing.a.size() != g || mixing.b.size() != g)
        fail(Errc::InvalidArgument, "mixing matrix shape disagrees with its group list");

    double trace = 0.0;
    double product = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        trace += mixing.e.at(i, i);
        product += mixing.a[i] * mixing.b[i];
    }
    if (std::abs(1.0 - product) <= 1e-12)
        fail(Errc::UndefinedAssortativity,
             "sum a_i*b_i = 1 (single effective group); coefficient undefined");

    AssortativityReport report;
    report.r = (trace - product) / (1.0 - product);
    report.mixing = mixing;
    report.group_count = g;
    return report;
}

}  // namespace segscope
