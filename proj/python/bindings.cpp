#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "segscope/fairness.hpp"
#include "segscope/io.hpp"
#include "segscope/network.hpp"
#include "segscope/spatial.hpp"
#include "segscope/synth.hpp"

namespace py = pybind11;
using namespace segscope;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Group segregation discovery, measurement, and fairness auditing";

    py::register_exception<Error>(m, "SegscopeError");

    py::class_<Population>(m, "Population")
        .def_property_readonly("size", [](const Population& p) { return p.individuals.size(); })
        .def_property_readonly("feature_names",
                               [](const Population& p) {
                                   std::vector<std::string> names;
                                   for (const auto& f : p.schema.features) names.push_back(f.name);
                                   return names;
                               })
        .def("has_latent", &Population::has_latent)
        .def("latent_of", [](const Population& p, const std::string& id) -> py::object {
            const Individual* ind = p.find(id);
            if (!ind || !ind->latent_group) return py::none();
            return py::int_(*ind->latent_group);
        });

    py::class_<TractMap>(m, "TractMap")
        .def_readonly("tract_of", &TractMap::tract_of)
        .def_readonly("tract_ids", &TractMap::tract_ids);

    py::class_<SocialGraph>(m, "SocialGraph")
        .def_readonly("nodes", &SocialGraph::nodes)
        .def_readonly("edges", &SocialGraph::edges);

    py::class_<GroupAssignment>(m, "GroupAssignment")
        .def_readonly("group_of", &GroupAssignment::group_of)
        .def("group_ids", &GroupAssignment::group_ids)
        .def_property_readonly("method",
                               [](const GroupAssignment& a) { return a.provenance.method; });

    py::class_<SchellingResult>(m, "SchellingResult")
        .def_readonly("map", &SchellingResult::map)
        .def_readonly("iterations", &SchellingResult::iterations)
        .def_readonly("latent_dissimilarity", &SchellingResult::latent_dissimilarity);

    py::class_<DissimilarityReport>(m, "DissimilarityReport")
        .def_readonly("d", &DissimilarityReport::d)
        .def_readonly("group_first", &DissimilarityReport::group_first)
        .def_readonly("group_second", &DissimilarityReport::group_second);

    py::class_<Prediction>(m, "Prediction")
        .def_readonly("id", &Prediction::id)
        .def_readonly("y_true", &Prediction::y_true)
        .def_readonly("score", &Prediction::score)
        .def_readonly("y_hat", &Prediction::y_hat);

    py::class_<PredictionSet>(m, "PredictionSet")
        .def_readonly("items", &PredictionSet::items);

    py::class_<EoAdjustment>(m, "EoAdjustment")
        .def_readonly("thresholds", &EoAdjustment::thresholds)
        .def_readonly("adjusted", &EoAdjustment::adjusted)
        .def_readonly("gap_before", &EoAdjustment::gap_before)
        .def_readonly("gap_after", &EoAdjustment::gap_after)
        .def_readonly("within_tolerance", &EoAdjustment::within_tolerance);

    m.def(
        "gen_spatial",
        [](std::size_t n, std::size_t k, double latent_fraction, double flip_noise,
           std::size_t tracts, std::size_t capacity, double tolerance, std::size_t max_iters,
           std::uint64_t seed) {
            SpatialSynthConfig cfg;
            cfg.n = n;
            cfg.k = k;
            cfg.latent_fraction = latent_fraction;
            cfg.flip_noise = flip_noise;
            cfg.tracts = tracts;
            cfg.capacity = capacity;
            cfg.tolerance = tolerance;
            cfg.max_iters = max_iters;
            cfg.seed = seed;
            Population pop = gen_population(cfg.population());
            SchellingResult result = schelling_sort(pop, cfg);
            return std::make_pair(std::move(pop), std::move(result));
        },
        py::arg("n") = 2000, py::arg("k") = 6, py::arg("latent_fraction") = 0.5,
        py::arg("flip_noise") = 0.1, py::arg("tracts") = 20, py::arg("capacity") = 150,
        py::arg("tolerance") = 0.5, py::arg("max_iters") = 200, py::arg("seed") = 1);

    m.def(
        "gen_network",
        [](std::size_t n, std::size_t k, double latent_fraction, double flip_noise, double p_in,
           double p_out, std::uint64_t seed) {
            GraphSynthConfig cfg;
            cfg.n = n;
            cfg.k = k;
            cfg.latent_fraction = latent_fraction;
            cfg.flip_noise = flip_noise;
            cfg.p_in = p_in;
            cfg.p_out = p_out;
            cfg.seed = seed;
            Population pop = gen_population(cfg.population());
            SocialGraph graph = gen_homophily_graph(pop, cfg);
            return std::make_pair(std::move(pop), std::move(graph));
        },
        py::arg("n") = 1000, py::arg("k") = 6, py::arg("latent_fraction") = 0.5,
        py::arg("flip_noise") = 0.1, py::arg("p_in") = 0.02, py::arg("p_out") = 0.002,
        py::arg("seed") = 1);

    m.def(
        "detect_spatial",
        [](const Population& pop, const TractMap& tracts, std::size_t components,
           const std::string& threshold, bool weight_by_population, bool standardize) {
            SpatialDetectOptions options;
            options.components = components;
            options.policy = ThresholdPolicy::parse(threshold);
            options.weight_by_population = weight_by_population;
            options.standardize = standardize;
            return detect_spatial_groups(pop, tracts, options);
        },
        py::arg("population"), py::arg("tracts"), py::arg("components") = 1,
        py::arg("threshold") = "centered-zero", py::arg("weight_by_population") = false,
        py::arg("standardize") = false);

    m.def(
        "detect_network",
        [](const SocialGraph& graph, const Population& pop, std::size_t components,
           const std::string& threshold, bool standardize) {
            NetworkDetectOptions options;
            options.components = components;
            options.policy = ThresholdPolicy::parse(threshold);
            options.standardize = standardize;
            return detect_network_groups(graph, pop, options);
        },
        py::arg("graph"), py::arg("population"), py::arg("components") = 1,
        py::arg("threshold") = "centered-zero", py::arg("standardize") = false);

    m.def(
        "dissimilarity",
        [](const Population& pop, const TractMap& tracts, const GroupAssignment& a,
           int group_first, int group_second) {
            return dissimilarity_for_assignment(pop, tracts, a, group_first, group_second);
        },
        py::arg("population"), py::arg("tracts"), py::arg("assignment"),
        py::arg("group_first") = 0, py::arg("group_second") = 1);

    m.def(
        "assortativity",
        [](const SocialGraph& graph, const GroupAssignment& a) {
            return assortativity(mixing_matrix(graph, a)).r;
        },
        py::arg("graph"), py::arg("assignment"));

    m.def(
        "gen_outcomes",
        [](const Population& pop, const GroupAssignment& a, std::vector<double> base_rates,
           std::vector<double> pos_modes, std::vector<double> neg_modes, double half_width,
           double threshold, std::uint64_t seed) {
            OutcomeSynthConfig cfg;
            cfg.threshold = threshold;
            cfg.seed = seed;
            std::size_t k = base_rates.size();
            if (pos_modes.size() != k || neg_modes.size() != k)
                fail(Errc::InvalidConfig, "per-group parameter lists differ in length");
            for (std::size_t g = 0; g < k; ++g) {
                GroupOutcomeParams params;
                params.base_rate = base_rates[g];
                params.positive = {pos_modes[g], half_width};
                params.negative = {neg_modes[g], half_width};
                cfg.groups.push_back(params);
            }
            return gen_outcomes(pop, a, cfg);
        },
        py::arg("population"), py::arg("assignment"), py::arg("base_rates"),
        py::arg("pos_modes"), py::arg("neg_modes"), py::arg("half_width") = 0.25,
        py::arg("threshold") = 0.5, py::arg("seed") = 1);

    m.def("reference_assignment", &make_reference_assignment, py::arg("population"));
    m.def("dp_gap", &dp_gap, py::arg("predictions"), py::arg("assignment"));
    m.def("eo_gap", &eo_gap, py::arg("predictions"), py::arg("assignment"));
    m.def("eo_adjust", &eo_adjust, py::arg("predictions"), py::arg("assignment"),
          py::arg("tolerance"));
    m.def(
        "alignment",
        [](const GroupAssignment& a, const Population& pop) { return alignment_score(a, pop); },
        py::arg("assignment"), py::arg("population"));

    m.def("read_individuals", &read_individuals, py::arg("path"));
    m.def("write_individuals", &write_individuals, py::arg("path"), py::arg("population"));
}
