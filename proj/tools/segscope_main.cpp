#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "segscope/fairness.hpp"
#include "segscope/io.hpp"
#include "segscope/network.hpp"
#include "segscope/spatial.hpp"
#include "segscope/synth.hpp"

namespace {

using namespace segscope;

constexpr const char* kVersion = "segscope 1.0.0 (report format 1, csv format 1)";

void emit_report(const Json& report, const std::string& out_path) {
    std::string text = report.dump();
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        write_text(out_path, text);
    }
}

Json provenance_json(const AssignmentProvenance& p) {
    Json vectors = Json::array();
    for (const auto& v : p.component_vectors) {
        Json row = Json::array();
        for (double x : v) row.push(Json::num(x));
        vectors.push(std::move(row));
    }
    Json eigenvalues = Json::array();
    for (double x : p.component_eigenvalues) eigenvalues.push(Json::num(x));
    Json mean = Json::array();
    for (double x : p.mean) mean.push(Json::num(x));
    Json scale = Json::array();
    for (double x : p.scale) scale.push(Json::num(x));
    Json thresholds = Json::array();
    for (double x : p.thresholds) thresholds.push(Json::num(x));

    Json j = Json::object();
    j.set("method", Json::str(p.method));
    j.set("component_eigenvalues", std::move(eigenvalues));
    j.set("component_vectors", std::move(vectors));
    j.set("mean", std::move(mean));
    j.set("scale", std::move(scale));
    j.set("threshold_policy", Json::str(p.threshold_policy));
    j.set("thresholds", std::move(thresholds));
    return j;
}

Json warnings_json(const std::vector<std::string>& warnings) {
    Json arr = Json::array();
    for (const auto& w : warnings) arr.push(Json::str(w));
    return arr;
}

std::map<int, std::size_t> group_sizes(const GroupAssignment& a) {
    std::map<int, std::size_t> sizes;
    for (const auto& [id, g] : a.group_of) {
        (void)id;
        ++sizes[g];
    }
    return sizes;
}

/// The two most populous groups; ties prefer the lower id. The ascending-id
/// iteration plus strict comparisons makes that fall out directly.
std::pair<int, int> audit_pair(const GroupAssignment& a) {
    std::map<int, std::size_t> sizes = group_sizes(a);
    if (sizes.size() < 2)
        fail(Errc::EmptyGroup, "need at least two groups to audit, found " +
                                   std::to_string(sizes.size()));
    int best = 0;
    int second = 0;
    std::size_t best_count = 0;
    std::size_t second_count = 0;
    for (const auto& [g, c] : sizes) {
        if (c > best_count) {
            second = best;
            second_count = best_count;
            best = g;
            best_count = c;
        } else if (c > second_count) {
            second = g;
            second_count = c;
        }
    }
    if (best > second) std::swap(best, second);
    return {best, second};
}

struct DetectArgs {
    std::string individuals;
    std::string context;  // tracts.csv or edges.csv
    std::string groups_out;
    std::string report_out;
    std::size_t components = 1;
    std::string threshold = "centered-zero";
    bool weight_by_population = false;
    bool standardize = false;
};

int run_detect_spatial(const DetectArgs& args) {
    Population pop = read_individuals(args.individuals);
    TractMap tracts = make_tract_map(pop, read_tracts(args.context));

    SpatialDetectOptions options;
    options.components = args.components;
    options.policy = ThresholdPolicy::parse(args.threshold);
    options.weight_by_population = args.weight_by_population;
    options.standardize = args.standardize;

    TractAggregation aggregation = aggregate_tracts(pop, tracts);
    GroupAssignment assignment = detect_spatial_groups(pop, tracts, options);
    write_groups(args.groups_out, assignment);

    auto [g0, g1] = audit_pair(assignment);
    DissimilarityReport d = dissimilarity_for_assignment(pop, tracts, assignment, g0, g1);

    Json config = Json::object();
    config.set("individuals", Json::str(args.individuals));
    config.set("tracts", Json::str(args.context));
    config.set("groups_out", Json::str(args.groups_out));
    config.set("components", Json::integer(static_cast<long long>(args.components)));
    config.set("threshold", Json::str(options.policy.str()));
    config.set("weight_by_population", Json::boolean(args.weight_by_population));
    config.set("standardize", Json::boolean(args.standardize));

    Json metrics = Json::object();
    metrics.set("group_count",
                Json::integer(static_cast<long long>(group_sizes(assignment).size())));
    metrics.set("d", Json::num(d.d));
    metrics.set("d_group_first", Json::integer(g0));
    metrics.set("d_group_second", Json::integer(g1));
    if (pop.has_latent()) metrics.set("alignment", Json::num(alignment_score(assignment, pop)));

    Json report = Json::object();
    report.set("command", Json::str("detect-spatial"));
    report.set("config", std::move(config));
    report.set("warnings", warnings_json(aggregation.warnings));
    report.set("metrics", std::move(metrics));
    report.set("provenance", provenance_json(assignment.provenance));
    emit_report(report, args.report_out);
    return 0;
}

int run_detect_network(const DetectArgs& args) {
    Population pop = read_individuals(args.individuals);
    SocialGraph graph = build_graph(pop, read_edges(args.context));

    NetworkDetectOptions options;
    options.components = args.components;
    options.policy = ThresholdPolicy::parse(args.threshold);
    options.standardize = args.standardize;

    GroupAssignment assignment = detect_network_groups(graph, pop, options);
    write_groups(args.groups_out, assignment);

    AssortativityReport r = assortativity(mixing_matrix(graph, assignment));

    Json config = Json::object();
    config.set("individuals", Json::str(args.individuals));
    config.set("edges", Json::str(args.context));
    config.set("groups_out", Json::str(args.groups_out));
    config.set("components", Json::integer(static_cast<long long>(args.components)));
    config.set("threshold", Json::str(options.policy.str()));
    config.set("standardize", Json::boolean(args.standardize));

    Json metrics = Json::object();
    metrics.set("group_count", Json::integer(static_cast<long long>(r.group_count)));
    metrics.set("r", Json::num(r.r));
    if (pop.has_latent()) metrics.set("alignment", Json::num(alignment_score(assignment, pop)));

    Json report = Json::object();
    report.set("command", Json::str("detect-network"));
    report.set("config", std::move(config));
    report.set("warnings", Json::array());
    report.set("metrics", std::move(metrics));
    report.set("provenance", provenance_json(assignment.provenance));
    emit_report(report, args.report_out);
    return 0;
}

struct MeasureArgs {
    std::string groups;
    std::string tracts;
    std::string edges;
    std::string report_out;
    int group_first = -1;
    int group_second = -1;
    bool pair_given = false;
};

int run_measure(const MeasureArgs& args) {
    GroupAssignment assignment = make_assignment(read_groups(args.groups));

    Json config = Json::object();
    config.set("groups", Json::str(args.groups));
    if (!args.tracts.empty()) config.set("tracts", Json::str(args.tracts));
    if (!args.edges.empty()) config.set("edges", Json::str(args.edges));
    if (args.pair_given) {
        config.set("group_first", Json::integer(args.group_first));
        config.set("group_second", Json::integer(args.group_second));
    }

    Json metrics = Json::object();
    metrics.set("group_count",
                Json::integer(static_cast<long long>(group_sizes(assignment).size())));
    if (!args.tracts.empty()) {
        TractMap tracts = make_tract_map(read_tracts(args.tracts));
        int g0 = args.group_first;
        int g1 = args.group_second;
        if (!args.pair_given) std::tie(g0, g1) = audit_pair(assignment);
        DissimilarityReport d = dissimilarity_for_groups(tracts, assignment, g0, g1);
        metrics.set("d", Json::num(d.d));
        metrics.set("d_group_first", Json::integer(g0));
        metrics.set("d_group_second", Json::integer(g1));
    }
    if (!args.edges.empty()) {
        SocialGraph graph = build_graph(read_edges(args.edges));
        AssortativityReport r = assortativity(mixing_matrix(graph, assignment));
        metrics.set("r", Json::num(r.r));
    }

    Json report = Json::object();
    report.set("command", Json::str("measure"));
    report.set("config", std::move(config));
    report.set("warnings", Json::array());
    report.set("metrics", std::move(metrics));
    report.set("provenance", provenance_json(assignment.provenance));
    emit_report(report, args.report_out);
    return 0;
}

struct FairnessArgs {
    std::string predictions;
    std::string groups;
    std::string report_out;
    std::string adjusted_out;
    std::optional<double> adjust_eo;
    std::vector<std::string> model_inputs;
    std::vector<std::string> protected_names;
    bool ftu_requested = false;
};

int run_fairness(const FairnessArgs& args) {
    PredictionSet preds = read_predictions(args.predictions);
    GroupAssignment assignment = make_assignment(read_groups(args.groups));

    std::vector<GroupRate> rates = group_rates(preds, assignment);
    double dp = dp_gap(preds, assignment);
    double eo = eo_gap(preds, assignment);

    Json config = Json::object();
    config.set("predictions", Json::str(args.predictions));
    config.set("groups", Json::str(args.groups));
    if (args.adjust_eo) {
        config.set("adjust_eo", Json::num(*args.adjust_eo));
        config.set("adjusted_out", Json::str(args.adjusted_out));
    }
    if (args.ftu_requested) {
        Json inputs = Json::array();
        for (const auto& name : args.model_inputs) inputs.push(Json::str(name));
        config.set("model_inputs", std::move(inputs));
        Json prot = Json::array();
        for (const auto& name : args.protected_names) prot.push(Json::str(name));
        config.set("protected", std::move(prot));
    }

    Json metrics = Json::object();
    metrics.set("dp_gap", Json::num(dp));
    metrics.set("eo_gap", Json::num(eo));

    Json rates_json = Json::array();
    for (const GroupRate& rate : rates) {
        Json row = Json::object();
        row.set("group", Json::integer(rate.group));
        row.set("count", Json::integer(static_cast<long long>(rate.count)));
        row.set("predicted_positive",
                Json::integer(static_cast<long long>(rate.predicted_positive)));
        row.set("actual_positive",
                Json::integer(static_cast<long long>(rate.actual_positive)));
        row.set("positive_rate", Json::num(rate.positive_rate));
        if (rate.tpr) row.set("tpr", Json::num(*rate.tpr));
        rates_json.push(std::move(row));
    }

    Json report = Json::object();
    report.set("command", Json::str("fairness"));
    report.set("config", std::move(config));
    report.set("warnings", Json::array());
    report.set("metrics", std::move(metrics));
    report.set("rates", std::move(rates_json));
    if (args.adjust_eo) {
        EoAdjustment adj = eo_adjust(preds, assignment, *args.adjust_eo);
        write_predictions(args.adjusted_out, adj.adjusted);
        Json thresholds = Json::object();
        for (const auto& [g, t] : adj.thresholds)
            thresholds.set(std::to_string(g), Json::num(t));
        Json block = Json::object();
        block.set("tolerance", Json::num(*args.adjust_eo));
        block.set("gap_before", Json::num(adj.gap_before));
        block.set("gap_after", Json::num(adj.gap_after));
        block.set("within_tolerance", Json::boolean(adj.within_tolerance));
        block.set("thresholds", std::move(thresholds));
        report.set("adjustment", std::move(block));
    }
    if (args.ftu_requested) {
        ModelManifest manifest{args.model_inputs};
        std::set<std::string> prot(args.protected_names.begin(), args.protected_names.end());
        FtuReport ftu = ftu_check(manifest, prot);
        Json block = Json::object();
        block.set("ok", Json::boolean(ftu.ok));
        Json offenders = Json::array();
        for (const auto& name : ftu.offenders) offenders.push(Json::str(name));
        block.set("offenders", std::move(offenders));
        report.set("ftu", std::move(block));
    }
    report.set("provenance", provenance_json(assignment.provenance));
    emit_report(report, args.report_out);
    return 0;
}

struct SynthSpatialArgs {
    SpatialSynthConfig cfg;
    std::string out_individuals;
    std::string out_tracts;
    std::string report_out;
};

int run_synth_spatial(const SynthSpatialArgs& args) {
    Population pop = gen_population(args.cfg.population());
    SchellingResult result = schelling_sort(pop, args.cfg);
    write_individuals(args.out_individuals, pop);
    write_tracts(args.out_tracts, result.map);

    Json config = Json::object();
    config.set("n", Json::integer(static_cast<long long>(args.cfg.n)));
    config.set("k", Json::integer(static_cast<long long>(args.cfg.k)));
    config.set("latent_fraction", Json::num(args.cfg.latent_fraction));
    config.set("flip_noise", Json::num(args.cfg.flip_noise));
    config.set("tracts", Json::integer(static_cast<long long>(args.cfg.tracts)));
    config.set("capacity", Json::integer(static_cast<long long>(args.cfg.capacity)));
    config.set("tolerance", Json::num(args.cfg.tolerance));
    config.set("max_iters", Json::integer(static_cast<long long>(args.cfg.max_iters)));
    config.set("out_individuals", Json::str(args.out_individuals));
    config.set("out_tracts", Json::str(args.out_tracts));

    Json metrics = Json::object();
    metrics.set("iterations", Json::integer(static_cast<long long>(result.iterations)));
    metrics.set("latent_dissimilarity", Json::num(result.latent_dissimilarity));

    Json report = Json::object();
    report.set("command", Json::str("synth-spatial"));
    report.set("config", std::move(config));
    report.set("seed", Json::uint(args.cfg.seed));
    report.set("warnings", Json::array());
    report.set("metrics", std::move(metrics));
    emit_report(report, args.report_out);
    return 0;
}

struct SynthNetworkArgs {
    GraphSynthConfig cfg;
    std::string out_individuals;
    std::string out_edges;
    std::string report_out;
};

int run_synth_network(const SynthNetworkArgs& args) {
    Population pop = gen_population(args.cfg.population());
    SocialGraph graph = gen_homophily_graph(pop, args.cfg);
    write_individuals(args.out_individuals, pop);
    write_edges(args.out_edges, graph);

    Json config = Json::object();
    config.set("n", Json::integer(static_cast<long long>(args.cfg.n)));
    config.set("k", Json::integer(static_cast<long long>(args.cfg.k)));
    config.set("latent_fraction", Json::num(args.cfg.latent_fraction));
    config.set("flip_noise", Json::num(args.cfg.flip_noise));
    config.set("p_in", Json::num(args.cfg.p_in));
    config.set("p_out", Json::num(args.cfg.p_out));
    config.set("out_individuals", Json::str(args.out_individuals));
    config.set("out_edges", Json::str(args.out_edges));

    Json metrics = Json::object();
    metrics.set("node_count", Json::integer(static_cast<long long>(graph.nodes.size())));
    metrics.set("edge_count", Json::integer(static_cast<long long>(graph.edges.size())));

    Json report = Json::object();
    report.set("command", Json::str("synth-network"));
    report.set("config", std::move(config));
    report.set("seed", Json::uint(args.cfg.seed));
    report.set("warnings", Json::array());
    report.set("metrics", std::move(metrics));
    emit_report(report, args.report_out);
    return 0;
}

struct SynthOutcomesArgs {
    std::string individuals;
    std::string groups;
    std::string out_predictions;
    std::string report_out;
    std::vector<double> base_rates{0.5};
    std::vector<double> positive_modes{0.65};
    std::vector<double> negative_modes{0.35};
    double half_width = 0.25;
    double threshold = 0.5;
    std::uint64_t seed = 1;
};

/// Lists given per group; a single value broadcasts to every group.
std::vector<double> per_group(std::vector<double> values, std::size_t k, const char* name) {
    if (values.size() == 1) return std::vector<double>(k, values[0]);
    if (values.size() != k)
        fail(Errc::InvalidConfig, std::string(name) + " needs 1 or " + std::to_string(k) +
                                      " comma-separated values, got " +
                                      std::to_string(values.size()));
    return values;
}

int run_synth_outcomes(const SynthOutcomesArgs& args) {
    Population pop = read_individuals(args.individuals);
    GroupAssignment assignment = make_assignment(read_groups(args.groups));

    std::vector<int> ids = assignment.group_ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] != static_cast<int>(i))
            fail(Errc::InvalidConfig, "outcome synthesis needs group ids 0..k-1");
    const std::size_t k = ids.size();

    OutcomeSynthConfig cfg;
    cfg.threshold = args.threshold;
    cfg.seed = args.seed;
    std::vector<double> base = per_group(args.base_rates, k, "--base-rates");
    std::vector<double> pos = per_group(args.positive_modes, k, "--pos-modes");
    std::vector<double> neg = per_group(args.negative_modes, k, "--neg-modes");
    for (std::size_t g = 0; g < k; ++g) {
        GroupOutcomeParams params;
        params.base_rate = base[g];
        params.positive = {pos[g], args.half_width};
        params.negative = {neg[g], args.half_width};
        cfg.groups.push_back(params);
    }

    PredictionSet preds = gen_outcomes(pop, assignment, cfg);
    write_predictions(args.out_predictions, preds);

    std::size_t positives = 0;
    std::size_t predicted = 0;
    for (const Prediction& p : preds.items) {
        positives += p.y_true == 1;
        predicted += p.y_hat == 1;
    }

    Json config = Json::object();
    config.set("individuals", Json::str(args.individuals));
    config.set("groups", Json::str(args.groups));
    Json base_json = Json::array();
    for (double v : base) base_json.push(Json::num(v));
    config.set("base_rates", std::move(base_json));
    Json pos_json = Json::array();
    for (double v : pos) pos_json.push(Json::num(v));
    config.set("pos_modes", std::move(pos_json));
    Json neg_json = Json::array();
    for (double v : neg) neg_json.push(Json::num(v));
    config.set("neg_modes", std::move(neg_json));
    config.set("half_width", Json::num(args.half_width));
    config.set("threshold", Json::num(args.threshold));
    config.set("out_predictions", Json::str(args.out_predictions));

    Json metrics = Json::object();
    metrics.set("count", Json::integer(static_cast<long long>(preds.items.size())));
    metrics.set("positives", Json::integer(static_cast<long long>(positives)));
    metrics.set("predicted_positives", Json::integer(static_cast<long long>(predicted)));

    Json report = Json::object();
    report.set("command", Json::str("synth-outcomes"));
    report.set("config", std::move(config));
    report.set("seed", Json::uint(args.seed));
    report.set("warnings", Json::array());
    report.set("metrics", std::move(metrics));
    report.set("provenance", provenance_json(assignment.provenance));
    emit_report(report, args.report_out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discovers, measures, and audits group segregation patterns"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    DetectArgs spatial_args;
    CLI::App* detect_spatial = app.add_subcommand(
        "detect-spatial", "Discover groups from tract-level feature aggregation");
    detect_spatial->add_option("individuals", spatial_args.individuals, "individuals.csv")
        ->required();
    detect_spatial->add_option("tracts", spatial_args.context, "tracts.csv")->required();
    detect_spatial->add_option("--groups-out", spatial_args.groups_out, "output groups.csv")
        ->required();
    detect_spatial->add_option("--out", spatial_args.report_out,
                               "report path (default: stdout)");
    detect_spatial->add_option("--components", spatial_args.components,
                               "principal components to threshold");
    detect_spatial->add_option("--threshold", spatial_args.threshold,
                               "centered-zero | quantile:Q");
    detect_spatial->add_flag("--weight-by-population", spatial_args.weight_by_population,
                             "weight tract rows by resident count");
    detect_spatial->add_flag("--standardize", spatial_args.standardize,
                             "scale centered columns to unit variance");

    DetectArgs network_args;
    CLI::App* detect_network = app.add_subcommand(
        "detect-network", "Discover groups from edge-level feature aggregation");
    detect_network->add_option("individuals", network_args.individuals, "individuals.csv")
        ->required();
    detect_network->add_option("edges", network_args.context, "edges.csv")->required();
    detect_network->add_option("--groups-out", network_args.groups_out, "output groups.csv")
        ->required();
    detect_network->add_option("--out", network_args.report_out,
                               "report path (default: stdout)");
    detect_network->add_option("--components", network_args.components,
                               "principal components to threshold");
    detect_network->add_option("--threshold", network_args.threshold,
                               "centered-zero | quantile:Q");
    detect_network->add_flag("--standardize", network_args.standardize,
                             "scale centered columns to unit variance");

    MeasureArgs measure_args;
    CLI::App* measure = app.add_subcommand(
        "measure", "Compute segregation indices for a supplied assignment");
    measure->add_option("groups", measure_args.groups, "groups.csv")->required();
    measure->add_option("--tracts", measure_args.tracts, "tracts.csv for D");
    measure->add_option("--edges", measure_args.edges, "edges.csv for r");
    measure->add_option("--out", measure_args.report_out, "report path (default: stdout)");
    CLI::Option* measure_first =
        measure->add_option("--group-first", measure_args.group_first, "first audited group");
    CLI::Option* measure_second = measure->add_option("--group-second",
                                                      measure_args.group_second,
                                                      "second audited group");
    measure_first->needs(measure_second);
    measure_second->needs(measure_first);

    FairnessArgs fairness_args;
    CLI::App* fairness = app.add_subcommand(
        "fairness", "Audit predictions for demographic parity and equalized opportunity");
    fairness->add_option("predictions", fairness_args.predictions, "predictions.csv")
        ->required();
    fairness->add_option("groups", fairness_args.groups, "groups.csv")->required();
    fairness->add_option("--out", fairness_args.report_out, "report path (default: stdout)");
    double adjust_tolerance = 0.0;
    CLI::Option* adjust_opt = fairness->add_option(
        "--adjust-eo", adjust_tolerance, "equalize TPRs with this tolerance");
    CLI::Option* adjusted_out_opt = fairness->add_option(
        "--adjusted-out", fairness_args.adjusted_out, "where to write adjusted predictions");
    adjust_opt->needs(adjusted_out_opt);
    adjusted_out_opt->needs(adjust_opt);
    CLI::Option* inputs_opt = fairness->add_option("--model-inputs",
                                                   fairness_args.model_inputs,
                                                   "declared model input names")
                                  ->delimiter(',');
    CLI::Option* protected_opt = fairness->add_option("--protected",
                                                      fairness_args.protected_names,
                                                      "protected feature names")
                                     ->delimiter(',');
    inputs_opt->needs(protected_opt);
    protected_opt->needs(inputs_opt);

    CLI::App* synth = app.add_subcommand("synth", "Generate synthetic study data");
    synth->require_subcommand(1);

    SynthSpatialArgs synth_spatial_args;
    CLI::App* synth_spatial = synth->add_subcommand(
        "spatial", "Population sorted into tracts by relocation dynamics");
    synth_spatial->add_option("--n", synth_spatial_args.cfg.n, "population size");
    synth_spatial->add_option("--k", synth_spatial_args.cfg.k, "features per individual");
    synth_spatial->add_option("--latent-fraction", synth_spatial_args.cfg.latent_fraction,
                              "P(latent group = 1)");
    synth_spatial->add_option("--flip-noise", synth_spatial_args.cfg.flip_noise,
                              "per-feature flip probability");
    synth_spatial->add_option("--tracts", synth_spatial_args.cfg.tracts, "tract count");
    synth_spatial->add_option("--capacity", synth_spatial_args.cfg.capacity,
                              "residents per tract");
    synth_spatial->add_option("--tolerance", synth_spatial_args.cfg.tolerance,
                              "minimum same-group share to stay");
    synth_spatial->add_option("--max-iters", synth_spatial_args.cfg.max_iters,
                              "relocation phase cap");
    synth_spatial->add_option("--seed", synth_spatial_args.cfg.seed, "rng seed");
    synth_spatial->add_option("--out-individuals", synth_spatial_args.out_individuals,
                              "individuals.csv path")
        ->required();
    synth_spatial->add_option("--out-tracts", synth_spatial_args.out_tracts,
                              "tracts.csv path")
        ->required();
    synth_spatial->add_option("--out", synth_spatial_args.report_out,
                              "report path (default: stdout)");

    SynthNetworkArgs synth_network_args;
    CLI::App* synth_network = synth->add_subcommand(
        "network", "Population linked by a homophilous social graph");
    synth_network->add_option("--n", synth_network_args.cfg.n, "population size");
    synth_network->add_option("--k", synth_network_args.cfg.k, "features per individual");
    synth_network->add_option("--latent-fraction", synth_network_args.cfg.latent_fraction,
                              "P(latent group = 1)");
    synth_network->add_option("--flip-noise", synth_network_args.cfg.flip_noise,
                              "per-feature flip probability");
    synth_network->add_option("--p-in", synth_network_args.cfg.p_in,
                              "same-group link probability");
    synth_network->add_option("--p-out", synth_network_args.cfg.p_out,
                              "cross-group link probability");
    synth_network->add_option("--seed", synth_network_args.cfg.seed, "rng seed");
    synth_network->add_option("--out-individuals", synth_network_args.out_individuals,
                              "individuals.csv path")
        ->required();
    synth_network->add_option("--out-edges", synth_network_args.out_edges, "edges.csv path")
        ->required();
    synth_network->add_option("--out", synth_network_args.report_out,
                              "report path (default: stdout)");

    SynthOutcomesArgs synth_outcomes_args;
    CLI::App* synth_outcomes = synth->add_subcommand(
        "outcomes", "Outcomes and scores for an assigned population");
    synth_outcomes->add_option("individuals", synth_outcomes_args.individuals,
                               "individuals.csv")
        ->required();
    synth_outcomes->add_option("groups", synth_outcomes_args.groups, "groups.csv")
        ->required();
    synth_outcomes->add_option("--base-rates", synth_outcomes_args.base_rates,
                               "P(Y=1) per group")
        ->delimiter(',');
    synth_outcomes->add_option("--pos-modes", synth_outcomes_args.positive_modes,
                               "score mode per group when Y=1")
        ->delimiter(',');
    synth_outcomes->add_option("--neg-modes", synth_outcomes_args.negative_modes,
                               "score mode per group when Y=0")
        ->delimiter(',');
    synth_outcomes->add_option("--half-width", synth_outcomes_args.half_width,
                               "triangular half-width");
    synth_outcomes->add_option("--decision-threshold", synth_outcomes_args.threshold,
                               "shared y_hat threshold");
    synth_outcomes->add_option("--seed", synth_outcomes_args.seed, "rng seed");
    synth_outcomes->add_option("--out-predictions", synth_outcomes_args.out_predictions,
                               "predictions.csv path")
        ->required();
    synth_outcomes->add_option("--out", synth_outcomes_args.report_out,
                               "report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*detect_spatial) return run_detect_spatial(spatial_args);
        if (*detect_network) return run_detect_network(network_args);
        if (*measure) {
            if (measure_args.tracts.empty() && measure_args.edges.empty()) {
                std::fprintf(stderr, "error: InvalidConfig: measure needs --tracts, --edges, or both\n");
                return 2;
            }
            measure_args.pair_given = measure_first->count() > 0;
            return run_measure(measure_args);
        }
        if (*fairness) {
            if (adjust_opt->count() > 0) fairness_args.adjust_eo = adjust_tolerance;
            fairness_args.ftu_requested = inputs_opt->count() > 0;
            return run_fairness(fairness_args);
        }
        if (*synth) {
            if (*synth_spatial) return run_synth_spatial(synth_spatial_args);
            if (*synth_network) return run_synth_network(synth_network_args);
            if (*synth_outcomes) return run_synth_outcomes(synth_outcomes_args);
        }
        std::fprintf(stderr, "error: no subcommand\n");
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return is_domain_error(e.kind()) ? 3 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
