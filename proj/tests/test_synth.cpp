#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "segscope/synth.hpp"

using namespace segscope;
using testutil::thrown_kind;

namespace {

// Closed-form tail of the symmetric triangular law, independent of the
// inverse-CDF sampler under test.
double tri_tail(double mode, double h, double t) {
    const double a = mode - h;
    const double b = mode + h;
    double cdf;
    if (t <= a)
        cdf = 0.0;
    else if (t <= mode)
        cdf = (t - a) * (t - a) / (2.0 * h * h);
    else if (t < b)
        cdf = 1.0 - (b - t) * (b - t) / (2.0 * h * h);
    else
        cdf = 1.0;
    return 1.0 - cdf;
}

}  // namespace

TEST_CASE("synth config validation") {
    SUBCASE("population") {
        auto bad = [](auto mutate) {
            PopulationSynthConfig cfg;
            mutate(cfg);
            return thrown_kind([&] { gen_population(cfg); });
        };
        CHECK(bad([](auto& c) { c.n = 1; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.k = 0; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.latent_fraction = 0.0; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.latent_fraction = 1.0; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.flip_noise = 0.5; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.flip_noise = -0.01; }) == Errc::InvalidConfig);
    }

    SUBCASE("spatial") {
        auto bad = [](auto mutate) {
            SpatialSynthConfig cfg;
            mutate(cfg);
            return thrown_kind([&] { cfg.validate(); });
        };
        CHECK(bad([](auto& c) { c.tracts = 1; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.capacity = 0; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) {
                  c.n = 2000;
                  c.tracts = 10;
                  c.capacity = 100;
              }) == Errc::CapacityInfeasible);
        CHECK(bad([](auto& c) { c.tolerance = 1.5; }) == Errc::InvalidConfig);
        SpatialSynthConfig tight;
        tight.n = 1000;
        tight.tracts = 10;
        tight.capacity = 100;
        tight.validate();  // exactly full is allowed
    }

    SUBCASE("graph") {
        auto bad = [](auto mutate) {
            GraphSynthConfig cfg;
            mutate(cfg);
            return thrown_kind([&] { cfg.validate(); });
        };
        CHECK(bad([](auto& c) { c.p_out = c.p_in; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.p_in = 1.2; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.p_out = -0.1; }) == Errc::InvalidConfig);
    }

    SUBCASE("outcomes") {
        auto bad = [](auto mutate) {
            OutcomeSynthConfig cfg;
            cfg.groups.resize(1);
            mutate(cfg);
            return thrown_kind([&] { cfg.validate(); });
        };
        CHECK(bad([](auto& c) { c.groups.clear(); }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.threshold = -0.1; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.groups[0].base_rate = 1.5; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.groups[0].positive.mode = -0.2; }) == Errc::InvalidConfig);
        CHECK(bad([](auto& c) { c.groups[0].negative.half_width = 0.0; }) == Errc::InvalidConfig);
    }
}

TEST_CASE("gen_population shape, naming, determinism") {
    PopulationSynthConfig cfg;
    cfg.n = 120;
    cfg.k = 5;
    cfg.seed = 7;
    Population pop = gen_population(cfg);

    CHECK(pop.individuals.size() == 120);
    CHECK(pop.individuals.front().id == "p000");  // zero-padded to the id width
    CHECK(pop.individuals.back().id == "p119");
    CHECK(pop.has_latent());

    REQUIRE(pop.schema.size() == 5);
    CHECK(pop.schema.features[0].name == "phenotype_0");
    CHECK(pop.schema.features[1].name == "class_1");
    CHECK(pop.schema.features[2].name == "nationality_2");
    CHECK(pop.schema.features[3].name == "phenotype_3");
    CHECK(pop.schema.features[4].name == "class_4");
    CHECK(pop.schema.features[3].category == FeatureCategory::Phenotype);

    for (const Individual& ind : pop.individuals) {
        REQUIRE(ind.features.bits.size() == 5);
        for (auto b : ind.features.bits) CHECK((b == 0 || b == 1));
    }

    SUBCASE("same seed reproduces everything") {
        Population again = gen_population(cfg);
        for (std::size_t i = 0; i < pop.individuals.size(); ++i) {
            CHECK(again.individuals[i].id == pop.individuals[i].id);
            CHECK(again.individuals[i].latent_group == pop.individuals[i].latent_group);
            CHECK(again.individuals[i].features.bits == pop.individuals[i].features.bits);
        }
    }

    SUBCASE("different seeds differ") {
        PopulationSynthConfig other = cfg;
        other.seed = 8;
        Population b = gen_population(other);
        bool any_diff = false;
        for (std::size_t i = 0; i < pop.individuals.size(); ++i)
            any_diff = any_diff ||
                       b.individuals[i].features.bits != pop.individuals[i].features.bits;
        CHECK(any_diff);
    }
}

TEST_CASE("gen_population statistics") {
    SUBCASE("zero noise copies the latent label into every bit") {
        PopulationSynthConfig cfg;
        cfg.n = 200;
        cfg.k = 4;
        cfg.flip_noise = 0.0;
        cfg.seed = 3;
        Population pop = gen_population(cfg);
        for (const Individual& ind : pop.individuals)
            for (auto b : ind.features.bits) CHECK(static_cast<int>(b) == *ind.latent_group);
    }

    SUBCASE("latent fraction is honored") {
        PopulationSynthConfig cfg;
        cfg.n = 4000;
        cfg.k = 1;
        cfg.latent_fraction = 0.3;
        cfg.seed = 9;
        Population pop = gen_population(cfg);
        std::size_t ones = 0;
        for (const Individual& ind : pop.individuals) ones += *ind.latent_group;
        CHECK(std::abs(static_cast<double>(ones) / cfg.n - 0.3) < 0.03);
    }
}

TEST_CASE("schelling_sort") {
    SUBCASE("zero tolerance means nobody moves") {
        SpatialSynthConfig cfg;
        cfg.n = 200;
        cfg.tracts = 4;
        cfg.capacity = 60;
        cfg.tolerance = 0.0;
        cfg.seed = 2;
        Population pop = gen_population(cfg.population());
        SchellingResult r = schelling_sort(pop, cfg);
        CHECK(r.iterations == 0);
        CHECK(r.map.tract_of.size() == 200);
    }

    SUBCASE("placement respects capacity and ignores the tolerance") {
        SpatialSynthConfig cfg;
        cfg.n = 200;
        cfg.tracts = 4;
        cfg.capacity = 60;
        cfg.max_iters = 0;  // freeze the initial layout
        cfg.tolerance = 0.9;
        cfg.seed = 6;
        Population pop = gen_population(cfg.population());
        SchellingResult frozen = schelling_sort(pop, cfg);

        std::map<std::string, std::size_t> occupancy;
        for (const auto& [id, tract] : frozen.map.tract_of) ++occupancy[tract];
        for (const auto& [tract, count] : occupancy) CHECK(count <= cfg.capacity);

        SpatialSynthConfig other = cfg;
        other.tolerance = 0.1;  // placement draws come from their own substream
        SchellingResult same = schelling_sort(pop, other);
        CHECK(same.map.tract_of == frozen.map.tract_of);
    }

    SUBCASE("sorting drives latent dissimilarity up") {
        SpatialSynthConfig cfg;
        cfg.n = 2000;
        cfg.tracts = 20;
        cfg.capacity = 150;
        cfg.flip_noise = 0.05;
        cfg.tolerance = 0.5;
        cfg.seed = 3;
        Population pop = gen_population(cfg.population());

        SpatialSynthConfig frozen = cfg;
        frozen.max_iters = 0;
        double before = schelling_sort(pop, frozen).latent_dissimilarity;
        CHECK(before < 0.3);  // uniform placement is well mixed

        SchellingResult r = schelling_sort(pop, cfg);
        CHECK(r.iterations >= 1);
        CHECK(r.latent_dissimilarity >= 0.6);
        CHECK(r.latent_dissimilarity <= 1.0);
    }

    SUBCASE("runs are reproducible") {
        SpatialSynthConfig cfg;
        cfg.n = 300;
        cfg.tracts = 5;
        cfg.capacity = 80;
        cfg.seed = 11;
        Population pop = gen_population(cfg.population());
        SchellingResult a = schelling_sort(pop, cfg);
        SchellingResult b = schelling_sort(pop, cfg);
        CHECK(a.map.tract_of == b.map.tract_of);
        CHECK(a.iterations == b.iterations);
        CHECK(a.latent_dissimilarity == b.latent_dissimilarity);
    }

    SUBCASE("latent labels are required") {
        Population pop = testutil::pop_of({{1}, {0}, {1}, {0}});
        SpatialSynthConfig cfg;
        cfg.n = 4;
        cfg.tracts = 2;
        cfg.capacity = 4;
        CHECK(thrown_kind([&] { schelling_sort(pop, cfg); }) == Errc::MissingReference);
    }

    SUBCASE("population larger than total capacity") {
        PopulationSynthConfig pc;
        pc.n = 10;
        pc.k = 1;
        Population pop = gen_population(pc);
        SpatialSynthConfig cfg;
        cfg.n = 8;  // config itself is feasible; the handed-in population is not
        cfg.tracts = 2;
        cfg.capacity = 4;
        CHECK(thrown_kind([&] { schelling_sort(pop, cfg); }) == Errc::CapacityInfeasible);
    }
}

TEST_CASE("gen_homophily_graph") {
    GraphSynthConfig cfg;
    cfg.n = 300;
    cfg.k = 2;
    cfg.p_in = 0.2;
    cfg.p_out = 0.05;
    cfg.seed = 11;
    Population pop = gen_population(cfg.population());
    SocialGraph g = gen_homophily_graph(pop, cfg);

    CHECK(g.nodes.size() == 300);  // isolated nodes stay in the node set

    SUBCASE("edges are canonical and valid") {
        for (const auto& [a, b] : g.edges) {
            CHECK(a < b);
            CHECK(pop.find(a) != nullptr);
            CHECK(pop.find(b) != nullptr);
        }
        CHECK(std::is_sorted(g.edges.begin(), g.edges.end()));
    }

    SUBCASE("realized link rates follow the planted probabilities") {
        std::size_t n0 = 0;
        for (const Individual& ind : pop.individuals) n0 += *ind.latent_group == 0;
        const std::size_t n1 = pop.individuals.size() - n0;
        const double same_pairs =
            0.5 * (static_cast<double>(n0) * (n0 - 1) + static_cast<double>(n1) * (n1 - 1));
        const double cross_pairs = static_cast<double>(n0) * static_cast<double>(n1);

        std::size_t within = 0;
        for (const auto& [a, b] : g.edges)
            within += *pop.find(a)->latent_group == *pop.find(b)->latent_group;
        const std::size_t across = g.edges.size() - within;

        CHECK(std::abs(static_cast<double>(within) / same_pairs - 0.2) < 0.02);
        CHECK(std::abs(static_cast<double>(across) / cross_pairs - 0.05) < 0.012);

        const double expected = 0.2 * same_pairs + 0.05 * cross_pairs;
        CHECK(std::abs(static_cast<double>(g.edges.size()) - expected) < 350.0);
    }

    SUBCASE("deterministic in the seed") {
        SocialGraph again = gen_homophily_graph(pop, cfg);
        CHECK(again.edges == g.edges);
        GraphSynthConfig other = cfg;
        other.seed = 12;
        CHECK(gen_homophily_graph(pop, other).edges != g.edges);
    }

    SUBCASE("latent labels are required") {
        Population plain = testutil::pop_of({{1}, {0}});
        CHECK(thrown_kind([&] { gen_homophily_graph(plain, cfg); }) == Errc::MissingReference);
    }
}

TEST_CASE("sample_triangular") {
    SUBCASE("closed-form tails for the calibrated modes") {
        // target rates at the 0.5 decision cut with half-width 0.25
        CHECK(tri_tail(0.5918861169915811, 0.25, 0.5) == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(tri_tail(0.5263932022500210, 0.25, 0.5) == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(tri_tail(0.3618033988749895, 0.25, 0.5) == doctest::Approx(0.1).epsilon(1e-12));
    }

    SUBCASE("samples match the analytic tail") {
        for (double mode : {0.5918861169915811, 0.5263932022500210, 0.3618033988749895}) {
            SeededRng rng(71);
            TriangularParams params{mode, 0.25};
            const int draws = 200000;
            int above = 0;
            for (int i = 0; i < draws; ++i) above += sample_triangular(params, rng) > 0.5;
            const double want = tri_tail(mode, 0.25, 0.5);
            CHECK(std::abs(static_cast<double>(above) / draws - want) < 0.01);
        }
    }

    SUBCASE("support is clipped to the unit interval") {
        SeededRng rng(5);
        TriangularParams params{0.05, 0.25};  // mass below zero gets clamped
        int at_zero = 0;
        for (int i = 0; i < 10000; ++i) {
            double x = sample_triangular(params, rng);
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
            at_zero += x == 0.0;
        }
        CHECK(at_zero > 2000);  // analytic clamp mass is 0.32
    }

    SUBCASE("symmetric mode centers the sample mean") {
        SeededRng rng(8);
        TriangularParams params{0.5, 0.25};
        double sum = 0.0;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) sum += sample_triangular(params, rng);
        CHECK(std::abs(sum / draws - 0.5) < 0.005);
    }
}

TEST_CASE("gen_outcomes") {
    PopulationSynthConfig pc;
    pc.n = 2000;
    pc.k = 2;
    pc.seed = 5;
    Population pop = gen_population(pc);
    GroupAssignment groups = make_reference_assignment(pop);

    OutcomeSynthConfig cfg;
    cfg.threshold = 0.5;
    cfg.seed = 5;
    cfg.groups.resize(2);
    cfg.groups[0].base_rate = 0.5;
    cfg.groups[0].positive = {0.5918861169915811, 0.25};  // TPR target 0.8
    cfg.groups[0].negative = {0.3618033988749895, 0.25};  // FPR target 0.1
    cfg.groups[1].base_rate = 0.5;
    cfg.groups[1].positive = {0.5263932022500210, 0.25};  // TPR target 0.6
    cfg.groups[1].negative = {0.3618033988749895, 0.25};

    PredictionSet preds = gen_outcomes(pop, groups, cfg);
    REQUIRE(preds.items.size() == pop.individuals.size());
    CHECK(preds.threshold == 0.5);

    SUBCASE("rows follow population order and the decision rule") {
        for (std::size_t i = 0; i < preds.items.size(); ++i) {
            const Prediction& p = preds.items[i];
            CHECK(p.id == pop.individuals[i].id);
            CHECK(p.y_hat == (p.score > 0.5 ? 1 : 0));
            CHECK((p.y_true == 0 || p.y_true == 1));
            CHECK(p.score >= 0.0);
            CHECK(p.score <= 1.0);
        }
    }

    SUBCASE("per-group rates land on the configured targets") {
        double tp[2] = {0, 0}, pos[2] = {0, 0}, fp[2] = {0, 0}, neg[2] = {0, 0};
        for (const Prediction& p : preds.items) {
            int g = groups.group_of.at(p.id);
            if (p.y_true == 1) {
                pos[g] += 1;
                tp[g] += p.y_hat;
            } else {
                neg[g] += 1;
                fp[g] += p.y_hat;
            }
        }
        CHECK(std::abs(tp[0] / pos[0] - 0.8) < 0.07);
        CHECK(std::abs(tp[1] / pos[1] - 0.6) < 0.08);
        CHECK(std::abs(fp[0] / neg[0] - 0.1) < 0.05);
        CHECK(std::abs(fp[1] / neg[1] - 0.1) < 0.05);
    }

    SUBCASE("deterministic in the seed") {
        PredictionSet again = gen_outcomes(pop, groups, cfg);
        for (std::size_t i = 0; i < preds.items.size(); ++i) {
            CHECK(again.items[i].score == preds.items[i].score);
            CHECK(again.items[i].y_true == preds.items[i].y_true);
        }
        OutcomeSynthConfig other = cfg;
        other.seed = 6;
        PredictionSet changed = gen_outcomes(pop, groups, other);
        bool any_diff = false;
        for (std::size_t i = 0; i < preds.items.size(); ++i)
            any_diff = any_diff || changed.items[i].score != preds.items[i].score;
        CHECK(any_diff);
    }

    SUBCASE("every individual needs a group with parameters") {
        GroupAssignment partial = testutil::groups_of({{"p0000", 0}});
        CHECK(thrown_kind([&] { gen_outcomes(pop, partial, cfg); }) == Errc::UnassignedNode);

        std::vector<std::pair<std::string, int>> wide;
        for (const Individual& ind : pop.individuals) wide.emplace_back(ind.id, 2);
        GroupAssignment unknown = testutil::groups_of(wide);
        CHECK(thrown_kind([&] { gen_outcomes(pop, unknown, cfg); }) == Errc::UnknownGroup);
    }
}
