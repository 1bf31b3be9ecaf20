"""End-to-end smoke checks for the python bindings."""

import pytest

import segscope


def test_version():
    assert segscope.__version__ == "1.0.0"


def test_spatial_pipeline():
    pop, sorted_ = segscope.gen_spatial(
        n=400, k=4, flip_noise=0.0, tracts=8, capacity=60, seed=3
    )
    assert pop.size == 400
    assert len(pop.feature_names) == 4
    assert pop.has_latent()
    assert sorted_.iterations >= 1
    assert sorted_.latent_dissimilarity > 0.6

    groups = segscope.detect_spatial(pop, sorted_.map)
    assert groups.method == "spatial"
    assert sorted(groups.group_ids()) == [0, 1]
    assert segscope.alignment(groups, pop) == 1.0

    report = segscope.dissimilarity(pop, sorted_.map, groups)
    assert report.d > 0.6
    assert (report.group_first, report.group_second) == (0, 1)


def test_network_pipeline():
    pop, graph = segscope.gen_network(
        n=300, k=2, flip_noise=0.05, p_in=0.15, p_out=0.03, seed=7
    )
    assert len(graph.nodes) == 300
    assert len(graph.edges) > 0

    groups = segscope.detect_network(graph, pop)
    assert segscope.alignment(groups, pop) >= 0.9
    assert segscope.assortativity(graph, groups) > 0.3


def test_fairness_pipeline():
    pop, _ = segscope.gen_network(n=400, k=1, seed=11)
    ref = segscope.reference_assignment(pop)
    preds = segscope.gen_outcomes(
        pop,
        ref,
        base_rates=[0.5, 0.5],
        pos_modes=[0.59, 0.53],
        neg_modes=[0.36, 0.36],
        seed=11,
    )
    assert len(preds.items) == 400
    assert segscope.eo_gap(preds, ref) > 0.02

    adj = segscope.eo_adjust(preds, ref, 0.02)
    assert adj.gap_before == segscope.eo_gap(preds, ref)
    assert adj.gap_after <= 0.02
    assert adj.within_tolerance
    assert set(adj.thresholds) == {0, 1}
    assert segscope.eo_gap(adj.adjusted, ref) <= 0.02

    assert segscope.dp_gap(preds, ref) >= 0.0


def test_outcomes_deterministic():
    pop, _ = segscope.gen_network(n=200, k=1, seed=5)
    ref = segscope.reference_assignment(pop)
    kwargs = dict(base_rates=[0.4, 0.4], pos_modes=[0.6, 0.6], neg_modes=[0.4, 0.4], seed=9)
    first = segscope.gen_outcomes(pop, ref, **kwargs)
    second = segscope.gen_outcomes(pop, ref, **kwargs)
    assert [p.score for p in first.items] == [p.score for p in second.items]
    assert [p.y_true for p in first.items] == [p.y_true for p in second.items]


def test_individuals_round_trip(tmp_path):
    pop, _ = segscope.gen_network(n=50, k=3, seed=2)
    path = str(tmp_path / "individuals.csv")
    segscope.write_individuals(path, pop)
    back = segscope.read_individuals(path)
    assert back.size == pop.size
    assert back.feature_names == pop.feature_names
    assert back.latent_of("p00") == pop.latent_of("p00")


def test_errors_surface():
    with pytest.raises(segscope.SegscopeError, match="CapacityInfeasible"):
        segscope.gen_spatial(n=100, tracts=2, capacity=4)
    with pytest.raises(segscope.SegscopeError, match="InvalidConfig"):
        segscope.gen_spatial(n=0)
