import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eacpsim import (
    ElectionParams,
    Node,
    NodeKind,
    Position,
    SimConfig,
    deploy_network,
    elect_cluster_heads,
    election_threshold,
    epoch_length,
    weighted_probability,
)

from conftest import CASE1, CASE2


def make_node(kind=NodeKind.NORMAL, energy=0.5, elected=False, node_id=0):
    return Node(
        id=node_id, kind=kind, pos=Position(10.0, 10.0), energy=energy,
        elected_in_epoch=elected,
    )


def test_weighted_probability_case1():
    assert weighted_probability(NodeKind.NORMAL, 0.1, 0.1, 5.0) == pytest.approx(0.1 / 1.5, rel=1e-12)
    assert weighted_probability(NodeKind.ADVANCED, 0.1, 0.1, 5.0) == pytest.approx(0.4, rel=1e-12)


def test_weighted_probability_homogeneous():
    assert weighted_probability(NodeKind.NORMAL, 0.1, 0.1, 0.0) == pytest.approx(0.1)
    assert weighted_probability(NodeKind.ADVANCED, 0.1, 0.1, 0.0) == pytest.approx(0.1)


def test_weighted_probability_case2():
    assert weighted_probability(NodeKind.NORMAL, 0.1, 0.2, 3.0) == pytest.approx(0.0625, rel=1e-12)
    assert weighted_probability(NodeKind.ADVANCED, 0.1, 0.2, 3.0) == pytest.approx(0.25, rel=1e-12)


def test_epoch_length_rounds_half_up():
    assert epoch_length(0.4) == 3  # 1/0.4 = 2.5 rounds up
    assert epoch_length(0.1) == 10
    assert epoch_length(0.25) == 4
    assert epoch_length(1.0) == 1
    assert epoch_length(0.9) == 1  # 1.11 rounds down, floor at one round


def test_params_for_protocol_case1():
    params = ElectionParams.for_protocol("sep", 0.1, 0.1, 5.0)
    assert params.p_nrm == pytest.approx(1 / 15, rel=1e-12)
    assert params.p_adv == pytest.approx(0.4, rel=1e-12)
    assert params.epoch_nrm == 15
    assert params.epoch_adv == 3


def test_params_leach_ignores_heterogeneity():
    params = ElectionParams.for_protocol("leach", 0.1, 0.1, 5.0)
    assert params.p_nrm == params.p_adv == 0.1
    assert params.epoch_nrm == params.epoch_adv == 10


def test_threshold_round_zero_anchor():
    params = ElectionParams.for_config(SimConfig(protocol="eacp", **CASE1))
    node = make_node(energy=0.5)
    assert election_threshold(node, 0, "eacp", params, e_avg_normal=0.5) == pytest.approx(
        params.p_nrm, rel=1e-12
    )


def test_threshold_zero_when_already_elected():
    params = ElectionParams.for_config(SimConfig(protocol="sep", **CASE1))
    node = make_node(elected=True)
    for r in range(20):
        assert election_threshold(node, r, "sep", params) == 0.0


def test_threshold_sep_advanced_clamped():
    # p_adv = 0.4, epoch 3: at offset 2 the base is 0.4 / (1 - 0.8) = 2.0
    params = ElectionParams.for_config(SimConfig(protocol="sep", **CASE1))
    node = make_node(kind=NodeKind.ADVANCED, energy=3.0)
    assert election_threshold(node, 2, "sep", params) == 1.0


def test_threshold_eacp_scales_with_energy():
    params = ElectionParams.for_config(SimConfig(protocol="eacp", **CASE1))
    rich = make_node(energy=0.5)
    poor = make_node(energy=0.25)
    t_rich = election_threshold(rich, 0, "eacp", params, e_avg_normal=0.5)
    t_poor = election_threshold(poor, 0, "eacp", params, e_avg_normal=0.5)
    assert t_poor == pytest.approx(t_rich / 2, rel=1e-12)


def test_threshold_eacp_estimator_exhausted_uses_base():
    params = ElectionParams.for_config(SimConfig(protocol="eacp", **CASE1))
    node = make_node(energy=0.4)
    base = election_threshold(node, 4, "sep", params)
    assert election_threshold(node, 4, "eacp", params, e_avg_normal=0.0) == base


def test_threshold_advanced_ignores_energy_ratio():
    params = ElectionParams.for_config(SimConfig(protocol="eacp", **CASE1))
    node = make_node(kind=NodeKind.ADVANCED, energy=1.0)
    assert election_threshold(node, 0, "eacp", params, e_avg_normal=0.5) == pytest.approx(
        params.p_adv, rel=1e-12
    )


@settings(max_examples=200)
@given(
    st.floats(0.01, 0.99),
    st.integers(0, 10000),
    st.floats(0.0, 10.0),
    st.floats(1e-6, 10.0),
    st.booleans(),
)
def test_threshold_always_in_unit_interval(p_opt, r, energy, e_avg, advanced):
    params = ElectionParams.for_protocol("eacp", p_opt, 0.1, 5.0)
    node = make_node(
        kind=NodeKind.ADVANCED if advanced else NodeKind.NORMAL, energy=energy
    )
    t = election_threshold(node, r, "eacp", params, e_avg_normal=e_avg)
    assert 0.0 <= t <= 1.0


@given(st.integers(0, 14), st.integers(0, 14))
def test_threshold_monotone_within_epoch(o1, o2):
    params = ElectionParams.for_config(SimConfig(protocol="sep", **CASE1))
    node = make_node(energy=0.5)
    lo, hi = sorted((o1, o2))
    assert election_threshold(node, lo, "sep", params) <= election_threshold(
        node, hi, "sep", params
    )


@given(st.floats(0.0, 2.0), st.floats(0.0, 2.0), st.integers(0, 14))
def test_threshold_eacp_preserves_energy_order(e1, e2, offset):
    params = ElectionParams.for_config(SimConfig(protocol="eacp", **CASE1))
    lo_node = make_node(energy=min(e1, e2))
    hi_node = make_node(energy=max(e1, e2))
    t_lo = election_threshold(lo_node, offset, "eacp", params, e_avg_normal=0.5)
    t_hi = election_threshold(hi_node, offset, "eacp", params, e_avg_normal=0.5)
    assert t_lo <= t_hi


def test_elect_all_ineligible_gives_empty_set():
    cfg = SimConfig(protocol="sep", **CASE1)
    params = ElectionParams.for_config(cfg)
    nodes = deploy_network(cfg)
    for nd in nodes:
        nd.elected_in_epoch = True
    outcome = elect_cluster_heads(nodes, 1, "sep", params, 0.5, np.random.default_rng(0))
    assert outcome.cluster_head_ids == ()
    assert outcome.draws_used == len(nodes)


def test_elect_deterministic_given_seed():
    cfg = SimConfig(protocol="sep", **CASE1)
    params = ElectionParams.for_config(cfg)
    outcomes = []
    for _ in range(2):
        nodes = deploy_network(cfg)
        outcomes.append(
            elect_cluster_heads(nodes, 0, "sep", params, 0.5, np.random.default_rng(99))
        )
    assert outcomes[0] == outcomes[1]


def test_elect_epoch_boundary_resets_eligibility():
    cfg = SimConfig(protocol="sep", **CASE1)
    params = ElectionParams.for_config(cfg)
    nodes = deploy_network(cfg)
    for nd in nodes:
        nd.elected_in_epoch = True
    # advanced epoch is 3 rounds; at r = 3 only advanced nodes reset
    outcome = elect_cluster_heads(nodes, 3, "sep", params, 0.5, np.random.default_rng(1))
    elected_kinds = {nodes[i].kind for i in outcome.cluster_head_ids}
    assert elected_kinds <= {NodeKind.ADVANCED}
    assert outcome.cluster_head_ids  # p_adv = 0.4 over 10 advanced nodes


def test_elect_wakes_sleeping_winner():
    cfg = SimConfig(protocol="sep", **CASE1)
    params = ElectionParams.for_config(cfg)
    nodes = deploy_network(cfg)
    for nd in nodes:
        nd.sleep_count = 2
    outcome = elect_cluster_heads(nodes, 0, "sep", params, 0.5, np.random.default_rng(7))
    assert outcome.cluster_head_ids
    for head in outcome.cluster_head_ids:
        assert nodes[head].sleep_count == 0


def test_epoch_exclusivity_over_many_rounds():
    cfg = SimConfig(protocol="sep", **CASE1)
    params = ElectionParams.for_config(cfg)
    nodes = deploy_network(cfg)
    rng = np.random.default_rng(42)
    elected_rounds = {nd.id: [] for nd in nodes}
    for r in range(60):
        outcome = elect_cluster_heads(nodes, r, "sep", params, 0.5, rng)
        for head in outcome.cluster_head_ids:
            elected_rounds[head].append(r)
    for nd in nodes:
        epoch = params.epoch(nd.kind)
        windows = [r // epoch for r in elected_rounds[nd.id]]
        assert len(windows) == len(set(windows)), f"node {nd.id} elected twice in an epoch"


@pytest.mark.parametrize("case", [CASE1, CASE2])
def test_mean_head_count_matches_expectation(case):
    # fresh full-energy elections at round zero: expected head count is
    # n_nrm * p_nrm + n_adv * p_adv = n * p_opt = 10
    cfg = SimConfig(protocol="sep", **case)
    params = ElectionParams.for_config(cfg)
    rng = np.random.default_rng(2024)
    base_nodes = deploy_network(cfg)
    trials = 400
    counts = []
    for _ in range(trials):
        for nd in base_nodes:
            nd.elected_in_epoch = False
        outcome = elect_cluster_heads(base_nodes, 0, "sep", params, cfg.e0, rng)
        counts.append(len(outcome.cluster_head_ids))
    mean = sum(counts) / trials
    # draw variance is about 8 per trial; 0.6 is beyond four standard errors
    assert mean == pytest.approx(10.0, abs=0.6)
