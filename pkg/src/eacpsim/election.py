"""Cluster-head election for LEACH, SEP and EACP.

All three protocols share the rotating-threshold scheme: an eligible node
draws a uniform number each round and becomes cluster head when the draw
falls below its threshold, after which it is ineligible until its epoch
resets.  They differ in the per-kind election probabilities and, for EACP
normal nodes, in an energy-ratio weighting of the threshold.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import SimConfig, round_half_up
from .network import Node, NodeKind


def epoch_length(p: float) -> int:
    """Rotation epoch in whole rounds for election probability p.

    The nominal epoch 1/p is rounded half-up to an integer (rounds are
    discrete) and never drops below one round.  The inverse is snapped to
    nine decimals first so float noise around exact halves (for example
    1 / (0.6 / 1.5) landing a few ulps under 2.5) cannot flip the result.
    """
    if p <= 0:
        raise ValueError("election probability must be positive")
    return max(1, round_half_up(round(1.0 / p, 9)))


def weighted_probability(kind: NodeKind, p_opt: float, m_frac: float, alpha: float) -> float:
    """Kind-weighted election probability.

    Normal nodes get p_opt / (1 + alpha * m); advanced nodes carry the
    (1 + alpha) energy factor and get p_opt * (1 + alpha) / (1 + alpha * m).
    """
    scale = 1.0 + alpha * m_frac
    if scale <= 0:
        raise ValueError("1 + alpha * m_frac must be positive")
    if kind is NodeKind.ADVANCED:
        return p_opt * (1.0 + alpha) / scale
    return p_opt / scale


@dataclass(frozen=True)
class ElectionParams:
    """Per-kind election probabilities and their rotation epochs."""

    p_nrm: float
    p_adv: float
    epoch_nrm: int
    epoch_adv: int

    @classmethod
    def for_protocol(cls, protocol: str, p_opt: float, m_frac: float, alpha: float) -> "ElectionParams":
        """LEACH ignores heterogeneity (both kinds use p_opt); SEP and EACP
        use the kind-weighted probabilities.  Probabilities are capped at 1."""
        if protocol == "leach":
            p_nrm = p_adv = p_opt
        else:
            p_nrm = weighted_probability(NodeKind.NORMAL, p_opt, m_frac, alpha)
            p_adv = weighted_probability(NodeKind.ADVANCED, p_opt, m_frac, alpha)
        p_nrm = min(p_nrm, 1.0)
        p_adv = min(p_adv, 1.0)
        return cls(p_nrm, p_adv, epoch_length(p_nrm), epoch_length(p_adv))

    @classmethod
    def for_config(cls, cfg: SimConfig) -> "ElectionParams":
        return cls.for_protocol(cfg.protocol, cfg.p_opt, cfg.m_frac, cfg.alpha)

    def probability(self, kind: NodeKind) -> float:
        return self.p_adv if kind is NodeKind.ADVANCED else self.p_nrm

    def epoch(self, kind: NodeKind) -> int:
        return self.epoch_adv if kind is NodeKind.ADVANCED else self.epoch_nrm


def election_threshold(
    node: Node,
    r: int,
    protocol: str,
    params: ElectionParams,
    e_avg_normal: float = 0.0,
) -> float:
    """Threshold the node's uniform draw is compared against at round r.

    Nodes already elected in the current epoch get 0.  Eligible nodes get
    the rotating base p / (1 - p * (r mod epoch)); under EACP a normal
    node's base is additionally scaled by residual / estimated-average
    energy, so depleted nodes defer the duty to richer ones.  When the
    average-energy estimator has run out (e_avg_normal <= 0) the bare base
    is used, preserving rotation without dividing by zero.  The result is
    clamped into [0, 1].
    """
    if node.elected_in_epoch:
        return 0.0
    p = params.probability(node.kind)
    epoch = params.epoch(node.kind)
    denom = 1.0 - p * (r % epoch)
    base = p / denom if denom > 0 else float("inf")
    if protocol == "eacp" and node.kind is NodeKind.NORMAL and e_avg_normal > 0:
        base *= node.energy / e_avg_normal
    return min(max(base, 0.0), 1.0)


@dataclass(frozen=True)
class ElectionOutcome:
    cluster_head_ids: tuple[int, ...]
    draws_used: int


def reset_epoch_eligibility(nodes: list[Node], r: int, params: ElectionParams) -> None:
    """Clear elected_in_epoch for each kind whose epoch restarts at round r."""
    reset_normal = r % params.epoch_nrm == 0
    reset_advanced = r % params.epoch_adv == 0
    for node in nodes:
        if node.kind is NodeKind.ADVANCED:
            if reset_advanced:
                node.elected_in_epoch = False
        elif reset_normal:
            node.elected_in_epoch = False


def elect_cluster_heads(
    nodes: list[Node],
    r: int,
    protocol: str,
    params: ElectionParams,
    e_avg_normal: float,
    rng: np.random.Generator,
) -> ElectionOutcome:
    """Run one round of cluster-head election over `nodes`.

    Every alive node consumes exactly one uniform draw, in ascending id
    order and regardless of eligibility, so traces stay comparable across
    configurations.  Elected nodes are marked ineligible for the remainder
    of their epoch and woken if they were sleeping.
    """
    reset_epoch_eligibility(nodes, r, params)
    heads: list[int] = []
    draws = 0
    for node in sorted(nodes, key=lambda nd: nd.id):
        if not node.alive:
            continue
        u = rng.random()
        draws += 1
        if u < election_threshold(node, r, protocol, params, e_avg_normal):
            node.elected_in_epoch = True
            node.sleep_count = 0
            heads.append(node.id)
    return ElectionOutcome(cluster_head_ids=tuple(heads), draws_used=draws)
