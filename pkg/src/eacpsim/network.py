"""Domain types, random deployment and closed-form network capacity formulas."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .config import RadioParams, SimConfig, round_half_up


class Position(NamedTuple):
    x: float
    y: float


class NodeKind(Enum):
    NORMAL = "normal"
    ADVANCED = "advanced"


@dataclass
class Node:
    """One sensor node and its mutable per-run state.

    sleep_count tracks consecutive sleeping rounds (capped by the config);
    elected_in_epoch marks nodes already chosen as cluster head in the
    current rotation epoch and therefore ineligible until the epoch resets.
    """

    id: int
    kind: NodeKind
    pos: Position
    energy: float
    alive: bool = True
    sleep_count: int = 0
    elected_in_epoch: bool = False

    @property
    def is_advanced(self) -> bool:
        return self.kind is NodeKind.ADVANCED


def distance(a: Position | tuple[float, float], b: Position | tuple[float, float]) -> float:
    """Euclidean distance in meters.

    Uses numpy's hypot so scalar distances agree bit-for-bit with the
    engine's vectorized distance matrices.
    """
    return float(np.hypot(a[0] - b[0], a[1] - b[1]))


def crossover_distance(radio: RadioParams) -> float:
    """Distance where free-space and multipath amplifier costs coincide,
    sqrt(eps_fs / eps_mp).

    Exposed as a utility only; simulations switch amplifier regimes at the
    configured radio.d0, which may differ (see config.warn_on_d0_mismatch).
    """
    if radio.eps_fs <= 0 or radio.eps_mp <= 0:
        raise ValueError("amplifier constants must be strictly positive")
    return math.sqrt(radio.eps_fs / radio.eps_mp)


def ch_to_bs_distance(field_m: float) -> float:
    """Expected cluster-head to base-station distance, 0.765 * M / 2."""
    return 0.765 * field_m / 2.0


def optimal_cluster_count(n: int, field_m: float, radio: RadioParams) -> float:
    """Energy-optimal cluster-head count for n nodes on an M x M field."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if field_m <= 0:
        raise ValueError("field_m must be positive")
    d_to_bs = ch_to_bs_distance(field_m)
    return (
        math.sqrt(n) / math.sqrt(2.0 * math.pi)
        * crossover_distance(radio)
        * field_m / d_to_bs**2
    )


def optimal_probability(n: int, field_m: float, radio: RadioParams) -> float:
    """Per-round election probability matching optimal_cluster_count."""
    return optimal_cluster_count(n, field_m, radio) / n


def advanced_count(cfg: SimConfig) -> int:
    """Number of advanced nodes deployed: round(m_frac * n), halves up."""
    return round_half_up(cfg.m_frac * cfg.n)


def normal_count(cfg: SimConfig) -> int:
    return cfg.n - advanced_count(cfg)


def initial_energy(kind: NodeKind, cfg: SimConfig) -> float:
    if kind is NodeKind.ADVANCED:
        return cfg.e0 * (1.0 + cfg.alpha)
    return cfg.e0


def total_initial_energy(cfg: SimConfig) -> float:
    """Closed-form total deployed energy, N * E0 * (1 + alpha * m).

    Matches the sum over deployed nodes exactly whenever m_frac * n is an
    integer (as in the standard heterogeneity cases).
    """
    return cfg.n * cfg.e0 * (1.0 + cfg.alpha * cfg.m_frac)


def deploy_network(cfg: SimConfig, rng: np.random.Generator | None = None) -> list[Node]:
    """Deploy cfg.n nodes uniformly at random over the field.

    Positions are i.i.d. uniform on [0, M]^2 and exactly advanced_count(cfg)
    node ids are picked (uniformly, without replacement) to be advanced.
    The same seed always yields the same node list; both position and kind
    draws come from the supplied stream in a fixed order.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    coords = rng.random((cfg.n, 2)) * cfg.field_m
    n_adv = advanced_count(cfg)
    is_advanced = np.zeros(cfg.n, dtype=bool)
    if n_adv > 0:
        is_advanced[rng.choice(cfg.n, size=n_adv, replace=False)] = True
    nodes = []
    for i in range(cfg.n):
        kind = NodeKind.ADVANCED if is_advanced[i] else NodeKind.NORMAL
        energy = initial_energy(kind, cfg)
        nodes.append(
            Node(
                id=i,
                kind=kind,
                pos=Position(float(coords[i, 0]), float(coords[i, 1])),
                energy=energy,
                alive=energy > 0.0,
            )
        )
    return nodes
