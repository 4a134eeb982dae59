"""First-order radio dissipation model and analytic per-round estimators."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .config import ConfigError, RadioParams, SimConfig
from .network import ch_to_bs_distance, normal_count


@dataclass(frozen=True)
class EnergyBreakdown:
    """Transmit / receive / aggregation decomposition of a node's round cost."""

    tx: float
    rx: float
    aggregation: float

    @property
    def total(self) -> float:
        return self.tx + self.rx + self.aggregation


def tx_energy(bits: float, d: float, radio: RadioParams) -> float:
    """Energy to transmit `bits` over distance d.

    Free-space amplifier (d^2) below the configured crossover d0, multipath
    amplifier (d^4) at or beyond it; the boundary d == d0 takes the
    multipath branch.
    """
    if bits < 0 or d < 0:
        raise ValueError("bits and distance must be non-negative")
    if d < radio.d0:
        return bits * radio.e_elec + bits * radio.eps_fs * (d * d)
    return bits * radio.e_elec + bits * radio.eps_mp * (d * d) * (d * d)


def rx_energy(bits: float, radio: RadioParams) -> float:
    """Energy to receive `bits`: pure circuitry cost."""
    if bits < 0:
        raise ValueError("bits must be non-negative")
    return bits * radio.e_elec


def aggregation_energy(bits: float, signal_count: int, radio: RadioParams) -> float:
    """Energy to fuse signal_count packets of `bits` each into one.

    signal_count includes the head's own packet alongside member packets.
    """
    if signal_count < 0:
        raise ValueError("signal_count must be non-negative")
    return signal_count * (bits * radio.e_da)


def cluster_head_round_energy(members: int, d_to_sink: float, radio: RadioParams) -> EnergyBreakdown:
    """Single-round cost of a cluster head serving `members` nodes and
    forwarding one aggregated packet over d_to_sink."""
    bits = radio.packet_bits
    return EnergyBreakdown(
        tx=tx_energy(bits, d_to_sink, radio),
        rx=members * rx_energy(bits, radio),
        aggregation=aggregation_energy(bits, members + 1, radio),
    )


def mean_sq_member_distance(field_m: float, k: float) -> float:
    """Expected squared member-to-head distance for k uniform clusters,
    M^2 / (2 pi k)."""
    if k <= 0:
        raise ValueError("cluster count must be positive")
    return field_m * field_m / (2.0 * math.pi * k)


def expected_round_energy(cfg: SimConfig) -> float:
    """Analytic whole-network energy dissipated in one round.

    Uses k = p_opt * n clusters (the rate actually simulated), the expected
    head-to-sink distance 0.765 * M / 2, and the uniform-density expectation
    for the member-to-head distance.
    """
    k = cfg.p_opt * cfg.n
    if k < 1.0:
        raise ConfigError("p_opt * n must be at least 1 for the round estimate")
    radio = cfg.radio
    d_bs_sq = ch_to_bs_distance(cfg.field_m) ** 2
    d_ch_sq = mean_sq_member_distance(cfg.field_m, k)
    return radio.packet_bits * (
        2.0 * cfg.n * radio.e_elec
        + cfg.n * radio.e_da
        + k * radio.eps_fs * d_bs_sq
        + cfg.n * radio.eps_fs * d_ch_sq
    )


def normal_energy_pool(cfg: SimConfig) -> float:
    """Total initial energy held by normal nodes at deployment."""
    return normal_count(cfg) * cfg.e0


def estimated_total_rounds(cfg: SimConfig) -> int:
    """Estimated network lifetime in whole rounds: the normal-node energy
    pool divided by the analytic per-round cost, floored, never below 1."""
    e_round = expected_round_energy(cfg)
    if e_round <= 0:
        raise ValueError("round energy must be positive")
    return max(1, int(normal_energy_pool(cfg) / e_round))


def average_normal_energy(r: int, cfg: SimConfig) -> float:
    """Estimated average residual energy of a normal node at round r.

    Linear decay from e0 at r = 0 down to zero at the estimated lifetime,
    clamped at zero afterwards so election thresholds stay well defined.
    Returns 0.0 when no normal nodes were deployed.
    """
    if r < 0:
        raise ValueError("round must be non-negative")
    if normal_count(cfg) == 0:
        return 0.0
    lifetime = estimated_total_rounds(cfg)
    # the pool divided by the normal count is e0 by construction
    return cfg.e0 * max(0.0, 1.0 - r / lifetime)
