"""EACP post-election routing: gateway relay selection and the member
join / sleep / direct decision."""
from __future__ import annotations

from dataclasses import dataclass

from .config import RadioParams
from .energy import tx_energy
from .network import Node, distance


@dataclass(frozen=True)
class Join:
    ch_id: int


@dataclass(frozen=True)
class Sleep:
    pass


@dataclass(frozen=True)
class DirectToBS:
    pass


MemberAction = Join | Sleep | DirectToBS

SLEEP = Sleep()
DIRECT_TO_BS = DirectToBS()


@dataclass(frozen=True)
class GatewayAssignment:
    ch_id: int
    gateway_id: int | None


def select_gateway(
    ch: Node,
    candidates: list[Node],
    bs: tuple[float, float],
) -> int | None:
    """Pick a relay for a normal cluster head, or None.

    Candidates must be pre-filtered to alive, awake, advanced, non-head
    nodes.  A candidate qualifies only when it is strictly closer to the
    head than the base station is; among qualifiers the nearest wins, ties
    going to the lowest id.  With no qualifier the head transmits to the
    base station itself.
    """
    d_bs = distance(ch.pos, bs)
    best: tuple[float, int] | None = None
    for cand in candidates:
        d = distance(ch.pos, cand.pos)
        if d < d_bs and (best is None or (d, cand.id) < best):
            best = (d, cand.id)
    return best[1] if best else None


def member_action(
    node: Node,
    nearest_ch: Node,
    bs: tuple[float, float],
    radio: RadioParams,
    sleep_cap: int = 4,
) -> MemberAction:
    """Decide what a non-head node does once heads are known.

    Joining the nearest cluster costs tx_energy over the member-to-head
    distance; transmitting straight to the base station costs tx_energy
    over the member-to-sink distance (each with its own amplifier regime).
    Joining wins on a tie.  When joining is strictly more expensive the
    node sleeps, up to sleep_cap consecutive rounds, after which it is
    forced to transmit directly.

    Pure decision: the caller applies the sleep-counter effects (reset on
    Join/DirectToBS, increment on Sleep).
    """
    bits = radio.packet_bits
    join_cost = tx_energy(bits, distance(node.pos, nearest_ch.pos), radio)
    direct_cost = tx_energy(bits, distance(node.pos, bs), radio)
    if join_cost <= direct_cost:
        return Join(ch_id=nearest_ch.id)
    if node.sleep_count < sleep_cap:
        return SLEEP
    return DIRECT_TO_BS
