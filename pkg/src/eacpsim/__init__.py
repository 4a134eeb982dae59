"""Round-based simulator for the EACP heterogeneous WSN clustering protocol
and its SEP / LEACH baselines."""

from .config import ConfigError, RadioParams, SimConfig, load_config, resolved_dict
from .election import (
    ElectionOutcome,
    ElectionParams,
    elect_cluster_heads,
    election_threshold,
    epoch_length,
    weighted_probability,
)
from .energy import (
    EnergyBreakdown,
    aggregation_energy,
    average_normal_energy,
    cluster_head_round_energy,
    estimated_total_rounds,
    expected_round_energy,
    rx_energy,
    tx_energy,
)
from .engine import (
    RoundRecord,
    RoundTrace,
    RunTrace,
    SimState,
    advance_round,
    run_simulation,
)
from .metrics import (
    AggregateSummary,
    Summary,
    aggregate_runs,
    export_rounds,
    read_rounds,
    summarize,
)
from .network import (
    Node,
    NodeKind,
    Position,
    crossover_distance,
    deploy_network,
    distance,
    optimal_cluster_count,
    optimal_probability,
    total_initial_energy,
)
from .plotting import render_plots
from .routing import (
    DIRECT_TO_BS,
    SLEEP,
    DirectToBS,
    GatewayAssignment,
    Join,
    MemberAction,
    Sleep,
    member_action,
    select_gateway,
)

__version__ = "0.1.0"
