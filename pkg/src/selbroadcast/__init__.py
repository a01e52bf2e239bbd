"""Byzantine Broadcast protocols and a deterministic simulator for the
selective-broadcast channel."""

from .adversaries import STRATEGY_REGISTRY, SlotCtx, Strategy, make_strategy, strategy_catalog
from .bounds import (
    ModularBoundParams,
    bit_cost_ratio,
    check_bounds,
    detectable_cost_bits,
    message_lower_bound,
    modular_bound,
    static_db_lower_bound_bits,
    total_bb_cost_bits,
)
from .channel import (
    BbOutcome,
    Broadcast,
    DisputeGraph,
    ModelViolation,
    ProtocolError,
    Selective,
    Simulation,
    SystemConfig,
    TrafficMeter,
    Verdict,
    channel_deliver,
    check_bb_properties,
)
from .committee import CommitteeLayout, committee_layout, majority_vote, run_algorithm2
from .dispute_bb import run_byzantine_broadcast
from .eig import eig_broadcast
from .gf import GF, DEFAULT_POLYNOMIALS, is_irreducible
from .harness import (
    CSV_COLUMNS,
    MetricsRecord,
    Scenario,
    run_repetition,
    run_scenario,
    sweep,
    write_csv,
    write_trace,
)
from .rs import RSCode, bits_to_symbols, symbols_to_bits

__all__ = [
    "GF",
    "DEFAULT_POLYNOMIALS",
    "is_irreducible",
    "RSCode",
    "bits_to_symbols",
    "symbols_to_bits",
    "SystemConfig",
    "Broadcast",
    "Selective",
    "Simulation",
    "TrafficMeter",
    "DisputeGraph",
    "BbOutcome",
    "Verdict",
    "ModelViolation",
    "ProtocolError",
    "channel_deliver",
    "check_bb_properties",
    "Strategy",
    "SlotCtx",
    "STRATEGY_REGISTRY",
    "make_strategy",
    "strategy_catalog",
    "eig_broadcast",
    "run_byzantine_broadcast",
    "CommitteeLayout",
    "committee_layout",
    "majority_vote",
    "run_algorithm2",
    "detectable_cost_bits",
    "total_bb_cost_bits",
    "bit_cost_ratio",
    "static_db_lower_bound_bits",
    "message_lower_bound",
    "ModularBoundParams",
    "modular_bound",
    "check_bounds",
    "CSV_COLUMNS",
    "MetricsRecord",
    "Scenario",
    "run_repetition",
    "run_scenario",
    "sweep",
    "write_csv",
    "write_trace",
]
