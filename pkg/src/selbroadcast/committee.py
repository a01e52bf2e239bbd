"""Message-efficient Byzantine Broadcast with an active committee.

Only the 3t+1 lowest-id nodes (always including the source) participate:
the source broadcasts its value, the active nodes run a consensus core
over what they received, 2t+1 of them announce the decision, and the
remaining passive nodes -- who never transmit -- take a majority vote
over the announcements.  Fault-free traffic is therefore independent of
n once n > 3t+1.

The consensus core is pluggable; the default has every active node
EIG-broadcast its received value inside the committee and decides by
plurality over the agreed vector (ties broken toward the smallest
value).  Every step in which a fault-free node would send identical
messages to several receivers is a single channel broadcast; running the
core on a unicast-metered phase reproduces point-to-point accounting
without changing any output.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .adversaries import Strategy
from .channel import (
    BbOutcome,
    DisputeGraph,
    ModelViolation,
    ProtocolError,
    Simulation,
    SystemConfig,
)
from .eig import eig_broadcast


@dataclass(frozen=True)
class CommitteeLayout:
    active: tuple[int, ...]
    announcers: tuple[int, ...]
    passive: tuple[int, ...]


def committee_layout(config: SystemConfig) -> CommitteeLayout:
    """Lowest 3t+1 ids are active (the source is id 1, hence included);
    the lowest 2t+1 active ids announce."""
    active = tuple(range(1, 3 * config.t + 2))
    return CommitteeLayout(
        active=active,
        announcers=active[: 2 * config.t + 1],
        passive=tuple(range(3 * config.t + 2, config.n + 1)),
    )


def majority_vote(values: Sequence[str], t: int) -> str:
    """The value occurring at least t+1 times among 2t+1 announcements."""
    if len(values) != 2 * t + 1:
        raise ValueError(f"expected exactly {2 * t + 1} values")
    value, count = Counter(values).most_common(1)[0]
    if count < t + 1:
        raise ModelViolation("no value reached t+1 announcements")
    return value


def _plurality(values: Sequence[str]) -> str:
    counts = Counter(values)
    best = max(counts.values())
    return min(v for v, cnt in counts.items() if cnt == best)


def eig_core(sim: Simulation, layout: CommitteeLayout, received: dict[int, str], value_len: int, t: int) -> dict[int, str]:
    """Default consensus core: one EIG instance per active node over its
    received value; decide the plurality of the agreed vector."""
    agreed: dict[int, dict[int, str]] = {i: {} for i in layout.active}
    for s in layout.active:
        res = eig_broadcast(sim, s, received[s], value_len, layout.active, t, "CORE", "core")
        for i in layout.active:
            agreed[i][s] = res[i]
    return {i: _plurality([agreed[i][s] for s in layout.active]) for i in layout.active}


def run_algorithm2(
    x: str,
    config: SystemConfig,
    strategy: Strategy,
    core: Optional[Callable] = None,
    core_mode: str = "broadcast",
) -> BbOutcome:
    """Source broadcast, committee consensus, announcement, majority vote."""
    if len(x) != config.L:
        raise ValueError(f"input must be exactly L={config.L} bits")
    if core_mode not in ("broadcast", "unicast"):
        raise ValueError("core_mode must be 'broadcast' or 'unicast'")
    unicast = frozenset({"CORE"}) if core_mode == "unicast" else frozenset()
    sim = Simulation(config, strategy, unicast_phases=unicast)
    layout = committee_layout(config)
    L = config.L

    inbox = sim.round({1: x}, "SRC", "source_value")
    received = {}
    for i in layout.active:
        if i == 1:
            received[i] = x
        else:
            p = inbox[i].get(1, "")
            received[i] = p if len(p) == L else "0" * L

    decisions = (core or eig_core)(sim, layout, received, L, config.t)
    fault_free_active = [i for i in layout.active if i not in sim.faulty]
    if len({decisions[i] for i in fault_free_active}) != 1:
        raise ProtocolError("fault-free active nodes decided differently")

    intents = {a: decisions[a] for a in layout.announcers}
    inbox3 = sim.round(intents, "ANN", "announce")

    outputs: dict[int, str] = {}
    for i in config.peers:
        if i in sim.faulty:
            continue
        if i in layout.active:
            outputs[i] = decisions[i]
        else:
            votes = []
            for a in layout.announcers:
                p = inbox3[i].get(a, "")
                votes.append(p if len(p) == L else "0" * L)
            outputs[i] = majority_vote(votes, config.t)

    return BbOutcome(
        config=config,
        outputs=outputs,
        meter=sim.meter,
        disputes=DisputeGraph(config.t),
        trace=sim.trace,
        generations=[],
        dc_invocations=0,
        faulty=sim.faulty,
    )
