"""Synchronous selective-broadcast channel, traffic accounting and the
Byzantine Broadcast correctness predicates.

A fault-free sender can only broadcast: one message, received identically
and with correct attribution by every other node.  A faulty sender may
instead deliver a different payload to each receiver ("selective").
Transmissions never collide and are never lost; an empty payload is
silence and costs nothing.

Traffic by fault-free nodes and traffic by compromised nodes are metered
separately: reported algorithm complexity covers only nodes following the
protocol.  One broadcast is one message with its payload bits counted
once; a selective transmission costs one message per distinct receiver.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional


class ModelViolation(Exception):
    """A transmission that the channel model forbids (test hook)."""


class ProtocolError(Exception):
    """An internal protocol-soundness invariant was violated."""


@dataclass(frozen=True)
class SystemConfig:
    """(n, t, c, D, L) with the standard parameter constraints."""

    n: int
    t: int
    c: int
    L: int
    seed: int = 0
    D: int = 0  # derived as c * (n - 2t) when left at 0

    def __post_init__(self):
        if self.t < 0 or self.n < 3 * self.t + 1 or self.n < 2:
            raise ValueError("need n >= 3t + 1 (and n >= 2)")
        if self.n > (1 << self.c) - 1:
            raise ValueError("need n <= 2^c - 1")
        d = self.c * (self.n - 2 * self.t)
        if self.D == 0:
            object.__setattr__(self, "D", d)
        elif self.D != d:
            raise ValueError(f"D must equal c*(n-2t) = {d}")
        if self.L <= 0 or self.L % self.D:
            raise ValueError("L must be a positive multiple of D")

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    @property
    def peers(self) -> range:
        return range(2, self.n + 1)


@dataclass(frozen=True)
class Broadcast:
    payload: str  # bit string; "" means silence


@dataclass(frozen=True)
class Selective:
    payloads: Mapping[int, str]  # receiver -> bit string


Transmission = Broadcast | Selective


@dataclass
class PhaseCounts:
    honest_messages: int = 0
    honest_bits: int = 0
    adversary_messages: int = 0
    adversary_bits: int = 0


class TrafficMeter:
    """Message and bit counters, split honest/adversary and by phase."""

    def __init__(self):
        self.by_phase: dict[str, PhaseCounts] = {}

    def add(self, honest: bool, phase: str, messages: int, bits: int) -> None:
        counts = self.by_phase.setdefault(phase, PhaseCounts())
        if honest:
            counts.honest_messages += messages
            counts.honest_bits += bits
        else:
            counts.adversary_messages += messages
            counts.adversary_bits += bits

    def _total(self, attr: str) -> int:
        return sum(getattr(c, attr) for c in self.by_phase.values())

    @property
    def honest_messages(self) -> int:
        return self._total("honest_messages")

    @property
    def honest_bits(self) -> int:
        return self._total("honest_bits")

    @property
    def adversary_messages(self) -> int:
        return self._total("adversary_messages")

    @property
    def adversary_bits(self) -> int:
        return self._total("adversary_bits")

    def phase_honest_bits(self, phase: str) -> int:
        c = self.by_phase.get(phase)
        return c.honest_bits if c else 0

    def phase_honest_messages(self, phase: str) -> int:
        c = self.by_phase.get(phase)
        return c.honest_messages if c else 0


class DisputeGraph:
    """Accumulated in-dispute pairs and the > t identification rule."""

    def __init__(self, t: int):
        self.t = t
        self.pairs: set[tuple[int, int]] = set()
        self._directly_identified: set[int] = set()

    @staticmethod
    def _key(i: int, j: int) -> tuple[int, int]:
        if i == j:
            raise ValueError("a node cannot dispute itself")
        return (i, j) if i < j else (j, i)

    def add(self, i: int, j: int) -> bool:
        """Record a pair; returns True when the pair is new."""
        key = self._key(i, j)
        if key in self.pairs:
            return False
        self.pairs.add(key)
        return True

    def in_dispute(self, i: int, j: int) -> bool:
        return self._key(i, j) in self.pairs

    def degree(self, v: int) -> int:
        return sum(1 for p in self.pairs if v in p)

    def identify(self, nodes: Iterable[int]) -> None:
        """Directly mark nodes as faulty (used when a dispute-control pass
        yields no new pair: every detection announcer must be faulty)."""
        self._directly_identified.update(nodes)

    @property
    def identified_faulty(self) -> frozenset[int]:
        by_degree = {p for pair in self.pairs for p in pair if self.degree(p) > self.t}
        return frozenset(by_degree | self._directly_identified)


@dataclass
class TraceEntry:
    round: int
    slot: int
    sender: int
    kind: str  # "broadcast" | "selective" | "unicast"
    bits: int
    phase: str
    honest: bool

    def as_dict(self) -> dict:
        return {
            "round": self.round,
            "slot": self.slot,
            "sender": self.sender,
            "kind": self.kind,
            "bits": self.bits,
            "phase": self.phase,
            "honest": self.honest,
        }


def channel_deliver(
    sender: int,
    tx: Transmission,
    n: int,
    faulty: frozenset[int],
    meter: Optional[TrafficMeter] = None,
    phase: str = "",
    unicast: bool = False,
) -> dict[int, tuple[int, str]]:
    """Deliver one slot transmission to every other node.

    Returns {receiver: (sender, payload)} for the receivers that got a
    non-empty payload.  Raises ModelViolation if a fault-free sender
    attempts a selective transmission.
    """
    honest = sender not in faulty
    delivered: dict[int, tuple[int, str]] = {}
    if isinstance(tx, Broadcast):
        if tx.payload:
            for r in range(1, n + 1):
                if r != sender:
                    delivered[r] = (sender, tx.payload)
            if meter is not None:
                if honest and unicast:
                    meter.add(True, phase, n - 1, len(tx.payload) * (n - 1))
                else:
                    meter.add(honest, phase, 1, len(tx.payload))
    elif isinstance(tx, Selective):
        if honest:
            raise ModelViolation(f"fault-free node {sender} attempted selective send")
        messages = bits = 0
        for r in sorted(tx.payloads):
            p = tx.payloads[r]
            if r == sender or not p:
                continue
            delivered[r] = (sender, p)
            messages += 1
            bits += len(p)
        if meter is not None and messages:
            meter.add(False, phase, messages, bits)
    else:
        raise TypeError(f"unknown transmission {tx!r}")
    return delivered


class Simulation:
    """One deterministic single-threaded protocol execution.

    Protocol code interacts with the channel only through round(): it
    declares the payload each scheduled sender would transmit when
    following the protocol, and compromised senders' transmissions are
    rewritten by the adversary strategy (which sees all fault-free
    transmissions of the round before choosing -- a rushing adversary).
    The fault oracle is never readable by protocol logic.
    """

    def __init__(self, config: SystemConfig, strategy, unicast_phases: frozenset[str] = frozenset()):
        self.config = config
        self.strategy = strategy
        self.faulty = frozenset(strategy.corrupt_set())
        if len(self.faulty) > config.t:
            raise ValueError("strategy corrupts more than t nodes")
        self.unicast_phases = unicast_phases
        self.meter = TrafficMeter()
        self.trace: list[TraceEntry] = []
        self.rng = _random.Random(config.seed)
        self.round_no = 0

    def round(self, intents: Mapping[int, str], phase: str, tag: str, extra: Optional[dict] = None) -> dict[int, dict[int, str]]:
        """Run one synchronous round; returns per-node inboxes."""
        from .adversaries import SlotCtx  # local import to avoid a cycle

        self.round_no += 1
        senders = sorted(intents)
        honest_view = {s: intents[s] for s in senders if s not in self.faulty}
        txs: dict[int, Transmission] = {}
        for s in senders:
            if s in self.faulty:
                ctx = SlotCtx(
                    phase=phase,
                    tag=tag,
                    sender=s,
                    round_no=self.round_no,
                    config=self.config,
                    receivers=tuple(r for r in self.config.nodes if r != s),
                    extra=extra or {},
                    honest_round=honest_view,
                )
                txs[s] = self.strategy.act(ctx, intents[s], self.rng)
            else:
                txs[s] = Broadcast(intents[s])

        inboxes: dict[int, dict[int, str]] = {i: {} for i in self.config.nodes}
        unicast = phase in self.unicast_phases
        for slot, s in enumerate(senders, start=1):
            delivered = channel_deliver(
                s, txs[s], self.config.n, self.faulty, self.meter, phase, unicast
            )
            if delivered:
                honest = s not in self.faulty
                if isinstance(txs[s], Broadcast):
                    kind = "unicast" if (honest and unicast) else "broadcast"
                    bits = len(txs[s].payload)
                else:
                    kind = "selective"
                    bits = sum(len(p) for _, p in delivered.values())
                self.trace.append(
                    TraceEntry(self.round_no, slot, s, kind, bits, phase, honest)
                )
            for r, (snd, payload) in delivered.items():
                inboxes[r][snd] = payload
        return inboxes


@dataclass
class BbOutcome:
    """Result of one Byzantine Broadcast execution."""

    config: SystemConfig
    outputs: dict[int, str]  # fault-free peer -> L-bit output
    meter: TrafficMeter
    disputes: DisputeGraph
    trace: list[TraceEntry]
    generations: list
    dc_invocations: int
    faulty: frozenset[int]


@dataclass(frozen=True)
class Verdict:
    passed: bool
    reason: str = ""
    witnesses: tuple = ()

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        return "Pass" if self.passed else f"Fail({self.reason})"


def check_bb_properties(outcome: BbOutcome, x: str, faulty: frozenset[int]) -> Verdict:
    """Termination, consistency and validity over the fault-free peers."""
    n = outcome.config.n
    peers = [p for p in outcome.outputs if p not in faulty]
    expected = [p for p in range(2, n + 1) if p not in faulty]
    missing = [p for p in expected if p not in outcome.outputs or outcome.outputs[p] is None]
    if missing:
        return Verdict(False, "Termination", tuple(missing))
    values = {outcome.outputs[p] for p in peers}
    if len(values) > 1:
        return Verdict(False, "Consistency", tuple(sorted(peers)))
    if 1 not in faulty and peers and outcome.outputs[peers[0]] != x:
        return Verdict(False, "Validity", tuple(sorted(peers)))
    return Verdict(True)
