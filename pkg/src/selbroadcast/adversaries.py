"""Pluggable Byzantine strategies.

A strategy owns a fixed set of at most t compromised nodes for the whole
execution.  The engine computes, for every scheduled sender, the payload
it would transmit when following the protocol; for compromised senders
that payload is handed to the strategy together with a slot context (and
the fault-free transmissions of the current round, i.e. the adversary is
rushing), and the strategy returns the actual transmission.  The default
is to behave honestly, so each strategy only overrides the slots it
attacks.

Slot tags used by the protocols:
  "source_value"  the source's value slot (the opening broadcast of both
                  protocols)
  "alg1.symbol"   a peer's coded-symbol slot in Detectable Broadcast
  "eig.source"    round 1 of an EIG broadcast; ctx.extra["purpose"] is one
                  of "dd", "dc_value", "dc_claim", "core"
  "eig.relay"     a relay round of an EIG broadcast
  "announce"      an announcer slot in the committee algorithm
"""

from __future__ import annotations

import random as _random
import zlib
from dataclasses import dataclass
from typing import Mapping

from .channel import Broadcast, Selective, SystemConfig, Transmission


@dataclass(frozen=True)
class SlotCtx:
    phase: str
    tag: str
    sender: int
    round_no: int
    config: SystemConfig
    receivers: tuple[int, ...]
    extra: Mapping
    honest_round: Mapping[int, str]


def _flip(bits: str, index: int = 0) -> str:
    if not bits:
        return bits
    i = index % len(bits)
    return bits[:i] + ("1" if bits[i] == "0" else "0") + bits[i + 1 :]


class Strategy:
    """Base: corrupts nothing, behaves honestly everywhere."""

    name = "honest"

    def __init__(self, config: SystemConfig, **params):
        self.config = config
        self.params = params
        # Deterministic per (config seed, strategy seed); str hash is
        # process-randomized, so mix in a stable digest of the name.
        mix = (config.seed << 16) ^ params.get("seed", 0) ^ zlib.crc32(self.name.encode())
        self.rng = _random.Random(mix)

    def corrupt_set(self) -> frozenset[int]:
        return frozenset()

    def act(self, ctx: SlotCtx, honest_payload: str, rng: _random.Random) -> Transmission:
        return Broadcast(honest_payload)


class Honest(Strategy):
    name = "honest"


class CrashSilent(Strategy):
    """The last t nodes never transmit anything."""

    name = "crash_silent"

    def corrupt_set(self) -> frozenset[int]:
        n, t = self.config.n, self.config.t
        return frozenset(range(n - t + 1, n + 1))

    def act(self, ctx, honest_payload, rng):
        return Broadcast("")


class EquivocatingSource(Strategy):
    """The source sends block u to all but one receiver and v != u to the
    remaining one, rotating the victim across its value slots (a victim
    already in dispute with the source stays silent, so re-targeting it
    would equivocate into the void).

    v defaults to u with its first bit flipped; pass v_bits to override
    (applied when the length matches the slot payload).
    """

    name = "equivocating_source"

    def __init__(self, config, **params):
        super().__init__(config, **params)
        self._slot = 0

    def corrupt_set(self) -> frozenset[int]:
        return frozenset({1})

    def act(self, ctx, honest_payload, rng):
        if ctx.tag != "source_value" or not honest_payload:
            return Broadcast(honest_payload)
        v = self.params.get("v_bits")
        if not isinstance(v, str) or len(v) != len(honest_payload):
            v = _flip(honest_payload)
        victim = ctx.receivers[self._slot % len(ctx.receivers)]
        self._slot += 1
        return Selective({r: (v if r == victim else honest_payload) for r in ctx.receivers})


class SymbolCorruptor(Strategy):
    """A peer sends a wrong coded symbol in its Detectable Broadcast slot.

    mode="subset" (default): wrong symbol to the lowest-id receiver only.
    mode="all": the consistent lie -- wrong symbol broadcast to everyone.
    """

    name = "symbol_corruptor"

    def corrupt_set(self) -> frozenset[int]:
        return frozenset({self.config.n})

    def act(self, ctx, honest_payload, rng):
        if ctx.tag != "alg1.symbol" or not honest_payload:
            return Broadcast(honest_payload)
        wrong = _flip(honest_payload, len(honest_payload) - 1)
        if self.params.get("mode", "subset") == "all":
            return Broadcast(wrong)
        # Lowest-id peer: the source holds no symbol view, so sending the
        # wrong symbol there would go unnoticed.
        target = next(r for r in ctx.receivers if r != 1)
        return Selective({r: (wrong if r == target else honest_payload) for r in ctx.receivers})


class DetectionLiar(Strategy):
    """Announces detection inconsistently despite seeing no misbehavior:
    bit 1 to all but the last receiver, 0 to the last."""

    name = "detection_liar"

    def corrupt_set(self) -> frozenset[int]:
        return frozenset({self.config.n})

    def act(self, ctx, honest_payload, rng):
        if ctx.tag == "eig.source" and ctx.extra.get("purpose") == "dd":
            last = ctx.receivers[-1]
            return Selective({r: ("0" if r == last else "1") for r in ctx.receivers})
        return Broadcast(honest_payload)


class ClaimLiar(Strategy):
    """Forces dispute control by announcing detection, then claims a
    source block different from the one it actually relayed."""

    name = "claim_liar"

    def corrupt_set(self) -> frozenset[int]:
        return frozenset({self.config.n})

    def act(self, ctx, honest_payload, rng):
        purpose = ctx.extra.get("purpose")
        if ctx.tag == "eig.source" and purpose == "dd":
            return Broadcast("1")
        if ctx.tag == "eig.source" and purpose == "dc_claim" and honest_payload:
            # Claim layout: presence flag + D block bits + per-node entries.
            # Flipping bit 1 tampers the first bit of the claimed block.
            return Broadcast(_flip(honest_payload, 1))
        return Broadcast(honest_payload)


class RandomizedByzantine(Strategy):
    """Replaces every non-silent corrupted slot by independent random
    per-receiver payloads of the honest payload's length."""

    name = "randomized_byzantine"

    def corrupt_set(self) -> frozenset[int]:
        t = self.config.t
        return frozenset(self.rng.sample(range(1, self.config.n + 1), t)) if t else frozenset()

    def act(self, ctx, honest_payload, rng):
        if not honest_payload:
            return Broadcast("")
        bits = len(honest_payload)
        return Selective(
            {
                r: "".join("01"[self.rng.getrandbits(1)] for _ in range(bits))
                for r in ctx.receivers
            }
        )


STRATEGY_REGISTRY: dict[str, type[Strategy]] = {
    cls.name: cls
    for cls in (
        Honest,
        CrashSilent,
        EquivocatingSource,
        SymbolCorruptor,
        DetectionLiar,
        ClaimLiar,
        RandomizedByzantine,
    )
}


def make_strategy(name: str, config: SystemConfig, **params) -> Strategy:
    try:
        cls = STRATEGY_REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown strategy {name!r}") from None
    return cls(config, **params)


def strategy_catalog(config: SystemConfig, **params) -> list[Strategy]:
    """One instance of every registered strategy for this configuration."""
    return [cls(config, **params) for cls in STRATEGY_REGISTRY.values()]
