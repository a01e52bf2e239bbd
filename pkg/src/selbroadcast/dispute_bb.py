"""L-bit Byzantine Broadcast via coded Detectable Broadcast and dispute
control.

Each D-bit generation runs three phases:

  DB  Detectable Broadcast: the source broadcasts the generation block;
      every peer re-encodes it and broadcasts its own coded symbol; each
      peer then checks whether one codeword explains every symbol it is
      willing to trust (dispute-free senders only).  Either all
      fault-free peers recover the same block, or at least one of them
      raises a detection flag.

  DD  Detection Dissemination: every node 1-bit-broadcasts its flag via
      the EIG subroutine, so all fault-free nodes agree on who announced
      detection.

  DC  Dispute Control (only when someone announced): the source
      broadcasts the block via EIG, every peer broadcasts its claims
      (the block it received plus its full symbol vector), and everyone
      derives dispute pairs from the now-common claim set.  A node in
      more than t disputes is excluded from the rest of the run; if the
      claims expose no contradiction at all, every detection announcer
      must itself be faulty and is excluded directly.

Payloads arriving with the wrong length are canonicalized (zero-padded /
truncated; a missing source block becomes the all-zeros default), so a
faulty sender can never starve a view below the n-2t guaranteed symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .adversaries import Strategy
from .channel import (
    BbOutcome,
    DisputeGraph,
    ProtocolError,
    Simulation,
    SystemConfig,
)
from .eig import eig_broadcast
from .gf import GF
from .rs import RSCode, bits_to_symbols, symbols_to_bits

Block = tuple[int, ...]


@dataclass
class GenerationRecord:
    """Per-generation ground truth kept for assertions and reporting."""

    g: int
    x_bits: str
    skipped: bool = False
    z: dict[int, Block] = field(default_factory=dict)
    detected: dict[int, bool] = field(default_factory=dict)
    announced: dict[int, bool] = field(default_factory=dict)
    dc_invoked: bool = False
    new_pairs: tuple[tuple[int, int], ...] = ()
    y_bits: dict[int, str] = field(default_factory=dict)


def _pad(bits: str, length: int) -> str:
    return (bits + "0" * length)[:length]


def default_block(k: int) -> Block:
    return (0,) * k


def db_source_payload(x_bits: str) -> str:
    """Detectable Broadcast opening slot: the D-bit source block."""
    return x_bits


def db_peer_symbol(code: RSCode, block: Optional[Block], i: int) -> str:
    """Peer i's coded-symbol slot payload ("" = stay silent)."""
    if block is None:
        return ""
    return symbols_to_bits([code.encode(block)[i - 1]], code.field.c)


def db_assemble_view(
    code: RSCode,
    i: int,
    block: Optional[Block],
    received_symbols: dict[int, str],
    disputes: DisputeGraph,
    excluded: frozenset[int],
) -> list[Optional[int]]:
    """Build peer i's symbol vector r_i from the symbol slots.

    Null for every node in dispute with i or with the source, for
    excluded nodes, and for silent peers.  Positions 1 and i come from
    i's own re-encoding when i trusts the source.
    """
    n, c = code.n, code.field.c
    view: list[Optional[int]] = [None] * n
    if block is not None:  # not in dispute with the source
        own = code.encode(block)
        view[0] = own[0]
        view[i - 1] = own[i - 1]
    for j in range(2, n + 1):
        if j == i or j in excluded:
            continue
        if disputes.in_dispute(i, j) or disputes.in_dispute(1, j):
            continue
        payload = received_symbols.get(j, "")
        if payload:
            view[j - 1] = bits_to_symbols(_pad(payload, c), c)[0]
    nonnull = sum(1 for v in view if v is not None)
    if nonnull < code.k:
        raise ProtocolError(
            f"peer {i} holds {nonnull} non-null symbols, fewer than n-2t={code.k}"
        )
    return view


def db_resolve(code: RSCode, view) -> tuple[Block, bool]:
    """Unique block consistent with the view, or default + detection flag."""
    data = code.consistency_check(view)
    if data is None:
        return default_block(code.k), True
    return data, False


def serialize_claim(block: Optional[Block], view, c: int, k: int) -> str:
    parts = ["1" + symbols_to_bits(block, c) if block is not None else "0" + "0" * (c * k)]
    for v in view:
        parts.append("0" + "0" * c if v is None else "1" + format(v, f"0{c}b"))
    return "".join(parts)


def parse_claim(bits: str, n: int, c: int, k: int) -> tuple[Optional[Block], list[Optional[int]]]:
    expected = 1 + c * k + n * (1 + c)
    if len(bits) != expected:
        return None, [None] * n
    block = bits_to_symbols(bits[1 : 1 + c * k], c) if bits[0] == "1" else None
    view: list[Optional[int]] = []
    pos = 1 + c * k
    for _ in range(n):
        flag, sym = bits[pos], bits[pos + 1 : pos + 1 + c]
        view.append(int(sym, 2) if flag == "1" else None)
        pos += 1 + c
    return block, view


def derive_disputes(
    code: RSCode,
    x_common: Block,
    claims: dict[int, tuple[Optional[Block], list[Optional[int]]]],
    disputes: DisputeGraph,
    excluded: frozenset[int],
) -> list[tuple[int, int]]:
    """Cross-check the common claim set; every returned pair is new and is
    guaranteed to contain at least one faulty node."""
    n = code.n
    new: list[tuple[int, int]] = []

    def propose(a: int, b: int):
        key = (a, b) if a < b else (b, a)
        if not disputes.in_dispute(a, b) and key not in new:
            new.append(key)

    encoded: dict[int, Optional[tuple[int, ...]]] = {}
    for w, (block, _) in claims.items():
        encoded[w] = code.encode(block) if block is not None else None

    for i in sorted(claims):
        block_i, _ = claims[i]
        # A peer that trusts the source must have claimed exactly the
        # common value; claiming anything else (or nothing) is a lie by
        # the peer or an equivocation by the source.
        if not disputes.in_dispute(1, i) and block_i != x_common:
            propose(1, i)

    for o in sorted(claims):
        _, view_o = claims[o]
        for w in sorted(claims):
            if w == o:
                continue
            r = view_o[w - 1]
            if r is None:
                continue  # null entries are exempt
            if disputes.in_dispute(o, w):
                continue
            if disputes.in_dispute(1, w) or claims[w][0] is None:
                # o claims a symbol from a peer that was required to stay
                # silent (or that denies having sent one).
                propose(o, w)
            elif r != encoded[w][w - 1]:
                propose(o, w)
    return new


def run_byzantine_broadcast(x: str, config: SystemConfig, strategy: Strategy) -> BbOutcome:
    """Iterate the three-phase loop over all L/D generations."""
    if len(x) != config.L:
        raise ValueError(f"input must be exactly L={config.L} bits")
    n, t, c, D = config.n, config.t, config.c, config.D
    field_ = GF(c)
    code = RSCode(n, t, field_)
    k = code.k
    sim = Simulation(config, strategy)
    disputes = DisputeGraph(t)
    nodes = tuple(config.nodes)
    generations: list[GenerationRecord] = []
    parts: dict[int, list[str]] = {i: [] for i in config.peers}
    dc_invocations = 0

    for g in range(1, config.L // D + 1):
        x_bits = x[(g - 1) * D : g * D]
        rec = GenerationRecord(g, x_bits)
        generations.append(rec)
        excluded = disputes.identified_faulty

        if 1 in excluded:
            # Disqualified source: all remaining generations take the
            # default value, with no traffic.
            rec.skipped = True
            for i in config.peers:
                rec.y_bits[i] = "0" * D
                parts[i].append("0" * D)
            continue

        # --- Detectable Broadcast -------------------------------------
        inbox = sim.round({1: db_source_payload(x_bits)}, "DB", "source_value")
        active_peers = [i for i in config.peers if i not in excluded]
        blocks: dict[int, Optional[Block]] = {}
        for i in active_peers:
            if disputes.in_dispute(1, i):
                blocks[i] = None
            else:
                blocks[i] = bits_to_symbols(_pad(inbox[i].get(1, ""), D), c)

        intents = {i: db_peer_symbol(code, blocks[i], i) for i in active_peers}
        inbox2 = sim.round(intents, "DB", "alg1.symbol")

        views: dict[int, list[Optional[int]]] = {}
        for i in active_peers:
            views[i] = db_assemble_view(code, i, blocks[i], inbox2[i], disputes, excluded)
            z_i, det_i = db_resolve(code, views[i])
            rec.z[i], rec.detected[i] = z_i, det_i

        # --- Detection Dissemination ----------------------------------
        fault_free = [i for i in nodes if i not in sim.faulty]
        for i in nodes:
            if i in excluded:
                rec.announced[i] = False
                continue
            bit = "1" if rec.detected.get(i, False) else "0"
            res = eig_broadcast(sim, i, bit, 1, nodes, t, "DD", "dd", skip=excluded)
            agreed = {res[j] for j in fault_free}
            if len(agreed) != 1:
                raise ProtocolError(f"detection broadcast of node {i} did not agree")
            rec.announced[i] = agreed.pop() == "1"

        if not any(rec.announced.values()):
            for i in config.peers:
                if i in excluded:
                    y = "0" * D
                else:
                    y = symbols_to_bits(rec.z[i], c)
                rec.y_bits[i] = y
                parts[i].append(y)
            continue

        # --- Dispute Control ------------------------------------------
        dc_invocations += 1
        rec.dc_invoked = True

        res = eig_broadcast(sim, 1, x_bits, D, nodes, t, "DC", "dc_value", skip=excluded)
        agreed_x = {res[j] for j in fault_free}
        if len(agreed_x) != 1:
            raise ProtocolError("dispute-control value broadcast did not agree")
        x_common_bits = agreed_x.pop()
        x_common = bits_to_symbols(x_common_bits, c)

        claim_len = 1 + c * k + n * (1 + c)
        claims: dict[int, tuple[Optional[Block], list[Optional[int]]]] = {}
        for i in active_peers:
            payload = serialize_claim(blocks[i], views[i], c, k)
            res = eig_broadcast(sim, i, payload, claim_len, nodes, t, "DC", "dc_claim", skip=excluded)
            agreed_claims = {res[j] for j in fault_free}
            if len(agreed_claims) != 1:
                raise ProtocolError(f"claim broadcast of peer {i} did not agree")
            claims[i] = parse_claim(agreed_claims.pop(), n, c, k)

        new_pairs = derive_disputes(code, x_common, claims, disputes, excluded)
        rec.new_pairs = tuple(new_pairs)
        ff_detected = any(rec.detected.get(i, False) for i in active_peers if i not in sim.faulty)
        if new_pairs:
            for a, b in new_pairs:
                disputes.add(a, b)
        else:
            if ff_detected:
                raise ProtocolError(
                    "a fault-free node detected misbehavior but dispute "
                    "control derived no new pair"
                )
            # Only liars announced: every announcer is faulty.
            disputes.identify(i for i, flag in rec.announced.items() if flag)

        for i in config.peers:
            rec.y_bits[i] = x_common_bits
            parts[i].append(x_common_bits)

    outputs = {i: "".join(parts[i]) for i in config.peers if i not in sim.faulty}
    return BbOutcome(
        config=config,
        outputs=outputs,
        meter=sim.meter,
        disputes=disputes,
        trace=sim.trace,
        generations=generations,
        dc_invocations=dc_invocations,
        faulty=sim.faulty,
    )
