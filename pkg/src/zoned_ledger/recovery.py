"""Block retrieval with hash-consistency elimination and majority vote.

Every zone decodes its stored copy of the requested block. If the
candidates disagree, the chain suffix is scanned: for each surviving
peer, the hash recomputed from its slot-tau zone's decoded block and
reconstructed previous hash is compared against the hash value
reconstructed at the peer's slot-(tau+1) zone; peers on the mismatching
side are eliminated. The majority among surviving peers' zone
candidates wins.
"""

import json
from collections import Counter
from dataclasses import dataclass, field

from .errors import AmbiguousRecoveryError, UnrecoverableError
from .ledger import ChainState, hash_step
from .zones import zone_of


@dataclass
class RecoveryReport:
    recovered: bytes | None
    per_zone_candidates: dict[int, bytes | None]
    eliminated_peers: set[int] = field(default_factory=set)
    slots_scanned: int = 0
    unanimous: bool = False

    def to_json(self) -> str:
        return json.dumps({
            "recovered": None if self.recovered is None else self.recovered.hex(),
            "per_zone_candidates": {
                str(z): None if c is None else c.hex()
                for z, c in sorted(self.per_zone_candidates.items())
            },
            "eliminated_peers": sorted(self.eliminated_peers),
            "slots_scanned": self.slots_scanned,
            "unanimous": self.unanimous,
        }, sort_keys=True)


def _surviving_candidates(candidates, alloc, active):
    out = set()
    for peer in active:
        c = candidates[zone_of(alloc, peer)]
        if c is not None:
            out.add(c)
    return out


def recover_block(state: ChainState, t: int, scan_limit: int | None = None) -> RecoveryReport:
    """Recover block t; scan at most scan_limit slots past t for consistency."""
    if not 0 <= t < state.num_blocks:
        raise IndexError(f"slot {t} not committed")
    cfg = state.config
    alloc_t = state.allocation(t)
    candidates = {z: state.zone_candidate(t, z) for z in range(len(alloc_t))}
    report = RecoveryReport(recovered=None, per_zone_candidates=candidates)
    if all(c is None for c in candidates.values()):
        raise UnrecoverableError(f"no zone can decode slot {t}")

    distinct = {c for c in candidates.values() if c is not None}
    active = set(range(cfg.n))
    if len(distinct) > 1:
        last_tau = state.num_blocks - 2
        if scan_limit is not None:
            last_tau = min(last_tau, t + scan_limit)
        for tau in range(t, last_tau + 1):
            alloc_tau = state.allocation(tau)
            alloc_next = state.allocation(tau + 1)
            blocks_tau = {z: state.zone_candidate(tau, z) for z in range(len(alloc_tau))}
            prev_tau = {z: state.zone_prev_hash(tau, z) for z in range(len(alloc_tau))}
            next_hash = {z: state.zone_prev_hash(tau + 1, z) for z in range(len(alloc_next))}
            recomputed = {
                z: hash_step(prev_tau[z], blocks_tau[z], cfg.hash_width)
                for z in blocks_tau
                if blocks_tau[z] is not None and prev_tau[z] is not None
            }
            dropped = set()
            for peer in active:
                z = zone_of(alloc_tau, peer)
                z_next = zone_of(alloc_next, peer)
                if z not in recomputed or next_hash[z_next] is None:
                    continue
                if recomputed[z] != next_hash[z_next]:
                    dropped.add(peer)
            active -= dropped
            report.eliminated_peers |= dropped
            report.slots_scanned += 1
            if len(_surviving_candidates(candidates, alloc_t, active)) <= 1:
                break

    votes = Counter()
    for peer in active:
        c = candidates[zone_of(alloc_t, peer)]
        if c is not None:
            votes[c] += 1
    if not votes:
        raise UnrecoverableError(f"all candidate zones for slot {t} were eliminated")
    ranked = votes.most_common()
    if len(ranked) > 1 and ranked[0][1] == ranked[1][1]:
        raise AmbiguousRecoveryError(f"majority tie while recovering slot {t}")
    report.recovered = ranked[0][0]
    report.unanimous = len(distinct) == 1
    return report


class ReplicatedLedger:
    """Conventional baseline: every peer stores a full copy of every block."""

    def __init__(self, n: int):
        self.n = n
        self.copies: list[list[bytes]] = [[] for _ in range(n)]

    def commit(self, payload: bytes) -> None:
        for store in self.copies:
            store.append(payload)

    def corrupt(self, peer: int, t: int, payload: bytes) -> None:
        self.copies[peer][t] = payload


def recover_baseline(ledger: ReplicatedLedger, t: int) -> bytes:
    """Majority vote over the n full copies of block t."""
    votes = Counter(store[t] for store in ledger.copies)
    ranked = votes.most_common()
    if len(ranked) > 1 and ranked[0][1] == ranked[1][1]:
        raise AmbiguousRecoveryError(f"majority tie at slot {t}")
    return ranked[0][0]
