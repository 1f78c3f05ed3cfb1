"""Ground-truth hash chain plus simulated per-peer zone storage.

Each committed block is, per zone, encrypted under a fresh tree-cipher
key; the fragments go one per peer, and the serialized key and the
previous hash value are (m, m) secret shared across the zone. The
simulator also keeps the plain ground truth so experiments can check
recovery against it.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field

from . import shamir, tree_cipher, zones
from .errors import ConfigurationError, UnrepairableError
from .field import Field, next_prime

GENESIS_HASH = 0

_hash_fields: dict[int, Field] = {}


def hash_field(width: int) -> Field:
    """Prime sharing field just above 2^width, cached per width."""
    if width not in _hash_fields:
        _hash_fields[width] = Field(next_prime(2**width))
    return _hash_fields[width]


def hash_step(prev: int, payload: bytes, width: int = 64) -> int:
    """SHA-256 of (prev hash bits || payload), truncated to width bits."""
    prev_bytes = prev.to_bytes((width + 7) // 8, "big")
    digest = hashlib.sha256(prev_bytes + payload).digest()
    return int.from_bytes(digest, "big") >> (256 - width)


@dataclass(frozen=True)
class ChainConfig:
    n: int
    m: int
    block_bytes: int
    hash_width: int = 64
    seed: int = 0

    def __post_init__(self):
        zones.layout(self.n, self.m)
        if self.block_bytes <= 0 or self.block_bytes % self.m != 0:
            raise ConfigurationError(
                f"block_bytes={self.block_bytes} must be a positive multiple of m={self.m}")
        if not 8 <= self.hash_width <= 256:
            raise ConfigurationError("hash_width must be in [8, 256]")


@dataclass
class PeerSlotRecord:
    fragment: bytes
    key_shares: tuple[shamir.Share, ...]
    hash_share: shamir.Share
    local_assignment: int
    zone: int


class ChainState:
    """One simulated network: ground truth plus per-peer slot records."""

    def __init__(self, config: ChainConfig):
        self.config = config
        self.layout = zones.layout(config.n, config.m)
        self.payloads: list[bytes] = []
        self.hashes: list[int] = [GENESIS_HASH]  # hashes[t] == H_{t-1} context; see below
        self.records: list[dict[int, PeerSlotRecord]] = []

    # hashes[0] is the genesis H_0; hashes[t] is H_t = h(H_{t-1}, B_t).

    @property
    def num_blocks(self) -> int:
        return len(self.payloads)

    def allocation(self, t: int) -> list[tuple[int, ...]]:
        return zones.allocation_at(self.layout, t)

    def _encode_zone(self, t: int, zone_idx: int, members, payload: bytes,
                     prev_hash: int, rng, slot_records) -> None:
        cfg = self.config
        key = tree_cipher.sample_key(cfg.m, rng)
        fragments = tree_cipher.encrypt(payload, key)
        key_share_lists = shamir.split_bytes(tree_cipher.serialize_key(key),
                                             cfg.m, cfg.m, rng)
        hash_shares = shamir.split(hash_field(cfg.hash_width), prev_hash,
                                   cfg.m, cfg.m, rng)
        for j, peer in enumerate(sorted(members)):
            slot_records[peer] = PeerSlotRecord(
                fragment=fragments[j],
                key_shares=tuple(key_share_lists[j]),
                hash_share=hash_shares[j],
                local_assignment=key.assignment[j],
                zone=zone_idx,
            )

    def commit_block(self, payload: bytes, rng) -> None:
        if len(payload) != self.config.block_bytes:
            raise ValueError(
                f"payload must be {self.config.block_bytes} bytes, got {len(payload)}")
        t = self.num_blocks
        prev = self.hashes[t]
        slot_records: dict[int, PeerSlotRecord] = {}
        for z, members in enumerate(self.allocation(t)):
            self._encode_zone(t, z, members, payload, prev, rng, slot_records)
        self.payloads.append(payload)
        self.hashes.append(hash_step(prev, payload, self.config.hash_width))
        self.records.append(slot_records)

    def erase_peer_record(self, t: int, peer: int) -> None:
        self.records[t].pop(peer, None)

    def zone_records(self, t: int, z: int) -> list[PeerSlotRecord] | None:
        """Records of zone z at slot t in peer order, or None if any is missing."""
        members = self.allocation(t)[z]
        recs = [self.records[t].get(p) for p in sorted(members)]
        if any(r is None for r in recs):
            return None
        return recs  # type: ignore[return-value]

    def zone_candidate(self, t: int, z: int) -> bytes | None:
        """Decrypt zone z's stored copy of block t, or None if impossible."""
        recs = self.zone_records(t, z)
        if recs is None:
            return None
        m = self.config.m
        try:
            key_bytes = shamir.reconstruct_bytes(
                [r.key_shares for r in recs], m, tree_cipher.key_nbytes(m))
            key = tree_cipher.deserialize_key(key_bytes, m)
            return tree_cipher.decrypt([r.fragment for r in recs], key)
        except (ValueError, OverflowError):
            return None

    def zone_prev_hash(self, t: int, z: int) -> int | None:
        """Reconstruct the H_{t-1} value shared across zone z at slot t."""
        recs = self.zone_records(t, z)
        if recs is None:
            return None
        f = hash_field(self.config.hash_width)
        try:
            return shamir.reconstruct(f, [r.hash_share for r in recs], self.config.m)
        except ValueError:
            return None

    def repair_zone(self, t: int, z: int, rng) -> None:
        """Recode zone z at slot t with a fresh key, using a donor zone."""
        n_zones = len(self.allocation(t))
        payload = prev_hash = None
        for donor in range(n_zones):
            if donor == z:
                continue
            payload = self.zone_candidate(t, donor)
            prev_hash = self.zone_prev_hash(t, donor)
            if payload is not None and prev_hash is not None:
                break
            payload = prev_hash = None
        if payload is None:
            raise UnrepairableError(f"no intact donor zone for slot {t}")
        members = self.allocation(t)[z]
        self._encode_zone(t, z, members, payload, prev_hash, rng, self.records[t])

    def storage_cost_measured(self, peer: int, slot: int) -> float:
        """Bits actually stored by one peer for one slot."""
        rec = self.records[slot].get(peer)
        if rec is None:
            raise LookupError(f"no record for peer {peer} at slot {slot}")
        share_bits = shamir.SHARING_PRIME.bit_length()
        hash_bits = hash_field(self.config.hash_width).modulus.bit_length()
        bits = 8 * len(rec.fragment)
        bits += len(rec.key_shares) * 2 * share_bits
        bits += 2 * hash_bits  # (x, y) of the hash share
        bits += max(1, math.ceil(math.log2(self.config.m)))
        return float(bits)


def storage_cost_formula(q_bits: float, p_bits: float, m: int) -> tuple[float, float, float]:
    """(baseline, distributed, gain) storage bits per peer per block.

    Baseline is full replication: block plus hash. Distributed is the
    zone-coded cost: 1/m of the block, the tree-cipher key entropy of
    2m*log2(m) bits, two hash-width terms, plus the flip bit.
    """
    if m < 1:
        raise ConfigurationError("m must be >= 1")
    baseline = q_bits + p_bits
    key_bits = 2 * m * math.log2(m) if m > 1 else 0.0
    distributed = q_bits / m + key_bits + 2 * p_bits + 1
    return baseline, distributed, baseline - distributed


def snapshot_save(state: ChainState, path) -> None:
    """Write the full chain as deterministic JSON lines."""
    cfg = state.config
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({
            "type": "config", "n": cfg.n, "m": cfg.m,
            "block_bytes": cfg.block_bytes, "hash_width": cfg.hash_width,
            "seed": cfg.seed,
        }, sort_keys=True) + "\n")
        for t, payload in enumerate(state.payloads):
            fh.write(json.dumps({
                "type": "slot", "t": t, "payload": payload.hex(),
                "hash": state.hashes[t + 1],
            }, sort_keys=True) + "\n")
            for peer in sorted(state.records[t]):
                r = state.records[t][peer]
                fh.write(json.dumps({
                    "type": "record", "t": t, "peer": peer, "zone": r.zone,
                    "assignment": r.local_assignment,
                    "fragment": r.fragment.hex(),
                    "key_shares": [[s.x, s.y] for s in r.key_shares],
                    "hash_share": [r.hash_share.x, r.hash_share.y],
                }, sort_keys=True) + "\n")


def snapshot_load(path) -> ChainState:
    with open(path, encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        if header.get("type") != "config":
            raise ValueError("snapshot must start with a config line")
        state = ChainState(ChainConfig(
            n=header["n"], m=header["m"], block_bytes=header["block_bytes"],
            hash_width=header["hash_width"], seed=header["seed"]))
        for line in fh:
            rec = json.loads(line)
            if rec["type"] == "slot":
                payload = bytes.fromhex(rec["payload"])
                prev = state.hashes[-1]
                state.payloads.append(payload)
                state.hashes.append(hash_step(prev, payload, header["hash_width"]))
                if state.hashes[-1] != rec["hash"]:
                    raise ValueError(f"hash mismatch at slot {rec['t']}")
                state.records.append({})
            elif rec["type"] == "record":
                state.records[rec["t"]][rec["peer"]] = PeerSlotRecord(
                    fragment=bytes.fromhex(rec["fragment"]),
                    key_shares=tuple(shamir.Share(x, y) for x, y in rec["key_shares"]),
                    hash_share=shamir.Share(*rec["hash_share"]),
                    local_assignment=rec["assignment"],
                    zone=rec["zone"],
                )
            else:
                raise ValueError(f"unknown snapshot record type {rec['type']!r}")
    return state
