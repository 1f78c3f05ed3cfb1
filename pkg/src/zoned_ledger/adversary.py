"""Adversary and availability experiments.

Monte Carlo trials for hash-share corruption, zone corruption under the
tree cipher, joint corruption across zones, exposure growth under the
cyclic schedule, recovery availability under peer inactivity, and
exhaustive confidentiality probes at tiny zone sizes. Every estimate is
reported with its trial count, seed, and 3-sigma binomial radius.
"""

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from . import tree_cipher
from .errors import ConfigurationError
from .field import Field, next_prime
from .ledger import ChainState, hash_step, hash_field
from .shamir import Share, split
from .tree_cipher import CipherKey, RootedTree, corruption_oracle, sample_key
from .zones import allocation_at, layout


@dataclass
class TrialSummary:
    trials: int
    successes: int
    estimate: float
    bound: float
    seed: int

    @property
    def sigma(self) -> float:
        """One-sigma binomial radius of the estimate."""
        p = self.estimate
        return math.sqrt(max(p * (1 - p), 1e-12) / self.trials)

    def within_bound(self, k: float = 3.0) -> bool:
        return self.estimate - k * self.sigma <= self.bound


def _summary(trials, successes, bound, seed) -> TrialSummary:
    return TrialSummary(trials, successes, successes / trials, bound, seed)


def hash_corruption_trial(m: int, field_bits: int, trials: int, seed: int) -> TrialSummary:
    """Rewrite a zone's shared hash with one honest peer remaining.

    The adversary knows the secret H, the target H', and m-1 shares, but
    not the honest peer's abscissa. It guesses an unused abscissa x_hat,
    shifts its own shares by the degree-1 polynomial that moves the
    intercept from H to H' while fixing x_hat, and wins iff
    reconstruction with the true honest share yields H'. Success
    probability is exactly 1/(q - m).
    """
    if m < 2:
        raise ConfigurationError("need m >= 2 for a corruption trial")
    f = Field(next_prime(2**field_bits))
    q = f.modulus
    rng = random.Random(seed)
    successes = 0
    for _ in range(trials):
        secret = f.rand(rng)
        target = (secret + rng.randrange(1, q)) % q
        shares = split(f, secret, m, m, rng)
        honest = shares[-1]
        known = shares[:-1]
        used = {s.x for s in known}
        while True:
            x_hat = rng.randrange(1, q)
            if x_hat not in used:
                break
        # delta(x) = (H' - H) * (x_hat - x) / x_hat: delta(0) moves the
        # intercept, delta(x_hat) = 0 keeps the guessed point fixed.
        scale = f.mul(f.sub(target, secret), f.inv(x_hat))
        forged = [Share(s.x, f.add(s.y, f.mul(scale, f.sub(x_hat, s.x)))) for s in known]
        result = f.lagrange_interpolate(forged + [honest], 0)
        if result == target:
            successes += 1
    return _summary(trials, successes, 1.0 / (q - m), seed)


def zone_corruption_trial(m: int, c: int, trials: int, seed: int) -> TrialSummary:
    """Probability that c randomly corrupted peers can rewrite one fragment.

    The target is a fixed plaintext position (node 0); success requires
    corrupting the peers holding node 0's subtree and the root. Compared
    against the c(c-1)/(m(m-1)) bound.
    """
    if not 1 <= c <= m:
        raise ConfigurationError("need 1 <= c <= m")
    rng = random.Random(seed)
    peers = list(range(m))
    successes = 0
    for _ in range(trials):
        key = sample_key(m, rng)
        corrupted = rng.sample(peers, c)
        if corruption_oracle(key, corrupted, {0}):
            successes += 1
    bound = c * (c - 1) / (m * (m - 1)) if m > 1 else 1.0
    return _summary(trials, successes, bound, seed)


def zone_corruption_exact(m: int, c: int) -> float:
    """Exhaustive success probability of zone_corruption_trial (m <= 6)."""
    if m > 6:
        raise ConfigurationError("exhaustive oracle limited to m <= 6")
    if m == 1:
        return 1.0
    total = 0.0
    count = 0
    seqs = itertools.product(range(m), repeat=max(0, m - 2))
    for seq in seqs:
        for root in range(m):
            tree = tree_cipher.tree_from_prufer(list(seq), m, root)
            required = len(tree.subtree(0) | {root})
            # Uniform assignment + uniform c-subset: the required nodes'
            # peers are a uniform required-sized subset of the m peers.
            if c >= required:
                p = math.comb(m - required, c - required) / math.comb(m, c)
            else:
                p = 0.0
            total += p
            count += 1
    return total / count


def joint_corruption_bound(n: int, m: int, per_zone_c) -> float:
    """exp((n/m) * log(2 * sum(c_i) / n)), the joint corruption bound."""
    total = sum(per_zone_c)
    if total <= 0:
        return 0.0
    return math.exp((n / m) * math.log(2 * total / n))


def min_corruption_for_success(n: int, m: int, eps: float) -> float:
    """(n/2) (1-eps)^(m/n): total corruption needed for success >= 1-eps."""
    return (n / 2) * (1 - eps) ** (m / n)


def consistent_corruption_trial(n: int, m: int, per_zone_c, trials: int,
                                seed: int) -> TrialSummary:
    """Joint success of independent zone corruptions, one per attacked zone."""
    layout(n, m)
    rng = random.Random(seed)
    peers = list(range(m))
    successes = 0
    for _ in range(trials):
        ok = True
        for c in per_zone_c:
            key = sample_key(m, rng)
            if not corruption_oracle(key, rng.sample(peers, c), {0}):
                ok = False
                break
        if ok:
            successes += 1
    return _summary(trials, successes, joint_corruption_bound(n, m, per_zone_c), seed)


def dynamic_exposure_scan(n: int, m: int, initial_corrupted, slots: int) -> list[int]:
    """Newly required corruptions per slot under the cyclic schedule.

    A zone mixing corrupted and honest peers forces the adversary to
    corrupt the zone's honest peers to keep its chain consistent.
    """
    lay = layout(n, m)
    corrupted = set(initial_corrupted)
    out = []
    for t in range(1, slots + 1):
        new: set[int] = set()
        for zone in allocation_at(lay, t):
            members = set(zone)
            if members & corrupted and not members <= corrupted:
                new |= members - corrupted
        corrupted |= new
        out.append(len(new))
    return out


def availability_closed_form(n: int, m: int, rho: float) -> float:
    """P(some zone has all peers active) = 1 - (1 - (1-rho)^m)^(n/m)."""
    return 1 - (1 - (1 - rho) ** m) ** (n // m)


def availability_bounds(n: int, m: int, rho: float) -> tuple[float, float]:
    """(union bound on success, exponential bound on failure)."""
    union = (n / m) * (1 - rho) ** m
    failure = math.exp(-((1 - rho) ** m) * n / m)
    return union, failure


def availability_trial(n: int, m: int, rho: float, trials: int, seed: int) -> TrialSummary:
    """Each peer inactive i.i.d. w.p. rho; success iff some zone fully active."""
    layout(n, m)
    if not 0 <= rho < 1:
        raise ConfigurationError("rho must be in [0, 1)")
    gen = np.random.default_rng(seed)
    active = gen.random((trials, n)) >= rho
    ok = active.reshape(trials, n // m, m).all(axis=2).any(axis=1)
    successes = int(ok.sum())
    return _summary(trials, successes, availability_closed_form(n, m, rho), seed)


def dos_tolerance(n: int, m: int) -> int:
    """Denial-of-service outages survivable: one per zone, n/m total."""
    layout(n, m)
    return n // m


def enumerate_keys(m: int):
    """All m^(m-1) * 2^m * m! cipher keys, for exhaustive probes."""
    if m > 4:
        raise ConfigurationError("key enumeration limited to m <= 4")
    for seq in itertools.product(range(m), repeat=max(0, m - 2)):
        for root in range(m):
            tree = tree_cipher.tree_from_prufer(list(seq), m, root)
            for flips in itertools.product((0, 1), repeat=m):
                for assignment in itertools.permutations(range(m)):
                    yield CipherKey(tree, flips, assignment)


@dataclass
class ConfidentialityReport:
    m: int
    fragment_bits: int
    leaked_peers: int
    key_count: int
    candidate_count: int | None
    marginals: list[list[float]]  # per plaintext position, over fragment values

    def max_uniform_deviation(self, positions=None) -> float:
        uniform = 1.0 / (1 << self.fragment_bits)
        positions = range(self.m) if positions is None else positions
        return max(abs(p - uniform)
                   for pos in positions for p in self.marginals[pos])


def confidentiality_probe(m: int, leaked_peers: int, fragment_bits: int = 1,
                          seed: int = 0) -> ConfidentialityReport:
    """Exhaustive posterior over plaintexts given leaked peer fragments.

    Samples one true (block, key) pair, reveals the codewords of
    leaked_peers peers, and enumerates every key (and, for the posterior,
    every block) consistent with the leak. With the full codeword leaked
    the number of distinct decryption candidates is also reported.
    """
    if not 0 <= leaked_peers <= m:
        raise ConfigurationError("leaked_peers must be in [0, m]")
    if m * fragment_bits > 16:
        raise ConfigurationError("plaintext space too large for exhaustive probe")
    rng = random.Random(seed)
    mask = (1 << fragment_bits) - 1
    keys = list(enumerate_keys(m))
    true_block = [rng.randrange(mask + 1) for _ in range(m)]
    true_key = keys[rng.randrange(len(keys))]
    codes = tree_cipher.encode_values(true_block, true_key, mask)
    observed = {peer: codes[true_key.assignment[peer]]
                for peer in rng.sample(range(m), leaked_peers)}

    candidate_count = None
    if leaked_peers == m:
        candidates = set()
        peer_codes = [observed[p] for p in range(m)]
        for key in keys:
            node_codes = [0] * m
            for peer in range(m):
                node_codes[key.assignment[peer]] = peer_codes[peer]
            candidates.add(tuple(tree_cipher.decode_values(node_codes, key, mask)))
        candidate_count = len(candidates)

    weights: dict[tuple[int, ...], int] = {}
    for block in itertools.product(range(mask + 1), repeat=m):
        w = 0
        for key in keys:
            kc = tree_cipher.encode_values(list(block), key, mask)
            if all(kc[key.assignment[peer]] == code for peer, code in observed.items()):
                w += 1
        if w:
            weights[block] = w
    total = sum(weights.values())
    marginals = [[0.0] * (mask + 1) for _ in range(m)]
    for block, w in weights.items():
        for pos, v in enumerate(block):
            marginals[pos][v] += w / total
    return ConfidentialityReport(m, fragment_bits, leaked_peers, len(keys),
                                 candidate_count, marginals)


def rewrite_zone_block(state: ChainState, t: int, z: int, payload: bytes, rng) -> None:
    """Adversary with all m peers of a zone re-encodes block t as payload.

    The zone's stored previous-hash shares are left untouched; downstream
    slots become inconsistent with the rewritten block.
    """
    members = state.allocation(t)[z]
    prev = state.zone_prev_hash(t, z)
    if prev is None:
        prev = state.hashes[t]
    state._encode_zone(t, z, members, payload, prev, rng, state.records[t])


def rewrite_chain_suffix(state: ChainState, t: int, payload: bytes, rng) -> None:
    """Full-network consistent rewrite: block t becomes payload everywhere,
    and every later slot's shared hash values are recomputed to match."""
    cfg = state.config
    f = hash_field(cfg.hash_width)
    for z in range(len(state.allocation(t))):
        rewrite_zone_block(state, t, z, payload, rng)
    prev = state.hashes[t]
    forged = hash_step(prev, payload, cfg.hash_width)
    for tau in range(t + 1, state.num_blocks):
        alloc = state.allocation(tau)
        for z, members in enumerate(alloc):
            shares = split(f, forged, cfg.m, cfg.m, rng)
            for j, peer in enumerate(sorted(members)):
                rec = state.records[tau].get(peer)
                if rec is not None:
                    rec.hash_share = shares[j]
        forged = hash_step(forged, state.payloads[tau], cfg.hash_width)
