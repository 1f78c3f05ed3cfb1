"""Proof-of-work mining simulation and the urn-model cost law.

The difficulty target is a threshold on the truncated hash value; a
nonce is accepted when hash(nonce || prev_data) falls below it. The
expected number of tries matches drawing without replacement from an
urn until the first blue ball: (total + 1) / (blue + 1).
"""

import hashlib
import random
import statistics
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigurationError, MiningExhaustedError
from .ledger import ChainConfig, ChainState


@dataclass(frozen=True)
class DifficultyTarget:
    hash_width_bits: int
    target_fraction: float

    def __post_init__(self):
        if not 0 < self.target_fraction <= 1:
            raise ConfigurationError("target_fraction must be in (0, 1]")
        if not 8 <= self.hash_width_bits <= 256:
            raise ConfigurationError("hash_width_bits must be in [8, 256]")

    @property
    def threshold(self) -> int:
        return round(Fraction(self.target_fraction) * (1 << self.hash_width_bits))


@dataclass(frozen=True)
class MiningResult:
    nonce: int
    hash: int
    tries: int


def mining_hash(nonce: int, nonce_bits: int, prev_data: bytes, width: int) -> int:
    nbytes = (nonce_bits + 7) // 8
    digest = hashlib.sha256(nonce.to_bytes(nbytes, "big") + prev_data).digest()
    return int.from_bytes(digest, "big") >> (256 - width)


def mine(prev_data: bytes, target: DifficultyTarget, nonce_bits: int,
         rng: random.Random) -> MiningResult:
    """Enumerate nonces without repetition until the hash meets the target.

    Enumeration is sequential from an rng-chosen starting point, wrapping
    around the nonce space; rng only sets the order, never resamples.
    """
    width = target.hash_width_bits
    threshold = target.threshold
    space = 1 << nonce_bits
    start = rng.randrange(space)
    nbytes = (nonce_bits + 7) // 8
    sha = hashlib.sha256
    shift = 256 - width
    wrap = space - 1
    for off in range(space):
        nonce = (start + off) & wrap
        digest = sha(nonce.to_bytes(nbytes, "big") + prev_data).digest()
        value = int.from_bytes(digest, "big") >> shift
        if value < threshold:
            return MiningResult(nonce, value, off + 1)
    raise MiningExhaustedError(f"no nonce in 2^{nonce_bits} met fraction "
                               f"{target.target_fraction}")


def urn_expected_draws(blue: int, red: int) -> Fraction:
    """Expected draws without replacement until the first blue ball."""
    if blue < 1:
        raise ConfigurationError("need at least one blue ball")
    return Fraction(blue + red + 1, blue + 1)


def mining_cost_law(p_bits: int, pprime_fraction: float, q_bits: int) -> float:
    """Expected tries for a nonce space of 2^q_bits at the given fraction.

    Maps the search to an urn with (p'/p) * 2^q_bits blue balls; for
    p' << p this is approximately p/p'.
    """
    if not 0 < pprime_fraction <= 1:
        raise ConfigurationError("pprime_fraction must be in (0, 1]")
    total = 1 << q_bits
    blue = Fraction(pprime_fraction) * total
    return float(Fraction(total + 1) / (blue + 1))


def mining_trials(target: DifficultyTarget, nonce_bits: int, runs: int,
                  seed: int, prev_data: bytes = b"zoned-ledger-bench") -> dict:
    """Run independent mines and compare the mean tries to the cost law."""
    rng = random.Random(seed)
    tries = [mine(prev_data, target, nonce_bits, rng).tries for _ in range(runs)]
    mean = statistics.fmean(tries)
    law = mining_cost_law(target.hash_width_bits, target.target_fraction, nonce_bits)
    sigma = statistics.stdev(tries) / runs**0.5 if runs > 1 else 0.0
    return {
        "target_fraction": target.target_fraction,
        "runs": runs,
        "mean_tries": mean,
        "law": law,
        "sigma": sigma,
        "seed": seed,
    }


def scheme_cost_comparison(n: int, m: int, p_bits: int, pprime_fraction: float,
                           runs: int = 200, seed: int = 0,
                           nonce_bits: int = 32) -> dict:
    """Measured hash evaluations per committed block, PoW vs this scheme.

    PoW cost is the empirical mean tries of actual mining runs. The
    distributed scheme hashes once per block; its extra work is the
    per-zone secret-sharing polynomial evaluations, counted from the
    records actually written.
    """
    target = DifficultyTarget(p_bits, pprime_fraction)
    pow_stats = mining_trials(target, nonce_bits, runs, seed)

    block_bytes = m * 8
    state = ChainState(ChainConfig(n=n, m=m, block_bytes=block_bytes,
                                   hash_width=min(p_bits, 64), seed=seed))
    rng = random.Random(seed)
    state.commit_block(rng.randbytes(block_bytes), rng)
    share_evals = sum(len(rec.key_shares) + 1 for rec in state.records[0].values())
    return {
        "pow_mean_hash_evals": pow_stats["mean_tries"],
        "pow_law": pow_stats["law"],
        "scheme_hash_evals": 1,
        "scheme_share_evaluations": share_evals,
        "zones": n // m,
        "runs": runs,
        "seed": seed,
    }
