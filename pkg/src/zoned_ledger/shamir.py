"""Shamir (k, n) secret sharing over a prime field.

Abscissas are drawn uniformly without replacement from the nonzero field
elements, so a share is the full point (x, y), not just the ordinate.
Byte-string secrets are chunked into 7-byte field elements of a fixed
61-bit Mersenne-prime sharing field and each chunk is shared
independently.
"""

from typing import NamedTuple

from .errors import ConfigurationError, InsufficientSharesError
from .field import Field

SHARING_PRIME = 2**61 - 1
CHUNK_BYTES = 7

_sharing_field = Field(SHARING_PRIME)


class Share(NamedTuple):
    x: int
    y: int


def _sample_abscissas(field: Field, n: int, rng) -> list[int]:
    if n >= field.modulus:
        raise ConfigurationError(
            f"cannot draw {n} distinct nonzero abscissas from GF({field.modulus})"
        )
    if field.modulus <= 4 * n:
        pool = list(range(1, field.modulus))
        rng.shuffle(pool)
        return pool[:n]
    seen: set[int] = set()
    out = []
    while len(out) < n:
        x = rng.randrange(1, field.modulus)
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def split(field: Field, secret: int, k: int, n: int, rng) -> list[Share]:
    """Share secret with threshold k among n parties."""
    if not 1 <= k <= n:
        raise ConfigurationError(f"need 1 <= k <= n, got k={k}, n={n}")
    coeffs = [secret % field.modulus] + [field.rand(rng) for _ in range(k - 1)]
    xs = _sample_abscissas(field, n, rng)
    return [Share(x, field.eval_poly(coeffs, x)) for x in xs]


def reconstruct(field: Field, shares, k: int) -> int:
    """Recover the secret (the polynomial intercept) from >= k shares."""
    shares = list(shares)
    if len(shares) < k:
        raise InsufficientSharesError(f"got {len(shares)} shares, need {k}")
    return field.lagrange_interpolate(shares[:k], 0)


def split_bytes(secret: bytes, k: int, n: int, rng,
                field: Field = _sharing_field) -> list[list[Share]]:
    """Share a byte string; returns one list of per-chunk shares per party.

    The byte length is not embedded in the shares; callers keep it as
    cleartext metadata and pass it to reconstruct_bytes.
    """
    per_party: list[list[Share]] = [[] for _ in range(n)]
    for off in range(0, len(secret), CHUNK_BYTES):
        chunk = int.from_bytes(secret[off:off + CHUNK_BYTES], "big")
        for party, share in enumerate(split(field, chunk, k, n, rng)):
            per_party[party].append(share)
    return per_party


def reconstruct_bytes(share_lists, k: int, nbytes: int,
                      field: Field = _sharing_field) -> bytes:
    """Invert split_bytes given >= k parties' share lists."""
    share_lists = list(share_lists)
    if len(share_lists) < k:
        raise InsufficientSharesError(f"got {len(share_lists)} share lists, need {k}")
    nchunks = (nbytes + CHUNK_BYTES - 1) // CHUNK_BYTES
    out = bytearray()
    for j in range(nchunks):
        value = reconstruct(field, [lst[j] for lst in share_lists], k)
        width = CHUNK_BYTES if j < nchunks - 1 else nbytes - CHUNK_BYTES * (nchunks - 1)
        out += value.to_bytes(width, "big")
    return bytes(out)
