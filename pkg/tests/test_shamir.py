import itertools
import random

import pytest

from zoned_ledger.errors import ConfigurationError, InsufficientSharesError
from zoned_ledger.field import Field
from zoned_ledger.shamir import (Share, reconstruct, reconstruct_bytes, split,
                                 split_bytes)


def test_hand_checkable_polynomial():
    # the sharing polynomial 3 + 2x over GF(7) at x = 1, 2, 3
    f = Field(7)
    shares = [Share(x, f.eval_poly([3, 2], x)) for x in (1, 2, 3)]
    assert shares == [Share(1, 5), Share(2, 0), Share(3, 2)]
    assert reconstruct(f, shares[:2], 2) == 3
    assert reconstruct(f, shares[1:], 2) == 3


def test_split_shares_lie_on_degree_k_minus_1_polynomial():
    f = Field(13)
    rng = random.Random(2)
    shares = split(f, 9, 3, 5, rng)
    assert len(shares) == 5
    assert len({s.x for s in shares}) == 5
    assert all(s.x != 0 for s in shares)
    # every 3-subset reconstructs the same secret
    for sub in itertools.combinations(shares, 3):
        assert reconstruct(f, sub, 3) == 9


def test_k_equals_1_share_is_secret():
    f = Field(11)
    shares = split(f, 6, 1, 4, random.Random(0))
    assert all(s.y == 6 for s in shares)
    assert reconstruct(f, [Share(4, 9)], 1) == 9


def test_zero_secret_round_trip():
    f = Field(11)
    shares = split(f, 0, 2, 2, random.Random(1))
    assert reconstruct(f, shares, 2) == 0


def test_field_too_small():
    with pytest.raises(ConfigurationError):
        split(Field(7), 1, 3, 7, random.Random(0))


def test_insufficient_shares():
    f = Field(11)
    shares = split(f, 5, 3, 4, random.Random(3))
    with pytest.raises(InsufficientSharesError):
        reconstruct(f, shares[:2], 3)


@pytest.mark.parametrize("q", [7, 11, 13])
def test_all_k_subsets_reconstruct(q):
    f = Field(q)
    rng = random.Random(q)
    for k in range(1, 5):
        for n in range(k, min(7, q - 1)):
            secret = rng.randrange(q)
            shares = split(f, secret, k, n, rng)
            for sub in itertools.combinations(shares, k):
                assert reconstruct(f, sub, k) == secret


def test_secrecy_posterior_uniform_gf7():
    # GF(7), k=3: any 2 shares admit exactly one completion per candidate
    # secret, so the posterior over secrets is uniform.
    f = Field(7)
    known = [Share(1, 4), Share(5, 2)]
    completions = {s: 0 for s in range(7)}
    for a1, a2 in itertools.product(range(7), repeat=2):
        for s in range(7):
            coeffs = [s, a1, a2]
            if all(f.eval_poly(coeffs, sh.x) == sh.y for sh in known):
                completions[s] += 1
    counts = set(completions.values())
    assert counts == {1}


def test_conditional_final_share_uncertainty_gf7():
    # given k-1 shares and the secret, the last share is uniform over a
    # set of size q - k (one consistent y per remaining abscissa)
    q, k = 7, 3
    f = Field(q)
    secret = 4
    known = [Share(2, 1), Share(6, 3)]
    consistent = set()
    for a1, a2 in itertools.product(range(q), repeat=2):
        coeffs = [secret, a1, a2]
        if all(f.eval_poly(coeffs, s.x) == s.y for s in known):
            for x in range(1, q):
                if x not in {s.x for s in known}:
                    consistent.add((x, f.eval_poly(coeffs, x)))
    xs = {x for x, _ in consistent}
    assert len(xs) == q - k
    assert len(consistent) == len(xs)  # exactly one y per abscissa


@pytest.mark.parametrize("secret,k,n", [
    (b"", 2, 3),
    (b"\x00", 2, 2),
    (bytes(range(16)), 4, 4),
    (b"seven-byte-boundary!!", 3, 5),
])
def test_split_bytes_round_trip(secret, k, n):
    rng = random.Random(len(secret))
    lists = split_bytes(secret, k, n, rng)
    assert len(lists) == n
    assert reconstruct_bytes(lists[:k], k, len(secret)) == secret
    assert reconstruct_bytes(lists[n - k:], k, len(secret)) == secret
