import itertools
import math

import pytest

from zoned_ledger.errors import ConfigurationError
from zoned_ledger.zones import (allocation_at, allocation_count,
                                coverage_slots, layout, zone_of)


def valid_configs(max_n=48):
    for m in (2, 4, 6, 8):
        for n in range(m, max_n + 1, m):
            yield n, m


def test_layout_consecutive_groups():
    lay = layout(8, 4)
    assert lay.groups == ((0, 1), (2, 3), (4, 5), (6, 7))


def test_layout_single_zone_network():
    lay = layout(6, 6)
    assert len(lay.groups) == 2
    assert allocation_at(lay, 0) == [(0, 1, 2, 3, 4, 5)]
    assert allocation_at(lay, 12) == [(0, 1, 2, 3, 4, 5)]


@pytest.mark.parametrize("n,m", [(6, 4), (8, 3), (8, 5), (4, 8), (0, 2)])
def test_invalid_configs_rejected(n, m):
    with pytest.raises(ConfigurationError):
        layout(n, m)


def test_k4_matchings_covered():
    lay = layout(8, 4)
    seen = set()
    for t in range(3):
        zones = allocation_at(lay, t)
        pairs = frozenset(
            frozenset({g for g, grp in enumerate(lay.groups) if grp[0] in z})
            for z in zones)
        seen.add(pairs)
    assert len(seen) == 3  # the 3 perfect matchings of K_4


def test_partition_validity_and_periodicity():
    for n, m in valid_configs():
        lay = layout(n, m)
        period = coverage_slots(n, m)
        for t in range(period + 3):
            zones = allocation_at(lay, t)
            assert len(zones) == n // m
            assert sorted(p for z in zones for p in z) == list(range(n))
            assert all(len(z) == m for z in zones)
        for t in range(period):
            assert allocation_at(lay, t) == allocation_at(lay, t + period)


def test_every_pair_covered_within_period():
    for n, m in valid_configs():
        lay = layout(n, m)
        period = coverage_slots(n, m)
        met = set()
        for t in range(period):
            for z in allocation_at(lay, t):
                met.update(itertools.combinations(z, 2))
        assert len(met) == n * (n - 1) // 2, (n, m)


def test_group_pairs_once_per_period():
    for n, m in [(24, 4), (48, 4), (24, 6), (16, 8)]:
        lay = layout(n, m)
        g = len(lay.groups)
        period = coverage_slots(n, m)
        seen = []
        for t in range(period):
            for z in allocation_at(lay, t):
                groups = tuple(sorted({i for i, grp in enumerate(lay.groups)
                                       if grp[0] in z}))
                seen.append(groups)
        assert len(seen) == len(set(seen)) == g * (g - 1) // 2


def test_coverage_slots_values():
    assert coverage_slots(8, 4) == 3
    assert coverage_slots(6, 6) == 1
    assert coverage_slots(24, 4) == 11
    assert coverage_slots(48, 4) == 23


def test_handshake_lower_bound():
    for n, m in valid_configs():
        assert coverage_slots(n, m) >= math.ceil((n - 1) / (m - 1))


def test_allocation_count():
    assert allocation_count(4, 2) == 6
    assert allocation_count(6, 6) == 1
    assert allocation_count(6, 3) == 20  # only via the raw formula
    assert allocation_count(8, 2) == math.factorial(8) // 16


def test_zone_of():
    lay = layout(8, 4)
    zones = allocation_at(lay, 1)
    for peer in range(8):
        assert peer in zones[zone_of(zones, peer)]
