"""The cyclic zone schedule: coverage, period, and exposure growth.

Run: python demos/zone_schedule.py
"""

from zoned_ledger.adversary import dynamic_exposure_scan
from zoned_ledger.zones import (allocation_at, allocation_count,
                                coverage_slots, layout)

n, m = 24, 4
lay = layout(n, m)
period = coverage_slots(n, m)
print(f"n={n}, m={m}: {n // m} zones per slot, "
      f"{allocation_count(n, m)} possible assignments, period {period}")
for t in range(4):
    print(f"  slot {t}: {allocation_at(lay, t)}")
print("  ...")
print(f"  slot {period} repeats slot 0: "
      f"{allocation_at(lay, period) == allocation_at(lay, 0)}")

print()
print("an adversary holding 3 full slot-0 zones must keep growing:")
initial = {p for zone in allocation_at(lay, 0)[:3] for p in zone}
per_slot = dynamic_exposure_scan(n, m, initial, period)
running = len(initial)
for t, fresh in enumerate(per_slot, start=1):
    running += fresh
    print(f"  slot {t}: +{fresh} peers forced, {running}/{n} total")
    if running == n:
        break
