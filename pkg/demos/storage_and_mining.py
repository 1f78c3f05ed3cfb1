"""Per-peer storage cost and proof-of-work cost, measured vs formula.

Run: python demos/storage_and_mining.py
"""

from zoned_ledger.ledger import storage_cost_formula
from zoned_ledger.mining import (DifficultyTarget, mining_trials,
                                 scheme_cost_comparison)

print("per-peer storage (bits), q=1024-bit blocks, p=256-bit hashes:")
print("  m   full copy  zone coded  saved")
for m in (1, 2, 4, 8, 16):
    baseline, distributed, gain = storage_cost_formula(1024, 256, m)
    print(f"  {m:<3} {baseline:<10g} {distributed:<11.1f} {gain:.1f}")

print()
print("mining tries vs the urn law (64-bit hash, 32-bit nonce space):")
print("  fraction    runs  mean tries  expected")
for k in (4, 6, 8):
    target = DifficultyTarget(64, 2**-k)
    stats = mining_trials(target, 32, runs=3000, seed=k)
    print(f"  2^-{k:<9}{stats['runs']:<6}{stats['mean_tries']:<12.2f}"
          f"{stats['law']:.2f}")

print()
out = scheme_cost_comparison(n=24, m=4, p_bits=64, pprime_fraction=2**-8,
                             runs=500, seed=0)
print(f"committing one block: proof of work needs "
      f"{out['pow_mean_hash_evals']:.0f} hash evaluations on average,")
print(f"the zone-coded scheme needs {out['scheme_hash_evals']} hash plus "
      f"{out['scheme_share_evaluations']} share evaluations")
