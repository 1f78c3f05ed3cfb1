"""Recovery probability under random peer inactivity vs the closed form.

Run: python demos/availability_sweep.py
"""

from zoned_ledger.adversary import (availability_bounds,
                                    availability_closed_form,
                                    availability_trial, dos_tolerance)

n, m, trials = 64, 4, 100_000

print(f"n={n}, m={m}: {dos_tolerance(n, m)} zones, "
      f"one outage per zone tolerated")
print("  rho   empirical  closed form  failure bound")
for rho in (0.05, 0.1, 0.2, 0.4, 0.6):
    s = availability_trial(n, m, rho, trials, seed=int(rho * 100))
    p = availability_closed_form(n, m, rho)
    _, failure = availability_bounds(n, m, rho)
    print(f"  {rho:.2f}  {s.estimate:.5f}    {p:.5f}      {failure:.2e}")
