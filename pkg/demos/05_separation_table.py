"""
A family separating the two tensor norms
========================================

V places the k-th basis diamond on the k-th diagonal pair of an n x n
system.  Its pl norm grows like n while its l norm grows like sqrt(n), so
the ratio sqrt(n) certifies that no constant relates the two norms.  Both
brackets collapse to the exact values, certificates included.
"""

import time

import numpy as np

from pllab import Quantization, l_norm_bracket, pl_norm_bracket
from pllab.suites import v_example

print(f"{'n':>3} {'pl lower':>12} {'pl upper':>12} {'l lower':>12} {'l upper':>12} "
      f"{'ratio':>8} {'secs':>6}")
for n in range(1, 7):
    E = F = Quantization.hilbert(n)
    V = v_example(n)
    t0 = time.monotonic()
    pl = pl_norm_bracket(E, F, V, budget=200)
    l = l_norm_bracket(E, F, V, budget=200)
    dt = time.monotonic() - t0
    ratio = pl.lower / l.upper
    print(f"{n:>3} {pl.lower:>12.9f} {pl.upper:>12.9f} {l.lower:>12.9f} "
          f"{l.upper:>12.9f} {ratio:>8.4f} {dt:>6.2f}")
    assert abs(pl.lower - n) < 1e-8 and abs(l.upper - np.sqrt(n)) < 1e-8

print("\nratio matches sqrt(n): separation is unbounded")
