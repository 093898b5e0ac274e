"""
One element, every quantization
===============================

A quantization assigns a norm to each amplification H (x) E of a base
space.  The same coefficient matrix can be measured in all of them; minimal
and maximal quantizations of a common base bracket everything in between.
"""

import numpy as np

from pllab import BaseNorm, Quantization, amp_norm

rng = np.random.default_rng(1)
U = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))

base = BaseNorm.euclidean(3)
kinds = [
    ("min (injective)", Quantization.min(base)),
    ("hilbert (Frobenius)", Quantization.hilbert(3)),
    ("max (projective)", Quantization.max(base)),
]

print("element over a euclidean base, three quantizations:")
for name, q in kinds:
    nv = amp_norm(q, U, budget=150)
    tag = "exact" if nv.exact else f"bracket [{nv.lower:.12f}, {nv.value:.12f}]"
    print(f"  {name:22s} {nv.value:.12f}  ({tag}, {nv.method})")

# the sandwich is a theorem: min <= anything <= max over the same base
vals = [amp_norm(q, U, budget=150).value for _, q in kinds]
assert vals[0] <= vals[1] <= vals[2] + 1e-12

# an L_p combination glues pointwise norms; p = 1 sums, p = inf takes a sup
w = np.array([1.0, 0.5])
inner = Quantization.hilbert(3)
W = rng.standard_normal((2, 6)) + 1j * rng.standard_normal((2, 6))
for p in (1.0, 2.0, np.inf):
    q = Quantization.lp(p, w, inner=inner)
    print(f"  L_{p} of two Frobenius points: {amp_norm(q, W).value:.12f}")

# concrete quantizations measure the block operator built from generators
paulis = [
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
]
qc = Quantization.concrete(paulis)
print("  concrete (Pauli span):", amp_norm(qc, U).value)

# every descriptor serializes to plain JSON and back
q = Quantization.tensor_p(BaseNorm.lp(1.0, weights=[1.0, 2.0]), inner)
assert Quantization.from_dict(q.to_dict()).to_dict() == q.to_dict()
print("serialization round trip ok:", q.to_dict()["kind"])
