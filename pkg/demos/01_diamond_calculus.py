"""
Diamond products on graded truncations
======================================

The H slot behaves like a bosonic ladder: two truncations pair into one
through a diamond product that multiplies norms exactly.  Everything in the
package is built on this identity.
"""

import numpy as np

from pllab import (
    PairingMap,
    diamond_amp,
    diamond_op,
    diamond_vec,
    module_action,
    op_norm,
)

rng = np.random.default_rng(0)

# two vectors in small truncations of H
xi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
eta = rng.standard_normal(2) + 1j * rng.standard_normal(2)

d = diamond_vec(xi, eta)
print("||xi|| * ||eta|| =", np.linalg.norm(xi) * np.linalg.norm(eta))
print("||xi <> eta||    =", np.linalg.norm(d))

# operators intertwine: (a <> b)(xi <> eta) = a(xi) <> b(eta)
a = rng.standard_normal((3, 3))
b = rng.standard_normal((2, 2))
lhs = diamond_op(a, b) @ d
rhs = diamond_vec(a @ xi, b @ eta)
print("intertwining residual:", np.linalg.norm(lhs - rhs))
print("||a <> b|| = ||a|| ||b||:", op_norm(diamond_op(a, b)), op_norm(a) * op_norm(b))

# the pairing scheme is a basis bookkeeping choice; both orders give the
# same multiset of coefficients, hence the same norms
row = diamond_vec(xi, eta, PairingMap("row-major"))
col = diamond_vec(xi, eta, PairingMap("column-major"))
print("row-major and column-major norms:", np.linalg.norm(row), np.linalg.norm(col))

# amplified elements are H-valued rows over a base space; operators act on
# the H slot only and the action is contractive for every quantized norm
U = rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4))
contraction = rng.standard_normal((2, 2)) * 0.3
print("module action shape:", module_action(contraction, U).shape)
print("diamond of amplified elements shape:", diamond_amp(U, U).shape)
