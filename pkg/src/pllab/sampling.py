"""Seeded sampling helpers.

Every stochastic search in the package derives its generator from an integer
seed plus a stream label, so identical jobs reproduce identical numbers
regardless of evaluation order.
"""

from __future__ import annotations

import os
import zlib
from concurrent.futures import ThreadPoolExecutor

import numpy as np

__all__ = [
    "make_rng",
    "random_complex",
    "random_unit",
    "random_orthonormal",
    "thread_count",
    "parallel_map",
]


def make_rng(seed: int, *stream) -> np.random.Generator:
    """Deterministic generator for (seed, stream...).

    Stream labels are hashed with crc32, not the builtin hash, so the
    generator sequence is identical across interpreter runs.
    """
    entropy = [int(seed) & 0xFFFFFFFF] + [zlib.crc32(repr(s).encode()) for s in stream]
    return np.random.default_rng(entropy)


def random_complex(rng, *shape, real: bool = False) -> np.ndarray:
    z = rng.standard_normal(shape)
    if not real:
        z = z + 1j * rng.standard_normal(shape)
    return np.asarray(z, dtype=complex)


def random_unit(rng, d: int, real: bool = False) -> np.ndarray:
    v = random_complex(rng, d, real=real)
    n = np.linalg.norm(v)
    while n < 1e-12:
        v = random_complex(rng, d, real=real)
        n = np.linalg.norm(v)
    return v / n


def random_orthonormal(rng, d: int, k: int, real: bool = False) -> np.ndarray:
    """d x k matrix with orthonormal columns (Haar-ish via QR)."""
    if k > d:
        raise ValueError("cannot fit more orthonormal vectors than the dimension")
    g = random_complex(rng, d, k, real=real)
    q, r = np.linalg.qr(g)
    # fix the phase so the distribution does not depend on the QR convention
    ph = np.diagonal(r).copy()
    ph = np.where(np.abs(ph) > 0, ph / np.abs(ph), 1.0)
    return q * np.conj(ph)[None, :]


def thread_count() -> int:
    """Worker count from the PLLAB_THREADS environment variable (default 1)."""
    raw = os.environ.get("PLLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def parallel_map(fn, items) -> list:
    """Map preserving order; runs threaded when PLLAB_THREADS > 1.

    Results are identical either way: every work item must derive its own
    rng stream, so scheduling order cannot leak into the numbers.
    """
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
