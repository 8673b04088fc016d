"""Modular products of sparse two-site operators, the hot loop of grid identity checks.

Two interchangeable backends compute the same block-diagonal product mod p:
a numba-compiled loop and a vectorised numpy version.  Set
``YBFUSE_BACKEND=numpy`` to force the fallback; numba is used otherwise when
it imports.
"""

from __future__ import annotations

import os

import numpy as np

# primes below 2^31 so that a product of two residues fits in int64
PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
)

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def selected_backend() -> str:
    want = os.environ.get("YBFUSE_BACKEND", "numba").strip().lower()
    if want == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


def chain_mod_numpy(src, lidx, lvals, bstart, bend, p):
    """Product F_0 F_1 ... F_{F-1} mod p, block by block.

    ``src[f, k, r]`` is the k-th source row feeding row r of factor f and
    ``lidx[f, k, r]`` indexes its weight in ``lvals[f]`` (-1 for padding).
    Rows are ordered so that every block is a contiguous range.
    """
    F, K, D = src.shape
    out = np.zeros((D, D), dtype=np.int64)
    for s, e in zip(bstart, bend):
        m = np.eye(e - s, dtype=np.int64)
        for f in range(F - 1, -1, -1):
            sb = src[f, :, s:e] - s
            lb = lidx[f, :, s:e]
            w = np.where(lb >= 0, lvals[f][np.maximum(lb, 0)], 0)
            m = ((w[:, :, None] * m[sb]) % p).sum(axis=0) % p
        out[s:e, s:e] = m
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _chain_mod_numba(src, lidx, lvals, block_of, bstart, bend, p):
        F, K, D = src.shape
        m = np.zeros((D, D), dtype=np.int64)
        out = np.zeros((D, D), dtype=np.int64)
        for r in range(D):
            m[r, r] = 1
        for f in range(F - 1, -1, -1):
            for r in range(D):
                b = block_of[r]
                for c in range(bstart[b], bend[b]):
                    acc = 0
                    for k in range(K):
                        li = lidx[f, k, r]
                        if li < 0:
                            break
                        acc = (acc + (lvals[f, li] * m[src[f, k, r], c]) % p) % p
                    out[r, c] = acc
            m, out = out, m
        return m


def chain_mod(src, lidx, lvals, bstart, bend, p, backend: str | None = None):
    backend = backend or selected_backend()
    if backend == "numba":
        D = src.shape[2]
        block_of = np.empty(D, dtype=np.int64)
        for b, (s, e) in enumerate(zip(bstart, bend)):
            block_of[s:e] = b
        return _chain_mod_numba(src, lidx, lvals, block_of,
                                np.asarray(bstart, dtype=np.int64),
                                np.asarray(bend, dtype=np.int64), np.int64(p))
    return chain_mod_numpy(src, lidx, lvals, bstart, bend, p)
