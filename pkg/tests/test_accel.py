import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ybfuse import accel
from ybfuse.kernels import KernelSpec, base_ybe_check, r_matrix, ybe_check_local
from ybfuse.suites import _mutate


def is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def test_primes():
    assert all(is_prime(p) and p < 2 ** 31 for p in accel.PRIMES)
    assert len(set(accel.PRIMES)) == len(accel.PRIMES)


def random_chain(rng, F, D, K, blocks):
    """Gather tables for F sparse factors, rows confined to contiguous blocks."""
    bounds = np.linspace(0, D, blocks + 1).astype(np.int64)
    bstart, bend = bounds[:-1], bounds[1:]
    src = np.empty((F, K, D), dtype=np.int64)
    lidx = np.full((F, K, D), -1, dtype=np.int64)
    lvals = rng.integers(0, 2 ** 31 - 1, size=(F, 6), dtype=np.int64)
    for f in range(F):
        for s, e in zip(bstart, bend):
            for r in range(s, e):
                src[f, :, r] = r
                count = rng.integers(0, K + 1)
                for k in range(count):
                    src[f, k, r] = rng.integers(s, e)
                    lidx[f, k, r] = rng.integers(0, 6)
    return src, lidx, lvals, bstart, bend


def dense_reference(src, lidx, lvals, p):
    F, K, D = src.shape
    out = np.eye(D, dtype=object)
    for f in range(F - 1, -1, -1):
        M = np.zeros((D, D), dtype=object)
        for r in range(D):
            for k in range(K):
                if lidx[f, k, r] >= 0:
                    M[r, src[f, k, r]] += int(lvals[f, lidx[f, k, r]])
        out = M.dot(out)
    return (out % p).astype(np.int64)


@pytest.mark.parametrize("backend", ["numpy", "numba"])
@given(seed=st.integers(0, 2 ** 32 - 1), blocks=st.integers(1, 3))
def test_chain_matches_dense(backend, seed, blocks):
    rng = np.random.default_rng(seed)
    src, lidx, lvals, bstart, bend = random_chain(rng, 3, 9, 3, blocks)
    p = accel.PRIMES[seed % len(accel.PRIMES)]
    got = accel.chain_mod(src, lidx, lvals, bstart, bend, p, backend=backend)
    assert np.array_equal(got, dense_reference(src, lidx, lvals, p))


def test_env_flag(monkeypatch):
    monkeypatch.setenv("YBFUSE_BACKEND", "numpy")
    assert accel.selected_backend() == "numpy"
    monkeypatch.setenv("YBFUSE_BACKEND", "numba")
    assert accel.selected_backend() == ("numba" if accel.HAVE_NUMBA else "numpy")


@pytest.mark.parametrize("k", [KernelSpec("yang", 2), KernelSpec("super-hecke", 1, 1, q=3)])
def test_backends_agree_on_checks(k):
    a = base_ybe_check(k, backend="numpy")
    b = base_ybe_check(k, backend="numba")
    assert a.passed and b.passed
    assert a.to_json() == b.to_json()
    bad = _mutate(r_matrix(k))
    ra = ybe_check_local(bad, k.d, k.convention, backend="numpy")
    rb = ybe_check_local(bad, k.d, k.convention, backend="numba")
    assert not ra.passed and ra.counterexample == rb.counterexample
