"""Certified grid checks of operator identities in two variables (u, v).

Each side of an identity is a product of two-site factors whose entries are
rational functions of an argument t, and t is either an affine
(``t = a u + b v + c``) or a monomial (``t = u^a v^b c``) function of the
grid variables.  Rather than evaluating near poles, every factor is replaced
by its polynomial numerator, so both sides become polynomial matrices whose
degree in each variable is known.  Agreement on a product grid one point
larger than that degree in each variable proves the identity.

At each grid point the integer numerator products are compared modulo
several primes; the primes are chosen so their product exceeds a bound on the
entries, which makes the comparison exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm, prod
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .accel import PRIMES, chain_mod
from .linalg import PolyForm, TensorContext, _site_gather


@dataclass(frozen=True)
class Arg:
    """Argument of a factor as a function of the grid variables."""

    mode: str  # "add" or "mul"
    cu: int = 0
    cv: int = 0
    c0: Fraction = Fraction(0)

    @classmethod
    def add(cls, cu=0, cv=0, c0=0) -> "Arg":
        return cls("add", cu, cv, Fraction(c0))

    @classmethod
    def mul(cls, cu=0, cv=0, c0=1) -> "Arg":
        return cls("mul", cu, cv, Fraction(c0))

    def __call__(self, u: Fraction, v: Fraction) -> Fraction:
        if self.mode == "add":
            return self.cu * u + self.cv * v + self.c0
        return u ** self.cu * v ** self.cv * self.c0


CONST = Arg.add()


@dataclass(frozen=True)
class Factor:
    sites: tuple[int, int]
    form: PolyForm
    arg: Arg = CONST

    @property
    def degree(self) -> int:
        return len(self.form.coeffs) - 1

    def key(self):
        return (self.form.den.coeffs, self.form.scale, self.arg)


@dataclass
class IdentityReport:
    passed: bool
    points_checked: int
    grid: tuple[int, int]
    degree_bound: tuple[int, int]
    primes_used: int
    counterexample: tuple[Fraction, Fraction] | None = None
    detail: str = ""
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "passed": self.passed,
            "points_checked": self.points_checked,
            "grid": list(self.grid),
            "degree_bound": list(self.degree_bound),
            "primes_used": self.primes_used,
            "counterexample": None if self.counterexample is None
            else [str(self.counterexample[0]), str(self.counterexample[1])],
        }
        if self.detail:
            out["detail"] = self.detail
        out.update(self.extra)
        return out


def _degree(side: Sequence[Factor]) -> tuple[int, int]:
    du = sum(f.degree for f in side if f.arg.cu)
    dv = sum(f.degree for f in side if f.arg.cv)
    return du, dv


def _den_degree(side: Sequence[Factor]) -> tuple[int, int]:
    du = sum(f.form.den.degree for f in side if f.arg.cu)
    dv = sum(f.form.den.degree for f in side if f.arg.cv)
    return du, dv


class _Structure:
    """Sparse gather tables for every factor, with rows permuted into blocks."""

    def __init__(self, ctx: TensorContext, factors: Sequence[Factor]):
        d, n, D = ctx.d, ctx.n, ctx.dim
        dd = d * d
        tables = []
        edges_r, edges_c = [np.arange(D)], [np.arange(D)]
        for f in factors:
            pattern = reduce(np.logical_or, [c != 0 for c in f.form.coeffs]).astype(bool)
            groups, offsets = _site_gather(d, n, *f.sites)
            per_row = [[] for _ in range(D)]
            for ell in range(dd):
                rows, base = groups[ell]
                for m in range(dd):
                    if pattern[ell, m]:
                        srcs = base + offsets[m]
                        for r, s in zip(rows, srcs):
                            per_row[r].append((int(s), ell * dd + m))
                        edges_r.append(rows)
                        edges_c.append(srcs)
            tables.append(per_row)
        rr = np.concatenate(edges_r)
        cc = np.concatenate(edges_c)
        graph = coo_matrix((np.ones(len(rr)), (rr, cc)), shape=(D, D))
        ncomp, labels = connected_components(graph, directed=False)
        order = np.lexsort((np.arange(D), labels))
        pos = np.empty(D, dtype=np.int64)
        pos[order] = np.arange(D)
        self.order = order
        sizes = np.bincount(labels, minlength=ncomp)
        comp_sorted = labels[order]
        starts = np.flatnonzero(np.r_[True, comp_sorted[1:] != comp_sorted[:-1]])
        self.bstart = starts.astype(np.int64)
        self.bend = np.r_[starts[1:], D].astype(np.int64)
        assert int(sizes.max()) == int((self.bend - self.bstart).max())
        K = max(1, max((len(x) for t in tables for x in t), default=1))
        F = len(factors)
        self.src = np.empty((F, K, D), dtype=np.int64)
        self.lidx = np.full((F, K, D), -1, dtype=np.int64)
        for fi, per_row in enumerate(tables):
            for r in range(D):
                pr = pos[r]
                self.src[fi, :, pr] = pr
                for k, (s, li) in enumerate(per_row[r]):
                    self.src[fi, k, pr] = pos[s]
                    self.lidx[fi, k, pr] = li
        self.block_sizes = sorted((self.bend - self.bstart).tolist(), reverse=True)


def _integer_local(form: PolyForm, t: Fraction) -> tuple[np.ndarray, Fraction]:
    """Numerator matrix at t as (integer array, rational multiplier)."""
    val = form.value(t)
    flat = [Fraction(x) for x in val.flat]
    den = reduce(lcm, (x.denominator for x in flat), 1)
    ints = np.array([int(x * den) for x in flat], dtype=object).reshape(val.shape)
    return ints, Fraction(1, den)


def _inf_norm(a: np.ndarray) -> int:
    return max(sum(abs(int(x)) for x in row) for row in a) if a.size else 0


def check_identity(ctx: TensorContext, lhs: Sequence[Factor], rhs: Sequence[Factor],
                   grid: tuple[int, int] | None = None,
                   backend: str | None = None) -> IdentityReport:
    """Decide lhs == rhs as rational-function identities in (u, v).

    ``grid`` gives the number of points per variable; it must exceed the
    degree bound, which is the default.
    """
    same_dens = sorted(map(repr, (f.key() for f in lhs))) == sorted(map(repr, (f.key() for f in rhs)))
    dl, dr = _degree(lhs), _degree(rhs)
    if same_dens:
        bound = (max(dl[0], dr[0]), max(dl[1], dr[1]))
    else:
        el, er = _den_degree(lhs), _den_degree(rhs)
        bound = (max(dl[0] + er[0], dr[0] + el[0]), max(dl[1] + er[1], dr[1] + el[1]))
    need = (bound[0] + 1, bound[1] + 1)
    if grid is None:
        grid = need
    if grid[0] < need[0] or grid[1] < need[1]:
        raise ValueError(f"grid {grid} too small for degree bound {bound}")
    struct = _Structure(ctx, list(lhs) + list(rhs))
    nl = len(lhs)
    points = 0
    max_primes = 0
    for iu in range(grid[0]):
        for iv in range(grid[1]):
            u, v = Fraction(iu + 1), Fraction(iv + 1)
            mats, mults, norms = [], [], []
            for f in list(lhs) + list(rhs):
                t = f.arg(u, v)
                ints, mult = _integer_local(f.form, t)
                mats.append(ints)
                mults.append(mult * f.form.scale)
                norms.append(_inf_norm(ints))
            alpha = prod(mults[:nl], start=Fraction(1))
            beta = prod(mults[nl:], start=Fraction(1))
            if not same_dens:
                alpha /= prod((f.form.den(f.arg(u, v)) for f in lhs), start=Fraction(1))
                beta /= prod((f.form.den(f.arg(u, v)) for f in rhs), start=Fraction(1))
            # alpha X_L == beta X_R  <=>  A X_L == B X_R with integers A, B
            A = alpha.numerator * beta.denominator
            B = beta.numerator * alpha.denominator
            if A == 0 and B == 0:
                points += 1
                continue
            bound_val = abs(A) * prod(norms[:nl], start=1) + abs(B) * prod(norms[nl:], start=1)
            modulus = 1
            used = 0
            ok = True
            for p in PRIMES:
                lv = np.array([[int(x) % p for x in m.flat] for m in mats], dtype=np.int64)
                left = chain_mod(struct.src[:nl], struct.lidx[:nl], lv[:nl],
                                 struct.bstart, struct.bend, p, backend)
                right = chain_mod(struct.src[nl:], struct.lidx[nl:], lv[nl:],
                                  struct.bstart, struct.bend, p, backend)
                diff = ((A % p) * left - (B % p) * right) % p
                used += 1
                if diff.any():
                    ok = False
                    break
                modulus *= p
                if modulus > bound_val:
                    break
            else:
                raise RuntimeError("prime list exhausted before the bound was met")
            max_primes = max(max_primes, used)
            points += 1
            if not ok:
                return IdentityReport(False, points, grid, bound, max_primes, (u, v))
    return IdentityReport(True, points, grid, bound, max_primes)
