"""Dense exact matrices, tensor-site operators and subspace restriction.

Basis vectors of V^{(x)n} are ordered row-major: e_{a_1} (x) ... (x) e_{a_n}
has index sum a_k d^(n-k), so site 1 is the most significant digit, matching
:func:`kron`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import comb, lcm
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateBasis,
    DivisionByZero,
    GenuineSingularity,
    InvalidSites,
    PoleAtEvaluationPoint,
    SizeMismatch,
    SubspaceNotInvariant,
)
from .exact import (
    Polynomial,
    RationalFunction,
    as_rational,
    format_scalar,
    scalar_from_json,
    scalar_to_json,
)


@dataclass(frozen=True)
class TensorContext:
    """Local dimension ``d`` and number of tensor sites ``n``."""

    d: int
    n: int

    @property
    def dim(self) -> int:
        return self.d ** self.n

    def index(self, word: Sequence[int]) -> int:
        """Row-major index of e_{w_1} (x) ... (x) e_{w_n}, letters 0-based."""
        idx = 0
        for a in word:
            idx = idx * self.d + a
        return idx

    def word(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            index, a = divmod(index, self.d)
            out.append(a)
        return tuple(reversed(out))


def _norm_entry(x):
    if isinstance(x, (Fraction, RationalFunction)):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction(x, _reduced=True)
    return as_rational(x)


def _object_array(rows: int, cols: int, fill=Fraction(0)) -> np.ndarray:
    a = np.empty((rows, cols), dtype=object)
    a.fill(fill)
    return a


class ExactMatrix:
    """Dense matrix over Q or over Q(t), backed by a numpy object array."""

    __slots__ = ("a",)

    def __init__(self, data):
        if isinstance(data, ExactMatrix):
            a = data.a
        elif isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
            a = data
        else:
            rows = [list(r) for r in data]
            width = len(rows[0]) if rows else 0
            if any(len(r) != width for r in rows):
                raise SizeMismatch("ragged matrix rows")
            a = _object_array(len(rows), width)
            for i, r in enumerate(rows):
                for j, x in enumerate(r):
                    a[i, j] = _norm_entry(x)
        self.a = a

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "ExactMatrix":
        m = object.__new__(cls)
        m.a = a
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        return cls._wrap(_object_array(rows, rows if cols is None else cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        a = _object_array(n, n)
        for i in range(n):
            a[i, i] = Fraction(1)
        return cls._wrap(a)

    @classmethod
    def from_function(cls, rows: int, cols: int, fn: Callable[[int, int], object]) -> "ExactMatrix":
        a = _object_array(rows, cols)
        for i in range(rows):
            for j in range(cols):
                a[i, j] = _norm_entry(fn(i, j))
        return cls._wrap(a)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __getitem__(self, key):
        """``m[i, j]`` is an entry; any slice keeps the result two-dimensional."""
        i, j = key
        out = self.a[i, j]
        if not isinstance(out, np.ndarray):
            return out
        if isinstance(i, (int, np.integer)):
            out = out[np.newaxis, :]
        elif isinstance(j, (int, np.integer)):
            out = out[:, np.newaxis]
        return ExactMatrix._wrap(out)

    def entries(self) -> list:
        return list(self.a.ravel())

    def is_symbolic(self) -> bool:
        return any(isinstance(x, RationalFunction) and not x.is_constant() for x in self.a.flat)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise SizeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0:
            return ExactMatrix.zeros(self.rows, other.cols)
        return ExactMatrix._wrap(self.a @ other.a)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise SizeMismatch("shape mismatch in addition")
        return ExactMatrix._wrap(self.a + other.a)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise SizeMismatch("shape mismatch in subtraction")
        return ExactMatrix._wrap(self.a - other.a)

    def __neg__(self):
        return ExactMatrix._wrap(-self.a)

    def scale(self, c) -> "ExactMatrix":
        c = _norm_entry(c)
        return ExactMatrix._wrap(self.a * c)

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self.a.T.copy())

    def map(self, fn) -> "ExactMatrix":
        out = _object_array(self.rows, self.cols)
        for idx, x in np.ndenumerate(self.a):
            out[idx] = fn(x)
        return ExactMatrix._wrap(out)

    def evaluate(self, x) -> "ExactMatrix":
        """Evaluate every rational-function entry at ``x``."""
        x = as_rational(x)
        return self.map(lambda e: e(x) if isinstance(e, RationalFunction) else e)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.a.flat)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(x == y for x, y in zip(self.a.flat, other.a.flat))

    def __hash__(self):
        return hash((self.shape, tuple(self.a.flat)))

    def is_scalar(self):
        """Return c if this is c times the identity, else None."""
        if self.rows != self.cols:
            return None
        c = self.a[0, 0] if self.rows else Fraction(0)
        for (i, j), x in np.ndenumerate(self.a):
            if (i == j and x != c) or (i != j and x != 0):
                return None
        return c

    def inverse(self) -> "ExactMatrix":
        """Gauss-Jordan inverse over Q or Q(t)."""
        n = self.rows
        if n != self.cols:
            raise SizeMismatch("inverse of a non-square matrix")
        a = np.concatenate([self.a.copy(), ExactMatrix.identity(n).a], axis=1)
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r, col] != 0), None)
            if piv is None:
                raise DivisionByZero("singular matrix")
            if piv != col:
                a[[col, piv]] = a[[piv, col]]
            inv = 1 / a[col, col] if isinstance(a[col, col], RationalFunction) else Fraction(1) / a[col, col]
            a[col] = a[col] * inv
            for r in range(n):
                if r != col and a[r, col] != 0:
                    a[r] = a[r] - a[r, col] * a[col]
        return ExactMatrix._wrap(a[:, n:].copy())

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [scalar_to_json(x) for x in self.a.flat],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExactMatrix":
        r, c = obj["rows"], obj["cols"]
        ents = [scalar_from_json(e) for e in obj["entries"]]
        if len(ents) != r * c:
            raise SizeMismatch("entry count does not match shape")
        a = _object_array(r, c)
        for k, x in enumerate(ents):
            a[k // c, k % c] = x
        return cls._wrap(a)

    def pretty(self, var: str = "t") -> str:
        cells = [[format_scalar(x, var) for x in row] for row in self.a]
        width = max((len(s) for row in cells for s in row), default=1)
        return "\n".join("[ " + "  ".join(s.rjust(width) for s in row) + " ]" for row in cells)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product with row index i_a * rows_b + i_b."""
    out = np.multiply.outer(a.a, b.a).transpose(0, 2, 1, 3)
    return ExactMatrix._wrap(out.reshape(a.rows * b.rows, a.cols * b.cols))


def hstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    return ExactMatrix._wrap(np.concatenate([m.a for m in mats], axis=1))


def _check_perm(perm: Sequence[int], n: int) -> tuple[int, ...]:
    p = tuple(perm)
    if sorted(p) != list(range(1, n + 1)):
        raise InvalidSites(f"{p} is not a permutation of 1..{n}")
    return p


def perm_operator(ctx: TensorContext, perm: Sequence[int]) -> ExactMatrix:
    """0/1 matrix of x_1 (x) ... (x) x_n -> x_{pi(1)} (x) ... (x) x_{pi(n)}.

    ``perm`` is one-line notation, ``perm[k-1] = pi(k)``.  With this literal
    rule P_pi P_sigma = P_{sigma pi}; use :func:`perm_representation` for the
    homomorphic version.
    """
    p = _check_perm(perm, ctx.n)
    D = ctx.dim
    a = _object_array(D, D)
    for col in range(D):
        w = ctx.word(col)
        image = tuple(w[p[k] - 1] for k in range(ctx.n))
        a[ctx.index(image), col] = Fraction(1)
    return ExactMatrix._wrap(a)


def perm_inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p - 1] = i + 1
    return tuple(inv)


def perm_representation(ctx: TensorContext, perm: Sequence[int]) -> ExactMatrix:
    """Homomorphic action: a transposition (i,j) maps to P_{ij} and products map to products."""
    return perm_operator(ctx, perm_inverse(_check_perm(perm, ctx.n)))


def swap_matrix(d: int) -> ExactMatrix:
    """P on V (x) V."""
    return perm_operator(TensorContext(d, 2), (2, 1))


@lru_cache(maxsize=None)
def _site_gather(d: int, n: int, i: int, j: int):
    """Row groups for a two-site operator on sites (i, j).

    Returns, for each local row index l = r_i * d + r_j, the global rows with
    that local index and the base index with both site digits cleared.
    """
    si, sj = d ** (n - i), d ** (n - j)
    rows = np.arange(d ** n)
    ri = (rows // si) % d
    rj = (rows // sj) % d
    base = rows - ri * si - rj * sj
    local = ri * d + rj
    groups = []
    for ell in range(d * d):
        sel = rows[local == ell]
        groups.append((sel, base[sel]))
    offsets = [a * si + b * sj for a in range(d) for b in range(d)]
    return groups, offsets


def _validate_sites(n: int, i: int, j: int):
    if i == j or not (1 <= i <= n) or not (1 <= j <= n):
        raise InvalidSites(f"sites ({i}, {j}) invalid for {n} tensor factors")


def apply_local_left(m: np.ndarray, d: int, n: int, i: int, j: int, local) -> np.ndarray:
    """Compute R_{ij} @ m without forming R_{ij}; ``local`` is a d^2 x d^2 array-like."""
    _validate_sites(n, i, j)
    groups, offsets = _site_gather(d, n, i, j)
    out = np.zeros(m.shape, dtype=m.dtype)
    if m.dtype == object:
        out.fill(0)
    local = np.asarray(local, dtype=object) if not isinstance(local, np.ndarray) else local
    dd = d * d
    for ell in range(dd):
        rows, base = groups[ell]
        acc = None
        for k in range(dd):
            w = local[ell, k]
            if w == 0:
                continue
            term = m[base + offsets[k]]
            term = term if w == 1 else term * w
            acc = term if acc is None else acc + term
        if acc is not None:
            out[rows] = acc
    return out


def apply_local_right(m: np.ndarray, d: int, n: int, i: int, j: int, local) -> np.ndarray:
    """Compute m @ R_{ij}."""
    local = np.asarray(local, dtype=object) if not isinstance(local, np.ndarray) else local
    return apply_local_left(m.T, d, n, i, j, local.T).T


def embed_pair(ctx: TensorContext, i: int, j: int, local: ExactMatrix) -> ExactMatrix:
    """R_{ij}: ``local`` acting on sites i and j (1-based, ordered), identity elsewhere."""
    _validate_sites(ctx.n, i, j)
    if local.shape != (ctx.d ** 2, ctx.d ** 2):
        raise SizeMismatch("local operator must be d^2 x d^2")
    return ExactMatrix._wrap(apply_local_left(ExactMatrix.identity(ctx.dim).a, ctx.d, ctx.n, i, j, local.a))


# -- fraction-free elimination -------------------------------------------------


def _integer_rows(a: np.ndarray) -> np.ndarray:
    """Scale each row of a rational object array to Python integers."""
    out = np.empty(a.shape, dtype=object)
    for r in range(a.shape[0]):
        den = reduce(lcm, (Fraction(x).denominator for x in a[r]), 1)
        out[r] = [int(Fraction(x) * den) for x in a[r]]
    return out


def _bareiss_pivots(a: np.ndarray) -> list[int]:
    """Pivot columns of an integer object matrix via fraction-free elimination."""
    a = a.copy()
    rows, cols = a.shape
    prev = 1
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = [k for k in range(r, rows) if a[k, c] != 0]
        if not nz:
            continue
        k = nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = a[r, c]
        if r + 1 < rows:
            below = a[r + 1:, c:]
            a[r + 1:, c:] = (below * piv - np.multiply.outer(below[:, 0], a[r, c:])) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def _generic_pivots(a: np.ndarray) -> list[int]:
    """Pivot columns by plain Gaussian elimination over a field (used for Q(t))."""
    a = a.copy()
    rows, cols = a.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        k = next((k for k in range(r, rows) if a[k, c] != 0), None)
        if k is None:
            continue
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = 1 / a[r, c]
        for k in range(r + 1, rows):
            if a[k, c] != 0:
                a[k, c:] = a[k, c:] - a[r, c:] * (a[k, c] * inv)
        pivots.append(c)
        r += 1
    return pivots


def _poles(m: ExactMatrix) -> set[Fraction]:
    """Rational roots are the only poles that can hit a rational point; collect denominators."""
    return {x.den for x in m.a.flat if isinstance(x, RationalFunction) and x.den.degree > 0}


def _random_regular_point(m: ExactMatrix, rng: random.Random) -> Fraction:
    dens = _poles(m)
    while True:
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**3))
        if all(d(x) != 0 for d in dens):
            return x


def pivot_columns(m: ExactMatrix, seed: int = 0) -> list[int]:
    """Pivot columns (0-based) of ``m``; rank is their count.

    Constant matrices use exact fraction-free elimination.  Rational-function
    matrices are evaluated at two seeded random points; if the two pivot sets
    disagree the elimination is redone symbolically over Q(t).
    """
    if m.rows == 0 or m.cols == 0:
        return []
    if not m.is_symbolic():
        const = m.a if not any(isinstance(x, RationalFunction) for x in m.a.flat) else m.map(
            lambda x: x.constant() if isinstance(x, RationalFunction) else x).a
        return _bareiss_pivots(_integer_rows(const))
    rng = random.Random(seed)
    first = _bareiss_pivots(_integer_rows(m.evaluate(_random_regular_point(m, rng)).a))
    second = _bareiss_pivots(_integer_rows(m.evaluate(_random_regular_point(m, rng)).a))
    if first == second:
        return first
    sym = m.map(lambda x: x if isinstance(x, RationalFunction) else RationalFunction.const(x))
    return _generic_pivots(sym.a)


def rank(m: ExactMatrix, seed: int = 0) -> int:
    return len(pivot_columns(m, seed))


@dataclass(frozen=True)
class ColumnBasis:
    rank: int
    pivots: tuple[int, ...]
    basis: ExactMatrix


def column_space_basis(m: ExactMatrix) -> ColumnBasis:
    """Pivot columns of the original matrix, each scaled so its first nonzero entry is 1."""
    piv = tuple(pivot_columns(m))
    if not piv:
        return ColumnBasis(0, piv, ExactMatrix.zeros(m.rows, 0))
    a = m.a[:, list(piv)].copy()
    for j in range(a.shape[1]):
        lead = next(x for x in a[:, j] if x != 0)
        a[:, j] = a[:, j] * (1 / lead)
    return ColumnBasis(len(piv), piv, ExactMatrix._wrap(a))


def left_inverse(basis: ExactMatrix) -> ExactMatrix:
    """L with L @ basis = Id, supported on a set of pivot rows of ``basis``."""
    r = basis.cols
    rows = pivot_columns(basis.T)
    if len(rows) != r:
        raise DegenerateBasis(f"basis has rank {len(rows)} < {r} columns")
    sub = ExactMatrix._wrap(basis.a[rows, :].copy())
    inv = sub.inverse()
    out = _object_array(r, basis.rows)
    out[:, rows] = inv.a
    return ExactMatrix._wrap(out)


def restrict_to_subspace(m, basis: ExactMatrix) -> ExactMatrix:
    """Matrix of ``m`` on span(basis), i.e. L m B, after verifying invariance.

    ``m`` is an :class:`ExactMatrix` or any object with ``apply(B)`` returning m @ B.
    """
    if basis.cols == 0:
        return ExactMatrix.zeros(0, 0)
    L = left_inverse(basis)
    mb = m @ basis if isinstance(m, ExactMatrix) else m.apply(basis)
    x = L @ mb
    if basis @ x != mb:
        raise SubspaceNotInvariant("image of the subspace leaves the subspace")
    return x


# -- polynomial matrices with a shared denominator -----------------------------


def _integerize(a: np.ndarray) -> tuple[np.ndarray, Fraction]:
    """Integer object array and scale with a == scale * ints."""
    vals = [Fraction(x) for x in a.flat]
    den = reduce(lcm, (v.denominator for v in vals), 1)
    ints = np.empty(a.shape, dtype=object)
    ints.flat[:] = [int(v * den) for v in vals]
    return ints, Fraction(1, den)


@dataclass(frozen=True)
class PolyForm:
    """Local operator written as scale * sum_k coeffs[k] t^k / den(t) with integer coeffs."""

    coeffs: tuple[np.ndarray, ...]
    scale: Fraction
    den: Polynomial

    @classmethod
    def from_matrix(cls, m: ExactMatrix) -> "PolyForm":
        ents = [x if isinstance(x, RationalFunction) else RationalFunction.const(x) for x in m.a.flat]
        den = reduce(lambda p, e: (p * e.den) // _gcd(p, e.den), ents, Polynomial((1,)))
        nums = [e.num * (den // e.den) for e in ents]
        deg = max((p.degree for p in nums), default=0)
        deg = max(deg, 0)
        raw = []
        for k in range(deg + 1):
            a = _object_array(*m.shape)
            a.flat[:] = [p.coeffs[k] if k < len(p.coeffs) else Fraction(0) for p in nums]
            raw.append(a)
        stacked = np.stack(raw)
        ints, scale = _integerize(stacked)
        return cls(tuple(ints[k] for k in range(deg + 1)), scale, den)

    def value(self, x) -> np.ndarray:
        """Numerator matrix sum_k coeffs[k] x^k (without scale or denominator)."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c.copy() if acc is None else acc * x + c
        return acc


def _gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    from .exact import poly_gcd

    return poly_gcd(a, b)


class PolyMatrix:
    """scale * sum_k coeffs[k] t^k / den(t) with integer coefficient matrices."""

    def __init__(self, coeffs: list[np.ndarray], scale: Fraction, den: Polynomial):
        self.coeffs = coeffs
        self.scale = scale
        self.den = den

    @classmethod
    def constant(cls, m: ExactMatrix) -> "PolyMatrix":
        ints, scale = _integerize(m.a)
        return cls([ints], scale, Polynomial((1,)))

    @property
    def shape(self):
        return self.coeffs[0].shape

    def _combine(self, factor: PolyForm, apply) -> "PolyMatrix":
        out: list = [None] * (len(self.coeffs) + len(factor.coeffs) - 1)
        for k, c in enumerate(self.coeffs):
            for l, f in enumerate(factor.coeffs):
                if not f.any():
                    continue
                term = apply(c, f)
                out[k + l] = term if out[k + l] is None else out[k + l] + term
        zero = np.zeros(self.shape, dtype=object)
        out = [zero.copy() if x is None else x for x in out]
        while len(out) > 1 and not out[-1].any():
            out.pop()
        return PolyMatrix(out, self.scale * factor.scale, self.den * factor.den)

    def left(self, d: int, n: int, sites: tuple[int, int], factor: PolyForm) -> "PolyMatrix":
        i, j = sites
        return self._combine(factor, lambda c, f: apply_local_left(c, d, n, i, j, f))

    def right(self, d: int, n: int, sites: tuple[int, int], factor: PolyForm) -> "PolyMatrix":
        i, j = sites
        return self._combine(factor, lambda c, f: apply_local_right(c, d, n, i, j, f))

    def to_exact(self) -> ExactMatrix:
        rows, cols = self.shape
        out = _object_array(rows, cols)
        cache: dict = {}
        for r in range(rows):
            for c in range(cols):
                key = tuple(k[r, c] for k in self.coeffs)
                val = cache.get(key)
                if val is None:
                    num = Polynomial([Fraction(v) * self.scale for v in key])
                    val = RationalFunction(num, self.den)
                    if val.is_constant():
                        val = val.constant()
                    cache[key] = val
                out[r, c] = val
        return ExactMatrix._wrap(out)

    def value_at(self, x, step=None) -> ExactMatrix:
        """Value at t = x after cancelling common factors entrywise.

        The denominator vanishes to order m at x; every entry's numerator
        must vanish to order m as well, and the value is the ratio of the
        order-m Taylor coefficients.  Otherwise the pole is genuine.
        """
        x = as_rational(x)
        dt = self.den.taylor(x, self.den.degree + 1)
        m = next(i for i, v in enumerate(dt) if v != 0)
        taylor = []
        for j in range(m + 1):
            acc = None
            for k in range(j, len(self.coeffs)):
                w = comb(k, j) * x ** (k - j)
                if w == 0:
                    continue
                term = self.coeffs[k] * w
                acc = term if acc is None else acc + term
            taylor.append(acc)
        for j in range(m):
            if taylor[j] is not None and any(v != 0 for v in taylor[j].flat):
                raise GenuineSingularity(step, x)
        top = taylor[m]
        if top is None:
            return ExactMatrix.zeros(*self.shape)
        factor = self.scale / dt[m]
        out = _object_array(*self.shape)
        out.flat[:] = [Fraction(v) * factor for v in top.flat]
        return ExactMatrix._wrap(out)


@dataclass(frozen=True)
class LocalFactor:
    """A two-site factor of an operator product."""

    sites: tuple[int, int]
    form: PolyForm

    @classmethod
    def of(cls, sites: tuple[int, int], local: ExactMatrix) -> "LocalFactor":
        return cls(tuple(sites), PolyForm.from_matrix(local))


class OperatorChain:
    """Ordered product F_1 F_2 ... F_m of two-site factors on V^{(x)n}."""

    def __init__(self, ctx: TensorContext, factors: Iterable[LocalFactor]):
        self.ctx = ctx
        self.factors = list(factors)
        for f in self.factors:
            _validate_sites(ctx.n, *f.sites)

    def apply_poly(self, b: ExactMatrix) -> PolyMatrix:
        pm = PolyMatrix.constant(b)
        for f in reversed(self.factors):
            pm = pm.left(self.ctx.d, self.ctx.n, f.sites, f.form)
        return pm

    def apply(self, b: ExactMatrix) -> ExactMatrix:
        """Product applied to a constant matrix, entries reduced in Q(t)."""
        return self.apply_poly(b).to_exact()

    def right_poly(self, a: ExactMatrix) -> PolyMatrix:
        """a @ F_1 ... F_m as a polynomial matrix."""
        pm = PolyMatrix.constant(a)
        for f in self.factors:
            pm = pm.right(self.ctx.d, self.ctx.n, f.sites, f.form)
        return pm

    def matrix(self) -> ExactMatrix:
        return self.apply(ExactMatrix.identity(self.ctx.dim))

    def evaluate(self, x) -> ExactMatrix:
        """Exact value at t = x; a factor pole raises PoleAtEvaluationPoint."""
        x = as_rational(x)
        m = ExactMatrix.identity(self.ctx.dim).a
        for f in reversed(self.factors):
            dv = f.form.den(x)
            if dv == 0:
                raise PoleAtEvaluationPoint(x)
            local = f.form.value(x) * (f.form.scale / dv)
            m = apply_local_left(m, self.ctx.d, self.ctx.n, f.sites[0], f.sites[1], local)
        return ExactMatrix._wrap(m)
