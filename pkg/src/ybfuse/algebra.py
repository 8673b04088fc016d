"""Group algebra of S_n and Hecke algebra H_n(q) with fusion functions.

Permutations are one-line tuples, ``w[k-1] = w(k)``.  A product pi sigma
applies sigma first.  Coefficients are :class:`Fraction` or
:class:`RationalFunction` in one live variable t; consecutive evaluation
multiplies by the factors involving the next variable, reduces every
coefficient and substitutes.

Elements are built without the operator code of :mod:`ybfuse.fusion`, so
:func:`representation_consistency` compares two independent computations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .combinatorics import (
    as_tableau,
    contents,
    enumerate_syt,
    f_lambda,
    f_q_lambda,
    quantum_contents,
    shape_of,
)
from .errors import (
    GenuineSingularity,
    InvalidDeformationParameter,
    PoleAtEvaluationPoint,
    SizeMismatch,
    YBFuseError,
)
from .exact import RationalFunction, as_rational, format_scalar, scalar_to_json
from .fusion import f_of_tableau
from .kernels import KernelSpec, braid_generator, signed_swap
from .linalg import ExactMatrix, TensorContext, apply_local_left, perm_representation, rank

Perm = tuple[int, ...]
T = RationalFunction.var()


def _norm(x):
    if isinstance(x, RationalFunction):
        return x.constant() if x.is_constant() else x
    return as_rational(x)


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(p: Perm, s: Perm) -> Perm:
    """p s, with s applied first."""
    return tuple(p[i - 1] for i in s)


def transposition(n: int, i: int, j: int) -> Perm:
    w = list(range(1, n + 1))
    w[i - 1], w[j - 1] = j, i
    return tuple(w)


def simple(n: int, i: int) -> Perm:
    return transposition(n, i, i + 1)


def longest_perm(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def length(w: Perm) -> int:
    return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])


def reduced_word(w: Perm) -> list[int]:
    """Indices i_1..i_k with w = s_{i_1} ... s_{i_k}, k = length(w)."""
    w = list(w)
    word = []
    while True:
        pos = {v: k for k, v in enumerate(w)}
        for i in range(1, len(w)):
            if pos[i + 1] < pos[i]:
                word.append(i)
                w[pos[i]], w[pos[i + 1]] = i + 1, i
                break
        else:
            return word


def parse_cycles(n: int, cycles: Sequence[Sequence[int]]) -> Perm:
    """Cycle notation, rightmost cycle applied first."""
    out = identity_perm(n)
    for cyc in reversed(cycles):
        w = list(range(1, n + 1))
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            w[a - 1] = b
        out = compose(tuple(w), out)
    return out


# -- elements ------------------------------------------------------------------


@dataclass(frozen=True)
class _Element:
    n: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for w, c in self.coeffs.items():
            c = _norm(c)
            if c != 0:
                clean[tuple(w)] = c
        object.__setattr__(self, "coeffs", clean)

    def _like(self, coeffs: dict):
        raise NotImplementedError

    def _check(self, other):
        if type(other) is not type(self) or other.n != self.n:
            raise SizeMismatch("elements live in different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return self._like(out)

    def __neg__(self):
        return self._like({w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._like({w: x * c for w, x in self.coeffs.items()})

    def __eq__(self, other):
        return type(other) is type(self) and self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return not any(isinstance(c, RationalFunction) for c in self.coeffs.values())

    def coefficient(self, w) -> object:
        return self.coeffs.get(tuple(w), Fraction(0))

    def evaluate(self, x, step=None):
        out = {}
        for w, c in self.coeffs.items():
            if isinstance(c, RationalFunction):
                try:
                    c = c(x)
                except PoleAtEvaluationPoint:
                    raise GenuineSingularity(step, f"{x} on term {w}") from None
            out[w] = c
        return self._like(out)

    def terms(self) -> list:
        return sorted(self.coeffs.items())

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"perm": list(w), "coef": scalar_to_json(c)}
                                       for w, c in self.terms()]}

    def format(self, symbol: str = "") -> str:
        if not self.coeffs:
            return "0"
        parts = [f"({format_scalar(c)})*{symbol}{list(w)}" for w, c in self.terms()]
        return " + ".join(parts)


class SymGroupElement(_Element):
    """Element of the group algebra Q(t)[S_n]."""

    def _like(self, coeffs):
        return SymGroupElement(self.n, coeffs)

    @classmethod
    def one(cls, n: int) -> "SymGroupElement":
        return cls(n, {identity_perm(n): Fraction(1)})

    @classmethod
    def perm(cls, w: Sequence[int], c=1) -> "SymGroupElement":
        return cls(len(w), {tuple(w): c})

    def __mul__(self, other):
        if not isinstance(other, _Element):
            return self.scale(other)
        return sym_multiply(self, other)

    def __rmul__(self, c):
        return self.scale(c)


def sym_multiply(a: SymGroupElement, b: SymGroupElement) -> SymGroupElement:
    a._check(b)
    out: dict = {}
    for p, x in a.coeffs.items():
        for s, y in b.coeffs.items():
            w = compose(p, s)
            out[w] = out.get(w, 0) + x * y
    return SymGroupElement(a.n, out)


class HeckeElement(_Element):
    """Element of H_n(q) in the basis T_w."""

    q: Fraction

    def __init__(self, n: int, q, coeffs=None):
        object.__setattr__(self, "q", as_rational(q))
        if self.q in (0, 1, -1):
            raise InvalidDeformationParameter(f"q = {self.q} is not allowed")
        super().__init__(n, coeffs or {})

    def _like(self, coeffs):
        return HeckeElement(self.n, self.q, coeffs)

    def _check(self, other):
        super()._check(other)
        if other.q != self.q:
            raise SizeMismatch("elements have different q")

    def __eq__(self, other):
        return super().__eq__(other) and self.q == other.q

    def __hash__(self):
        return hash((self.q, super().__hash__()))

    @classmethod
    def one(cls, n: int, q) -> "HeckeElement":
        return cls(n, q, {identity_perm(n): Fraction(1)})

    @classmethod
    def basis(cls, n: int, q, w: Sequence[int], c=1) -> "HeckeElement":
        return cls(n, q, {tuple(w): c})

    @classmethod
    def generator(cls, n: int, q, i: int) -> "HeckeElement":
        return cls.basis(n, q, simple(n, i))

    def to_json(self) -> dict:
        out = super().to_json()
        out["q"] = str(self.q)
        return out

    def __mul__(self, other):
        if not isinstance(other, _Element):
            return self.scale(other)
        return hecke_multiply(self, other)

    def __rmul__(self, c):
        return self.scale(c)


def _sigma_left(i: int, x: HeckeElement) -> HeckeElement:
    """sigma_i T_w = T_{s_i w}, plus (q - 1/q) T_w when s_i w is shorter."""
    qd = x.q - 1 / x.q
    out: dict = {}
    for w, c in x.coeffs.items():
        pos_i, pos_j = w.index(i), w.index(i + 1)
        sw = tuple(i + 1 if v == i else i if v == i + 1 else v for v in w)
        out[sw] = out.get(sw, 0) + c
        if pos_j < pos_i:
            out[w] = out.get(w, 0) + qd * c
    return x._like(out)


def hecke_multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    a._check(b)
    total: dict = {}
    for w, c in a.coeffs.items():
        y = b
        for i in reversed(reduced_word(w)):
            y = _sigma_left(i, y)
        for v, x in y.coeffs.items():
            total[v] = total.get(v, 0) + c * x
    return HeckeElement(a.n, a.q, total)


def hecke_word(n: int, q, word: Iterable[int]) -> HeckeElement:
    out = HeckeElement.one(n, q)
    for i in reversed(list(word)):
        out = _sigma_left(i, out)
    return out


def hecke_inverse_generator(n: int, q, i: int) -> HeckeElement:
    """sigma_i^{-1} = sigma_i - (q - 1/q)."""
    q = as_rational(q)
    return HeckeElement.generator(n, q, i) - HeckeElement.one(n, q).scale(q - 1 / q)


def longest_word(n: int) -> list[int]:
    """(s_1)(s_2 s_1)...(s_{n-1} ... s_1)."""
    return [j for i in range(1, n) for j in range(i, 0, -1)]


def t_longest(n: int, q) -> HeckeElement:
    return hecke_word(n, q, longest_word(n))


def t_longest_inverse(n: int, q) -> HeckeElement:
    out = HeckeElement.one(n, q)
    for i in reversed(longest_word(n)):
        out = out * hecke_inverse_generator(n, q, i)
    return out


# -- fusion functions ----------------------------------------------------------


def baxterized(n: int, i: int, j: int, u) -> SymGroupElement:
    """1 - (i,j)/u."""
    return SymGroupElement(n, {identity_perm(n): 1, transposition(n, i, j): -1 / u})


def phi_consecutive(n: int, c: Sequence) -> SymGroupElement:
    """Phi(c_1, ..., c_n) with the variables substituted one at a time."""
    c = [as_rational(x) for x in c]
    if len(c) != n:
        raise SizeMismatch(f"need {n} contents, got {len(c)}")
    E = SymGroupElement.one(n)
    for m in range(1, n):
        for i in range(1, m + 1):
            E = E * baxterized(n, i, m + 1, c[i - 1] - T)
        E = E.evaluate(c[m], step=m + 1)
    return E


def phi_direct(n: int, u: Sequence) -> SymGroupElement:
    """Phi at pairwise distinct points, lexicographic product."""
    u = [as_rational(x) for x in u]
    E = SymGroupElement.one(n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            E = E * baxterized(n, i, j, u[i - 1] - u[j - 1])
    return E


def phi_tilde_direct(n: int, u: Sequence) -> SymGroupElement:
    """Bracket product of (s_j - 1/(u_l - u_{i+1})) at distinct points."""
    u = [as_rational(x) for x in u]
    E = SymGroupElement.one(n)
    for i in range(1, n):
        for l in range(1, i + 1):
            j = i + 1 - l
            E = E * SymGroupElement(n, {simple(n, j): 1,
                                        identity_perm(n): -1 / (u[l - 1] - u[i])})
    return E


def e_tableau(t, check: bool = True) -> SymGroupElement:
    """f(lambda) Phi at the contents of T; idempotent generating a minimal left ideal."""
    t = as_tableau(t)
    n = sum(len(r) for r in t)
    E = phi_consecutive(n, contents(t)).scale(f_lambda(shape_of(t)))
    if check:
        _assert_primitive(E, len(enumerate_syt(shape_of(t))))
    return E


def baxterized_hecke(n: int, q, j: int, kappa) -> HeckeElement:
    """sigma_j + kappa."""
    return HeckeElement(n, q, {simple(n, j): 1, identity_perm(n): kappa})


def psi_consecutive(n: int, q, alphas: Sequence) -> HeckeElement:
    """Psi(alpha_1, ..., alpha_n) by consecutive evaluation of its brackets.

    sigma_j(alpha_l / t) = sigma_j + (q - 1/q) alpha_l / (t - alpha_l).
    """
    q = as_rational(q)
    a = [as_rational(x) for x in alphas]
    if len(a) != n:
        raise SizeMismatch(f"need {n} parameters, got {len(a)}")
    if any(x == 0 for x in a):
        raise InvalidDeformationParameter("multiplicative parameters must be nonzero")
    qd = q - 1 / q
    E = HeckeElement.one(n, q)
    for i in range(1, n):
        for l in range(1, i + 1):
            E = E * baxterized_hecke(n, q, i + 1 - l, qd * a[l - 1] / (T - a[l - 1]))
        E = E.evaluate(a[i], step=i + 1)
    return E


def e_q_tableau(t, q, check: bool = True) -> HeckeElement:
    """f_q(lambda) Psi(quantum contents) T_{w_n}^{-1}."""
    t = as_tableau(t)
    q = as_rational(q)
    n = sum(len(r) for r in t)
    E = psi_consecutive(n, q, quantum_contents(t, q)) * t_longest_inverse(n, q)
    E = E.scale(f_q_lambda(shape_of(t), q))
    if check:
        _assert_primitive(E, len(enumerate_syt(shape_of(t))))
    return E


# -- analysis ------------------------------------------------------------------


def _basis_of(x: _Element) -> list[Perm]:
    return sorted(permutations(range(1, x.n + 1)))


def _unit(x: _Element, w: Perm) -> _Element:
    if isinstance(x, HeckeElement):
        return HeckeElement.basis(x.n, x.q, w)
    return SymGroupElement.perm(w)


def right_regular_matrix(x: _Element) -> ExactMatrix:
    """Column w holds the coordinates of w x, so the rank is dim(A x)."""
    basis = _basis_of(x)
    index = {w: k for k, w in enumerate(basis)}
    m = ExactMatrix.zeros(len(basis))
    for col, w in enumerate(basis):
        for v, c in (_unit(x, w) * x).coeffs.items():
            m.a[index[v], col] = c
    return m


def left_ideal_dim(x: _Element) -> int:
    return rank(right_regular_matrix(x))


class NotIdempotent(YBFuseError):
    pass


def _assert_primitive(E: _Element, expected_dim: int):
    if E * E != E:
        raise NotIdempotent("E^2 != E")
    dim = left_ideal_dim(E)
    if dim != expected_dim:
        raise NotIdempotent(f"left ideal has dimension {dim}, expected {expected_dim}")


@dataclass
class IdempotentReport:
    element: _Element | None
    is_idempotent_after_scaling: bool
    scale: Fraction | None
    is_invertible: bool
    left_ideal_dim: int | None
    candidate: tuple = ()
    singular: bool = False

    def to_json(self) -> dict:
        return {"candidate": [str(x) for x in self.candidate],
                "singular": self.singular,
                "scale": None if self.scale is None else str(self.scale),
                "idempotent": self.is_idempotent_after_scaling,
                "invertible": self.is_invertible,
                "ideal_dim": self.left_ideal_dim}


def idempotent_analysis(x: _Element, candidate: tuple = ()) -> IdempotentReport:
    """Solve x^2 = s x for a nonzero scalar s and measure the left ideal."""
    if not x.is_constant():
        raise ValueError("analysis needs constant coefficients")
    dim = left_ideal_dim(x)
    invertible = dim == len(_basis_of(x))
    s = None
    if x.coeffs:
        sq = x * x
        w, c = next(iter(x.coeffs.items()))
        s0 = sq.coefficient(w) / c
        if s0 != 0 and sq == x.scale(s0):
            s = s0
    return IdempotentReport(x, s is not None, s, invertible, dim, tuple(candidate))


def phi_report(c: Sequence) -> IdempotentReport:
    c = tuple(as_rational(v) for v in c)
    try:
        x = phi_consecutive(len(c), c)
    except GenuineSingularity:
        return IdempotentReport(None, False, None, False, None, c, singular=True)
    return idempotent_analysis(x, c)


LISTED_PAIRS = ((1, 2), (1, -1), (-1, 1), (-1, -2), (2, 1), (-2, -1))


def nonstandard_scan_n3(candidates: Iterable[Sequence]) -> list[IdempotentReport]:
    """Reports for Phi(0, c_2, c_3) over the given pairs."""
    return [phi_report((0, a, b)) for a, b in candidates]


def generic_pairs(count: int, seed: int = 0) -> list[tuple[Fraction, Fraction]]:
    """Seeded pairs off the listed six with every factor of Phi(0, a, b) invertible.

    A factor 1 - (i,j)/x is invertible exactly when x is not 0 or +-1, so
    a, b and b - a avoid {0, 1, -1}.
    """
    rng = random.Random(seed)
    bad = {0, 1, -1}
    listed = {(Fraction(a), Fraction(b)) for a, b in LISTED_PAIRS}
    out: list = []
    while len(out) < count:
        a = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        b = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        if a in bad or b in bad or b - a in bad or (a, b) in listed or (a, b) in out:
            continue
        out.append((a, b))
    return out


def nonstandard_system() -> dict[str, bool]:
    """E_1..E_4 of S_3 are pairwise orthogonal idempotents summing to 1."""
    E = [phi_consecutive(3, (0, 1, 2)).scale(Fraction(1, 6)),
         phi_consecutive(3, (0, 2, 1)).scale(Fraction(1, 3)),
         phi_consecutive(3, (0, -2, -1)).scale(Fraction(1, 3)),
         phi_consecutive(3, (0, -1, -2)).scale(Fraction(1, 6))]
    zero = SymGroupElement(3, {})
    orth = all(E[i] * E[j] == (E[i] if i == j else zero)
               for i in range(4) for j in range(4))
    total = E[0] + E[1] + E[2] + E[3]
    dims = [left_ideal_dim(e) for e in E]
    return {"orthogonal": orth, "unit_sum": total == SymGroupElement.one(3),
            "middle_dims": dims[1] == dims[2] == 2}


def hecke_nonstandard(q) -> dict[str, bool]:
    """Psi(1, q^4, q^2) T^-1 and Psi(1, q^-4, q^-2) T^-1 over q^2 + 1 + q^-2."""
    q = as_rational(q)
    s = 1 / (q ** 2 + 1 + q ** -2)
    Ti = t_longest_inverse(3, q)
    E2 = (psi_consecutive(3, q, (1, q ** 4, q ** 2)) * Ti).scale(s)
    E3 = (psi_consecutive(3, q, (1, q ** -4, q ** -2)) * Ti).scale(s)
    zero = HeckeElement(3, q, {})
    return {"idempotent_2": E2 * E2 == E2, "idempotent_3": E3 * E3 == E3,
            "orthogonal": E2 * E3 == zero and E3 * E2 == zero,
            "ideal_dims": left_ideal_dim(E2) == left_ideal_dim(E3) == 2}


# -- representations -----------------------------------------------------------


def represent(k: KernelSpec, x: _Element) -> ExactMatrix:
    """Matrix of x on V^(n).

    Yang: pi -> P_pi.  Super Yang: s_i -> signed swap on sites i, i+1,
    extended along reduced words.  Hecke kinds: sigma_i -> braid generator
    on sites i, i+1, so T_w -> product along a reduced word.
    """
    n = x.n
    ctx = TensorContext(k.d, n)
    if not k.is_hecke and not k.is_super:
        out = ExactMatrix.zeros(ctx.dim)
        for w, c in x.coeffs.items():
            out = out + perm_representation(ctx, w).scale(c)
        return out
    local = (braid_generator(k) if k.is_hecke else signed_swap(k)).a
    images = {identity_perm(n): ExactMatrix.identity(ctx.dim).a}

    def image(w):
        # w = s_i w' with w' shorter, so rho(w) = rho(s_i) rho(w')
        if w not in images:
            i = reduced_word(w)[0]
            shorter = tuple(i + 1 if v == i else i if v == i + 1 else v for v in w)
            images[w] = apply_local_left(image(shorter), ctx.d, n, i, i + 1, local)
        return images[w]

    out = ExactMatrix.zeros(ctx.dim).a
    for w, c in x.coeffs.items():
        out = out + image(w) * c
    return ExactMatrix._wrap(out)


def algebra_projector(k: KernelSpec, t) -> tuple[ExactMatrix, str]:
    """The algebra-side operator that should equal F(T) or F-hat(T)."""
    t = as_tableau(t)
    n = sum(len(r) for r in t)
    lam = shape_of(t)
    if k.is_hecke:
        E = e_q_tableau(t, k.q, check=False) * t_longest(n, k.q)
        return represent(k, E.scale(1 / f_q_lambda(lam, k.q))), "F-hat"
    E = e_tableau(t, check=False).scale(1 / f_lambda(lam))
    if k.is_super:
        return represent(k, E * SymGroupElement.perm(longest_perm(n))), "F-hat"
    return represent(k, E), "F"


@dataclass
class ConsistencyReport:
    passed: bool
    form: str
    tableau: tuple
    rank: int

    def to_json(self) -> dict:
        return {"passed": self.passed, "form": self.form,
                "tableau": [list(r) for r in self.tableau], "rank": self.rank}


def representation_consistency(k: KernelSpec, t) -> ConsistencyReport:
    """Algebra path and operator path give the same matrix for T."""
    t = as_tableau(t)
    got, form = algebra_projector(k, t)
    img = f_of_tableau(k, t, check=False)
    want = img.hat_operator if form == "F-hat" else img.operator
    return ConsistencyReport(got == want, form, t, img.rank)


def phi_tilde_relation(u: Sequence) -> bool:
    """Bracket product of (s_j - 1/(u_l - u_{i+1})) equals Phi(u) w_n."""
    n = len(u)
    return phi_tilde_direct(n, u) == phi_direct(n, u) * SymGroupElement.perm(longest_perm(n))


def baxterized_ybe(n: int, i: int, j: int, k: int, u, v) -> bool:
    """(1 - (i,j)/u)(1 - (i,k)/(u+v))(1 - (j,k)/v) equals the reversed product."""
    a, b, c = baxterized(n, i, j, u), baxterized(n, i, k, u + v), baxterized(n, j, k, v)
    return a * b * c == c * b * a
