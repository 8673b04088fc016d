"""Fused R-operators, tableau projectors and the checks that tie them together.

Sites 1..n carry the first tableau and n+1..n+n' the second.  Contents are
the additive contents for Yang kinds and the quantum contents q^(2c) for
Hecke kinds; every formula goes through ``KernelSpec.combine``/``shift`` so a
single code path serves both conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .combinatorics import (
    Tableau,
    admissible_transposition,
    as_tableau,
    contents,
    quantum_contents,
    schur_weyl_dimension,
    shape_of,
)
from .errors import (
    GenuineSingularity,
    InvalidContents,
    NotAdmissible,
    PoleAtEvaluationPoint,
    SchurWeylMismatch,
    SingularContents,
    SubspaceNotInvariant,
)
from .exact import RationalFunction, as_rational
from .kernels import (
    KernelSpec,
    T,
    gamma,
    local_factor,
    local_hat_factor,
    r_form,
    r_hat_matrix,
    r_matrix,
)
from .linalg import (
    ColumnBasis,
    ExactMatrix,
    OperatorChain,
    TensorContext,
    apply_local_left,
    column_space_basis,
    hstack,
    kron,
    perm_representation,
    rank,
    restrict_to_subspace,
    swap_matrix,
)
from .pit import Arg, Factor, IdentityReport, check_identity


def tableau_contents(k: KernelSpec, t: Tableau) -> list[Fraction]:
    """Contents in the kernel's convention."""
    if k.is_hecke:
        return quantum_contents(t, k.q)
    return [Fraction(c) for c in contents(t)]


def _check_contents(k: KernelSpec, c: Sequence) -> list[Fraction]:
    c = [as_rational(x) for x in c]
    if k.is_hecke and any(x == 0 for x in c):
        raise InvalidContents("multiplicative contents must be nonzero")
    return c


def longest_permutation(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


# -- fused operators -----------------------------------------------------------


def fused_layout(k: KernelSpec, c: Sequence, cbar: Sequence, order: str = "R"):
    """Ordered (sites, left content, right content) triples of the fused product.

    ``order="R"`` multiplies over the second block outermost,
    ``order="R2"`` over the first block outermost (last site leftmost).
    """
    n, nb = len(c), len(cbar)
    out = []
    if order == "R":
        for i in range(nb):
            for l in range(n - 1, -1, -1):
                out.append(((l + 1, n + i + 1), c[l], cbar[i]))
    elif order == "R2":
        for l in range(n - 1, -1, -1):
            for i in range(nb):
                out.append(((l + 1, n + i + 1), c[l], cbar[i]))
    else:
        raise ValueError(f"unknown order {order!r}")
    return out


class FusedOperator:
    """R_{c, cbar}(u) on V^(n + n'); the spectral variable is the chain variable t."""

    def __init__(self, k: KernelSpec, c: Sequence, cbar: Sequence, order: str = "R"):
        self.kernel = k
        self.c = _check_contents(k, c)
        self.cbar = _check_contents(k, cbar)
        self.order = order
        self.ctx = TensorContext(k.d, len(self.c) + len(self.cbar))
        self.chain = OperatorChain(self.ctx, [
            local_factor(k, sites, k.shift(T, a, b))
            for sites, a, b in fused_layout(k, self.c, self.cbar, order)])

    def apply(self, b: ExactMatrix) -> ExactMatrix:
        return self.chain.apply(b)

    @cached_property
    def matrix(self) -> ExactMatrix:
        return self.chain.matrix()

    def pit_factors(self, offset_a: int, offset_b: int, arg: Arg) -> list[Factor]:
        """Factors for grid checks, with both blocks moved to the given site offsets."""
        k = self.kernel
        n = len(self.c)
        form = r_form(k)
        out = []
        for (i, j), a, b in fused_layout(k, self.c, self.cbar, self.order):
            sites = (offset_a + i, offset_b + (j - n))
            c0 = (arg.c0 * a / b) if arg.mode == "mul" else (arg.c0 + a - b)
            out.append(Factor(sites, form, Arg(arg.mode, arg.cu, arg.cv, c0)))
        return out


def fused_operator(k: KernelSpec, c: Sequence, cbar: Sequence, order: str = "R") -> FusedOperator:
    return FusedOperator(k, c, cbar, order)


# -- projector operators with generic contents ---------------------------------


def _r_at(k: KernelSpec, m: ExactMatrix, x) -> ExactMatrix:
    try:
        return m.evaluate(x)
    except (PoleAtEvaluationPoint, ZeroDivisionError) as exc:
        raise SingularContents(f"kernel has a pole at argument {x}") from exc


def _pair_order(n: int, order: str) -> list[tuple[int, int]]:
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if order == "lex":
        return pairs
    if order == "revlex":
        return pairs[::-1]
    raise ValueError(f"unknown pair order {order!r}")


def f_operator(k: KernelSpec, c: Sequence, order: str = "lex") -> ExactMatrix:
    """Product of R_ij(c_i, c_j) over i < j; raises SingularContents at a pole."""
    c = _check_contents(k, c)
    n = len(c)
    ctx = TensorContext(k.d, n)
    R = r_matrix(k)
    m = ExactMatrix.identity(ctx.dim).a
    for i, j in reversed(_pair_order(n, order)):
        local = _r_at(k, R, k.combine(c[i - 1], c[j - 1]))
        m = apply_local_left(m, ctx.d, ctx.n, i, j, local.a)
    return ExactMatrix._wrap(m)


def _hat_layout(c: Sequence) -> list[tuple[tuple[int, int], int, int]]:
    """Brackets R^_{i,i+1}(c_1, c_{i+1}) ... R^_{1,2}(c_i, c_{i+1}) for i = 1..n-1."""
    out = []
    n = len(c)
    for i in range(1, n):
        for l in range(1, i + 1):
            out.append(((i + 1 - l, i + 2 - l), l - 1, i))
    return out


def f_hat_operator(k: KernelSpec, c: Sequence) -> ExactMatrix:
    """Bracket product of R-hat factors; equals F(c) P_{w_n}."""
    c = _check_contents(k, c)
    ctx = TensorContext(k.d, len(c))
    Rh = r_hat_matrix(k)
    m = ExactMatrix.identity(ctx.dim).a
    for (i, j), a, b in reversed(_hat_layout(c)):
        local = _r_at(k, Rh, k.combine(c[a], c[b]))
        m = apply_local_left(m, ctx.d, ctx.n, i, j, local.a)
    return ExactMatrix._wrap(m)


# -- consecutive evaluation ----------------------------------------------------


def consecutive_evaluation(k: KernelSpec, c: Sequence, form: str = "F") -> ExactMatrix:
    """F (or F-hat) with c_2, ..., c_n substituted one at a time.

    Step m keeps the constant value E_m and multiplies by the factors that
    involve the next variable t:

    * F form: R_{1,m+1}(c_1, t) ... R_{m,m+1}(c_m, t)
    * F-hat form: R^_{m,m+1}(c_1, t) ... R^_{1,2}(c_m, t)

    Every entry is reduced before setting t = c_{m+1}; a surviving pole
    raises :class:`GenuineSingularity`.
    """
    c = _check_contents(k, c)
    n = len(c)
    ctx = TensorContext(k.d, n)
    E = ExactMatrix.identity(ctx.dim)
    for m in range(1, n):
        if form == "F":
            factors = [local_factor(k, (i, m + 1), k.combine(c[i - 1], T)) for i in range(1, m + 1)]
        elif form == "F-hat":
            factors = [local_hat_factor(k, (m + 1 - l, m + 2 - l), k.combine(c[l - 1], T))
                       for l in range(1, m + 1)]
        else:
            raise ValueError(f"unknown form {form!r}")
        chain = OperatorChain(ctx, factors)
        E = chain.right_poly(E).value_at(c[m], step=m + 1)
    return E


@dataclass(frozen=True)
class TableauImage:
    tableau: Tableau
    contents: tuple[Fraction, ...]
    operator: ExactMatrix  # F(T)
    hat_operator: ExactMatrix  # F-hat(T)
    basis: ColumnBasis
    expected_dim: int

    @property
    def rank(self) -> int:
        return self.basis.rank


def f_of_tableau(k: KernelSpec, t, check: bool = True) -> TableauImage:
    """F(T) by consecutive evaluation at the contents of T, with its image.

    Additive kernels evaluate the F form directly; Hecke kernels evaluate the
    F-hat form and convert with P_{w_n}.  The image rank must equal the
    Schur-Weyl multiplicity of the shape.
    """
    t = as_tableau(t)
    c = tableau_contents(k, t)
    n = len(c)
    w = perm_representation(TensorContext(k.d, n), longest_permutation(n))
    if k.is_hecke:
        Fh = consecutive_evaluation(k, c, "F-hat")
        F = Fh @ w
    else:
        F = consecutive_evaluation(k, c, "F")
        Fh = F @ w
    basis = column_space_basis(F)
    expected = schur_weyl_dimension(shape_of(t), k.N, k.M)
    if check and basis.rank != expected:
        raise SchurWeylMismatch(basis.rank, expected)
    return TableauImage(t, tuple(c), F, Fh, basis, expected)


# -- restriction and equivalences ----------------------------------------------


@dataclass(frozen=True)
class RestrictedMatrix:
    matrix: ExactMatrix
    basis: ExactMatrix


def restrict_fused(k: KernelSpec, t, t2, basis: ExactMatrix | None = None,
                   c=None, c2=None) -> RestrictedMatrix:
    """Matrix of R_{c(T), c(T2)}(u) on W_T (x) W_T2.

    The default basis is the Kronecker product of the pivot-column bases of
    F(T) and F(T2).
    """
    t, t2 = as_tableau(t), as_tableau(t2)
    c = tableau_contents(k, t) if c is None else c
    c2 = tableau_contents(k, t2) if c2 is None else c2
    if basis is None:
        basis = kron(f_of_tableau(k, t).basis.basis, f_of_tableau(k, t2).basis.basis)
    op = fused_operator(k, c, c2)
    return RestrictedMatrix(restrict_to_subspace(op, basis), basis)


def conjugation_Ak(k: KernelSpec, c: Sequence, idx: int) -> ExactMatrix:
    """A_k = P_{k,k+1} R_{k+1,k}(c_{k+1}, c_k) on V^(n), for admissible s_k."""
    c = _check_contents(k, c)
    g = gamma(k)
    arg = k.combine(c[idx - 1], c[idx])
    try:
        gv = g(arg)
    except PoleAtEvaluationPoint as exc:
        raise NotAdmissible(f"s_{idx} is not admissible for contents {c}") from exc
    if gv == 0:
        raise NotAdmissible(f"s_{idx} is not admissible for contents {c}")
    ctx = TensorContext(k.d, len(c))
    R = _r_at(k, r_matrix(k), k.combine(c[idx], c[idx - 1]))
    m = apply_local_left(ExactMatrix.identity(ctx.dim).a, ctx.d, ctx.n, idx + 1, idx, R.a)
    P = ExactMatrix.identity(ctx.dim)
    swap = ExactMatrix._wrap(apply_local_left(P.a, ctx.d, ctx.n, idx, idx + 1,
                                              _swap_local(k.d)))
    return swap @ ExactMatrix._wrap(m)


def _swap_local(d: int):
    return swap_matrix(d).a


@dataclass
class EquivalenceReport:
    passed: bool
    tableau: Tableau
    swapped: Tableau
    partner: Tableau
    k: int
    dim: int
    spans_image: bool

    def to_json(self) -> dict:
        return {"passed": self.passed, "tableau": [list(r) for r in self.tableau],
                "swapped": [list(r) for r in self.swapped],
                "partner": [list(r) for r in self.partner], "k": self.k,
                "dim": self.dim, "spans_image": self.spans_image}


def verify_transposition_equivalence(k: KernelSpec, t, t2, idx: int) -> EquivalenceReport:
    """Restricted fused matrices of (T, T2) in B and of (T s_k, T2) in A_k B agree."""
    t, t2 = as_tableau(t), as_tableau(t2)
    ts = admissible_transposition(t, idx)
    if ts is None:
        raise NotAdmissible(f"{idx} and {idx + 1} share a row or column of {t}")
    img = f_of_tableau(k, t)
    img_s = f_of_tableau(k, ts)
    img2 = f_of_tableau(k, t2)
    A = conjugation_Ak(k, img.contents, idx)
    B = img.basis.basis
    AB = A @ B
    spans = rank(hstack([img_s.basis.basis, AB])) == img_s.rank == rank(AB)
    left = restrict_fused(k, t, t2, kron(B, img2.basis.basis))
    right = restrict_fused(k, ts, t2, kron(AB, img2.basis.basis))
    passed = spans and left.matrix == right.matrix
    return EquivalenceReport(passed, t, ts, t2, idx, left.matrix.rows, spans)


def _mode(k: KernelSpec) -> str:
    return "mul" if k.is_hecke else "add"


def fused_ybe_factors(k: KernelSpec, c1, c2, c3):
    mode = _mode(k)
    base = Fraction(1) if mode == "mul" else Fraction(0)
    a_u, a_uv, a_v = Arg(mode, 1, 0, base), Arg(mode, 1, 1, base), Arg(mode, 0, 1, base)
    n1, n2 = len(c1), len(c2)
    r12 = FusedOperator(k, c1, c2).pit_factors(0, n1, a_u)
    r13 = FusedOperator(k, c1, c3).pit_factors(0, n1 + n2, a_uv)
    r23 = FusedOperator(k, c2, c3).pit_factors(n1, n1 + n2, a_v)
    return r12 + r13 + r23, r23 + r13 + r12


def fused_ybe_degree(n1: int, n2: int, n3: int) -> int:
    """Default per-variable grid degree, 2 (n n' + n n'' + n' n'')."""
    return 2 * (n1 * n2 + n1 * n3 + n2 * n3)


def verify_fused_ybe(k: KernelSpec, t1, t2, t3, degree: int | None = None,
                     backend: str | None = None, contents_override=None) -> IdentityReport:
    """R_{12}(u) R_{13}(u+v) R_{23}(v) = R_{23}(v) R_{13}(u+v) R_{12}(u) for fused operators.

    ``degree=None`` uses the tightest sufficient grid, one point more than
    the number of factors depending on each variable.
    """
    if contents_override is None:
        cs = [tableau_contents(k, as_tableau(x)) for x in (t1, t2, t3)]
    else:
        cs = [_check_contents(k, x) for x in contents_override]
    lhs, rhs = fused_ybe_factors(k, *cs)
    ctx = TensorContext(k.d, sum(len(x) for x in cs))
    grid = None if degree is None else (degree + 1, degree + 1)
    report = check_identity(ctx, lhs, rhs, grid=grid, backend=backend)
    report.extra["kernel"] = k.to_json()
    report.extra["sizes"] = [len(x) for x in cs]
    return report


@dataclass
class InvarianceReport:
    passed: bool
    left_dim: int
    right_dim: int

    def to_json(self) -> dict:
        return {"passed": self.passed, "left_dim": self.left_dim, "right_dim": self.right_dim}


def verify_invariance(k: KernelSpec, t, t2) -> InvarianceReport:
    """R_{c, cbar}(u) preserves W_T (x) V^(n') and V^(n) (x) W_T2."""
    img, img2 = f_of_tableau(k, t), f_of_tableau(k, t2)
    op = fused_operator(k, img.contents, img2.contents)
    n, n2 = len(img.contents), len(img2.contents)
    left = kron(img.basis.basis, ExactMatrix.identity(k.d ** n2))
    right = kron(ExactMatrix.identity(k.d ** n), img2.basis.basis)
    try:
        restrict_to_subspace(op, left) if left.cols else None
        restrict_to_subspace(op, right) if right.cols else None
    except SubspaceNotInvariant:
        return InvarianceReport(False, left.cols, right.cols)
    return InvarianceReport(True, left.cols, right.cols)


# -- structural identities -----------------------------------------------------


def intertwining_checks(k: KernelSpec, c: Sequence, cbar: Sequence) -> dict[str, bool]:
    """Exchange relations for every k with generic contents.

    * P_{k,k+1} R_{k+1,k}(c_{k+1}, c_k) R_{c,cbar}(u) = R_{c s_k, cbar}(u) P_{k,k+1} R_{k+1,k}(c_{k+1}, c_k)
    * P_{k,k+1} R_{k+1,k}(c_{k+1}, c_k) F(c) = F(c s_k) P_{k,k+1} R_{k,k+1}(c_k, c_{k+1})
    """
    c = _check_contents(k, c)
    cbar = _check_contents(k, cbar)
    n = len(c)
    out = {}
    R = fused_operator(k, c, cbar).matrix
    F = f_operator(k, c)
    for idx in range(1, n):
        cs = list(c)
        cs[idx - 1], cs[idx] = cs[idx], cs[idx - 1]
        A = conjugation_Ak(k, c, idx)
        Ab = kron(A, ExactMatrix.identity(k.d ** len(cbar)))
        Rs = fused_operator(k, cs, cbar).matrix
        out[f"fused_k{idx}"] = Ab @ R == Rs @ Ab
        ctx = TensorContext(k.d, n)
        Rk = _r_at(k, r_matrix(k), k.combine(c[idx - 1], c[idx]))
        right = apply_local_left(ExactMatrix.identity(ctx.dim).a, ctx.d, ctx.n, idx, idx + 1, Rk.a)
        swap = apply_local_left(ExactMatrix.identity(ctx.dim).a, ctx.d, ctx.n, idx, idx + 1,
                                _swap_local(k.d))
        PR = ExactMatrix._wrap(swap) @ ExactMatrix._wrap(right)
        out[f"projector_k{idx}"] = A @ F == f_operator(k, cs) @ PR
    return out


def order_checks(k: KernelSpec, c: Sequence, cbar: Sequence) -> dict[str, bool]:
    """Both fused orderings agree, lex equals reverse-lex and F-hat = F P_{w_n}."""
    c = _check_contents(k, c)
    cbar = _check_contents(k, cbar)
    n = len(c)
    w = perm_representation(TensorContext(k.d, n), longest_permutation(n))
    F = f_operator(k, c)
    return {
        "fused_orders": fused_operator(k, c, cbar, "R").matrix == fused_operator(k, c, cbar, "R2").matrix,
        "lex_revlex": F == f_operator(k, c, "revlex"),
        "hat_relation": f_hat_operator(k, c) == F @ w,
    }


def tableau_hat_check(k: KernelSpec, t) -> bool:
    """F-hat form and F form at the tableau agree through P_{w_n}."""
    t = as_tableau(t)
    c = tableau_contents(k, t)
    n = len(c)
    w = perm_representation(TensorContext(k.d, n), longest_permutation(n))
    try:
        F = consecutive_evaluation(k, c, "F")
    except GenuineSingularity:
        return False
    return consecutive_evaluation(k, c, "F-hat") == F @ w
