"""The four base R-matrices, their unitarity scalars and Yang-Baxter checks.

Every kernel acts on V (x) V with V of dimension N + M; the first N basis
vectors are even and the last M odd.  Matrices are rational functions of the
spectral variable t.  Yang-type kernels use the additive convention
(arguments combine as a - b), Hecke-type the multiplicative one (a / b).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidDeformationParameter, InvalidKernelSpec, UnitarityViolated
from .exact import RationalFunction, as_rational
from .linalg import ExactMatrix, LocalFactor, PolyForm, TensorContext, swap_matrix
from .pit import Arg, Factor, IdentityReport, check_identity

KINDS = ("yang", "super-yang", "hecke", "super-hecke")
T = RationalFunction.var()


@dataclass(frozen=True)
class KernelSpec:
    kind: str
    N: int
    M: int = 0
    q: Fraction = Fraction(2)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidKernelSpec(f"unknown kernel kind {self.kind!r}")
        object.__setattr__(self, "q", as_rational(self.q))
        if self.N < 0 or self.M < 0 or self.N + self.M < 1:
            raise InvalidKernelSpec("need N, M >= 0 and N + M >= 1")
        if not self.is_super and self.M:
            raise InvalidKernelSpec(f"{self.kind} takes M = 0")
        if self.is_hecke and self.q in (0, 1, -1):
            raise InvalidDeformationParameter(f"q = {self.q} is not allowed")

    @property
    def d(self) -> int:
        return self.N + self.M

    @property
    def is_super(self) -> bool:
        return self.kind.startswith("super")

    @property
    def is_hecke(self) -> bool:
        return self.kind.endswith("hecke")

    @property
    def convention(self) -> str:
        return "multiplicative" if self.is_hecke else "additive"

    def parity(self, i: int) -> int:
        """Grading of basis vector e_i, 0-based."""
        return 0 if i < self.N else 1

    def combine(self, a, b):
        """Spectral argument for the pair (a, b): a - b or a / b."""
        return a / b if self.is_hecke else a - b

    def shift(self, t, a, b):
        """Argument t shifted by the pair (a, b): t + a - b or t a / b."""
        return t * a / b if self.is_hecke else t + a - b

    def inverse_arg(self, t):
        return 1 / t if self.is_hecke else -t

    def to_json(self) -> dict:
        return {"kind": self.kind, "N": self.N, "M": self.M, "q": str(self.q),
                "convention": self.convention}


def _pair_index(k: KernelSpec, i: int, j: int) -> int:
    return i * k.d + j


def sign_operator(k: KernelSpec) -> ExactMatrix:
    """Diagonal (-1)^{|x||y|} on V (x) V; the identity without odd vectors."""
    d = k.d
    return ExactMatrix.from_function(
        d * d, d * d,
        lambda r, c: ((-1) ** (k.parity(r // d) * k.parity(r % d))) if r == c else 0)


def signed_swap(k: KernelSpec) -> ExactMatrix:
    """P~ = I~ P."""
    return sign_operator(k) @ swap_matrix(k.d)


def braid_generator(k: KernelSpec) -> ExactMatrix:
    """Constant R-hat of the Hecke kinds, the braid group generator."""
    if not k.is_hecke:
        raise InvalidKernelSpec("braid generator exists for Hecke kinds only")
    d, q = k.d, k.q
    qi = 1 / q
    out = ExactMatrix.zeros(d * d)
    a = out.a
    for i in range(d):
        for j in range(d):
            src = _pair_index(k, i, j)
            if i == j:
                if k.is_super:
                    a[src, src] = ((-1) ** k.parity(i) * (q + qi) + (q - qi)) / 2
                else:
                    a[src, src] = q
                continue
            sign = (-1) ** (k.parity(i) * k.parity(j)) if k.is_super else 1
            a[_pair_index(k, j, i), src] = Fraction(sign)
            if i > j:
                a[src, src] = q - qi
    return out


def _kappa(k: KernelSpec, t=T):
    """(q - 1/q) / (1/t - 1)."""
    q = k.q
    return (q - 1 / q) / (1 / t - 1)


@lru_cache(maxsize=None)
def r_matrix(k: KernelSpec) -> ExactMatrix:
    """R(t) on V (x) V."""
    d = k.d
    P = swap_matrix(d)
    if k.kind == "yang":
        return ExactMatrix.identity(d * d) - P.scale(1 / T)
    if k.kind == "super-yang":
        return sign_operator(k) - P.scale(1 / T)
    return r_hat_matrix(k) @ P


@lru_cache(maxsize=None)
def r_hat_matrix(k: KernelSpec) -> ExactMatrix:
    """R-hat(t) = R(t) P; for Hecke kinds this is the Baxterized braid generator."""
    if k.is_hecke:
        return braid_generator(k) + ExactMatrix.identity(k.d ** 2).scale(_kappa(k))
    return r_matrix(k) @ swap_matrix(k.d)


def r21(m: ExactMatrix, d: int) -> ExactMatrix:
    P = swap_matrix(d)
    return P @ m @ P


def substitute(m: ExactMatrix, inner) -> ExactMatrix:
    """Replace t by ``inner`` (a rational function of t) in every entry."""
    inner = inner if isinstance(inner, RationalFunction) else RationalFunction.const(inner)
    return m.map(lambda e: e.compose(inner) if isinstance(e, RationalFunction) else e)


def gamma(k: KernelSpec) -> RationalFunction:
    """Scalar g(t) with R(t) R_21(t*) = g(t) Id, t* = -t or 1/t."""
    R = r_matrix(k)
    prod = R @ r21(substitute(R, k.inverse_arg(T)), k.d)
    c = prod.is_scalar()
    if c is None:
        raise UnitarityViolated(f"{k.kind}: R(t) R21(t*) is not scalar")
    return c if isinstance(c, RationalFunction) else RationalFunction.const(c)


def gamma_expected(k: KernelSpec) -> RationalFunction:
    """Closed forms: (t^2 - 1)/t^2 additive, (t - q^2)(t - q^-2)/(t - 1)^2 multiplicative."""
    if k.is_hecke:
        q2 = k.q ** 2
        return (T - q2) * (T - 1 / q2) / ((T - 1) * (T - 1))
    return (T * T - 1) / (T * T)


@lru_cache(maxsize=None)
def r_form(k: KernelSpec) -> PolyForm:
    return PolyForm.from_matrix(r_matrix(k))


@lru_cache(maxsize=None)
def r_hat_form(k: KernelSpec) -> PolyForm:
    return PolyForm.from_matrix(r_hat_matrix(k))


def const_form(m: ExactMatrix) -> PolyForm:
    return PolyForm.from_matrix(m)


def _mode(convention: str) -> str:
    return "mul" if convention == "multiplicative" else "add"


def ybe_factors(form: PolyForm, convention: str):
    """Both sides of R12(u) R13(u+v) R23(v) = R23(v) R13(u+v) R12(u)."""
    mode = _mode(convention)
    a_u = Arg(mode, 1, 0, Fraction(0 if mode == "add" else 1))
    a_uv = Arg(mode, 1, 1, Fraction(0 if mode == "add" else 1))
    a_v = Arg(mode, 0, 1, Fraction(0 if mode == "add" else 1))
    lhs = [Factor((1, 2), form, a_u), Factor((1, 3), form, a_uv), Factor((2, 3), form, a_v)]
    rhs = [Factor((2, 3), form, a_v), Factor((1, 3), form, a_uv), Factor((1, 2), form, a_u)]
    return lhs, rhs


BASE_YBE_DEGREE = 8


def ybe_check_local(local: ExactMatrix, d: int, convention: str,
                    degree: int = BASE_YBE_DEGREE, backend: str | None = None) -> IdentityReport:
    """Grid check of the Yang-Baxter equation for an arbitrary local R(t)."""
    lhs, rhs = ybe_factors(PolyForm.from_matrix(local), convention)
    return check_identity(TensorContext(d, 3), lhs, rhs, grid=(degree + 1, degree + 1), backend=backend)


def base_ybe_check(k: KernelSpec, degree: int = BASE_YBE_DEGREE,
                   backend: str | None = None) -> IdentityReport:
    report = ybe_check_local(r_matrix(k), k.d, k.convention, degree, backend)
    report.extra["kernel"] = k.to_json()
    return report


def braided_ybe_check(k: KernelSpec, degree: int = BASE_YBE_DEGREE,
                      backend: str | None = None) -> IdentityReport:
    """YBE for R~(t) = Id - P~/t with signed-swap conjugations (super Yang only)."""
    d = k.d
    Pt = signed_swap(k)
    Rt = ExactMatrix.identity(d * d) - Pt.scale(1 / T)
    R = PolyForm.from_matrix(Rt)
    S = PolyForm.from_matrix(Pt)
    a_u, a_uv, a_v = Arg.add(1, 0), Arg.add(1, 1), Arg.add(0, 1)

    def r13(arg):
        return [Factor((2, 3), S), Factor((1, 2), R, arg), Factor((2, 3), S)]

    def r23(arg):
        return [Factor((1, 2), S)] + r13(arg) + [Factor((1, 2), S)]

    lhs = [Factor((1, 2), R, a_u)] + r13(a_uv) + r23(a_v)
    rhs = r23(a_v) + r13(a_uv) + [Factor((1, 2), R, a_u)]
    report = check_identity(TensorContext(d, 3), lhs, rhs, grid=(degree + 1, degree + 1), backend=backend)
    report.extra["kernel"] = k.to_json()
    return report


def local_factor(k: KernelSpec, sites, arg) -> LocalFactor:
    """R_{ij}(arg) as a chain factor; ``arg`` is a rational function of t."""
    return LocalFactor.of(tuple(sites), substitute(r_matrix(k), arg))


def local_hat_factor(k: KernelSpec, sites, arg) -> LocalFactor:
    return LocalFactor.of(tuple(sites), substitute(r_hat_matrix(k), arg))
