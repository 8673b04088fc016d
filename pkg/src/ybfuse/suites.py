"""Named verification suites shared by the CLI and the acceptance tests."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterator

from . import algebra
from .combinatorics import (
    admissible_transposition,
    enumerate_syt,
    num_syt,
    partitions,
    schur_weyl_dimension,
)
from .errors import YBFuseError
from .fusion import (
    f_of_tableau,
    fused_ybe_degree,
    intertwining_checks,
    order_checks,
    tableau_hat_check,
    verify_fused_ybe,
    verify_invariance,
    verify_transposition_equivalence,
)
from .kernels import (
    KernelSpec,
    base_ybe_check,
    braided_ybe_check,
    gamma,
    gamma_expected,
    r_matrix,
    ybe_check_local,
)
from .linalg import ExactMatrix

SUITES = ("base-ybe", "fused-ybe", "unitarity", "invariance", "equivalence",
          "schur-weyl", "idempotents", "nonstandard", "orders")


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _run(name: str, fn: Callable[[], tuple[bool, dict] | bool]) -> Check:
    t0 = time.perf_counter()
    try:
        res = fn()
    except YBFuseError as exc:
        res = (False, {"error": f"{type(exc).__name__}: {exc}"})
    passed, detail = res if isinstance(res, tuple) else (res, {})
    return Check(name, bool(passed), detail, time.perf_counter() - t0)


def tableaux_up_to(n: int, min_n: int = 1) -> Iterator[tuple]:
    for m in range(min_n, n + 1):
        for lam in partitions(m):
            yield from enumerate_syt(lam)


def _tab(t) -> str:
    return str([list(r) for r in t])


@dataclass
class SuiteOptions:
    kernel: KernelSpec
    max_n: int = 3
    degree: int | None = None
    seed: int = 0
    samples: int = 20
    tableaux: list | None = None


# -- suites ----------------------------------------------------------------------


def suite_base_ybe(o: SuiteOptions) -> list[Check]:
    k = o.kernel
    out = [_run(f"ybe {k.kind} ({k.N}|{k.M})", lambda: _report(base_ybe_check(k)))]
    if k.kind == "super-yang":
        out.append(_run("braided ybe", lambda: _report(braided_ybe_check(k))))
    mutated = _mutate(r_matrix(k))
    out.append(_run("mutated kernel is rejected",
                    lambda: not ybe_check_local(mutated, k.d, k.convention).passed))
    return out


def _report(rep):
    return rep.passed, rep.to_json()


def _mutate(m: ExactMatrix) -> ExactMatrix:
    """Perturb one off-diagonal entry; the result no longer satisfies the YBE."""
    a = m.a.copy()
    r, c = next((r, c) for r in range(m.rows) for c in range(m.cols) if r != c and a[r, c] != 0)
    a[r, c] = a[r, c] * 2
    return ExactMatrix._wrap(a)


def suite_fused_ybe(o: SuiteOptions) -> list[Check]:
    k = o.kernel
    if o.tableaux:
        triples = [tuple(o.tableaux)]
    else:
        small = list(tableaux_up_to(min(o.max_n, 2)))
        triples = list(product(small, repeat=3))
    out = []
    for t1, t2, t3 in triples:
        deg = o.degree
        if deg == -1:
            deg = fused_ybe_degree(*(sum(map(len, t)) for t in (t1, t2, t3)))
        out.append(_run(f"fused ybe {_tab(t1)} {_tab(t2)} {_tab(t3)}",
                        lambda t1=t1, t2=t2, t3=t3, deg=deg: _report(verify_fused_ybe(k, t1, t2, t3, deg))))
    return out


def suite_unitarity(o: SuiteOptions) -> list[Check]:
    k = o.kernel

    def check():
        g = gamma(k)
        return g == gamma_expected(k), {"gamma": g.format("u" if not k.is_hecke else "alpha")}

    return [_run(f"unitarity {k.kind}", check)]


def _pairs(o: SuiteOptions):
    if o.tableaux:
        return [tuple(o.tableaux[:2])]
    ts = list(tableaux_up_to(o.max_n))
    return [(t, t2) for t in ts for t2 in tableaux_up_to(1)]


def suite_invariance(o: SuiteOptions) -> list[Check]:
    k = o.kernel
    return [_run(f"invariance {_tab(t)} {_tab(t2)}",
                 lambda t=t, t2=t2: _report(verify_invariance(k, t, t2)))
            for t, t2 in _pairs(o)]


def suite_equivalence(o: SuiteOptions) -> list[Check]:
    k = o.kernel
    out = []
    for t, t2 in _pairs(o):
        n = sum(map(len, t))
        for idx in range(1, n):
            if admissible_transposition(t, idx) is None:
                continue
            out.append(_run(f"equivalence {_tab(t)} s_{idx} {_tab(t2)}",
                            lambda t=t, t2=t2, idx=idx: _report(
                                verify_transposition_equivalence(k, t, t2, idx))))
    return out


def suite_schur_weyl(o: SuiteOptions) -> list[Check]:
    k = o.kernel
    out = []
    for n in range(1, o.max_n + 1):
        for lam in partitions(n):
            expected = schur_weyl_dimension(lam, k.N, k.M)
            for t in enumerate_syt(lam):
                out.append(_run(f"rank {_tab(t)}",
                                lambda t=t, e=expected: _rank_check(k, t, e)))
        total = sum(schur_weyl_dimension(lam, k.N, k.M) * num_syt(lam) for lam in partitions(n))
        out.append(_run(f"completeness n={n}", lambda total=total, n=n: (
            total == k.d ** n, {"sum": total, "dim": k.d ** n})))
    return out


def _rank_check(k: KernelSpec, t, expected: int):
    img = f_of_tableau(k, t, check=False)
    return img.rank == expected, {"rank": img.rank, "expected": expected}


def suite_idempotents(o: SuiteOptions) -> list[Check]:
    k = o.kernel
    out = []
    for t in tableaux_up_to(o.max_n):
        if k.is_hecke:
            out.append(_run(f"hecke idempotent {_tab(t)} q={k.q}",
                            lambda t=t: algebra.e_q_tableau(t, k.q) is not None))
        else:
            out.append(_run(f"idempotent {_tab(t)}", lambda t=t: algebra.e_tableau(t) is not None))
    return out


def suite_nonstandard(o: SuiteOptions) -> list[Check]:
    out = []
    for a, b in algebra.LISTED_PAIRS:
        out.append(_run(f"pair ({a},{b})", lambda a=a, b=b: _idem(algebra.phi_report((0, a, b)))))
    out.append(_run("system E1..E4", lambda: _all(algebra.nonstandard_system())))
    out.append(_run("(0,1,5,2)", lambda: _idem(algebra.phi_report((0, 1, 5, 2)))))
    for a, b in algebra.generic_pairs(o.samples, o.seed):
        out.append(_run(f"off-list ({a},{b})", lambda a=a, b=b: _generic(algebra.phi_report((0, a, b)))))
    q = o.kernel.q if o.kernel.is_hecke else Fraction(2)
    out.append(_run(f"hecke analogues q={q}", lambda: _all(algebra.hecke_nonstandard(q))))
    return out


def _idem(rep):
    return rep.is_idempotent_after_scaling, rep.to_json()


def _generic(rep):
    return rep.is_invertible and not rep.is_idempotent_after_scaling, rep.to_json()


def _all(d: dict):
    return all(d.values()), d


def suite_orders(o: SuiteOptions) -> list[Check]:
    k = o.kernel
    out = []
    for n in range(2, o.max_n + 1):
        c = _generic_contents(k, n)
        cbar = _generic_contents(k, 1, offset=7)
        out.append(_run(f"orders n={n}", lambda c=c, cbar=cbar: _all(order_checks(k, c, cbar))))
        out.append(_run(f"intertwining n={n}", lambda c=c, cbar=cbar: _all(intertwining_checks(k, c, cbar))))
    for n in range(2, o.max_n + 1):
        u = [Fraction(i * i + 1, i + 2) for i in range(n)]
        out.append(_run(f"phi tilde n={n}", lambda u=u: algebra.phi_tilde_relation(u)))
    for t in tableaux_up_to(o.max_n, 2):
        out.append(_run(f"hat form {_tab(t)}", lambda t=t: tableau_hat_check(k, t)))
        out.append(_run(f"bridge {_tab(t)}", lambda t=t: _report(algebra.representation_consistency(k, t))))
    return out


def _generic_contents(k: KernelSpec, n: int, offset: int = 0) -> list[Fraction]:
    """Contents with no pole or zero of any kernel factor between them."""
    if k.is_hecke:
        return [Fraction(2 * i + 3 + offset, 5 + i) for i in range(n)]
    return [Fraction(3 * i + offset, 2) + Fraction(1, 7) for i in range(n)]


RUNNERS = {
    "base-ybe": suite_base_ybe,
    "fused-ybe": suite_fused_ybe,
    "unitarity": suite_unitarity,
    "invariance": suite_invariance,
    "equivalence": suite_equivalence,
    "schur-weyl": suite_schur_weyl,
    "idempotents": suite_idempotents,
    "nonstandard": suite_nonstandard,
    "orders": suite_orders,
}


def run_suite(name: str, options: SuiteOptions) -> list[Check]:
    return RUNNERS[name](options)
