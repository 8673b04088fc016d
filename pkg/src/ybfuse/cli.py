"""Command-line front end: ``ybfuse <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import algebra, goldens
from .combinatorics import as_tableau, enumerate_syt, schur_weyl_dimension, shape_of
from .errors import YBFuseError
from .exact import RationalFunction, as_rational
from .fusion import restrict_fused, tableau_contents
from .kernels import KINDS, KernelSpec, gamma, r_matrix
from .linalg import ExactMatrix, kron
from .suites import SUITES, SuiteOptions, run_suite


@dataclass
class RunConfig:
    kind: str = "yang"
    N: int = 2
    M: int = 0
    q: str = "2"
    grid: str = "tight"
    emit: str = "pretty"
    output: str | None = None
    seed: int = 0


class UsageError(Exception):
    pass


def _var(k: KernelSpec) -> str:
    return "alpha" if k.is_hecke else "u"


def _kernel(args) -> KernelSpec:
    try:
        return KernelSpec(args.kind, args.N, args.M, as_rational(args.q))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None


def _tableau(text: str):
    try:
        return as_tableau(json.loads(text))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid tableau {text!r}: {exc}") from None


def _emit(args, payload: dict, pretty: str) -> None:
    text = json.dumps(payload, indent=2) + "\n" if args.emit == "json" else pretty.rstrip("\n") + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _matrix_payload(m: ExactMatrix) -> dict:
    return m.to_json()


# -- commands --------------------------------------------------------------------


def cmd_kernel(args) -> int:
    k = _kernel(args)
    R = r_matrix(k)
    g = gamma(k)
    var = _var(k)
    payload = {"kernel": k.to_json(), "variable": var, "matrix": _matrix_payload(R),
               "gamma": g.to_json()}
    pretty = f"R({var}) for {k.kind} (N={k.N}, M={k.M}, q={k.q})\n{R.pretty(var)}\n" \
             f"gamma({var}) = {g.format(var)}"
    _emit(args, payload, pretty)
    return 0


def _load_basis(path: str, k: KernelSpec, var: str) -> ExactMatrix:
    data = json.loads(Path(path).read_text())
    if "rows" in data:
        return ExactMatrix.from_json(data)
    if "factor_basis" in data:
        b1, b2 = (goldens._basis(v, k.d, var, k.q) for v in data["factor_basis"])
        return kron(b1, b2)
    if "basis" in data:
        return goldens._basis(data["basis"], k.d, var, k.q)
    raise UsageError("basis file needs rows/cols/entries, basis or factor_basis")


def cmd_fuse(args) -> int:
    k = _kernel(args)
    t, t2 = _tableau(args.tableau), _tableau(args.tableau2)
    for x in (t, t2):
        if schur_weyl_dimension(shape_of(x), k.N, k.M) == 0:
            raise UsageError(f"shape {list(shape_of(x))} has no tableau space for (N|M) = ({k.N}|{k.M})")
    var = _var(k)
    basis = _load_basis(args.basis, k, var) if args.basis else None
    res = restrict_fused(k, t, t2, basis)
    payload = {"kernel": k.to_json(), "tableau": [list(r) for r in t],
               "tableau2": [list(r) for r in t2], "variable": var,
               "contents": [str(x) for x in tableau_contents(k, t)],
               "contents2": [str(x) for x in tableau_contents(k, t2)],
               "basis": res.basis.to_json(), "matrix": res.matrix.to_json()}
    pretty = (f"restricted fused matrix, {res.matrix.rows}x{res.matrix.cols}, "
              f"T={[list(r) for r in t]}, T'={[list(r) for r in t2]}\n{res.matrix.pretty(var)}")
    _emit(args, payload, pretty)
    return 0


def cmd_reproduce(args) -> int:
    rep = goldens.reproduce(args.example, as_rational(args.q))
    data = goldens.load(args.example)
    var = data["variable"]
    payload = rep.to_json()
    payload["q"] = args.q
    lines = [f"{args.example} (q={args.q}): {'match' if rep.passed else 'MISMATCH'}",
             rep.computed.pretty(var)]
    if rep.mismatches:
        i, j = rep.mismatches[0]
        first = {"entry": f"{i + 1},{j + 1}",
                 "computed": _fmt(rep.computed.a[i, j], var),
                 "expected": _fmt(rep.expected.a[i, j], var)}
        payload["first_mismatch"] = first
        lines.append(f"first mismatch at ({first['entry']}): computed {first['computed']}, "
                     f"expected {first['expected']}")
    _emit(args, payload, "\n".join(lines))
    return 0 if rep.passed else 1


def _fmt(x, var: str) -> str:
    return x.format(var) if isinstance(x, RationalFunction) else str(x)


def _grid_degree(text: str) -> int | None:
    if text == "tight":
        return None
    if text == "spec":
        return -1
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"--grid takes tight, spec or an integer, not {text!r}") from None


def cmd_verify(args) -> int:
    k = _kernel(args)
    tabs = [_tableau(x) for x in args.tableau] if args.tableau else None
    opts = SuiteOptions(k, max_n=args.max_n, degree=_grid_degree(args.grid), seed=args.seed,
                        samples=args.samples, tableaux=tabs)
    checks = run_suite(args.suite, opts)
    passed = all(c.passed for c in checks)
    payload = {"suite": args.suite, "kernel": k.to_json(), "passed": passed,
               "checks": [c.to_json(args.timing) for c in checks]}
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}"
             + (f"  ({c.seconds:.2f}s)" if args.timing else "") for c in checks]
    lines.append(f"{args.suite}: {sum(c.passed for c in checks)}/{len(checks)} passed")
    _emit(args, payload, "\n".join(lines))
    return 0 if passed else 1


def cmd_idempotent(args) -> int:
    q = as_rational(args.q)
    if args.tableau:
        t = _tableau(args.tableau)
        n = sum(map(len, t))
        if args.n is not None and args.n != n:
            raise UsageError(f"--n {args.n} does not match the tableau size {n}")
        if args.group == "hecke":
            x = algebra.e_q_tableau(t, q)
        else:
            x = algebra.e_tableau(t)
        label = {"tableau": [list(r) for r in t], "syt_count": len(enumerate_syt(shape_of(t)))}
    elif args.contents:
        c = [as_rational(v) for v in args.contents.split(",")]
        if args.n is not None and args.n != len(c):
            raise UsageError(f"--n {args.n} does not match {len(c)} contents")
        if args.group == "hecke":
            x = algebra.psi_consecutive(len(c), q, c) * algebra.t_longest_inverse(len(c), q)
        else:
            x = algebra.phi_consecutive(len(c), c)
        label = {"contents": [str(v) for v in c]}
    else:
        raise UsageError("give --tableau or --contents")
    rep = algebra.idempotent_analysis(x)
    payload = dict(label, group=args.group, element=x.to_json(), **rep.to_json())
    if args.group == "hecke":
        payload["q"] = str(q)
    sym = "T" if args.group == "hecke" else ""
    pretty = (f"{x.format(sym)}\nidempotent after scaling: {rep.is_idempotent_after_scaling}"
              f" (scale {rep.scale})\ninvertible: {rep.is_invertible}\n"
              f"left ideal dimension: {rep.left_ideal_dim}")
    _emit(args, payload, pretty)
    return 0


def cmd_scan(args) -> int:
    if args.n != 3:
        raise UsageError("scan covers n = 3 (Phi(0, c2, c3))")
    if args.pairs:
        raw = json.loads(Path(args.pairs).read_text())
        pairs = [(as_rational(str(a)), as_rational(str(b))) for a, b in raw]
    else:
        pairs = [tuple(map(Fraction, p)) for p in algebra.LISTED_PAIRS]
        pairs += algebra.generic_pairs(args.samples, args.seed)
    reports = algebra.nonstandard_scan_n3(pairs)
    payload = {"n": 3, "reports": [r.to_json() for r in reports]}
    lines = []
    for r in reports:
        c = ", ".join(str(x) for x in r.candidate)
        if r.singular:
            lines.append(f"({c}): singular")
        else:
            lines.append(f"({c}): idempotent={r.is_idempotent_after_scaling} scale={r.scale} "
                         f"invertible={r.is_invertible} ideal_dim={r.left_ideal_dim}")
    _emit(args, payload, "\n".join(lines))
    return 0


# -- parser ----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, defaults: RunConfig, kernel: bool = True) -> None:
    if kernel:
        p.add_argument("--kind", "--kernel", dest="kind", choices=KINDS, default=defaults.kind)
        p.add_argument("--N", type=int, default=defaults.N)
        p.add_argument("--M", type=int, default=defaults.M)
    p.add_argument("--q", default=defaults.q, help="deformation parameter, e.g. 2 or 3/2")
    p.add_argument("--emit", choices=("json", "pretty"), default=defaults.emit)
    p.add_argument("--output", "-o", default=defaults.output)


def build_parser() -> argparse.ArgumentParser:
    defaults = RunConfig(emit=os.environ.get("YBFUSE_EMIT", "pretty"))
    if defaults.emit not in ("json", "pretty"):
        defaults.emit = "pretty"
    parser = argparse.ArgumentParser(prog="ybfuse", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="emit a base R-matrix and its unitarity scalar")
    _common(p, defaults)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("fuse", help="restricted fused matrix on W_T (x) W_T'")
    _common(p, defaults)
    p.add_argument("--tableau", required=True)
    p.add_argument("--tableau2", required=True)
    p.add_argument("--basis", help="JSON basis file")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _common(p, defaults)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--grid", default=defaults.grid, help="tight, spec or a degree")
    p.add_argument("--seed", type=int, default=defaults.seed)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--tableau", action="append", help="restrict to given tableaux (repeatable)")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="recompute a stored example matrix and diff it")
    p.add_argument("example", choices=goldens.NAMES)
    _common(p, defaults, kernel=False)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("idempotent", help="fusion-formula element and its analysis")
    p.add_argument("--group", choices=("sym", "hecke"), default="sym")
    p.add_argument("--n", type=int)
    p.add_argument("--tableau")
    p.add_argument("--contents", help="comma-separated evaluation points")
    _common(p, defaults, kernel=False)
    p.set_defaults(func=cmd_idempotent)

    p = sub.add_parser("scan", help="scan Phi(0, c2, c3) over candidate pairs")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--pairs", help="JSON list of [c2, c3] pairs")
    p.add_argument("--seed", type=int, default=defaults.seed)
    p.add_argument("--samples", type=int, default=20)
    _common(p, defaults, kernel=False)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        as_rational(args.q)
        return args.func(args)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        parser.error(str(exc))
    except YBFuseError as exc:
        print(f"ybfuse: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
