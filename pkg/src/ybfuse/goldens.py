"""Stored reference matrices and their recomputation.

Each JSON file under ``golden/`` holds a sparse matrix whose entries are small
arithmetic expressions in the spectral variable (``u`` or ``alpha``) and
``q``.  Expressions are parsed with :mod:`ast` and evaluated over Q(t), so
symbolic-q entries are instantiated at whatever q is configured.
"""

from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .exact import RationalFunction, as_rational
from .fusion import fused_operator, restrict_fused, tableau_contents
from .kernels import KernelSpec, r_matrix
from .linalg import ExactMatrix, TensorContext, kron, restrict_to_subspace

NAMES = ("ex-fus1", "ex-fus2", "mat-Sn", "ex-Sn-21a", "ex-Ra", "ex-Ra-s", "mat-Hn")


class _Evaluator(ast.NodeVisitor):
    def __init__(self, var: str, q: Fraction):
        self.env = {var: RationalFunction.var(), "q": RationalFunction.const(q)}
        self.q = q
        t = RationalFunction.var()
        qq = RationalFunction.const(q)
        qd = qq - 1 / qq
        self.funcs = {
            "qn": lambda m: (qq ** m - qq ** (-m)) / qd,
            "qa": lambda m: (qq ** m * t - qq ** (-m)) / qd,
            "pa": lambda: (t * t / qq + (qq ** 3 - 2 * qq - 2 / qq + qq ** -3) * t + qq) / (qd * qd),
        }

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_Constant(self, node):
        if isinstance(node.value, int):
            return RationalFunction.const(node.value)
        raise ValueError(f"unsupported constant {node.value!r}")

    def visit_Name(self, node):
        try:
            return self.env[node.id]
        except KeyError:
            raise ValueError(f"unknown name {node.id!r}") from None

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise ValueError("unsupported unary operator")

    def visit_BinOp(self, node):
        a = self.visit(node.left)
        if isinstance(node.op, ast.Pow):
            if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                raise ValueError("exponents must be integer literals")
            return a ** node.right.value
        b = self.visit(node.right)
        ops = {ast.Add: lambda: a + b, ast.Sub: lambda: a - b,
               ast.Mult: lambda: a * b, ast.Div: lambda: a / b}
        for op, fn in ops.items():
            if isinstance(node.op, op):
                return fn()
        raise ValueError("unsupported binary operator")

    def visit_Call(self, node):
        if not isinstance(node.func, ast.Name) or node.func.id not in self.funcs:
            raise ValueError("unknown function")
        args = []
        for a in node.args:
            v = self.visit(a)
            args.append(int(v.constant()))
        return self.funcs[node.func.id](*args)

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax {type(node).__name__}")


def evaluate_expression(text: str, var: str, q) -> RationalFunction:
    return _Evaluator(var, as_rational(q)).visit(ast.parse(text, mode="eval"))


def load(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(name)
    return json.loads(resources.files("ybfuse.golden").joinpath(f"{name}.json").read_text())


def _vector(terms, d: int, var: str, q) -> list:
    n = len(terms[0][1])
    ctx = TensorContext(d, n)
    v = [Fraction(0)] * ctx.dim
    for coef, word in terms:
        v[ctx.index([a - 1 for a in word])] += evaluate_expression(coef, var, q).constant()
    return v


def _basis(vectors, d: int, var: str, q) -> ExactMatrix:
    cols = [_vector(v, d, var, q) for v in vectors]
    return ExactMatrix([list(r) for r in zip(*cols)])


def expected_matrix(data: dict, q) -> ExactMatrix:
    var = data["variable"]
    n = data["size"]
    m = ExactMatrix.zeros(n)
    for key, text in data["entries"].items():
        i, j = (int(x) - 1 for x in key.split(","))
        m.a[i, j] = evaluate_expression(text, var, q)
    if "prefactor" in data:
        m = m.scale(evaluate_expression(data["prefactor"], var, q))
    return m.map(lambda x: x.constant() if isinstance(x, RationalFunction) and x.is_constant() else x)


def computed_matrix(data: dict, q) -> ExactMatrix:
    spec = data["kernel"]
    k = KernelSpec(spec["kind"], spec["N"], spec["M"], as_rational(q))
    var = data["variable"]
    if data["source"] == "kernel":
        return r_matrix(k)
    if "basis" in data:
        B = _basis(data["basis"], k.d, var, q)
        op = fused_operator(k, data["c"], data["cbar"])
        return restrict_to_subspace(op, B)
    B1 = _basis(data["factor_basis"][0], k.d, var, q)
    B2 = _basis(data["factor_basis"][1], k.d, var, q)
    return restrict_fused(k, data["tableau"], data["tableau2"], kron(B1, B2)).matrix


@dataclass
class GoldenReport:
    name: str
    passed: bool
    computed: ExactMatrix
    expected: ExactMatrix
    mismatches: list

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "mismatches": [f"{i + 1},{j + 1}" for i, j in self.mismatches],
                "matrix": self.computed.to_json()}


def reproduce(name: str, q=Fraction(2)) -> GoldenReport:
    data = load(name)
    got = computed_matrix(data, q)
    want = expected_matrix(data, q)
    bad = [(i, j) for i in range(want.rows) for j in range(want.cols)
           if got.a[i, j] != want.a[i, j]]
    return GoldenReport(name, got.shape == want.shape and not bad, got, want, bad)
