"""Young diagrams, tableaux, contents and dimension counts."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterator, Sequence

from .errors import InvalidDeformationParameter
from .exact import as_rational

Shape = tuple[int, ...]
Tableau = tuple[tuple[int, ...], ...]


def as_shape(shape: Sequence[int]) -> Shape:
    s = tuple(int(x) for x in shape if int(x) > 0)
    if any(a < b for a, b in zip(s, s[1:])):
        raise ValueError(f"{shape} is not a partition")
    return s


def as_tableau(rows: Sequence[Sequence[int]]) -> Tableau:
    """Validate a standard Young tableau given as rows, e.g. [[1, 3], [2]]."""
    t = tuple(tuple(int(x) for x in r) for r in rows if len(r))
    as_shape([len(r) for r in t])
    n = sum(len(r) for r in t)
    if sorted(x for r in t for x in r) != list(range(1, n + 1)):
        raise ValueError(f"{rows} does not hold 1..{n} exactly once")
    for x, row in enumerate(t):
        for y, v in enumerate(row):
            if y and row[y - 1] > v:
                raise ValueError(f"row {x + 1} of {rows} is not increasing")
            if x and t[x - 1][y] > v:
                raise ValueError(f"column {y + 1} of {rows} is not increasing")
    return t


def shape_of(t: Tableau) -> Shape:
    return tuple(len(r) for r in t)


def size(shape: Sequence[int]) -> int:
    return sum(shape)


def conjugate(shape: Shape) -> Shape:
    return tuple(sum(1 for r in shape if r > j) for j in range(shape[0])) if shape else ()


def partitions(n: int, max_part: int | None = None) -> Iterator[Shape]:
    """Partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def hook_lengths(shape: Sequence[int]) -> list[list[int]]:
    shape = as_shape(shape)
    conj = conjugate(shape)
    return [[(shape[x] - y - 1) + (conj[y] - x - 1) + 1 for y in range(shape[x])]
            for x in range(len(shape))]


def f_lambda(shape: Sequence[int]) -> Fraction:
    """1 / product of hook lengths."""
    return Fraction(1, prod(h for row in hook_lengths(shape) for h in row))


def q_integer(m: int, q) -> Fraction:
    """[m] = (q^m - q^-m) / (q - q^-1)."""
    q = as_rational(q)
    return (q ** m - q ** -m) / (q - 1 / q)


def f_q_lambda(shape: Sequence[int], q) -> Fraction:
    """Product over nodes of q^{content} / [hook]."""
    q = as_rational(q)
    if q in (0, 1, -1):
        raise InvalidDeformationParameter(f"q = {q} is not allowed")
    shape = as_shape(shape)
    out = Fraction(1)
    for x, row in enumerate(hook_lengths(shape)):
        for y, h in enumerate(row):
            out *= q ** (y - x) / q_integer(h, q)
    return out


def node_contents(shape: Sequence[int]) -> list[list[int]]:
    return [[y - x for y in range(r)] for x, r in enumerate(as_shape(shape))]


def contents(t: Tableau) -> list[int]:
    """Content y - x of the node holding k, for k = 1..n."""
    out = {}
    for x, row in enumerate(t):
        for y, v in enumerate(row):
            out[v] = y - x
    return [out[k] for k in range(1, len(out) + 1)]


def quantum_contents(t: Tableau, q) -> list[Fraction]:
    q = as_rational(q)
    return [q ** (2 * c) for c in contents(t)]


def reading_word(t: Tableau) -> tuple[int, ...]:
    return tuple(x for r in t for x in r)


def enumerate_syt(shape: Sequence[int]) -> list[Tableau]:
    """Standard tableaux of ``shape``, sorted lexicographically by row reading word."""
    shape = as_shape(shape)
    n = sum(shape)
    out = []

    def fill(k, rows):
        if k > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for x in range(len(shape)):
            r = rows[x]
            if len(r) < shape[x] and (x == 0 or len(rows[x - 1]) > len(r)):
                r.append(k)
                fill(k + 1, rows)
                r.pop()

    fill(1, [[] for _ in shape])
    return sorted(out, key=reading_word)


def num_syt(shape: Sequence[int]) -> int:
    shape = as_shape(shape)
    n = sum(shape)
    return int(Fraction(prod(range(1, n + 1))) * f_lambda(shape))


def position(t: Tableau, k: int) -> tuple[int, int]:
    for x, row in enumerate(t):
        for y, v in enumerate(row):
            if v == k:
                return x, y
    raise ValueError(f"{k} not in tableau")


def swap_entries(t: Tableau, k: int) -> Tableau:
    """Exchange k and k+1 (the result need not be standard)."""
    def f(v):
        return k + 1 if v == k else k if v == k + 1 else v

    return tuple(tuple(f(v) for v in r) for r in t)


def admissible_transposition(t: Tableau, k: int) -> Tableau | None:
    """T with k, k+1 exchanged when that is again standard, else None."""
    (x1, y1), (x2, y2) = position(t, k), position(t, k + 1)
    if x1 == x2 or y1 == y2:
        return None
    return swap_entries(t, k)


def count_ssyt(shape: Sequence[int], N: int) -> int:
    """Semistandard tableaux with entries in 1..N, by enumeration."""
    return _count_hook(as_shape(shape), N, 0)


def count_hook_ssyt(shape: Sequence[int], N: int, M: int) -> int:
    """(N|M) hook tableaux over 1 < ... < N < 1' < ... < M'.

    Unprimed letters weakly increase along rows and strictly down columns;
    primed letters strictly along rows and weakly down columns.
    """
    return _count_hook(as_shape(shape), N, M)


@lru_cache(maxsize=None)
def _count_hook(shape: Shape, N: int, M: int) -> int:
    cells = [(x, y) for x, r in enumerate(shape) for y in range(r)]
    grid: dict[tuple[int, int], int] = {}
    alphabet = N + M

    def ok(a, x, y):
        if y:
            left = grid[(x, y - 1)]
            if a < left or (a == left and a >= N):
                return False
        if x:
            up = grid[(x - 1, y)]
            if a < up or (a == up and a < N):
                return False
        return True

    def go(i):
        if i == len(cells):
            return 1
        x, y = cells[i]
        total = 0
        for a in range(alphabet):
            if ok(a, x, y):
                grid[(x, y)] = a
                total += go(i + 1)
        grid.pop(cells[i], None)
        return total

    return go(0)


def schur_weyl_dimension(shape: Sequence[int], N: int, M: int = 0) -> int:
    return count_hook_ssyt(shape, N, M) if M else count_ssyt(shape, N)


def tableau_to_json(t: Tableau) -> list[list[int]]:
    return [list(r) for r in t]


def row_tableau(n: int) -> Tableau:
    return (tuple(range(1, n + 1)),)


def column_tableau(n: int) -> Tableau:
    return tuple((k,) for k in range(1, n + 1))
