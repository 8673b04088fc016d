from fractions import Fraction
from itertools import product, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import perms, rationals
from ybfuse.errors import DegenerateBasis, InvalidSites, SizeMismatch, SubspaceNotInvariant
from ybfuse.exact import RationalFunction
from ybfuse.linalg import (
    ExactMatrix,
    TensorContext,
    column_space_basis,
    embed_pair,
    kron,
    left_inverse,
    perm_operator,
    perm_representation,
    rank,
    restrict_to_subspace,
    swap_matrix,
)

U = RationalFunction.var()


def basis_vector(ctx, word):
    v = ExactMatrix.zeros(ctx.dim, 1)
    v.a[ctx.index(word), 0] = Fraction(1)
    return v


def compose(p, s):
    """(p s)(k) = p(s(k))."""
    return tuple(p[i - 1] for i in s)


matrices2 = st.lists(rationals, min_size=4, max_size=4).map(
    lambda xs: ExactMatrix([xs[:2], xs[2:]]))


class TestKron:
    def test_identities(self):
        assert kron(ExactMatrix.identity(2), ExactMatrix.identity(3)) == ExactMatrix.identity(6)

    @given(matrices2, matrices2, matrices2)
    def test_associative(self, a, b, c):
        assert kron(a, kron(b, c)) == kron(kron(a, b), c)

    def test_swap_squared_on_basis_vector(self):
        ctx = TensorContext(2, 4)
        P = swap_matrix(2)
        out = kron(P, P) @ basis_vector(ctx, (0, 1, 1, 0))
        assert out == basis_vector(ctx, (1, 0, 0, 1))

    def test_index_convention(self):
        a = ExactMatrix([[1, 2], [3, 4]])
        b = ExactMatrix([[0, 5], [6, 7]])
        k = kron(a, b)
        assert k[1 * 2 + 0, 0 * 2 + 1] == a[1, 0] * b[0, 1]


class TestPermOperator:
    def test_identity(self):
        ctx = TensorContext(2, 3)
        assert perm_operator(ctx, (1, 2, 3)) == ExactMatrix.identity(8)

    def test_transposition(self):
        ctx = TensorContext(2, 2)
        assert perm_operator(ctx, (2, 1)) @ basis_vector(ctx, (0, 1)) == basis_vector(ctx, (1, 0))

    def test_three_cycle_literal(self):
        # pi = (1,2,3): pi(1)=2, pi(2)=3, pi(3)=1; x1 x2 x3 -> x2 x3 x1
        ctx = TensorContext(2, 3)
        P = perm_operator(ctx, (2, 3, 1))
        for w in product(range(2), repeat=3):
            assert P @ basis_vector(ctx, w) == basis_vector(ctx, (w[1], w[2], w[0]))
        assert P @ basis_vector(ctx, (0, 1, 1)) == basis_vector(ctx, (1, 1, 0))

    def test_not_a_permutation(self):
        with pytest.raises(InvalidSites):
            perm_operator(TensorContext(2, 3), (1, 1, 2))

    @pytest.mark.parametrize("n", [3, 4])
    def test_composition_rule(self, n):
        # the literal rule x_k -> x_{pi(k)} composes contravariantly
        ctx = TensorContext(2, n)
        for p in permutations(range(1, n + 1)):
            for s in [tuple(range(2, n + 1)) + (1,), (2, 1) + tuple(range(3, n + 1))]:
                lhs = perm_operator(ctx, p) @ perm_operator(ctx, s)
                assert lhs == perm_operator(ctx, compose(s, p))

    @given(st.data())
    def test_products_on_basis_vectors(self, data):
        n = data.draw(st.sampled_from([3, 4]))
        p, s = data.draw(perms(n)), data.draw(perms(n))
        ctx = TensorContext(2, n)
        prod_op = perm_operator(ctx, p) @ perm_operator(ctx, s)
        sp = compose(s, p)
        for w in product(range(2), repeat=n):
            expected = tuple(w[sp[k] - 1] for k in range(n))
            assert prod_op @ basis_vector(ctx, w) == basis_vector(ctx, expected)

    @given(st.data())
    def test_representation_is_homomorphic(self, data):
        n = data.draw(st.sampled_from([3, 4]))
        p, s = data.draw(perms(n)), data.draw(perms(n))
        ctx = TensorContext(2, n)
        assert (perm_representation(ctx, p) @ perm_representation(ctx, s)
                == perm_representation(ctx, compose(p, s)))

    def test_representation_of_transposition(self):
        ctx = TensorContext(3, 3)
        assert perm_representation(ctx, (3, 2, 1)) == perm_operator(ctx, (3, 2, 1))


class TestEmbedPair:
    op = ExactMatrix([[1, 2, 0, 0], [0, 3, 0, 1], [5, 0, 1, 0], [0, 0, 7, 1]])

    def test_adjacent_identity(self):
        assert embed_pair(TensorContext(2, 2), 1, 2, self.op) == self.op

    def test_reversed(self):
        P = swap_matrix(2)
        assert embed_pair(TensorContext(2, 2), 2, 1, self.op) == P @ self.op @ P

    def test_swap_outer_sites(self):
        ctx = TensorContext(3, 3)
        S = embed_pair(ctx, 1, 3, swap_matrix(3))
        for a, b, c in product(range(3), repeat=3):
            assert S @ basis_vector(ctx, (a, b, c)) == basis_vector(ctx, (c, b, a))

    def test_conjugation_form(self):
        ctx = TensorContext(2, 3)
        P23 = perm_operator(ctx, (1, 3, 2))
        assert embed_pair(ctx, 1, 3, self.op) == P23 @ embed_pair(ctx, 1, 2, self.op) @ P23

    def test_adjacent_is_kron(self):
        ctx = TensorContext(2, 3)
        I2 = ExactMatrix.identity(2)
        assert embed_pair(ctx, 2, 3, self.op) == kron(I2, self.op)
        assert embed_pair(ctx, 1, 2, self.op) == kron(self.op, I2)

    @pytest.mark.parametrize("i,j", [(1, 1), (0, 2), (1, 4)])
    def test_invalid_sites(self, i, j):
        with pytest.raises(InvalidSites):
            embed_pair(TensorContext(2, 3), i, j, self.op)

    def test_wrong_local_size(self):
        with pytest.raises(SizeMismatch):
            embed_pair(TensorContext(2, 3), 1, 2, ExactMatrix.identity(3))

    @given(st.permutations([1, 2, 3, 4]))
    def test_disjoint_commute(self, sites):
        i, j, k, l = sites
        ctx = TensorContext(2, 4)
        other = ExactMatrix([[2, 0, 1, 0], [0, 1, 0, 0], [1, 1, 1, 0], [0, 0, 3, 1]])
        a = embed_pair(ctx, i, j, self.op)
        b = embed_pair(ctx, k, l, other)
        assert a @ b == b @ a


class TestColumnSpace:
    def test_identity(self):
        cb = column_space_basis(ExactMatrix.identity(4))
        assert cb.rank == 4 and cb.pivots == (0, 1, 2, 3)
        assert cb.basis == ExactMatrix.identity(4)

    def test_zero(self):
        cb = column_space_basis(ExactMatrix.zeros(3))
        assert cb.rank == 0 and cb.basis.cols == 0

    def test_symmetric_square(self):
        m = ExactMatrix.identity(4) + swap_matrix(2)
        cb = column_space_basis(m)
        assert cb.rank == 3
        assert cb.pivots == (0, 1, 3)

    def test_basis_columns_are_scaled_pivot_columns(self):
        m = ExactMatrix([[2, 4, 1], [0, 0, 1], [6, 12, 0]])
        cb = column_space_basis(m)
        assert cb.pivots == (0, 2)
        assert cb.basis == ExactMatrix([[1, 1], [0, 1], [3, 0]])

    @given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=4, max_size=4))
    def test_columns_lie_in_span(self, rows):
        m = ExactMatrix(rows)
        cb = column_space_basis(m)
        if cb.rank == 0:
            assert m.is_zero()
            return
        L = left_inverse(cb.basis)
        assert cb.basis @ (L @ m) == m

    def test_symbolic_rank(self):
        m = ExactMatrix([[U, 1], [U * U, U]])
        assert rank(m) == 1
        assert rank(ExactMatrix([[U, 1], [1, U]])) == 2


class TestRestrict:
    def test_identity(self):
        B = ExactMatrix([[1, 0], [1, 1], [0, 2]])
        assert restrict_to_subspace(ExactMatrix.identity(3), B) == ExactMatrix.identity(2)

    def test_scalar(self):
        B = ExactMatrix([[1, 0], [0, 1], [0, 0]])
        assert restrict_to_subspace(ExactMatrix.identity(3).scale(2), B) == ExactMatrix.identity(2).scale(2)

    def test_symbolic(self):
        m = ExactMatrix([[U, 1, 0], [0, U, 0], [0, 0, 1]])
        B = ExactMatrix([[1, 0], [0, 1], [0, 0]])
        assert restrict_to_subspace(m, B) == ExactMatrix([[U, 1], [0, U]])

    def test_not_invariant(self):
        m = ExactMatrix([[1, 0], [1, 1]])
        with pytest.raises(SubspaceNotInvariant):
            restrict_to_subspace(m, ExactMatrix([[1], [0]]))

    def test_degenerate(self):
        with pytest.raises(DegenerateBasis):
            restrict_to_subspace(ExactMatrix.identity(2), ExactMatrix([[1, 2], [1, 2]]))

    @given(st.lists(rationals, min_size=4, max_size=4))
    def test_covariant(self, g):
        G = ExactMatrix([g[:2], g[2:]])
        if G.a[0, 0] * G.a[1, 1] - G.a[0, 1] * G.a[1, 0] == 0:
            return
        m = ExactMatrix([[U, 1, U], [2, U + 1, 0], [0, 0, 3]])
        B = ExactMatrix([[1, 0], [0, 1], [0, 0]])
        assert restrict_to_subspace(m, B @ G) == G.inverse() @ restrict_to_subspace(m, B) @ G


class TestMatrixBasics:
    def test_json_round_trip(self):
        m = ExactMatrix([[U / (U + 1), Fraction(1, 2)], [0, U]])
        assert ExactMatrix.from_json(m.to_json()) == m

    def test_slicing_keeps_two_dimensions(self):
        m = ExactMatrix([[1, 2], [3, 4]])
        assert m[0, :] == ExactMatrix([[1, 2]])
        assert m[:, 1] == ExactMatrix([[2], [4]])
        assert m[1, 1] == 4

    def test_ragged(self):
        with pytest.raises(SizeMismatch):
            ExactMatrix([[1, 2], [3]])
