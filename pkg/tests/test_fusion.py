from fractions import Fraction
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ybfuse import goldens
from ybfuse.combinatorics import (
    as_tableau,
    column_tableau,
    count_hook_ssyt,
    count_ssyt,
    enumerate_syt,
    partitions,
    row_tableau,
)
from ybfuse.errors import InvalidContents, NotAdmissible, SingularContents
from ybfuse.exact import RationalFunction
from ybfuse.fusion import (
    conjugation_Ak,
    f_hat_operator,
    f_of_tableau,
    f_operator,
    fused_operator,
    fused_ybe_factors,
    fused_ybe_degree,
    intertwining_checks,
    longest_permutation,
    order_checks,
    restrict_fused,
    tableau_contents,
    verify_fused_ybe,
    verify_invariance,
    verify_transposition_equivalence,
)
from ybfuse.kernels import KernelSpec, gamma, r_matrix
from ybfuse.linalg import (
    ExactMatrix,
    TensorContext,
    column_space_basis,
    embed_pair,
    hstack,
    kron,
    perm_representation,
    rank,
    restrict_to_subspace,
    swap_matrix,
)
from ybfuse.pit import check_identity

U = RationalFunction.var()
YANG = KernelSpec("yang", 2)
HECKE = KernelSpec("hecke", 2, q=2)
SUPER = KernelSpec("super-yang", 1, 1)
SUPER_HECKE = KernelSpec("super-hecke", 1, 1, q=2)
I4 = ExactMatrix.identity(4)
P = swap_matrix(2)


def same_column_space(a, b):
    return rank(a) == rank(b) == rank(hstack([a, b]))


def generic_additive(n, draw):
    xs = draw(st.lists(st.integers(-20, 20).map(lambda x: Fraction(x, 3)),
                       min_size=n, max_size=n, unique=True))
    assume(all(abs(a - b) != 1 for a in xs for b in xs))
    return xs


class TestFusedOperator:
    def test_symmetric_example(self):
        m = fused_operator(YANG, (0, 1), (0,)).matrix
        assert m.shape == (8, 8)
        assert m[0, 0] == (U - 1) / (U + 1)

    def test_antisymmetric_example(self):
        m = fused_operator(YANG, (0, -1), (0,)).matrix
        assert m[0, 0] == (U - 2) / U

    @pytest.mark.parametrize("k", [YANG, HECKE, SUPER])
    def test_single_factor(self, k):
        a, b = (Fraction(3), Fraction(1, 2)) if k.is_hecke else (Fraction(2), Fraction(-1))
        m = fused_operator(k, (a,), (b,)).matrix
        R = r_matrix(k)
        shifted = R.map(lambda e: e.compose(k.shift(U, a, b)) if isinstance(e, RationalFunction) else e)
        assert m == shifted

    def test_zero_multiplicative_content(self):
        with pytest.raises(InvalidContents):
            fused_operator(HECKE, (0, 1), (1,))

    @pytest.mark.parametrize("k", [YANG, HECKE])
    def test_two_orders(self, k):
        c, cbar = ((1, 4, Fraction(1, 4)), (2, 3)) if k.is_hecke else ((0, 1, -1), (0, 5))
        assert fused_operator(k, c, cbar, "R").matrix == fused_operator(k, c, cbar, "R2").matrix

    @given(st.data())
    def test_orders_property(self, data):
        n = data.draw(st.integers(1, 3))
        nb = data.draw(st.integers(1, 2))
        c = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
        cbar = data.draw(st.lists(st.integers(-3, 3), min_size=nb, max_size=nb))
        assert fused_operator(YANG, c, cbar, "R").matrix == fused_operator(YANG, c, cbar, "R2").matrix


class TestF:
    def test_symmetrizer(self):
        assert f_operator(YANG, (0, 1)) == I4 + P

    def test_antisymmetrizer(self):
        assert f_operator(YANG, (0, -1)) == I4 - P

    def test_generic(self):
        F = f_operator(YANG, (0, 5))
        assert F == I4 + P.scale(Fraction(1, 5))
        assert rank(F) == 4

    def test_singular(self):
        with pytest.raises(SingularContents):
            f_operator(YANG, (0, 1, 0))

    @pytest.mark.parametrize("k", [YANG, HECKE])
    def test_hat_two_sites(self, k):
        c = (Fraction(3), Fraction(1, 2))
        F = f_operator(k, c)
        assert f_hat_operator(k, c) == F @ P

    def test_hat_symmetrizer(self):
        assert f_hat_operator(YANG, (0, 1)) == I4 + P

    def test_hat_row_image(self):
        c = (0, 1, 2)
        F, Fh = f_operator(YANG, c), f_hat_operator(YANG, c)
        assert same_column_space(F, Fh) and rank(F) == 4

    @given(st.data())
    def test_lex_revlex(self, data):
        n = data.draw(st.integers(2, 4))
        c = generic_additive(n, data.draw)
        assert f_operator(YANG, c) == f_operator(YANG, c, "revlex")

    @given(st.data())
    def test_hat_relation(self, data):
        n = data.draw(st.integers(2, 4))
        c = generic_additive(n, data.draw)
        w = perm_representation(TensorContext(2, n), longest_permutation(n))
        F, Fh = f_operator(YANG, c), f_hat_operator(YANG, c)
        assert Fh == F @ w
        assert same_column_space(F, Fh)

    @pytest.mark.parametrize("k", [HECKE, SUPER, SUPER_HECKE])
    def test_hat_relation_other_kinds(self, k):
        c = [Fraction(2 * i + 3, 5 + i) for i in range(3)]
        assert order_checks(k, c, [Fraction(7, 2)]) == {
            "fused_orders": True, "lex_revlex": True, "hat_relation": True}


class TestTableau:
    def test_hook_basis(self):
        img = f_of_tableau(YANG, as_tableau([[1, 3], [2]]))
        ctx = TensorContext(2, 3)
        want = ExactMatrix.zeros(8, 2)
        for col, (a, b) in enumerate([((0, 1, 0), (1, 0, 0)), ((0, 1, 1), (1, 0, 1))]):
            want.a[ctx.index(a), col] = Fraction(1)
            want.a[ctx.index(b), col] = Fraction(-1)
        assert img.rank == 2
        assert same_column_space(img.basis.basis, want)

    def test_repeated_content(self):
        t = as_tableau([[1, 2], [3, 4]])
        assert tableau_contents(YANG, t) == [0, 1, -1, 0]
        assert f_of_tableau(YANG, t).rank == 1

    def test_column_of_three(self):
        assert f_of_tableau(YANG, column_tableau(3)).rank == 0

    def test_quantum_contents(self):
        assert tableau_contents(HECKE, row_tableau(2)) == [1, 4]

    @pytest.mark.parametrize("k,count", [
        (KernelSpec("yang", 1), lambda lam: count_ssyt(lam, 1)),
        (YANG, lambda lam: count_ssyt(lam, 2)),
        (KernelSpec("yang", 3), lambda lam: count_ssyt(lam, 3)),
        (SUPER, lambda lam: count_hook_ssyt(lam, 1, 1)),
        (KernelSpec("super-yang", 2, 1), lambda lam: count_hook_ssyt(lam, 2, 1)),
        (HECKE, lambda lam: count_ssyt(lam, 2)),
        (SUPER_HECKE, lambda lam: count_hook_ssyt(lam, 1, 1)),
    ], ids=["yang1", "yang2", "yang3", "super11", "super21", "hecke2", "superhecke11"])
    def test_ranks(self, k, count):
        for n in range(1, 5):
            if k.d == 3 and n == 4 and k.is_super:
                continue
            for lam in partitions(n):
                for t in enumerate_syt(lam):
                    assert f_of_tableau(k, t).rank == count(lam), (t, k)

    @pytest.mark.parametrize("t", [row_tableau(3), row_tableau(2), as_tableau([[1, 3], [2]]),
                                   column_tableau(2)])
    def test_matches_direct_evaluation(self, t):
        F = f_operator(YANG, tableau_contents(YANG, t))
        assert same_column_space(F, f_of_tableau(YANG, t).operator)
        assert F == f_of_tableau(YANG, t).operator


class TestRestrict:
    def test_default_basis_row(self):
        res = restrict_fused(YANG, [[1, 2]], [[1, 2]])
        expected = goldens.expected_matrix(goldens.load("mat-Sn"), 2)
        assert res.matrix == expected
        assert res.matrix[0, 0] == (U - 2) * (U - 1) / (U * (U + 1))

    def test_hook_prefactor(self):
        res = goldens.reproduce("ex-Sn-21a")
        assert res.passed
        assert res.computed[0, 0] == (U - 2) / (U - 1) * U / (U + 1)

    def test_hecke_row(self):
        assert goldens.reproduce("mat-Hn").computed.shape == (9, 9)
        res = restrict_fused(HECKE, [[1, 2]], [[1, 2]])
        assert res.matrix.rows == 9


class TestConjugation:
    t = as_tableau([[1, 3], [2]])

    def test_example(self):
        A = conjugation_Ak(YANG, tableau_contents(YANG, self.t), 2)
        ctx = TensorContext(2, 3)
        P23 = embed_pair(ctx, 2, 3, P)
        assert A == P23 - ExactMatrix.identity(8).scale(Fraction(1, 2))

    @pytest.mark.parametrize("k", [YANG, HECKE, SUPER])
    def test_inverse(self, k):
        c = tableau_contents(k, self.t)
        A = conjugation_Ak(k, c, 2)
        ctx = TensorContext(k.d, 3)
        g = gamma(k)(k.combine(c[1], c[2]))
        R = r_matrix(k).evaluate(k.combine(c[1], c[2]))
        Ainv = (embed_pair(ctx, 2, 3, R) @ embed_pair(ctx, 2, 3, swap_matrix(k.d))).scale(1 / g)
        assert A @ Ainv == ExactMatrix.identity(k.d ** 3)

    def test_not_admissible(self):
        with pytest.raises(NotAdmissible):
            conjugation_Ak(YANG, (0, 1), 1)
        with pytest.raises(NotAdmissible):
            conjugation_Ak(YANG, (0, -1), 1)

    @given(st.data())
    def test_intertwining(self, data):
        n = data.draw(st.integers(2, 3))
        c = generic_additive(n, data.draw)
        cbar = [data.draw(st.integers(-5, 5).map(Fraction))]
        assert all(intertwining_checks(YANG, c, cbar).values())

    @pytest.mark.parametrize("k", [HECKE, SUPER_HECKE])
    def test_intertwining_multiplicative(self, k):
        c = [Fraction(3), Fraction(5, 7), Fraction(11, 2)]
        assert all(intertwining_checks(k, c, [Fraction(2, 9)]).values())


class TestEquivalence:
    def test_yang_example(self):
        rep = verify_transposition_equivalence(YANG, self_t(), [[1]], 2)
        assert rep.passed and rep.dim == 4 and rep.swapped == ((1, 2), (3,))

    def test_yang_example_in_printed_basis(self):
        data = goldens.load("ex-Sn-21a")
        B1 = goldens._basis(data["factor_basis"][0], 2, "u", 2)
        B2 = goldens._basis(data["factor_basis"][1], 2, "u", 2)
        A = conjugation_Ak(YANG, (0, -1, 1), 2)
        swapped = restrict_fused(YANG, [[1, 2], [3]], [[1]], kron(A @ B1, B2)).matrix
        assert swapped == goldens.expected_matrix(data, 2)

    def test_hecke(self):
        assert verify_transposition_equivalence(HECKE, self_t(), [[1]], 2).passed

    def test_not_admissible(self):
        with pytest.raises(NotAdmissible):
            verify_transposition_equivalence(YANG, row_tableau(2), [[1]], 1)


def self_t():
    return as_tableau([[1, 3], [2]])


class TestFusedYBE:
    def test_worked_case(self):
        assert verify_fused_ybe(YANG, [[1, 2]], [[1]], [[1]]).passed

    def test_worked_case_full_grid(self):
        D = fused_ybe_degree(2, 1, 1)
        assert D == 10
        rep = verify_fused_ybe(YANG, [[1, 2]], [[1]], [[1]], degree=D)
        assert rep.passed and rep.points_checked == (D + 1) ** 2

    @pytest.mark.parametrize("k", [YANG, HECKE, SUPER, SUPER_HECKE])
    def test_single_sites(self, k):
        assert verify_fused_ybe(k, [[1]], [[1]], [[1]]).passed

    def test_hecke(self):
        assert verify_fused_ybe(HECKE, [[1, 2]], [[1]], [[1]]).passed

    def test_raw_contents(self):
        rep = verify_fused_ybe(YANG, None, None, None, contents_override=[(0, 5), (1,), (-2,)])
        assert rep.passed

    def test_mismatched_shifts_fail(self):
        lhs, rhs = fused_ybe_factors(YANG, (0, 1), (0,), (0,))
        lhs2, _ = fused_ybe_factors(YANG, (0, 2), (0,), (0,))
        mixed = lhs2[:2] + lhs[2:]
        assert not check_identity(TensorContext(2, 4), mixed, rhs).passed


class TestInvariance:
    def test_symmetric_square(self):
        rep = verify_invariance(YANG, [[1, 2]], [[1]])
        assert rep.passed and rep.left_dim == 3 * 2

    def test_exterior_square(self):
        rep = verify_invariance(YANG, [[1], [2]], [[1]])
        assert rep.passed and rep.left_dim == 1 * 2

    def test_generic_contents_full_space(self):
        F = f_operator(YANG, (0, 5))
        op = fused_operator(YANG, (0, 5), (0,))
        B = kron(column_space_basis(F).basis, ExactMatrix.identity(2))
        assert B.cols == 8
        assert restrict_to_subspace(op, B).rows == 8

    @pytest.mark.parametrize("k", [HECKE, SUPER, SUPER_HECKE])
    def test_other_kinds(self, k):
        for t in enumerate_syt((2, 1)):
            assert verify_invariance(k, t, [[1, 2]]).passed
