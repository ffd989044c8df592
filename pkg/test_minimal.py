import pytest

from conftest import lin
from models.minimal import (
    build_Ilambda,
    coset_reps,
    d0,
    divide_by_block_product,
    h0_sign_table,
    is_block_skew,
    minimality_checks,
    partitions,
    s_action,
    shat_action,
    specialize_h0,
    standard_index,
)
from models.tensor import TensorVec, WeightLambda
from utils.exactalg import InvariantViolationError, Poly


def f12(n):
    return lin(n, [1, -1] + [0] * (n - 2), 1)


class TestShatAction:
    def test_constant_is_fixed(self):
        assert shat_action(Poly.one(3), 1) == Poly.one(3)

    def test_block_factor_is_skew(self):
        assert shat_action(f12(3), 1) == -f12(3)

    def test_chain_reaches_121_entry(self):
        # -ŝ_2 (z1 - z2 + h) = z3 - z1 - 2h
        assert -shat_action(f12(3), 2) == lin(3, [-1, 0, 1], -2)


class TestSAction:
    def test_i11_is_skew(self):
        ilam = build_Ilambda(WeightLambda.of((1, 1)))
        assert s_action(ilam, 1) == -ilam

    def test_involution(self, ring3):
        z1, z2, z3, h = ring3
        v = TensorVec(WeightLambda.of((2, 1)), {(1, 1, 2): z1 * z3 + h, (1, 2, 1): z2 ** 2, (2, 1, 1): z1 - h})
        for i in (1, 2):
            assert s_action(s_action(v, i), i) == v

    def test_braid(self, ring3):
        z1, z2, z3, h = ring3
        v = TensorVec(WeightLambda.of((2, 1)), {(1, 1, 2): z1 * z2 * z3, (1, 2, 1): z1 ** 2 - h * z3, (2, 1, 1): z2})
        assert s_action(s_action(s_action(v, 1), 2), 1) == s_action(s_action(s_action(v, 2), 1), 2)


class TestD0AndCosets:
    def test_d0(self):
        assert d0(WeightLambda.of((1, 1))) == Poly.one(2)
        assert d0(WeightLambda.of((2, 1))) == f12(3)
        assert d0(WeightLambda.of((2, 2))) == f12(4) * lin(4, [0, 0, 1, -1], 1)

    def test_d0_degree_is_k(self, small_partitions):
        for lam in small_partitions:
            assert d0(lam).is_homogeneous(lam.k())

    def test_coset_reps_11(self):
        reps = coset_reps(WeightLambda.of((1, 1)))
        assert [(r.target, r.sign) for r in reps] == [((1, 2), 1), ((2, 1), -1)]

    def test_coset_reps_21_signs(self):
        reps = coset_reps(WeightLambda.of((2, 1)))
        assert [r.sign for r in reps] == [1, -1, 1]

    def test_coset_reps_22_count(self):
        assert len(coset_reps(WeightLambda.of((2, 2)))) == 6

    def test_standard_index(self):
        assert standard_index(WeightLambda.of((2, 1, 1))) == (1, 1, 2, 3)


class TestIlambda:
    def test_11(self):
        assert build_Ilambda(WeightLambda.of((1, 1))).render() == "v[1,2] - v[2,1]"

    def test_21(self):
        ilam = build_Ilambda(WeightLambda.of((2, 1)))
        assert ilam.coefficient((1, 1, 2)) == f12(3)
        assert ilam.coefficient((1, 2, 1)) == lin(3, [-1, 0, 1], -2)
        assert ilam.coefficient((2, 1, 1)) == lin(3, [0, 1, -1], 1)

    def test_22(self):
        ilam = build_Ilambda(WeightLambda.of((2, 2)))
        a = f12(4) * lin(4, [0, 0, 1, -1], 1)
        b = lin(4, [1, 0, 0, -1], 2) * lin(4, [0, 1, -1, 0], 1)
        expected = {
            (1, 1, 2, 2): a,
            (2, 2, 1, 1): a,
            (1, 2, 2, 1): b,
            (2, 1, 1, 2): b,
            (1, 2, 1, 2): -a - b,
            (2, 1, 2, 1): -a - b,
        }
        for L, c in expected.items():
            assert ilam.coefficient(L) == c, L

    def test_descent_rule_does_not_matter(self):
        for parts in [(2, 2), (3, 2), (2, 1, 1)]:
            lam = WeightLambda.of(parts)
            assert build_Ilambda(lam, "leftmost") == build_Ilambda(lam, "rightmost")

    def test_trailing_zero(self):
        assert build_Ilambda(WeightLambda.of((2, 1, 0))).render() == build_Ilambda(WeightLambda.of((2, 1))).render()

    def test_not_a_partition(self):
        with pytest.raises(InvariantViolationError):
            build_Ilambda(WeightLambda.of((1, 2)))

    def test_block_skew_normalization(self):
        lam = WeightLambda.of((3, 1))
        f = build_Ilambda(lam).coefficient(standard_index(lam))
        assert is_block_skew(f, lam)
        assert divide_by_block_product(f, lam) == Poly.one(4)


class TestQuasiclassical:
    def test_21(self):
        classical = specialize_h0(build_Ilambda(WeightLambda.of((2, 1))))
        assert classical.coefficient((1, 1, 2)) == lin(3, [1, -1, 0])
        assert classical.coefficient((1, 2, 1)) == lin(3, [-1, 0, 1])
        assert classical.coefficient((2, 1, 1)) == lin(3, [0, 1, -1])

    def test_11(self):
        ilam = build_Ilambda(WeightLambda.of((1, 1)))
        assert specialize_h0(ilam) == ilam

    def test_22_product_structure(self):
        table = h0_sign_table(WeightLambda.of((2, 2)))
        assert len(table) == 6
        assert all(s in (1, -1) for s in table.values())

    @pytest.mark.slow
    def test_all_partitions_up_to_6(self):
        for n in range(2, 7):
            for lam in partitions(n):
                assert all(h0_sign_table(lam).values()), lam


class TestMinimality:
    def test_small(self, small_partitions):
        for lam in small_partitions:
            for check, passed, detail in minimality_checks(lam):
                assert passed, (lam, check, detail)

    @pytest.mark.slow
    def test_all_partitions_up_to_6(self):
        for n in range(2, 7):
            for lam in partitions(n):
                assert all(passed for _, passed, _ in minimality_checks(lam)), lam


class TestPartitions:
    def test_order_and_padding(self):
        assert [lam.parts for lam in partitions(3)] == [(3, 0), (2, 1), (1, 1, 1)]

    def test_count(self):
        assert len(list(partitions(6))) == 11
