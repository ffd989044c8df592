import pytest

from conftest import lin
from models.combinat import LinkPattern, enumerate_syt, exchange_matrices
from models.joseph import (
    check_cyclicity,
    check_exchange,
    check_exchbis,
    check_identification,
    codimension_check,
    cyclic_shift,
    cyclic_unshift,
    equation_weight,
    exchange_failures,
    intertwiner_tworow,
    joseph_family,
    joseph_twocol,
    mdeg_complete_intersection,
    orbital_variety_dim,
)
from models.minimal import partitions
from utils.exactalg import LinForm, Poly, UsageError


def family_values(shape, family="tworow"):
    J = joseph_family(shape, family)
    return [J[t] for t in J.basis]


class TestGoldenValues:
    def test_11(self):
        assert family_values((1, 1)) == [Poly.one(2)]

    def test_21(self):
        assert family_values((2, 1)) == [lin(3, [1, -1, 0], 1), lin(3, [0, 1, -1], 1)]

    def test_22(self):
        tabd, tabe = family_values((2, 2))
        assert tabd == lin(4, [1, -1, 0, 0], 1) * lin(4, [0, 0, 1, -1], 1)
        assert tabe == lin(4, [0, 1, -1, 0], 1) * lin(4, [1, 0, 0, -1], 2)

    def test_twocol_agrees_on_21_and_22(self):
        for shape in [(2, 1), (2, 2)]:
            assert family_values(shape, "twocol") == family_values(shape, "tworow")

    def test_intertwiner_21(self):
        phi = intertwiner_tworow((2, 1))
        tabb, tabc = phi.basis
        assert phi.columns[tabb].render() == "v[1,1,2] - v[1,2,1]"
        assert phi.columns[tabc].render() == "-v[1,2,1] + v[2,1,1]"

    def test_json_keys(self):
        obj = joseph_family((2, 1), "tworow").to_json_obj()
        assert sorted(obj["J"]) == ["123", "132"]


class TestMultidegrees:
    def test_equation_weight(self):
        assert equation_weight(3, 1, 3, 2) == LinForm.of([1, 0, -1], 2)

    def test_empty_intersection(self):
        assert mdeg_complete_intersection([], 3) == Poly.one(3)
        with pytest.raises(UsageError):
            mdeg_complete_intersection([])

    def test_nested_arches(self):
        lp = LinkPattern.from_arches(4, [(1, 4), (2, 3)])
        assert joseph_twocol(lp) == lin(4, [1, 0, 0, -1], 2) * lin(4, [0, 1, -1, 0], 1)

    def test_orbital_variety_dim(self):
        assert orbital_variety_dim((2, 1)) == 2
        assert orbital_variety_dim((1, 1, 1)) == 3

    def test_codimension_is_k(self):
        for n in range(1, 7):
            for lam in partitions(n):
                assert codimension_check(lam.parts), lam


class TestIdentification:
    @pytest.mark.parametrize("shape", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 2)])
    def test_tworow(self, shape):
        report = check_identification(shape, "tworow")
        assert report.passed and report.global_sign == 1

    @pytest.mark.parametrize("shape", [(2, 1), (2, 2), (2, 1, 1), (2, 2, 1)])
    def test_twocol(self, shape):
        report = check_identification(shape, "twocol")
        assert report.passed

    def test_single_column_sign(self):
        report = check_identification((1, 1, 1), "twocol")
        assert report.passed and report.global_sign == -1

    def test_cross_family(self):
        assert check_identification((2, 2), "twocol").cross_family is True

    def test_unknown_family(self):
        with pytest.raises(UsageError):
            check_identification((2, 1), "threerow")

    @pytest.mark.slow
    def test_all_up_to_6(self):
        for n in range(2, 7):
            for lam in partitions(n):
                shape = lam.nonzero()
                if len(shape) <= 2:
                    assert check_identification(shape, "tworow").passed, shape
                if max(shape) <= 2:
                    assert check_identification(shape, "twocol").passed, shape


class TestExchange:
    @pytest.mark.parametrize("shape", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)])
    def test_tworow(self, shape):
        J = joseph_family(shape, "tworow")
        matrices = exchange_matrices(shape, "tworow")
        assert exchange_failures(J, matrices) == []
        assert check_exchbis(J, matrices)

    @pytest.mark.parametrize("shape", [(2, 1, 1), (2, 2), (2, 2, 1)])
    def test_twocol(self, shape):
        J = joseph_family(shape, "twocol")
        matrices = exchange_matrices(shape, "twocol")
        assert check_exchange(J, matrices)
        assert check_exchbis(J, matrices)


class TestCyclicity:
    @pytest.mark.parametrize("shape", [(1, 1), (2, 2), (3, 3)])
    def test_tworow(self, shape):
        assert check_cyclicity(shape, "tworow")

    @pytest.mark.parametrize("shape", [(2,), (2, 2)])
    def test_twocol(self, shape):
        assert check_cyclicity(shape, "twocol")

    def test_non_rectangular(self):
        with pytest.raises(UsageError):
            check_cyclicity((2, 1), "tworow")

    def test_shift_and_unshift_are_inverse(self):
        J = lin(3, [1, -2, 0], 1) * lin(3, [0, 1, -1], 0)
        assert cyclic_unshift(cyclic_shift(J, 2), 2) == J

    def test_tableau_basis_is_sorted(self):
        assert joseph_family((3, 3), "tworow").basis == enumerate_syt((3, 3))
