from itertools import combinations

import pytest

from models.minimal import build_Ilambda
from models.residue import (
    Integrand,
    assemble_ihat,
    build_integrand,
    component_index,
    iterated_residue,
    residue_at,
    residue_component_check,
)
from models.tensor import WeightLambda
from utils.exactalg import FactoredRatio, LinForm, MultiplicityError, Poly, UsageError


class TestIntegrand:
    def test_component_index(self):
        assert component_index(4, (2, 4)) == (1, 2, 1, 2)

    def test_orientation(self):
        assert build_integrand((1, 1), (2,)).orientation == -1
        assert build_integrand((2, 2), (3, 4)).orientation == 1

    def test_ring_layout(self):
        intg = build_integrand((2, 1), (2,))
        assert intg.n == 3 and intg.p == 1
        assert intg.w_index(1) == 3
        assert intg.body.nvars == 4

    @pytest.mark.parametrize("a", [(4,), (1, 2), (0,), (2, 1)])
    def test_bad_index_set(self, a):
        with pytest.raises(UsageError):
            build_integrand((2, 1), a)


class TestResidues:
    def test_single_pole(self):
        # (w + h) / (w - z1) at w = z1 in the ring (z1, w)
        r = FactoredRatio.from_forms(2, [LinForm.of([0, 1], 1)], [LinForm.of([-1, 1])])
        (pole,) = r.denom
        value = residue_at(r, 1, pole)
        assert value.expand() == Poly.linear(2, [1, 0], 1)

    def test_n2(self):
        assert iterated_residue(build_integrand((1, 1), (2,))) == Poly.one(2)
        assert iterated_residue(build_integrand((1, 1), (1,))) == Poly.constant(2, -1)

    @pytest.mark.parametrize("convention", ["inside", "outside"])
    def test_21(self, convention):
        ilam = build_Ilambda(WeightLambda.of((2, 1)))
        for a in [(1,), (2,), (3,)]:
            value = iterated_residue(build_integrand((2, 1), a), convention)
            assert value == ilam.coefficient(component_index(3, a))

    def test_normalization_component(self):
        # a = (3, 4) for λ = (2, 2) is the L_0 component, D_0
        value = iterated_residue(build_integrand((2, 2), (3, 4)))
        ilam = build_Ilambda(WeightLambda.of((2, 2)))
        assert value == ilam.coefficient((1, 1, 2, 2))

    def test_double_pole(self):
        double = FactoredRatio(3, 1, denom={LinForm.of([-1, 0, 1]): 2})
        intg = Integrand((1, 1), (1,), double, 1)
        with pytest.raises(MultiplicityError):
            iterated_residue(intg)

    def test_unknown_convention(self):
        with pytest.raises(UsageError):
            iterated_residue(build_integrand((1, 1), (1,)), "sideways")


class TestAssembly:
    @pytest.mark.parametrize("shape", [(1, 1), (2, 1), (2, 2), (3, 1), (4, 1), (2, 0), (5, 0)])
    def test_matches_ilambda(self, shape):
        ilam = build_Ilambda(WeightLambda.of(shape))
        for convention in ("inside", "outside"):
            assert assemble_ihat(shape, convention, threads=1) == ilam

    @pytest.mark.parametrize("shape", [(3, 2), (4, 1), (2, 0), (5, 0)])
    def test_component_check(self, shape):
        n, p = sum(shape), shape[1]
        results = residue_component_check(shape, threads=1)
        assert len(results) == 2 * len(list(combinations(range(1, n + 1), p)))
        assert all(passed for _, _, passed in results)

    def test_single_letter_component_is_d0(self):
        value = iterated_residue(build_integrand((3,), ()))
        assert value == build_Ilambda(WeightLambda.of((3,))).coefficient((1, 1, 1))

    def test_not_two_row(self):
        with pytest.raises(UsageError):
            residue_component_check((1, 2), threads=1)

    @pytest.mark.slow
    @pytest.mark.parametrize("shape", [(4, 2), (3, 3), (5, 1), (6, 0)])
    def test_n6(self, shape):
        assert all(passed for _, _, passed in residue_component_check(shape, threads=1))
