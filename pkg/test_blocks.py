from fractions import Fraction
from functools import lru_cache

import pytest

from models.blocks import (
    BlockVerifier,
    _admissible,
    cb_nullity_numeric,
    check_k1_formula,
    check_skew_lemma,
    is_singular,
    qcb_check,
    qcb_level_witness,
    verify_qkz,
)
from models.minimal import build_Ilambda, partitions
from models.tensor import TensorVec, WeightLambda
from utils.exactalg import Poly, UsageError


def ila(*parts):
    return build_Ilambda(WeightLambda.of(parts))


class TestSingular:
    def test_i11(self):
        assert is_singular(ila(1, 1))

    def test_symmetric_vector(self):
        v = TensorVec(WeightLambda.of((1, 1)), {(1, 2): Poly.one(2), (2, 1): Poly.one(2)})
        assert not is_singular(v)

    def test_needs_tensor(self):
        with pytest.raises(UsageError):
            is_singular(Poly.one(2))

    def test_three_letters(self):
        assert is_singular(ila(2, 1, 1))


class TestConformalBlock:
    def test_i21_at_level_1(self):
        assert qcb_check(ila(2, 1), 1)

    def test_i22_at_level_1(self):
        assert qcb_check(ila(2, 2), 1)

    def test_v12_at_level_0(self):
        v = TensorVec(WeightLambda.of((1, 1)), {(1, 2): Poly.one(2)})
        assert not qcb_check(v, 0)

    def test_level_below_d(self):
        with pytest.raises(UsageError):
            qcb_check(ila(3, 1), 1)

    def test_level_witness(self):
        assert qcb_level_witness(ila(2, 1)) == 1
        assert qcb_level_witness(ila(1, 1)) == 2


SMALL_WEIGHTS = [lam.parts for n in range(1, 7) for lam in partitions(n)]


@lru_cache(maxsize=None)
def cached_ilambda(parts):
    return build_Ilambda(WeightLambda(parts))


@pytest.mark.parametrize("padding", [(), (0,)], ids=["plain", "padded"])
@pytest.mark.parametrize("parts", SMALL_WEIGHTS, ids=lambda p: ",".join(map(str, p)))
class TestSmallWeights:
    def test_singular(self, parts, padding):
        assert is_singular(cached_ilambda(parts + padding))

    def test_conformal_block_at_level_d(self, parts, padding):
        lam = WeightLambda(parts + padding)
        assert qcb_check(cached_ilambda(lam.parts), max(lam.d(), 1))


class TestQkz:
    @pytest.mark.parametrize("parts", [(1, 1), (2, 1), (2, 2), (2, 1, 1), (1, 1, 1)])
    def test_every_site(self, parts):
        results = verify_qkz(WeightLambda.of(parts))
        assert [r.i for r in results] == list(range(1, sum(parts) + 1))
        assert all(r.passed for r in results), [r.witness for r in results if not r.passed]

    def test_level_one_only(self):
        with pytest.raises(UsageError):
            verify_qkz(WeightLambda.of((3, 1)))

    @pytest.mark.parametrize("parts", [(2, 1), (2, 2), (3, 1)])
    def test_skew_lemma(self, parts):
        v = ila(*parts)
        assert all(check_skew_lemma(v, i) for i in range(1, v.n))

    @pytest.mark.parametrize("parts", [(1, 1), (2, 1), (2, 2), (2, 1, 1)])
    def test_k1_closed_form(self, parts):
        assert check_k1_formula(ila(*parts))


class TestNullity:
    def test_admissible(self):
        assert not _admissible([Fraction(0), Fraction(2)], Fraction(1))
        assert _admissible([Fraction(0), Fraction(1, 2)], Fraction(1))

    @pytest.mark.parametrize("parts", [(1, 1), (2, 1), (2, 2)])
    def test_one_dimensional(self, parts):
        lam = WeightLambda.of(parts)
        z = [Fraction(7 * k * k + 1, 3) for k in range(lam.n)]
        assert cb_nullity_numeric(lam, z, Fraction(5, 2)) == 1

    def test_sample_size(self):
        with pytest.raises(UsageError):
            cb_nullity_numeric(WeightLambda.of((1, 1)), [1], 1)

    def test_sampled_points(self, settings):
        verifier = BlockVerifier(settings)
        for lam in [WeightLambda.of((2, 1)), WeightLambda.of((1, 1, 1))]:
            z, h = verifier.sample_point(lam.n)
            assert _admissible(z, h)
            assert cb_nullity_numeric(lam, z, h) == 1


class TestVerifier:
    def test_qkz_suite(self, settings):
        report = BlockVerifier(settings).run(["qkz"], nmax=4)
        assert report.passed, report.first_failure()
        assert set(report.to_frame()["suite"]) == {"qkz"}

    def test_unknown_suite(self, settings):
        with pytest.raises(UsageError):
            BlockVerifier(settings).run(["bogus"], nmax=2)

    def test_deterministic(self, settings):
        first = BlockVerifier(settings).run(["nullity", "singular"], nmax=3).to_json()
        second = BlockVerifier(settings).run(["nullity", "singular"], nmax=3).to_json()
        assert first == second

    def test_qcb_suite_one_row_per_weight(self, settings):
        report = BlockVerifier(settings).run(["qcb"], nmax=4)
        subjects = [r.subject for r in report.results]
        assert len(subjects) == len(set(subjects)) == sum(len(list(partitions(n))) for n in range(1, 5))
        assert all(r.check.startswith("e(z)^") for r in report.results)
        assert report.passed

    def test_block_report(self, settings):
        report = BlockVerifier(settings).block_report(WeightLambda.of((2, 1)))
        obj = report.to_json_obj()
        assert obj["is_singular"] is True
        assert obj["qcb_level_witness"] == 1
        assert all(obj["qkz_checked"].values())
        assert obj["nullity_at_sample"] == 1

    @pytest.mark.slow
    def test_all_suites(self, settings):
        report = BlockVerifier(settings).run(["all"], nmax=5)
        assert report.passed, report.first_failure()
