import numpy as np
import pytest

from models.combinat import (
    LinkPattern,
    Tableau,
    conjugate,
    conjugate_tableau,
    enumerate_syt,
    exchange_matrices,
    hook_length_count,
    hotta_check,
    linkpattern_to_syt,
    linkpatterns,
    m_matrix_tworow,
    negate_diagonal_transpose,
    p_alpha,
    render_linkpattern,
    rotate,
    sign_epsilon,
    sign_lemma_check,
    syt_to_linkpattern,
    temperley_lieb_check,
    tl_generator,
)
from utils.exactalg import InvariantViolationError, UsageError

TWO_ROW_SHAPES = [(n - p, p) for n in range(2, 9) for p in range(n // 2 + 1)]
TWO_COLUMN_SHAPES = [(2,) * p + (1,) * (n - 2 * p) for n in range(2, 9) for p in range(n // 2 + 1)]


def noncrossing_matchings(points, arches, allow_unpaired=True):
    """Partner maps on ``points`` with ``arches`` non-crossing arches, built by first point."""
    if arches < 0 or 2 * arches > len(points):
        return []
    if not points:
        return [{}]
    first, found = points[0], []
    if allow_unpaired:
        found += [{**rest, first: 0} for rest in noncrossing_matchings(points[1:], arches, True)]
    for k in range(1, len(points), 2):
        inner, outer = points[1:k], points[k + 1 :]
        for a in noncrossing_matchings(inner, len(inner) // 2, False):
            for b in noncrossing_matchings(outer, arches - 1 - len(inner) // 2, allow_unpaired):
                found.append({**a, **b, first: points[k], points[k]: first})
    return found


class TestTableaux:
    def test_21(self):
        assert [t.label() for t in enumerate_syt((2, 1))] == ["1,2/3", "1,3/2"]

    def test_22(self):
        assert [t.label() for t in enumerate_syt((2, 2))] == ["1,2/3,4", "1,3/2,4"]

    @pytest.mark.parametrize("shape", [(2, 2), (3, 2, 1), (3, 3), (2, 2, 1, 1), (4, 1)])
    def test_hook_length(self, shape):
        assert len(enumerate_syt(shape)) == hook_length_count(shape)

    def test_hook_length_value(self):
        assert hook_length_count((3, 2, 1)) == 16

    def test_not_a_partition(self):
        with pytest.raises(UsageError):
            enumerate_syt((1, 2))

    def test_invalid_tableau(self):
        with pytest.raises(InvariantViolationError):
            Tableau.of([[1, 3], [2, 2]])
        with pytest.raises(InvariantViolationError):
            Tableau.of([[2, 3], [1]])

    def test_conjugate(self):
        assert conjugate((2, 1, 1)) == (3, 1)
        t = Tableau.of([[1, 3], [2, 4]])
        assert conjugate_tableau(t) == Tableau.of([[1, 2], [3, 4]])
        assert conjugate_tableau(conjugate_tableau(t)) == t

    def test_signs(self):
        tabb, tabc = enumerate_syt((2, 1))
        tabd, tabe = enumerate_syt((2, 2))
        assert (sign_epsilon(tabb), sign_epsilon(tabc)) == (-1, 1)
        assert (sign_epsilon(tabd), sign_epsilon(tabe)) == (-1, 1)


class TestLinkPatterns:
    def test_bijection(self):
        for shape in [(2, 1), (3, 3), (4, 2), (5, 1)]:
            for t in enumerate_syt(shape):
                lp = syt_to_linkpattern(t)
                assert lp.p == shape[1]
                assert linkpattern_to_syt(lp) == t

    def test_render(self):
        tabb, tabc = enumerate_syt((2, 1))
        assert render_linkpattern(syt_to_linkpattern(tabb)) == "|()"
        assert render_linkpattern(syt_to_linkpattern(tabc)) == "()|"

    def test_enumeration(self):
        assert [str(lp) for lp in linkpatterns(4, 2)] == ["(())", "()()"]
        assert linkpatterns(3, 2) == []

    @pytest.mark.parametrize("shape", TWO_ROW_SHAPES, ids=str)
    def test_enumeration_matches_matchings(self, shape):
        n, p = sum(shape), shape[1]
        direct = {tuple(m[k] for k in range(1, n + 1)) for m in noncrossing_matchings(list(range(1, n + 1)), p)}
        assert {lp.alpha for lp in linkpatterns(n, p)} == direct
        assert len(direct) == hook_length_count(shape)

    def test_crossing(self):
        with pytest.raises(InvariantViolationError):
            LinkPattern.from_arches(4, [(1, 3), (2, 4)])

    def test_unpaired_under_arch(self):
        with pytest.raises(InvariantViolationError):
            LinkPattern.from_arches(3, [(1, 3)])

    def test_p_alpha(self):
        lp = LinkPattern.from_arches(4, [(1, 4), (2, 3)])
        assert p_alpha(lp, 1, 4) == 2
        assert p_alpha(lp, 2, 3) == 1

    def test_rotate(self):
        lp = LinkPattern.from_arches(4, [(1, 2), (3, 4)])
        assert rotate(lp) == LinkPattern.from_arches(4, [(1, 4), (2, 3)])
        assert rotate(rotate(lp)) == lp

    def test_rotate_needs_full_pairing(self):
        with pytest.raises(UsageError):
            rotate(LinkPattern.from_arches(3, [(1, 2)]))


class TestTemperleyLieb:
    def test_closed_loop(self):
        lp = LinkPattern.from_arches(2, [(1, 2)])
        assert tl_generator(lp, 1) == {lp: 2}

    def test_two_unpaired(self):
        assert tl_generator(LinkPattern((0, 0, 0)), 1) == {}

    def test_reconnection(self):
        lp = LinkPattern.from_arches(4, [(1, 2), (3, 4)])
        assert tl_generator(lp, 2) == {LinkPattern.from_arches(4, [(1, 4), (2, 3)]): 1}

    @pytest.mark.parametrize("n,p", [(4, 2), (5, 1), (5, 2), (6, 3)])
    def test_relations(self, n, p):
        assert all(ok for _, ok in temperley_lieb_check(n, p))

    @pytest.mark.parametrize("shape", TWO_ROW_SHAPES, ids=str)
    def test_relations_up_to_eight_points(self, shape):
        assert all(ok for _, ok in temperley_lieb_check(sum(shape), shape[1]))


class TestExchangeMatrices:
    def test_rho_11(self):
        assert m_matrix_tworow((1, 1), 1).rho.tolist() == [[-1]]

    def test_rho_21(self):
        assert m_matrix_tworow((2, 1), 1).rho.tolist() == [[1, 0], [-1, -1]]
        assert m_matrix_tworow((2, 1), 2).rho.tolist() == [[-1, -1], [0, 1]]

    def test_rho_22(self):
        for i in (1, 3):
            assert m_matrix_tworow((2, 2), i).rho.tolist() == [[1, 0], [-1, -1]]
        assert m_matrix_tworow((2, 2), 2).rho.tolist() == [[-1, -1], [0, 1]]

    @pytest.mark.parametrize("shape,family", [((3, 3), "tworow"), ((4, 2), "tworow"), ((2, 2, 2), "twocol"), ((2, 1, 1, 1), "twocol")])
    def test_hotta(self, shape, family):
        assert all(ok for _, ok in hotta_check(exchange_matrices(shape, family)))

    @pytest.mark.parametrize("shape", TWO_ROW_SHAPES, ids=str)
    def test_hotta_every_two_row_shape(self, shape):
        assert all(ok for _, ok in hotta_check(exchange_matrices(shape, "tworow")))

    @pytest.mark.parametrize("shape", TWO_COLUMN_SHAPES, ids=str)
    def test_hotta_every_two_column_shape(self, shape):
        assert all(ok for _, ok in hotta_check(exchange_matrices(shape, "twocol")))

    @pytest.mark.parametrize("shape", [(2, 1), (3, 2), (3, 3)])
    def test_sign_lemma(self, shape):
        for m in exchange_matrices(shape, "tworow").values():
            assert sign_lemma_check(m)

    def test_dual_action(self):
        m = m_matrix_tworow((2, 1), 1)
        twisted = negate_diagonal_transpose(m)
        assert np.array_equal(np.diag(twisted), -np.diag(m.entries))
        assert twisted[0, 1] == m.entries[1, 0]

    def test_unknown_family(self):
        with pytest.raises(UsageError):
            exchange_matrices((2, 1), "threerow")
