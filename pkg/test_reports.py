import json

import pytest

from utils.linalg import fraction_matrix, inverse_matrix, nullity, pivot_rows, rank, row_reduce
from utils.parallel import run_parallel
from utils.reports import REPORT_COLUMNS, SuiteReport, to_json


@pytest.fixture
def report():
    r = SuiteReport()
    r.add("skew", "(1, 1)", "skew", True)
    r.add("skew", "(2, 1)", "skew", True)
    r.add("qkz", "(2, 1)", "i=1", False, "residual 3")
    return r


class TestSuiteReport:
    def test_passed_and_first_failure(self, report):
        assert not report.passed
        failure = report.first_failure()
        assert (failure.suite, failure.check, failure.detail) == ("qkz", "i=1", "residual 3")

    def test_empty_report_passes(self):
        empty = SuiteReport()
        assert empty.passed
        assert empty.first_failure() is None
        assert list(empty.to_frame().columns) == REPORT_COLUMNS
        assert empty.summary().empty

    def test_frame(self, report):
        df = report.to_frame()
        assert list(df.columns) == REPORT_COLUMNS
        assert df["passed"].tolist() == [True, True, False]

    def test_summary(self, report):
        rows = report.summary().to_dict(orient="records")
        assert rows == [
            {"suite": "skew", "checks": 2, "failures": 0},
            {"suite": "qkz", "checks": 1, "failures": 1},
        ]

    def test_json(self, report):
        payload = json.loads(report.to_json())
        assert payload["passed"] is False
        assert len(payload["results"]) == 3
        assert report.to_json() == report.to_json()

    def test_extend(self, report):
        other = SuiteReport()
        other.add("h0", "(1, 1)", "signs", True)
        report.extend(other)
        assert len(report.results) == 4


def test_to_json_sorts_keys():
    assert to_json({"b": 1, "a": "λ"}) == '{"a": "λ", "b": 1}'


class TestLinalg:
    def test_rank_and_nullity(self):
        m = fraction_matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
        assert rank(m) == 2
        assert nullity(m) == 1

    def test_row_reduce_stays_exact(self):
        reduced, pivots = row_reduce(fraction_matrix([[3, 1], [1, 2]]))
        assert pivots == [0, 1]
        assert all(x.is_Rational for x in reduced)
        assert reduced[0, 0] == 1 and reduced[1, 0] == 0

    def test_inverse(self):
        m = fraction_matrix([[2, 1], [1, 1]])
        inv = inverse_matrix(m)
        assert inv.tolist() == [[1, -1], [-1, 2]]

    def test_singular(self):
        with pytest.raises(ZeroDivisionError):
            inverse_matrix(fraction_matrix([[1, 2], [2, 4]]))

    def test_pivot_rows(self):
        assert pivot_rows(fraction_matrix([[1, 0], [2, 0], [0, 1]])) == [0, 2]

    def test_empty(self):
        assert fraction_matrix([], 3).shape == (0, 3)


def _square(x, y):
    return x * x + y


@pytest.mark.parametrize("threads", [1, 2])
def test_run_parallel_keeps_order(threads):
    tasks = [(i, 1) for i in range(6)]
    assert run_parallel(_square, tasks, threads) == [i * i + 1 for i in range(6)]
