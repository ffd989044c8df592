"""
Report tables for verification suites.
"""
import json
import logging
from dataclasses import asdict, dataclass, field

import pandas as pd

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ["suite", "subject", "check", "passed", "detail"]


@dataclass
class CheckResult:
    suite: str
    subject: str
    check: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    """
    Ordered collection of check results.

    Rows keep insertion order so that identical runs serialize identically.
    """

    results: list = field(default_factory=list)

    def add(self, suite, subject, check, passed, detail=""):
        result = CheckResult(suite, str(subject), check, bool(passed), str(detail))
        if not result.passed:
            logger.warning("check failed: %s %s %s %s", suite, subject, check, detail)
        self.results.append(result)
        return result

    def extend(self, other):
        self.results.extend(other.results)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def first_failure(self):
        for r in self.results:
            if not r.passed:
                return r
        return None

    def to_frame(self):
        """
        Results as a DataFrame.

        Returns:
        --------
        pandas.DataFrame
            One row per check with columns suite, subject, check, passed, detail
        """
        if not self.results:
            return pd.DataFrame(columns=REPORT_COLUMNS)
        return pd.DataFrame([asdict(r) for r in self.results], columns=REPORT_COLUMNS)

    def summary(self):
        """Pass/fail counts per suite."""
        df = self.to_frame()
        if df.empty:
            return pd.DataFrame(columns=["suite", "checks", "failures"])
        grouped = df.groupby("suite", sort=False)["passed"]
        summary = pd.DataFrame({"checks": grouped.size(), "failures": grouped.apply(lambda s: int((~s).sum()))})
        return summary.reset_index()

    def to_json(self):
        return to_json({
            "passed": self.passed,
            "summary": self.summary().to_dict(orient="records"),
            "results": self.to_frame().to_dict(orient="records"),
        })


def _default(obj):
    # numpy scalars coming out of pandas
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(payload):
    """Deterministic UTF-8 JSON text."""
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, default=_default)
