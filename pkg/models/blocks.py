"""
Verification of singular vectors, q-conformal blocks and the qKZ equations.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from models.minimal import build_Ilambda, h0_sign_table, minimality_checks, partitions
from models.tensor import (
    TensorVec,
    WeightLambda,
    apply_e_gen,
    apply_e_of_z,
    apply_Ki,
    apply_perm,
    apply_R,
    swap_variables,
    weight_basis,
)
from utils.exactalg import LinForm, NotPolynomialError, UsageError
from utils.linalg import fraction_matrix, nullity
from utils.parallel import run_parallel
from utils.reports import SuiteReport
from utils.settings import load_settings

logger = logging.getLogger(__name__)

SUITES = ("skew", "degree", "singular", "qcb", "qkz", "lemma", "nullity", "h0")


@dataclass
class QkzResult:
    i: int
    passed: bool
    witness: str = ""


@dataclass
class BlockReport:
    """Summary of the block properties of one I_λ."""

    lam: tuple
    is_singular: bool
    qcb_level_witness: object
    qkz_checked: dict = field(default_factory=dict)
    nullity_at_sample: int = None

    def to_json_obj(self):
        return {
            "lambda": list(self.lam),
            "is_singular": self.is_singular,
            "qcb_level_witness": self.qcb_level_witness,
            "qkz_checked": {str(i): ok for i, ok in sorted(self.qkz_checked.items())},
            "nullity_at_sample": self.nullity_at_sample,
        }


def is_singular(v):
    """
    True iff every total raising operator Σ_a e_{i,j}^{(a)}, i < j, kills v.
    """
    if not isinstance(v, TensorVec):
        raise UsageError("is_singular expects a TensorVec")
    N = v.N
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            if not apply_e_gen(v, i, j).is_zero():
                logger.debug("e_{%d,%d} does not annihilate the vector", i, j)
                return False
    return True


def qcb_power(lam, level):
    power = level - lam.d() + 1
    if power < 1:
        raise UsageError(f"level {level} is below d(λ)={lam.d()} for λ={lam}")
    return power


def qcb_check(v, level):
    """
    e(z)^{level - d(λ) + 1} v == 0 identically.

    Parameters:
    -----------
    v : TensorVec
        Singular vector with Poly coefficients
    level : int
        Level ℓ >= d(λ)

    Returns:
    --------
    bool
    """
    w = v
    for _ in range(qcb_power(v.lam, level)):
        w = apply_e_of_z(w)
        if w.is_zero():
            return True
    return w.is_zero()


def qcb_level_witness(v, bound=None):
    """Smallest m with e(z)^m v = 0, or None if none up to ``bound``."""
    bound = v.lam.d() + 2 if bound is None else bound
    w = v
    for m in range(bound + 1):
        if w.is_zero():
            return m
        w = apply_e_of_z(w)
    return None


def _first_difference(lhs, rhs):
    diff = (lhs - rhs).to_polynomial()
    for L, c in diff.items():
        return f"v{list(L)}: {c.render()}"
    return ""


def verify_qkz(lam, ilam=None):
    """
    Compare I_λ(..., z_i - (N+1)h, ...) with K_i I_λ for every i.

    Returns:
    --------
    list of QkzResult
        One entry per site; ``witness`` names the first differing component
    """
    if lam.d() > 1:
        raise UsageError(f"qKZ at level 1 needs d(λ) <= 1, got d={lam.d()} for λ={lam}")
    ilam = build_Ilambda(lam) if ilam is None else ilam
    N = lam.N
    results = []
    for i in range(1, lam.n + 1):
        lhs = ilam.map(lambda c, i=i: c.shift(i, -(N + 1)))
        try:
            rhs = apply_Ki(ilam, i, N)
        except NotPolynomialError as exc:
            results.append(QkzResult(i, False, f"K_{i} is not polynomial: {exc}"))
            continue
        passed = lhs == rhs
        results.append(QkzResult(i, passed, "" if passed else _first_difference(lhs, rhs)))
        logger.debug("qKZ λ=%s i=%d: %s", lam, i, passed)
    return results


def _difference_form(n, i, j):
    coeffs = [0] * n
    coeffs[i - 1], coeffs[j - 1] = 1, -1
    return LinForm.of(coeffs)


def check_skew_lemma(v, i):
    """R^{(i,i+1)}(z_i - z_{i+1}) v == -P^{(i,i+1)} v(z_i <-> z_{i+1})."""
    lhs = apply_R(v, i, i + 1, _difference_form(v.nvars, i, i + 1))
    rhs = -apply_perm(swap_variables(v, i), i, i + 1)
    return lhs == rhs


def check_k1_formula(v, N=None):
    """
    K_1 v == (-1)^{n-1} P^{(1,n)} ... P^{(1,2)} v(z_2, ..., z_n, z_1)
    for a skew-symmetric polynomial vector v.
    """
    n = v.n
    N = v.N if N is None else N
    lhs = apply_Ki(v, 1, N)
    # f(z_2, ..., z_n, z_1): z_k -> z_{k+1}, z_n -> z_1
    perm = tuple(range(2, n + 1)) + (1,)
    rhs = v.map(lambda c: c.permute_vars(perm))
    for j in range(2, n + 1):
        rhs = apply_perm(rhs, 1, j)
    if (n - 1) % 2:
        rhs = -rhs
    return lhs == rhs


def _admissible(z, h):
    for a in range(len(z)):
        for b in range(a + 1, len(z)):
            ratio = (z[a] - z[b]) / h
            if ratio.denominator == 1 and abs(ratio) <= 3:
                return False
    return True


def cb_nullity_numeric(lam, z_sample, h_sample):
    """
    Dimension of the level-1 conformal blocks of V[λ] at a numerical point.

    Singularity constraints are exact; the e(z)^{2-d} constraint is
    evaluated at (z_sample, h_sample). The kernel dimension is found by
    exact Gaussian elimination.
    """
    if lam.d() > 1:
        raise UsageError(f"level 1 needs d(λ) <= 1, got {lam.d()}")
    z = [Fraction(x) for x in z_sample]
    h = Fraction(h_sample)
    if len(z) != lam.n:
        raise UsageError(f"expected {lam.n} sample values, got {len(z)}")
    point = z + [h]
    basis = weight_basis(lam)
    power = qcb_power(lam, 1)
    rows = {}
    for col, L in enumerate(basis):
        v = TensorVec.basis_vector(lam, L)
        images = []
        for i in range(1, lam.N + 1):
            for j in range(i + 1, lam.N + 1):
                images.append(((i, j), apply_e_gen(v, i, j)))
        w = v
        for _ in range(power):
            w = apply_e_of_z(w)
        images.append(("e(z)", w))
        for tag, image in images:
            for M, c in image.coeffs.items():
                value = c.evaluate(point)
                if value:
                    rows.setdefault((tag, M), {})[col] = value
    ordered = [rows[key] for key in sorted(rows, key=str)]
    matrix = fraction_matrix([[r.get(c, 0) for c in range(len(basis))] for r in ordered], len(basis))
    return nullity(matrix)


class BlockVerifier:
    """
    Runs the block verification suites over partitions.

    Parameters:
    -----------
    settings : Settings, optional
        Thread count, seed and sampling parameters (loaded from config.toml
        when omitted)
    """

    def __init__(self, settings=None):
        self.settings = settings or load_settings()
        self.rng = np.random.default_rng(self.settings.seed)

    def sample_point(self, n):
        """
        Random rational z (distinct, off z_i - z_j in {0, ±h, ±2h, ±3h}) and h.
        """
        bound = self.settings.sample_range
        while True:
            z = [Fraction(int(a), int(b)) for a, b in zip(
                self.rng.integers(-bound, bound + 1, size=n),
                self.rng.integers(1, 8, size=n),
            )]
            h = Fraction(int(self.rng.integers(1, bound + 1)), int(self.rng.integers(1, 8)))
            if _admissible(z, h):
                return z, h

    def block_report(self, lam):
        ilam = build_Ilambda(lam)
        report = BlockReport(lam.parts, is_singular(ilam), qcb_level_witness(ilam))
        if lam.d() <= 1:
            report.qkz_checked = {r.i: r.passed for r in verify_qkz(lam, ilam)}
            z, h = self.sample_point(lam.n)
            report.nullity_at_sample = cb_nullity_numeric(lam, z, h)
        return report

    def subjects(self, suite, nmax):
        limit = min(nmax, self.settings.qkz_nmax) if suite == "qkz" else nmax
        for n in range(1, limit + 1):
            for lam in partitions(n):
                if suite in ("qkz", "nullity") and lam.d() > 1:
                    continue
                yield lam

    def run(self, suites=("all",), nmax=None):
        """
        Run the named suites and collect one SuiteReport.

        Parameters:
        -----------
        suites : iterable of str
            Names from SUITES, or "all"
        nmax : int, optional
            Largest n (defaults to the configured nmax)
        """
        nmax = self.settings.nmax if nmax is None else nmax
        names = list(SUITES) if "all" in suites else list(suites)
        unknown = [s for s in names if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
        report = SuiteReport()
        for suite in names:
            tasks = []
            for lam in self.subjects(suite, nmax):
                if suite == "nullity":
                    for _ in range(self.settings.samples):
                        z, h = self.sample_point(lam.n)
                        tasks.append((suite, lam.parts, z, h))
                else:
                    tasks.append((suite, lam.parts, None, None))
            logger.info("suite %s: %d tasks", suite, len(tasks))
            for rows in run_parallel(_suite_task, tasks, self.settings.threads):
                for row in rows:
                    report.add(*row)
        return report


def _suite_task(suite, parts, z, h):
    """Rows (suite, subject, check, passed, detail) for one partition."""
    lam = WeightLambda(parts)
    subject = str(lam)
    if suite == "skew":
        return [(suite, subject, c, ok, d) for c, ok, d in minimality_checks(lam) if c.startswith("skew")]
    if suite == "degree":
        return [(suite, subject, c, ok, d) for c, ok, d in minimality_checks(lam) if not c.startswith("skew")]
    ilam = build_Ilambda(lam)
    if suite == "singular":
        return [(suite, subject, "singular", is_singular(ilam), "")]
    if suite == "qcb":
        level = max(lam.d(), 1)
        return [(suite, subject, f"e(z)^{qcb_power(lam, level)} at level {level}", qcb_check(ilam, level), "")]
    if suite == "qkz":
        rows = [(suite, subject, f"K_{r.i}", r.passed, r.witness) for r in verify_qkz(lam, ilam)]
        if lam.n >= 2:
            rows.append((suite, subject, "K_1 closed form", check_k1_formula(ilam), ""))
        return rows
    if suite == "lemma":
        return [(suite, subject, f"R^({i},{i + 1}) skew", check_skew_lemma(ilam, i), "") for i in range(1, lam.n)]
    if suite == "nullity":
        k = cb_nullity_numeric(lam, z, h)
        point = ",".join(str(x) for x in z) + f"; h={h}"
        return [(suite, subject, "nullity", k == 1, f"nullity {k} at {point}")]
    if suite == "h0":
        table = h0_sign_table(lam, ilam)
        signs = "".join("+" if s > 0 else "-" if s < 0 else "0" for _, s in sorted(table.items()))
        return [(suite, subject, "h=0 product structure", all(table.values()), signs)]
    raise UsageError(f"unknown suite {suite!r}")
