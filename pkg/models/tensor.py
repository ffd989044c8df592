"""
The tensor space V = (C^N)^{⊗n} over polynomial coefficients.

Weight bases, gl_N generators acting on single sites or on all sites, site
permutations, the operator e(z), R-matrices and the qKZ operators K_i.
Sites are numbered from 1.
"""
import itertools
import logging
from dataclasses import dataclass
from math import factorial

from utils.exactalg import (
    DimensionError,
    FactoredRatio,
    LinForm,
    NotPolynomialError,
    Poly,
    UsageError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightLambda:
    """
    A weight (λ_1, ..., λ_N); partitions are the weakly decreasing ones.

    ``of()`` pads a single part to N = 2 so that e(z) and d(λ) are defined.
    """

    parts: tuple

    @classmethod
    def of(cls, parts):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise UsageError(f"weight {parts} has a negative entry")
        if len(parts) == 1:
            parts = parts + (0,)
        return cls(parts)

    @property
    def N(self):
        return len(self.parts)

    @property
    def n(self):
        return sum(self.parts)

    def is_partition(self):
        return all(a >= b for a, b in zip(self.parts, self.parts[1:]))

    def d(self):
        return self.parts[0] - self.parts[-1]

    def k(self):
        return sum(p * (p - 1) // 2 for p in self.parts)

    def nonzero(self):
        return tuple(p for p in self.parts if p)

    def shifted(self, i, j):
        """The weight after e_{i,j}: +1 at i, -1 at j."""
        parts = list(self.parts)
        parts[i - 1] += 1
        parts[j - 1] -= 1
        return WeightLambda(tuple(parts))

    def __str__(self):
        return ",".join(str(p) for p in self.parts)


def content(L, N):
    return tuple(sum(1 for l in L if l == i) for i in range(1, N + 1))


def weight_basis(lam):
    """
    All multi-indices of content λ in lexicographic order.

    Parameters:
    -----------
    lam : WeightLambda
        Any composition is accepted

    Returns:
    --------
    list of tuple
        Multi-indices (l_1, ..., l_n) with l_j in 1..N
    """
    letters = []
    for i, p in enumerate(lam.parts, start=1):
        letters.extend([i] * p)
    return sorted(set(itertools.permutations(letters)))


def multinomial(parts):
    result = factorial(sum(parts))
    for p in parts:
        result //= factorial(p)
    return result


def _is_zero(c):
    return c.is_zero()


def _coerced_sum(a, b):
    if isinstance(a, FactoredRatio) and isinstance(b, Poly):
        b = FactoredRatio.from_poly(b)
    elif isinstance(a, Poly) and isinstance(b, FactoredRatio):
        a = FactoredRatio.from_poly(a)
    return a + b


class TensorVec:
    """
    Vector sum_L c_L v_L in a weight subspace V[λ].

    Coefficients are Poly or FactoredRatio over a ring with ``nvars``
    variables (normally nvars = n).

    Parameters:
    -----------
    lam : WeightLambda
        Weight of every stored multi-index
    coeffs : dict
        Multi-index -> coefficient; zero coefficients are dropped
    nvars : int, optional
        Ring size of the coefficients (defaults to n)
    """

    __slots__ = ("lam", "coeffs", "nvars")

    def __init__(self, lam, coeffs=None, nvars=None, check=True):
        self.lam = lam
        self.nvars = lam.n if nvars is None else nvars
        clean = {}
        for L, c in (coeffs or {}).items():
            L = tuple(L)
            if check and content(L, lam.N) != lam.parts:
                raise DimensionError(f"multi-index {L} does not have content {lam.parts}")
            if not _is_zero(c):
                clean[L] = c
        self.coeffs = clean

    @classmethod
    def basis_vector(cls, lam, L, nvars=None):
        nvars = lam.n if nvars is None else nvars
        return cls(lam, {tuple(L): Poly.one(nvars)}, nvars)

    @property
    def n(self):
        return self.lam.n

    @property
    def N(self):
        return self.lam.N

    def is_zero(self):
        return not self.coeffs

    def is_polynomial(self):
        return all(isinstance(c, Poly) for c in self.coeffs.values())

    def coefficient(self, L):
        c = self.coeffs.get(tuple(L))
        if c is None:
            return Poly.zero(self.nvars)
        return c

    def items(self):
        """(L, c) pairs in weight-basis (lexicographic) order."""
        return sorted(self.coeffs.items())

    def map(self, func):
        return TensorVec(self.lam, {L: func(c) for L, c in self.coeffs.items()}, self.nvars, check=False)

    def __add__(self, other):
        if self.lam != other.lam:
            raise DimensionError(f"weights differ: {self.lam} vs {other.lam}")
        coeffs = dict(self.coeffs)
        for L, c in other.coeffs.items():
            coeffs[L] = _coerced_sum(coeffs[L], c) if L in coeffs else c
        return TensorVec(self.lam, coeffs, self.nvars, check=False)

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return self.map(lambda c: c * s)

    def __eq__(self, other):
        if not isinstance(other, TensorVec):
            return NotImplemented
        if self.lam.parts != other.lam.parts:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def to_polynomial(self):
        """Expand FactoredRatio coefficients; raises NotPolynomialError."""
        return self.map(lambda c: c if isinstance(c, Poly) else c.expand())

    def to_ratio(self):
        return self.map(lambda c: c if isinstance(c, FactoredRatio) else FactoredRatio.from_poly(c))

    def degree(self):
        return max((c.degree() for c in self.coeffs.values()), default=-1)

    def is_homogeneous(self, degree=None):
        degrees = {c.degree() for c in self.coeffs.values()}
        if not all(c.is_homogeneous() for c in self.coeffs.values()):
            return False
        if len(degrees) > 1:
            return False
        return degree is None or not degrees or degrees == {degree}

    def render(self):
        """Text such as ``v[1,2] - v[2,1]``."""
        pieces = []
        for L, c in self.to_polynomial().items():
            label = "v[" + ",".join(str(l) for l in L) + "]"
            negative = False
            if c.is_constant():
                value = c.constant_value()
                negative = value < 0
                value = abs(value)
                text = label if value == 1 else f"{value}*{label}"
            else:
                text = f"({c.render()})*{label}"
            if not pieces:
                pieces.append("-" + text if negative else text)
            else:
                pieces.append(("- " if negative else "+ ") + text)
        return " ".join(pieces) if pieces else "0"

    def __repr__(self):
        return f"TensorVec({self.lam}: {self.render()})"

    def to_json_obj(self):
        vec = self.to_polynomial()
        return {
            "lambda": list(self.lam.parts),
            "N": self.N,
            "coeffs": [{"L": list(L), "poly": c.to_json_obj()} for L, c in vec.items()],
        }

    @classmethod
    def from_json_obj(cls, obj):
        lam = WeightLambda(tuple(obj["lambda"]))
        coeffs = {tuple(item["L"]): Poly.from_json_obj(item["poly"]) for item in obj["coeffs"]}
        nvars = next(iter(coeffs.values())).n if coeffs else lam.n
        return cls(lam, coeffs, nvars)


def vector_from_terms(terms, N, nvars=None):
    """
    Build a TensorVec from (L, coefficient) pairs, inferring λ.

    Raises:
    -------
    UsageError
        If the multi-indices do not share one content
    """
    terms = [(tuple(L), c) for L, c in terms]
    if not terms:
        raise UsageError("cannot infer a weight from an empty vector")
    contents = {content(L, N) for L, _ in terms}
    if len(contents) > 1:
        raise UsageError(f"vector is not in a single weight space: contents {sorted(contents)}")
    lam = WeightLambda(contents.pop())
    coeffs = {}
    for L, c in terms:
        coeffs[L] = _coerced_sum(coeffs[L], c) if L in coeffs else c
    return TensorVec(lam, coeffs, nvars)


# ----------------------------------------------------------------------
# operators


def apply_e_gen(v, i, j, a="total"):
    """
    e_{i,j} on site a, or summed over all sites when a == "total".

    e_{i,j} v_k = δ_{j,k} v_i; the result has weight λ + ε_i - ε_j.
    """
    N = v.N
    if not (1 <= i <= N and 1 <= j <= N):
        raise DimensionError(f"gl_{N} indices ({i},{j}) out of range")
    sites = range(1, v.n + 1) if a == "total" else [a]
    out = {}
    for L, c in v.coeffs.items():
        for s in sites:
            if L[s - 1] != j:
                continue
            M = L[: s - 1] + (i,) + L[s:]
            out[M] = out[M] + c if M in out else c
    return TensorVec(v.lam.shifted(i, j), out, v.nvars, check=False)


def apply_perm(v, i, j):
    """Exchange tensor factors i and j; coefficients untouched."""
    out = {}
    for L, c in v.coeffs.items():
        M = list(L)
        M[i - 1], M[j - 1] = M[j - 1], M[i - 1]
        out[tuple(M)] = c
    return TensorVec(v.lam, out, v.nvars, check=False)


def swap_variables(v, i, j=None):
    """v(z_i <-> z_j) coefficientwise (default j = i+1)."""
    return v.map(lambda c: c.swap(i, j))


def specialize(v, func):
    return v.map(func)


def apply_e_of_z(v):
    """
    The operator e(z).

    e(z) = Σ_j (z_j - h e_{N,N}^{(j)} + h Σ_{s>j}(e_{1,1}^{(s)} - e_{N,N}^{(s)})) e_{1,N}^{(j)}
         + h Σ_{j=2}^{N-1} Σ_{r<s} e_{j,N}^{(r)} e_{1,j}^{(s)}
    """
    N, n, nv = v.N, v.n, v.nvars
    h = Poly.h(nv)
    out = {}

    def add(M, c):
        if M in out:
            out[M] = out[M] + c
        else:
            out[M] = c

    for L, c in v.coeffs.items():
        for j in range(1, n + 1):
            if L[j - 1] != N:
                continue
            M = L[: j - 1] + (1,) + L[j:]
            # diagonal part acts on the image of e_{1,N}^{(j)}
            shift = -int(M[j - 1] == N)
            shift += sum(int(M[s] == 1) - int(M[s] == N) for s in range(j, n))
            add(M, c * (Poly.var(nv, j) + h.scale(shift)))
        for jj in range(2, N):
            for s in range(2, n + 1):
                if L[s - 1] != jj:
                    continue
                M1 = L[: s - 1] + (1,) + L[s:]
                for r in range(1, s):
                    if M1[r - 1] != N:
                        continue
                    M = M1[: r - 1] + (jj,) + M1[r:]
                    add(M, c * h)
    return TensorVec(v.lam.shifted(1, N), out, nv, check=False)


def _as_form(u, nvars):
    if isinstance(u, LinForm):
        return u
    if isinstance(u, Poly):
        return LinForm.from_poly(u)
    raise UsageError(f"spectral parameter must be affine, got {type(u).__name__}")


def apply_R(v, i, j, u):
    """
    R^{(i,j)}(u) = (u - h P^{(i,j)}) / (u + h).

    Parameters:
    -----------
    v : TensorVec
        Poly or FactoredRatio coefficients
    i, j : int
        Distinct sites
    u : LinForm or Poly
        Affine spectral parameter

    Returns:
    --------
    TensorVec
        Vector with FactoredRatio coefficients, already cancelled
    """
    if i == j:
        raise DimensionError("R-matrix needs two distinct sites")
    nv = v.nvars
    u = _as_form(u, nv)
    h_form = LinForm.of([0] * nv, 1)
    denom = u + h_form
    r = v.to_ratio()
    keys = set(r.coeffs)
    for L in r.coeffs:
        M = list(L)
        M[i - 1], M[j - 1] = M[j - 1], M[i - 1]
        keys.add(tuple(M))
    zero = FactoredRatio(nv, 0)
    out = {}
    for L in keys:
        M = list(L)
        M[i - 1], M[j - 1] = M[j - 1], M[i - 1]
        c_L = r.coeffs.get(L, zero)
        c_P = r.coeffs.get(tuple(M), zero)
        total = (c_L * u) - (c_P * h_form)
        if total.is_zero():
            continue
        out[L] = total.divide_by(denom).cancel()
    return TensorVec(v.lam, out, nv, check=False)


def ki_factors(i, n, N):
    """
    The R-factors of K_i in application order (rightmost first).

    Returns (j, LinForm u) pairs: R^{(i,i+1)}(z_i - z_{i+1}), ...,
    R^{(i,n)}(z_i - z_n), then R^{(i,1)}(z_i - z_1 - (N+1)h), ...,
    R^{(i,i-1)}(z_i - z_{i-1} - (N+1)h).
    """
    factors = []
    for j in list(range(i + 1, n + 1)) + list(range(1, i)):
        coeffs = [0] * n
        coeffs[i - 1], coeffs[j - 1] = 1, -1
        shift = 0 if j > i else -(N + 1)
        factors.append((j, LinForm.of(coeffs, shift)))
    return factors


def apply_Ki(v, i, N=None):
    """
    The level-1 qKZ operator K_i applied to a polynomial vector.

    Raises:
    -------
    NotPolynomialError
        If a denominator survives (v is not qKZ-compatible)
    """
    if not v.is_polynomial():
        raise UsageError("apply_Ki expects Poly coefficients")
    N = v.N if N is None else N
    w = v
    for j, u in ki_factors(i, v.n, N):
        w = apply_R(w, i, j, u)
        logger.debug("K_%d: applied R^(%d,%d)", i, i, j)
    try:
        return w.to_polynomial()
    except NotPolynomialError:
        logger.info("K_%d leaves denominators on %s", i, v.lam)
        raise


@dataclass
class YangBaxterReport:
    N: int
    passed: bool
    counterexample: str = ""

    def __bool__(self):
        return self.passed


def check_yang_baxter(N):
    """
    Verify R12(u-v) R13(u) R23(v) = R23(v) R13(u) R12(u-v) and unitarity
    R(u) R(-u) = 1 on (C^N)^{⊗3}, with u and v as polynomial variables.
    """
    names = ("u", "v")
    u = LinForm.of([1, 0])
    w = LinForm.of([0, 1])
    u_minus_v = LinForm.of([1, -1])
    minus_u = LinForm.of([-1, 0])
    for L in itertools.product(range(1, N + 1), repeat=3):
        lam = WeightLambda(content(L, N))
        e = TensorVec(lam, {L: Poly.one(2, names)}, nvars=2)
        lhs = apply_R(apply_R(apply_R(e, 2, 3, w), 1, 3, u), 1, 2, u_minus_v)
        rhs = apply_R(apply_R(apply_R(e, 1, 2, u_minus_v), 1, 3, u), 2, 3, w)
        diff = lhs - rhs
        for M, c in diff.coeffs.items():
            if not c.is_zero():
                entry = f"triple product, column {L}, row {M}"
                logger.warning("Yang-Baxter failure for N=%d at %s", N, entry)
                return YangBaxterReport(N, False, entry)
        back = apply_R(apply_R(e, 1, 2, minus_u), 1, 2, u)
        diff = back - e
        for M, c in diff.coeffs.items():
            if not c.is_zero():
                entry = f"unitarity, column {L}, row {M}"
                logger.warning("unitarity failure for N=%d at %s", N, entry)
                return YangBaxterReport(N, False, entry)
    return YangBaxterReport(N, True)
