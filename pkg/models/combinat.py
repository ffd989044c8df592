"""
Standard Young tableaux, link patterns and the Temperley-Lieb action.

Also the exchange matrices m_{i;α,β} of the two combinatorial families
(two-row shapes through ρ = 1 - e_i, two-column shapes through the sign
twist of the conjugate two-row matrices).
"""
import logging
from dataclasses import dataclass
from math import factorial

import numpy as np

from utils.exactalg import DimensionError, InvariantViolationError, UsageError

logger = logging.getLogger(__name__)


def conjugate(shape):
    shape = tuple(p for p in shape if p)
    if not shape:
        return ()
    return tuple(sum(1 for p in shape if p > c) for c in range(shape[0]))


def is_two_row(shape):
    return len([p for p in shape if p]) <= 2


def is_two_column(shape):
    return all(p <= 2 for p in shape)


def hook_length_count(shape):
    """Number of standard Young tableaux of ``shape`` by the hook length formula."""
    shape = tuple(p for p in shape if p)
    cols = conjugate(shape)
    hooks = 1
    for r, length in enumerate(shape):
        for c in range(length):
            hooks *= (length - c - 1) + (cols[c] - r - 1) + 1
    return factorial(sum(shape)) // hooks


@dataclass(frozen=True, order=True)
class Tableau:
    """
    A standard Young tableau stored row by row.

    Ordering and equality follow the rows, so sorting tableaux of one shape
    sorts them by row-reading word.
    """

    rows: tuple

    @classmethod
    def of(cls, rows):
        t = cls(tuple(tuple(int(x) for x in row) for row in rows if len(row)))
        t.validate()
        return t

    @property
    def shape(self):
        return tuple(len(row) for row in self.rows)

    @property
    def n(self):
        return sum(self.shape)

    def reading_word(self):
        return tuple(x for row in self.rows for x in row)

    def position(self, k):
        for r, row in enumerate(self.rows):
            if k in row:
                return r, row.index(k)
        raise DimensionError(f"{k} does not occur in {self.rows}")

    def validate(self):
        shape = self.shape
        if any(a < b for a, b in zip(shape, shape[1:])):
            raise InvariantViolationError(f"rows {shape} are not weakly decreasing")
        if sorted(self.reading_word()) != list(range(1, self.n + 1)):
            raise InvariantViolationError(f"entries of {self.rows} are not 1..{self.n}")
        for row in self.rows:
            if any(a >= b for a, b in zip(row, row[1:])):
                raise InvariantViolationError(f"row {row} is not increasing")
        for upper, lower in zip(self.rows, self.rows[1:]):
            if any(upper[c] >= lower[c] for c in range(len(lower))):
                raise InvariantViolationError(f"columns of {self.rows} are not increasing")

    def label(self):
        return "/".join(",".join(str(x) for x in row) for row in self.rows)

    def __str__(self):
        return self.label()


def enumerate_syt(shape):
    """
    All standard Young tableaux of ``shape``, sorted by row-reading word.

    Entries are placed from n downwards, each time into a removable corner.
    """
    shape = tuple(p for p in shape if p)
    if any(a < b for a, b in zip(shape, shape[1:])):
        raise UsageError(f"{shape} is not a partition")
    found = []

    def place(current, rows, k):
        if k == 0:
            # rows were filled from the right
            found.append(Tableau(tuple(tuple(reversed(row)) for row in rows)))
            return
        for r in range(len(current)):
            below = current[r + 1] if r + 1 < len(current) else 0
            if current[r] > below:
                current[r] -= 1
                rows[r].append(k)
                place(current, rows, k - 1)
                rows[r].pop()
                current[r] += 1

    place(list(shape), [[] for _ in shape], sum(shape))
    tableaux = sorted(found)
    logger.debug("%d tableaux of shape %s", len(tableaux), shape)
    return tableaux


def conjugate_tableau(t):
    cols = conjugate(t.shape)
    return Tableau(tuple(tuple(t.rows[r][c] for r in range(cols[c])) for c in range(len(cols))))


def sign_epsilon(t):
    """(-1)^{#{i<j : j strictly south-west of i}}."""
    n = t.n
    pos = {k: t.position(k) for k in range(1, n + 1)}
    count = 0
    for i in range(1, n + 1):
        ri, ci = pos[i]
        for j in range(i + 1, n + 1):
            rj, cj = pos[j]
            if rj > ri and cj < ci:
                count += 1
    return -1 if count % 2 else 1


# ----------------------------------------------------------------------
# link patterns


@dataclass(frozen=True, order=True)
class LinkPattern:
    """
    Non-crossing partial matching of 1..n as an involution array.

    ``alpha[i-1]`` is the partner of i, or 0 when i is unpaired.
    """

    alpha: tuple

    @classmethod
    def from_arches(cls, n, arches):
        alpha = [0] * n
        for i, j in arches:
            if alpha[i - 1] or alpha[j - 1]:
                raise InvariantViolationError(f"point of arch {i}-{j} is already paired")
            alpha[i - 1], alpha[j - 1] = j, i
        lp = cls(tuple(alpha))
        lp.validate()
        return lp

    @property
    def n(self):
        return len(self.alpha)

    @property
    def p(self):
        return sum(1 for i, j in enumerate(self.alpha, start=1) if j > i)

    def partner(self, i):
        return self.alpha[i - 1] or None

    def arches(self):
        return [(i, j) for i, j in enumerate(self.alpha, start=1) if j > i]

    def unpaired(self):
        return [i for i, j in enumerate(self.alpha, start=1) if j == 0]

    def is_fully_paired(self):
        return not self.unpaired()

    def validate(self):
        stack = []
        for i, j in enumerate(self.alpha, start=1):
            if j == 0:
                if stack:
                    raise InvariantViolationError(f"unpaired point {i} lies under an arch")
            elif j == i or self.alpha[j - 1] != i:
                raise InvariantViolationError(f"{self.alpha} is not an involution")
            elif j > i:
                stack.append(j)
            elif not stack or stack.pop() != i:
                raise InvariantViolationError(f"{self.alpha} has crossing arches")

    def __str__(self):
        return render_linkpattern(self)


def render_linkpattern(lp):
    """Brackets for arches, ``|`` for unpaired points: ``(())|``."""
    out = []
    for i, j in enumerate(lp.alpha, start=1):
        out.append("|" if j == 0 else "(" if j > i else ")")
    return "".join(out)


def syt_to_linkpattern(t):
    """
    Row-1 entries open (or stay unpaired), row-2 entries close the most
    recent open point.
    """
    if len(t.rows) > 2:
        raise UsageError(f"tableau of shape {t.shape} has more than two rows")
    second = set(t.rows[1]) if len(t.rows) == 2 else set()
    alpha = [0] * t.n
    stack = []
    for k in range(1, t.n + 1):
        if k in second:
            i = stack.pop()
            alpha[i - 1], alpha[k - 1] = k, i
        else:
            stack.append(k)
    return LinkPattern(tuple(alpha))


def linkpattern_to_syt(lp):
    closers = [j for j, i in enumerate(lp.alpha, start=1) if 0 < i < j]
    openers = [k for k in range(1, lp.n + 1) if k not in set(closers)]
    return Tableau.of([openers, closers])


def linkpatterns(n, p):
    """Link patterns on n points with p arches, in tableau order."""
    if 2 * p > n:
        return []
    return [syt_to_linkpattern(t) for t in enumerate_syt((n - p, p))]


def p_alpha(lp, i, j):
    """p_α(i, j) = j - i + 1 - #{k : i <= k < α(k) <= j}."""
    if not 1 <= i < j <= lp.n:
        raise UsageError(f"need 1 <= i < j <= {lp.n}, got ({i}, {j})")
    inside = sum(1 for k in range(i, j + 1) if k < lp.alpha[k - 1] <= j)
    return j - i + 1 - inside


def rotate(lp):
    """Move every vertex k to k+1 (n to 1)."""
    if not lp.is_fully_paired():
        raise UsageError("rotation needs a fully paired pattern")
    n = lp.n
    alpha = [0] * n
    for i, j in enumerate(lp.alpha, start=1):
        alpha[i % n] = j % n + 1
    return LinkPattern(tuple(alpha))


def tl_generator(lp, i):
    """
    The Temperley-Lieb generator e_i on a link pattern.

    Returns:
    --------
    dict
        LinkPattern -> integer coefficient (empty for zero)
    """
    n = lp.n
    if not 1 <= i < n:
        raise DimensionError(f"e_{i} needs 1 <= i < {n}")
    a, b = lp.alpha[i - 1], lp.alpha[i]
    if a == i + 1:
        return {lp: 2}
    if a == 0 and b == 0:
        return {}
    alpha = list(lp.alpha)
    alpha[i - 1], alpha[i] = i + 1, i
    if a == 0:
        alpha[b - 1] = 0
    elif b == 0:
        alpha[a - 1] = 0
    else:
        alpha[a - 1], alpha[b - 1] = b, a
    return {LinkPattern(tuple(alpha)): 1}


def tl_matrix(n, p, i):
    """Matrix E with E[α, β] = coefficient of α in e_i β."""
    basis = linkpatterns(n, p)
    index = {lp: k for k, lp in enumerate(basis)}
    E = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for col, beta in enumerate(basis):
        for alpha, c in tl_generator(beta, i).items():
            E[index[alpha], col] += c
    return E


def temperley_lieb_check(n, p):
    """
    e_i^2 = 2 e_i, e_i e_{i±1} e_i = e_i and distant generators commute.

    Returns:
    --------
    list of (check, passed)
    """
    E = {i: tl_matrix(n, p, i) for i in range(1, n)}
    results = []
    for i, Ei in E.items():
        results.append((f"e_{i}^2 = 2e_{i}", bool(np.array_equal(Ei @ Ei, 2 * Ei))))
        for j, Ej in E.items():
            if abs(i - j) == 1:
                results.append((f"e_{i}e_{j}e_{i} = e_{i}", bool(np.array_equal(Ei @ Ej @ Ei, Ei))))
            elif j > i + 1:
                results.append((f"e_{i}e_{j} = e_{j}e_{i}", bool(np.array_equal(Ei @ Ej, Ej @ Ei))))
    return results


# ----------------------------------------------------------------------
# exchange matrices


@dataclass
class ExchangeMatrix:
    """
    m_{i;α,β} on the tableau basis of one shape.

    Rows are indexed by α and columns by β, both in ``basis`` order, so that
    ŝ_i J_α = Σ_β m[α, β] J_β.
    """

    shape: tuple
    i: int
    basis: list
    entries: np.ndarray

    @property
    def rho(self):
        """The induced ρ^{(i,i+1)} on W_λ: ρ e_β = -Σ_α m[α, β] e_α."""
        return -self.entries

    def to_json_obj(self):
        return {
            "shape": list(self.shape),
            "i": self.i,
            "basis": [t.label() for t in self.basis],
            "m": self.entries.tolist(),
        }


def two_row_shape(shape):
    parts = [p for p in shape if p]
    if len(parts) > 2:
        raise UsageError(f"{tuple(shape)} is not a two-row shape")
    return (parts + [0, 0])[:2]


def m_matrix_tworow(shape, i):
    """m = -(1 - E_i) in the tableau basis of the two-row shape (n-p, p)."""
    top, p = two_row_shape(shape)
    n = top + p
    basis = enumerate_syt((top, p))
    E = tl_matrix(n, p, i)
    m = E - np.eye(len(basis), dtype=np.int64)
    return ExchangeMatrix((top, p), i, basis, m)


def m_matrix_twocol(shape, i):
    """
    m_{i;α,β} = -ε_α ε_β m_{i;β′,α′} from the conjugate two-row matrix.
    """
    shape = tuple(p for p in shape if p)
    if not is_two_column(shape):
        raise UsageError(f"{shape} is not a two-column shape")
    conj = m_matrix_tworow(conjugate(shape), i)
    conj_index = {t: k for k, t in enumerate(conj.basis)}
    basis = enumerate_syt(shape)
    signs = [sign_epsilon(t) for t in basis]
    primes = [conj_index[conjugate_tableau(t)] for t in basis]
    size = len(basis)
    m = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        for b in range(size):
            m[a, b] = -signs[a] * signs[b] * conj.entries[primes[b], primes[a]]
    return ExchangeMatrix(shape, i, basis, m)


def exchange_matrices(shape, family):
    """All m_i, i = 1..n-1, for ``family`` in {"tworow", "twocol"}."""
    n = sum(shape)
    build = {"tworow": m_matrix_tworow, "twocol": m_matrix_twocol}.get(family)
    if build is None:
        raise UsageError(f"unknown family {family!r}")
    return {i: build(shape, i) for i in range(1, n)}


def hotta_check(matrices):
    """
    Symmetric group relations for the ρ's of a family of exchange matrices.

    Returns:
    --------
    list of (check, passed)
    """
    rho = {i: m.rho for i, m in matrices.items()}
    results = []
    for i, Ri in rho.items():
        identity = np.eye(Ri.shape[0], dtype=np.int64)
        results.append((f"rho_{i}^2 = 1", bool(np.array_equal(Ri @ Ri, identity))))
        if i + 1 in rho:
            Rj = rho[i + 1]
            results.append((f"braid {i},{i + 1}", bool(np.array_equal(Ri @ Rj @ Ri, Rj @ Ri @ Rj))))
        for j, Rj in rho.items():
            if j > i + 1:
                results.append((f"rho_{i} rho_{j} commute", bool(np.array_equal(Ri @ Rj, Rj @ Ri))))
    return results


def sign_lemma_check(matrix):
    """m[α, β] != 0 with α != β forces ε_α != ε_β."""
    signs = [sign_epsilon(t) for t in matrix.basis]
    for a in range(len(signs)):
        for b in range(len(signs)):
            if a != b and matrix.entries[a, b] and signs[a] == signs[b]:
                return False
    return True


def negate_diagonal_transpose(matrix):
    m = matrix.entries.T.copy()
    np.fill_diagonal(m, -np.diag(matrix.entries))
    return m
