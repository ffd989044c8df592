"""
Deformed S_n-actions and the minimal skew-symmetric polynomial I_λ.
"""
import logging
from dataclasses import dataclass

from models.tensor import TensorVec, WeightLambda, apply_perm, swap_variables, weight_basis
from utils.exactalg import InvariantViolationError, NotDivisibleError, Poly, divided_difference

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CosetRep:
    """Shortest permutation σ with σ(L_0) = target."""

    sigma: tuple
    sign: int
    target: tuple


def shat_action(f, i):
    """
    ŝ_i f = f(z_i <-> z_{i+1}) + h (f(z_i <-> z_{i+1}) - f) / (z_i - z_{i+1}).

    Parameters:
    -----------
    f : Poly
        Polynomial in z_1..z_n, h
    i : int
        1 <= i <= n-1

    Returns:
    --------
    Poly
        Exact image; the division always succeeds
    """
    return f.swap(i) + Poly.h(f.n) * divided_difference(f, i)


def s_action(v, i):
    """
    s_i v = P^{(i,i+1)} v(z_i <-> z_{i+1}) + h (v(z_i <-> z_{i+1}) - v) / (z_i - z_{i+1}).

    The h-term is not permuted.
    """
    h = Poly.h(v.nvars)
    permuted = apply_perm(swap_variables(v, i), i, i + 1)
    return permuted + v.map(lambda c: h * divided_difference(c, i))


def blocks_of(lam):
    """Site ranges of the letter blocks of L_0 (1-based, inclusive)."""
    blocks = []
    start = 1
    for p in lam.parts:
        blocks.append(range(start, start + p))
        start += p
    return blocks


def standard_index(lam):
    """L_0 = (1, ..., 1, 2, ..., 2, ..., N, ..., N)."""
    L = []
    for letter, p in enumerate(lam.parts, start=1):
        L.extend([letter] * p)
    return tuple(L)


def block_factor(n, a, b):
    """z_a - z_b + h."""
    coeffs = [0] * n
    coeffs[a - 1], coeffs[b - 1] = 1, -1
    return Poly.linear(n, coeffs, 1)


def d0(lam):
    """D_0 = Π over blocks Π_{a<b in block} (z_a - z_b + h); degree k(λ)."""
    n = lam.n
    result = Poly.one(n)
    for block in blocks_of(lam):
        for a in block:
            for b in block:
                if a < b:
                    result = result * block_factor(n, a, b)
    return result


def _inversions(seq):
    return sum(1 for x in range(len(seq)) for y in range(x + 1, len(seq)) if seq[x] > seq[y])


def coset_reps(lam):
    """
    Minimal coset representatives of S_n / (S_{λ_1} × ... × S_{λ_N}).

    Enumerated in lexicographic order of σ(L_0); the sign is the parity of σ.
    """
    L0 = standard_index(lam)
    positions = {}
    for pos, letter in enumerate(L0, start=1):
        positions.setdefault(letter, []).append(pos)
    reps = []
    for L in weight_basis(lam):
        seen = {}
        inverse = []
        for letter in L:
            r = seen.get(letter, 0)
            inverse.append(positions[letter][r])
            seen[letter] = r + 1
        sigma = [0] * len(L)
        for k, src in enumerate(inverse, start=1):
            sigma[src - 1] = k
        sign = -1 if _inversions(inverse) % 2 else 1
        reps.append(CosetRep(tuple(sigma), sign, L))
    return reps


def _descent(L, rule):
    indices = [i for i in range(1, len(L)) if L[i - 1] > L[i]]
    return indices[0] if rule == "leftmost" else indices[-1]


def build_Ilambda(lam, descent="leftmost"):
    """
    I_λ = Σ_σ sgn(σ) σ̂(D_0) v_{σ(L_0)}.

    Each component is reached from L_0 along a reduced word: the descent of L
    chosen by ``descent`` ("leftmost" or "rightmost") gives L = s_i L' with
    one inversion less, and f_L = -ŝ_i f_{L'}.

    Parameters:
    -----------
    lam : WeightLambda
        A partition (zero parts allowed)
    descent : str
        Which descent to peel off; both choices give the same vector

    Returns:
    --------
    TensorVec
        Polynomial vector, homogeneous of degree k(λ)
    """
    if not lam.is_partition():
        raise InvariantViolationError(f"{lam.parts} is not a partition")
    L0 = standard_index(lam)
    f = {L0: d0(lam)}
    for L in sorted(weight_basis(lam), key=lambda M: (_inversions(M), M)):
        if L == L0:
            continue
        i = _descent(L, descent)
        prev = list(L)
        prev[i - 1], prev[i] = prev[i], prev[i - 1]
        f[L] = -shat_action(f[tuple(prev)], i)
    logger.debug("built I_%s with %d components", lam, len(f))
    return TensorVec(lam, f)


def specialize_h0(v):
    return v.map(lambda c: c.specialize_h(0))


def vandermonde_part(L):
    """Π_{a<b, l_a = l_b} (z_a - z_b)."""
    n = len(L)
    result = Poly.one(n)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if L[a - 1] == L[b - 1]:
                coeffs = [0] * n
                coeffs[a - 1], coeffs[b - 1] = 1, -1
                result = result * Poly.linear(n, coeffs)
    return result


def h0_sign_table(lam, ilam=None):
    """
    Sign s_L with I_λ|_{h=0} coefficient = s_L Π_{a<b, l_a=l_b}(z_a - z_b).

    Returns 0 where the coefficient is not ± that product.
    """
    ilam = build_Ilambda(lam) if ilam is None else ilam
    classical = specialize_h0(ilam)
    table = {}
    for L in weight_basis(lam):
        c = classical.coefficient(L)
        target = vandermonde_part(L)
        if c == target:
            table[L] = 1
        elif c == -target:
            table[L] = -1
        else:
            table[L] = 0
    return table


def is_block_skew(f, lam):
    """True if ŝ_i f = -f for every adjacent pair inside a block of L_0."""
    for block in blocks_of(lam):
        for i in list(block)[:-1]:
            if shat_action(f, i) != -f:
                return False
    return True


def divide_by_block_product(f, lam):
    """
    Quotient of a block-skew f by D_0.

    Raises:
    -------
    NotDivisibleError
        If f is not divisible (never for block-skew inputs)
    """
    return f.exact_div(d0(lam))


def minimality_checks(lam):
    """
    Skew-symmetry, degree and normalization of I_λ.

    Returns:
    --------
    list of (check, passed, detail)
    """
    ilam = build_Ilambda(lam)
    results = []
    for i in range(1, lam.n):
        image = s_action(ilam, i)
        results.append((f"skew s_{i}", image == -ilam, ""))
    k = lam.k()
    results.append(("degree", ilam.is_homogeneous(k), f"k={k}, max degree {ilam.degree()}"))
    normalized = ilam.coefficient(standard_index(lam)) == d0(lam)
    results.append(("normalization", normalized, "coefficient of v_L0 equals D_0"))
    try:
        divide_by_block_product(ilam.coefficient(standard_index(lam)), lam)
        results.append(("block divisibility", True, ""))
    except NotDivisibleError as exc:
        results.append(("block divisibility", False, str(exc)))
    return results


def partitions(n, min_parts=2):
    """
    Partitions of n in reverse-lexicographic order, padded to ``min_parts``.
    """
    def gen(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    for parts in gen(n, n):
        parts = parts + (0,) * max(0, min_parts - len(parts))
        yield WeightLambda(parts)
