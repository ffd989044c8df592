"""
The N = 2 multiple-residue formula for the components of I_λ.

For λ = (n-p, p) the component I_{L(a)}, with the letters 2 of L(a) at the
positions a_1 < ... < a_p, is a p-fold contour integral of a rational
function of w_1..w_p. The integrals are evaluated exactly by residues,
innermost variable w_p first, without ever leaving the factored form.

Ring layout: z_1..z_n are variables 0..n-1, w_k is variable n+k-1.
"""
import logging
from dataclasses import dataclass
from itertools import combinations

from models.minimal import build_Ilambda
from models.tensor import TensorVec, WeightLambda
from utils.exactalg import FactoredRatio, LinForm, MultiplicityError, UsageError
from utils.parallel import run_parallel

logger = logging.getLogger(__name__)

CONVENTIONS = ("inside", "outside")


@dataclass
class Integrand:
    """
    Prefactor times integrand of one component, as a single FactoredRatio.

    ``orientation`` is the sign relating the literal counterclockwise
    integral to I_{L(a)}.
    """

    shape: tuple
    a: tuple
    body: FactoredRatio
    orientation: int

    @property
    def n(self):
        return sum(self.shape)

    @property
    def p(self):
        return self.shape[1]

    def w_index(self, k):
        return self.n + k - 1


def _form(nvars, terms=None, h=0):
    """Affine form from {1-based variable: coefficient} plus an h coefficient."""
    coeffs = [0] * nvars
    for i, c in (terms or {}).items():
        coeffs[i - 1] += c
    return LinForm.of(coeffs, h)


def component_index(n, a):
    """L(a): letter 2 at the positions a, letter 1 elsewhere."""
    return tuple(2 if i in a else 1 for i in range(1, n + 1))


def build_integrand(shape, a):
    """
    (-1)^{p(n-p+1)} h^p Π_{i<j}(h+z_i-z_j)
      × Π_{k<l}(w_l-w_k)(h+w_k-w_l)
      / Π_k (Π_{i<=a_k}(w_k-z_i) Π_{i>=a_k}(h+w_k-z_i)).
    """
    parts = tuple(shape) + (0,) * (2 - len(shape))
    top, p = parts[0], parts[1]
    n = top + p
    a = tuple(int(x) for x in a)
    if len(a) != p or any(x >= y for x, y in zip(a, a[1:])) or (a and not 1 <= a[0] <= a[-1] <= n):
        raise UsageError(f"index set {a} is not an increasing {p}-subset of 1..{n}")
    nvars = n + p

    def w(k):
        return n + k

    numer = [_form(nvars, h=1) for _ in range(p)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            numer.append(_form(nvars, {i: 1, j: -1}, h=1))
    for k in range(1, p + 1):
        for l in range(k + 1, p + 1):
            numer.append(_form(nvars, {w(l): 1, w(k): -1}))
            numer.append(_form(nvars, {w(k): 1, w(l): -1}, h=1))
    denom = []
    for k in range(1, p + 1):
        for i in range(1, a[k - 1] + 1):
            denom.append(_form(nvars, {w(k): 1, i: -1}))
        for i in range(a[k - 1], n + 1):
            denom.append(_form(nvars, {w(k): 1, i: -1}, h=1))
    sign = -1 if (p * (n - p + 1)) % 2 else 1
    body = FactoredRatio.from_forms(nvars, numer, denom, sign)
    orientation = -1 if p % 2 else 1
    logger.debug("integrand for a=%s carries orientation %+d", a, orientation)
    return Integrand((top, p), a, body, orientation)


def _poles(ratio, var, convention):
    """Denominator forms in ``var`` on the requested side of the contour."""
    chosen = []
    for form, mult in ratio.denom.items():
        if form.coeffs[var] == 0:
            continue
        inside = form.h_coeff == 0
        if inside != (convention == "inside"):
            continue
        if mult > 1:
            raise MultiplicityError(f"pole {form.render()} has order {mult}")
        chosen.append(form)
    return sorted(chosen, key=lambda f: f.entries())


def residue_at(ratio, var, form):
    """Residue of ``ratio`` in variable ``var`` at the simple zero of ``form``."""
    denom = dict(ratio.denom)
    denom[form] -= 1
    if denom[form] == 0:
        del denom[form]
    rest = FactoredRatio(ratio.nvars, ratio.scalar / form.coeffs[var], ratio.numer, denom, ratio.extra)
    return rest.substitute(var, form.solve_for(var))


def _evaluate(intg, ratio, k, convention):
    if k == 0 or ratio.is_zero():
        return ratio
    var = intg.w_index(k)
    total = FactoredRatio(ratio.nvars, 0)
    for form in _poles(ratio, var, convention):
        child = residue_at(ratio, var, form)
        if convention == "outside":
            child = -child
        total = total + _evaluate(intg, child, k - 1, convention)
    return total.cancel()


def iterated_residue(intg, convention="inside"):
    """
    Evaluate the w-integrals one by one, w_p first.

    Parameters:
    -----------
    intg : Integrand
        From build_integrand
    convention : str
        "inside": residues at w_k = z_i (i <= a_k); "outside": minus the
        residues at w_k = z_i - h (i >= a_k)

    Returns:
    --------
    Poly
        The component in z_1..z_n, h

    Raises:
    -------
    MultiplicityError
        If a pole is not simple
    """
    if convention not in CONVENTIONS:
        raise UsageError(f"unknown pole convention {convention!r}")
    value = _evaluate(intg, intg.body, intg.p, convention)
    value = value * intg.orientation
    return value.expand().project(intg.n)


def _component_task(shape, a, convention):
    return iterated_residue(build_integrand(shape, a), convention)


def assemble_ihat(shape, convention="inside", threads=None):
    """Σ_a Î_{L(a)} v_{L(a)} as a TensorVec."""
    top, p = shape
    n = top + p
    index_sets = list(combinations(range(1, n + 1), p))
    values = run_parallel(_component_task, [(shape, a, convention) for a in index_sets], threads)
    coeffs = {component_index(n, a): v for a, v in zip(index_sets, values)}
    return TensorVec(WeightLambda((top, p)), coeffs)


def residue_component_check(shape, threads=None):
    """
    Every component under both pole conventions against I_λ.

    Returns:
    --------
    list of (a, convention, passed)
    """
    parts = tuple(shape) + (0,) * (2 - len(shape))
    if len(parts) != 2 or parts[0] < parts[1]:
        raise UsageError(f"{shape} is not a two-row shape")
    ilam = build_Ilambda(WeightLambda(parts))
    n = sum(parts)
    results = []
    for convention in CONVENTIONS:
        ihat = assemble_ihat(parts, convention, threads)
        for a in combinations(range(1, n + 1), parts[1]):
            L = component_index(n, a)
            results.append((a, convention, ihat.coefficient(L) == ilam.coefficient(L)))
    return results
