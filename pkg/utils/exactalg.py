"""
Exact arithmetic kernel.

Sparse multivariate polynomials in z_1, ..., z_n (plus optional auxiliary
variables) and h with rational coefficients, exact division, substitution,
divided differences, and the factored linear-form ratio class used by the
R-matrix and residue computations.

Ring arithmetic runs on sympy's sparse ``PolyRing`` over QQ; ``Poly`` adds
the fixed variable layout (h last), the canonical rendering and JSON.
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing

logger = logging.getLogger(__name__)


class QcbError(Exception):
    """Base class for every error raised by the toolkit."""


class DimensionError(QcbError):
    pass


class NotDivisibleError(QcbError):
    pass


class NotPolynomialError(QcbError):
    pass


class InvariantViolationError(QcbError):
    pass


class MultiplicityError(QcbError):
    pass


class IdentificationError(QcbError):
    pass


class PoleError(QcbError):
    pass


class QuadratureAccuracyError(QcbError):
    """Raised when a quadrature does not reach its tolerance within budget."""

    def __init__(self, message, estimate=None, achieved=None):
        super().__init__(message)
        self.estimate = estimate
        self.achieved = achieved


class ConfigError(QcbError):
    pass


class UsageError(QcbError):
    pass


@lru_cache(maxsize=None)
def poly_ring(n):
    """QQ[z1, ..., zn, h] with h as the last generator."""
    return PolyRing([f"z{k}" for k in range(1, n + 1)] + ["h"], QQ, lex)


def to_qq(c):
    """Fraction, int or sympy Rational as an element of QQ."""
    if isinstance(c, sympy.Rational):
        return QQ(int(c.p), int(c.q))
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def to_fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))


def _key(exp):
    # graded, then lex with z_1 < ... < z_n < h (h is the last slot)
    return (sum(exp),) + exp[::-1]


def _fmt_rat(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"({c.numerator}/{c.denominator})"


class Poly:
    """
    Polynomial in ``n`` ring variables and h.

    Wraps an element of ``poly_ring(n)``. Exponents are tuples of length n+1
    whose last entry is the power of h. Values are immutable after
    construction.

    Parameters:
    -----------
    n : int
        Number of ring variables besides h
    terms : dict, optional
        Mapping exponent tuple -> coefficient; zero coefficients are dropped
    names : tuple of str, optional
        Display names of the ring variables (defaults to z1..zn)
    """

    __slots__ = ("n", "elem", "names")

    def __init__(self, n, terms=None, names=None):
        ring = poly_ring(n)
        clean = {}
        for exp, c in (terms or {}).items():
            if len(exp) != n + 1:
                raise DimensionError(f"exponent {exp} does not fit a ring with n={n}")
            if c != 0:
                clean[tuple(exp)] = to_qq(c)
        self.n = n
        self.elem = ring.from_dict(clean)
        self.names = names

    @classmethod
    def _wrap(cls, n, elem, names=None):
        p = cls.__new__(cls)
        p.n = n
        p.elem = elem
        p.names = names
        return p

    @classmethod
    def zero(cls, n, names=None):
        return cls._wrap(n, poly_ring(n).zero, names)

    @classmethod
    def constant(cls, n, c, names=None):
        return cls._wrap(n, poly_ring(n).ground_new(to_qq(c)), names)

    @classmethod
    def one(cls, n, names=None):
        return cls._wrap(n, poly_ring(n).one, names)

    @classmethod
    def var(cls, n, i, names=None):
        """The i-th ring variable (1-based); i = n+1 gives h."""
        if not 1 <= i <= n + 1:
            raise DimensionError(f"variable index {i} outside 1..{n + 1}")
        return cls._wrap(n, poly_ring(n).gens[i - 1], names)

    @classmethod
    def h(cls, n, names=None):
        return cls.var(n, n + 1, names)

    @classmethod
    def linear(cls, n, coeffs, h_coeff=0, constant=0, names=None):
        """Build sum_i coeffs[i] z_{i+1} + h_coeff h + constant."""
        if len(coeffs) != n:
            raise DimensionError(f"expected {n} coefficients, got {len(coeffs)}")
        ring = poly_ring(n)
        elem = ring.ground_new(to_qq(constant))
        for g, c in zip(ring.gens, list(coeffs) + [h_coeff]):
            if c != 0:
                elem += g.mul_ground(to_qq(c))
        return cls._wrap(n, elem, names)

    def __getstate__(self):
        return self.n, self.terms, self.names

    def __setstate__(self, state):
        n, terms, names = state
        self.n = n
        self.elem = poly_ring(n).from_dict({e: to_qq(c) for e, c in terms.items()})
        self.names = names

    # ------------------------------------------------------------------
    # basic queries

    @property
    def ring(self):
        return poly_ring(self.n)

    @property
    def terms(self):
        """Exponent tuple -> Fraction."""
        return {exp: to_fraction(c) for exp, c in self.elem.items()}

    def is_zero(self):
        return not self.elem

    def is_constant(self):
        return self.elem.is_ground

    def constant_value(self):
        return to_fraction(self.elem.get((0,) * (self.n + 1), QQ.zero))

    def degree(self):
        if not self.elem:
            return -1
        return max(sum(exp) for exp in self.elem.itermonoms())

    def is_homogeneous(self, degree=None):
        degrees = {sum(exp) for exp in self.elem.itermonoms()}
        if not degrees:
            return True
        if len(degrees) != 1:
            return False
        return degree is None or degrees == {degree}

    def has_integer_coefficients(self):
        return all(c.denominator == 1 for c in self.elem.itercoeffs())

    def sorted_terms(self):
        """Terms in canonical order (ascending graded lex, h largest)."""
        return sorted(self.terms.items(), key=lambda item: _key(item[0]))

    def _check(self, other):
        if self.n != other.n:
            raise DimensionError(f"ambient sizes differ: {self.n} vs {other.n}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other.elem
        return self.ring.ground_new(to_qq(other))

    # ------------------------------------------------------------------
    # ring arithmetic

    def __add__(self, other):
        return Poly._wrap(self.n, self.elem + self._coerce(other), self.names)

    __radd__ = __add__

    def __neg__(self):
        return Poly._wrap(self.n, -self.elem, self.names)

    def __sub__(self, other):
        return Poly._wrap(self.n, self.elem - self._coerce(other), self.names)

    def __rsub__(self, other):
        return Poly._wrap(self.n, self._coerce(other) - self.elem, self.names)

    def scale(self, c):
        return Poly._wrap(self.n, self.elem.mul_ground(to_qq(c)), self.names)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        return Poly._wrap(self.n, self.elem * other.elem, self.names)

    __rmul__ = __mul__

    def __pow__(self, k):
        return Poly._wrap(self.n, self.elem ** k, self.names)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.elem == other.elem
        if isinstance(other, (int, Fraction)):
            return self.elem == self.ring.ground_new(to_qq(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.elem.items())))

    # ------------------------------------------------------------------
    # division

    def exact_div(self, g):
        """
        Exact quotient q with self = q * g.

        Raises:
        -------
        NotDivisibleError
            If the remainder is nonzero
        """
        self._check(g)
        if g.is_zero():
            raise NotDivisibleError("division by the zero polynomial")
        try:
            return Poly._wrap(self.n, self.elem.exquo(g.elem), self.names)
        except ExactQuotientFailed as exc:
            raise NotDivisibleError(f"{g.render()} does not divide {self.render()}") from exc

    def divides_by(self, g):
        try:
            self.exact_div(g)
        except NotDivisibleError:
            return False
        return True

    # ------------------------------------------------------------------
    # substitution and evaluation

    def substitute(self, images):
        """
        Ring homomorphism sending variable k to images[k].

        Parameters:
        -----------
        images : sequence of Poly
            One image per ring variable, h last (length n+1), in the same ring
        """
        if len(images) != self.n + 1:
            raise DimensionError(f"expected {self.n + 1} images, got {len(images)}")
        pairs = [(g, self._coerce(img)) for g, img in zip(self.ring.gens, images)]
        return Poly._wrap(self.n, self.elem.compose(pairs), self.names)

    def permute_vars(self, perm):
        """
        Rename z_i -> z_{perm[i]} (perm is a 1-based tuple of length n).

        h is untouched.
        """
        n = self.n
        if sorted(perm) != list(range(1, n + 1)):
            raise DimensionError(f"{perm} is not a permutation of 1..{n}")
        terms = {}
        for exp, c in self.elem.items():
            new = [0] * (n + 1)
            for i in range(n):
                new[perm[i] - 1] = exp[i]
            new[n] = exp[n]
            terms[tuple(new)] = c
        return Poly._wrap(n, self.ring.from_dict(terms), self.names)

    def swap(self, i, j=None):
        """Exchange z_i and z_j (default j = i+1)."""
        j = i + 1 if j is None else j
        perm = list(range(1, self.n + 1))
        perm[i - 1], perm[j - 1] = j, i
        return self.permute_vars(tuple(perm))

    def affine_substitute(self, perm=None, h_shifts=None, constants=None):
        """
        Apply z_i -> z_{perm(i)} + h_shifts[i] h + constants[i], h -> h.
        """
        n = self.n
        perm = perm or tuple(range(1, n + 1))
        h_shifts = h_shifts or [0] * n
        constants = constants or [0] * n
        images = []
        for i in range(n):
            coeffs = [0] * n
            coeffs[perm[i] - 1] = 1
            images.append(Poly.linear(n, coeffs, h_shifts[i], constants[i]))
        images.append(Poly.h(n))
        return self.substitute(images)

    def shift(self, i, h_shift):
        """z_i -> z_i + h_shift h."""
        shifts = [0] * self.n
        shifts[i - 1] = h_shift
        return self.affine_substitute(h_shifts=shifts)

    def specialize_h(self, value):
        """Substitute a rational value for h."""
        return Poly._wrap(self.n, self.elem.subs(self.ring.gens[-1], to_qq(value)), self.names)

    def evaluate(self, values):
        """Evaluate at a point given as n+1 numbers (h last); values may be complex."""
        if len(values) != self.n + 1:
            raise DimensionError(f"expected {self.n + 1} values, got {len(values)}")
        total = 0
        for exp, c in self.elem.items():
            term = to_fraction(c)
            for v, e in zip(values, exp):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    def extend(self, n_new):
        """Embed into a ring with more variables (new ones appended before h)."""
        if n_new < self.n:
            raise DimensionError("cannot shrink with extend(); use project()")
        pad = (0,) * (n_new - self.n)
        terms = {e[:-1] + pad + e[-1:]: c for e, c in self.elem.items()}
        return Poly._wrap(n_new, poly_ring(n_new).from_dict(terms))

    def project(self, n_new):
        """Drop trailing variables that do not occur."""
        terms = {}
        for e, c in self.elem.items():
            if any(e[n_new:-1]):
                raise DimensionError("projection would drop a variable that occurs")
            terms[e[:n_new] + e[-1:]] = c
        return Poly._wrap(n_new, poly_ring(n_new).from_dict(terms))

    # ------------------------------------------------------------------
    # serialization

    def _var_name(self, k):
        if k == self.n:
            return "h"
        if self.names:
            return self.names[k]
        return f"z{k + 1}"

    def render(self):
        """Compact text such as ``z1-z2+h``."""
        if not self.elem:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = ""
            for k, e in enumerate(exp):
                if e == 1:
                    mono += self._var_name(k)
                elif e > 1:
                    mono += f"{self._var_name(k)}^{e}"
            if not mono:
                text = _fmt_rat(c)
            elif c == 1:
                text = mono
            elif c == -1:
                text = "-" + mono
            else:
                text = _fmt_rat(c) + mono
            if pieces and not text.startswith("-"):
                text = "+" + text
            pieces.append(text)
        return "".join(pieces)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Poly(n={self.n}, {self.render()})"

    def to_json_obj(self):
        return {
            "n": self.n,
            "terms": [[list(exp), f"{c.numerator}/{c.denominator}"] for exp, c in self.sorted_terms()],
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj):
        terms = {}
        for exp, text in obj["terms"]:
            num, den = text.split("/")
            terms[tuple(exp)] = Fraction(int(num), int(den))
        return cls(obj["n"], terms)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))


def divided_difference(f, i):
    """
    ∂_i f = (f(z_i <-> z_{i+1}) - f) / (z_i - z_{i+1}).

    Parameters:
    -----------
    f : Poly
        Polynomial to differentiate
    i : int
        Index with 1 <= i <= n-1

    Returns:
    --------
    Poly
        The exact quotient
    """
    if not 1 <= i < f.n:
        raise DimensionError(f"divided difference index {i} outside 1..{f.n - 1}")
    numerator = f.swap(i) - f
    coeffs = [0] * f.n
    coeffs[i - 1], coeffs[i] = 1, -1
    try:
        return numerator.exact_div(Poly.linear(f.n, coeffs))
    except NotDivisibleError as exc:
        raise InvariantViolationError(f"divided difference {i} failed to divide") from exc


# ----------------------------------------------------------------------
# linear forms and factored ratios


@dataclass(frozen=True)
class LinForm:
    """
    Affine form sum coeffs[k] x_k + h_coeff h + constant.

    ``coeffs`` covers every ring variable (z's first, then any auxiliary
    w's). Forms held by a FactoredRatio are normalized: the first nonzero
    entry of (coeffs, h_coeff, constant) equals 1.
    """

    coeffs: tuple
    h_coeff: Fraction = Fraction(0)
    constant: Fraction = Fraction(0)

    @classmethod
    def of(cls, coeffs, h_coeff=0, constant=0):
        return cls(tuple(Fraction(c) for c in coeffs), Fraction(h_coeff), Fraction(constant))

    @classmethod
    def from_poly(cls, p):
        if p.degree() > 1:
            raise DimensionError(f"{p.render()} is not affine")
        coeffs = [Fraction(0)] * p.n
        h_coeff = Fraction(0)
        constant = Fraction(0)
        for exp, c in p.terms.items():
            if sum(exp) == 0:
                constant = c
            elif exp[-1] == 1:
                h_coeff = c
            else:
                coeffs[exp.index(1)] = c
        return cls(tuple(coeffs), h_coeff, constant)

    @property
    def nvars(self):
        return len(self.coeffs)

    def entries(self):
        return self.coeffs + (self.h_coeff, self.constant)

    def is_zero(self):
        return all(c == 0 for c in self.entries())

    def is_constant(self):
        return all(c == 0 for c in self.coeffs) and self.h_coeff == 0

    def normalized(self):
        """Return (scale, form) with self = scale * form and form monic."""
        for c in self.entries():
            if c != 0:
                lead = c
                break
        else:
            raise InvariantViolationError("cannot normalize the zero form")
        if lead == 1:
            return Fraction(1), self
        return lead, LinForm(
            tuple(c / lead for c in self.coeffs), self.h_coeff / lead, self.constant / lead
        )

    def scale(self, c):
        c = Fraction(c)
        return LinForm(tuple(x * c for x in self.coeffs), self.h_coeff * c, self.constant * c)

    def __add__(self, other):
        return LinForm(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            self.h_coeff + other.h_coeff,
            self.constant + other.constant,
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def to_poly(self):
        return Poly.linear(self.nvars, list(self.coeffs), self.h_coeff, self.constant)

    def evaluate(self, values):
        total = self.constant + self.h_coeff * values[-1]
        for c, v in zip(self.coeffs, values):
            if c:
                total += c * v
        return total

    def substitute(self, k, image):
        """Replace variable k (0-based) by the affine form ``image``."""
        c = self.coeffs[k]
        if c == 0:
            return self
        coeffs = list(self.coeffs)
        coeffs[k] = Fraction(0)
        base = LinForm(tuple(coeffs), self.h_coeff, self.constant)
        return base + image.scale(c)

    def solve_for(self, k):
        """The affine form x_k equals on the zero set of self."""
        c = self.coeffs[k]
        if c == 0:
            raise InvariantViolationError(f"form does not involve variable {k + 1}")
        coeffs = list(self.coeffs)
        coeffs[k] = Fraction(0)
        rest = LinForm(tuple(coeffs), self.h_coeff, self.constant)
        return rest.scale(Fraction(-1) / c)

    def render(self, names=None):
        return self.to_poly_named(names).render()

    def to_poly_named(self, names=None):
        p = self.to_poly()
        p.names = names
        return p


def _merge(counter, form, mult):
    counter[form] = counter.get(form, 0) + mult


class FactoredRatio:
    """
    scalar * prod(numer forms) * extra / prod(denom forms).

    Forms are normalized and common numerator/denominator forms cancel on
    construction.

    Parameters:
    -----------
    nvars : int
        Ring size (number of non-h variables)
    scalar : Fraction
    numer, denom : dict LinForm -> multiplicity
    extra : Poly, optional
        Unfactored numerator part (defaults to 1)
    """

    __slots__ = ("nvars", "scalar", "numer", "denom", "extra")

    def __init__(self, nvars, scalar=1, numer=None, denom=None, extra=None):
        self.nvars = nvars
        scalar = Fraction(scalar)
        num = {}
        den = {}
        for form, mult in (numer or {}).items():
            if form.is_zero():
                scalar = Fraction(0)
                continue
            s, f = form.normalized()
            if f.is_constant():
                scalar *= (s * f.constant) ** mult
                continue
            scalar *= s ** mult
            _merge(num, f, mult)
        for form, mult in (denom or {}).items():
            if form.is_zero():
                raise MultiplicityError("a denominator factor vanishes identically")
            s, f = form.normalized()
            if f.is_constant():
                scalar /= (s * f.constant) ** mult
                continue
            scalar /= s ** mult
            _merge(den, f, mult)
        for f in list(num):
            if f in den:
                k = min(num[f], den[f])
                num[f] -= k
                den[f] -= k
                if num[f] == 0:
                    del num[f]
                if den[f] == 0:
                    del den[f]
        if extra is None:
            extra = Poly.one(nvars)
        elif extra.n != nvars:
            raise DimensionError(f"extra numerator lives in n={extra.n}, expected {nvars}")
        if extra.is_constant():
            scalar *= extra.constant_value()
            extra = Poly.one(nvars)
        if scalar == 0:
            num, den, extra = {}, {}, Poly.one(nvars)
        self.scalar = scalar
        self.numer = num
        self.denom = den
        self.extra = extra

    @classmethod
    def from_poly(cls, p):
        return cls(p.n, 1, extra=p)

    @classmethod
    def from_forms(cls, nvars, numer=(), denom=(), scalar=1):
        num = {}
        den = {}
        for f in numer:
            _merge(num, f, 1)
        for f in denom:
            _merge(den, f, 1)
        return cls(nvars, scalar, num, den)

    def is_zero(self):
        return self.scalar == 0

    def is_polynomial(self):
        return not self.denom

    def __neg__(self):
        return FactoredRatio(self.nvars, -self.scalar, self.numer, self.denom, self.extra)

    def __mul__(self, other):
        if isinstance(other, FactoredRatio):
            num = dict(self.numer)
            for f, m in other.numer.items():
                _merge(num, f, m)
            den = dict(self.denom)
            for f, m in other.denom.items():
                _merge(den, f, m)
            extra = self.extra if other.extra.is_constant() else self.extra * other.extra
            return FactoredRatio(self.nvars, self.scalar * other.scalar, num, den, extra)
        if isinstance(other, Poly):
            return self * FactoredRatio.from_poly(other)
        if isinstance(other, LinForm):
            return self * FactoredRatio.from_forms(self.nvars, numer=[other])
        return FactoredRatio(self.nvars, self.scalar * Fraction(other), self.numer, self.denom, self.extra)

    __rmul__ = __mul__

    def divide_by(self, form, mult=1):
        den = dict(self.denom)
        _merge(den, form, mult)
        return FactoredRatio(self.nvars, self.scalar, self.numer, den, self.extra)

    def __add__(self, other):
        """
        Sum over the union of denominators.

        Numerator forms common to both summands are kept factored; only the
        remaining cofactors are expanded.
        """
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        common = {f: min(m, other.numer[f]) for f, m in self.numer.items() if f in other.numer}
        denom = dict(self.denom)
        for f, m in other.denom.items():
            denom[f] = max(denom.get(f, 0), m)

        def cofactor(r):
            p = r.extra.scale(r.scalar)
            for f, m in r.numer.items():
                k = m - common.get(f, 0)
                if k:
                    p = p * f.to_poly() ** k
            for f, m in denom.items():
                k = m - r.denom.get(f, 0)
                if k:
                    p = p * f.to_poly() ** k
            return p

        total = cofactor(self) + cofactor(other)
        return FactoredRatio(self.nvars, 1, common, denom, total).cancel()

    def __sub__(self, other):
        return self + (-other)

    def cancel(self):
        """Trial-divide the unfactored numerator by every denominator form."""
        if self.is_zero() or not self.denom or self.extra.is_constant():
            return self
        extra = self.extra
        denom = dict(self.denom)
        changed = False
        for f in list(denom):
            divisor = f.to_poly()
            while denom.get(f):
                try:
                    extra = extra.exact_div(divisor)
                except NotDivisibleError:
                    break
                denom[f] -= 1
                changed = True
                if denom[f] == 0:
                    del denom[f]
        if not changed:
            return self
        return FactoredRatio(self.nvars, self.scalar, self.numer, denom, extra)

    def expand(self):
        """The polynomial value; raises NotPolynomialError if denominators remain."""
        r = self.cancel()
        if r.denom:
            forms = ", ".join(f.render() for f in r.denom)
            raise NotPolynomialError(f"denominator factors remain: {forms}")
        p = r.extra.scale(r.scalar)
        for f, m in r.numer.items():
            p = p * f.to_poly() ** m
        return p

    def substitute(self, k, image):
        """Replace variable k (0-based) by an affine LinForm everywhere."""
        num = {}
        for f, m in self.numer.items():
            _merge(num, f.substitute(k, image), m)
        den = {}
        for f, m in self.denom.items():
            g = f.substitute(k, image)
            if g.is_zero():
                raise MultiplicityError(f"denominator {f.render()} vanishes at the substituted point")
            _merge(den, g, m)
        extra = self.extra
        if not extra.is_constant():
            images = [Poly.var(self.nvars, j + 1) for j in range(self.nvars)] + [Poly.h(self.nvars)]
            images[k] = image.to_poly()
            extra = extra.substitute(images)
        return FactoredRatio(self.nvars, self.scalar, num, den, extra)

    def evaluate(self, values):
        value = self.scalar * self.extra.evaluate(values)
        for f, m in self.numer.items():
            value *= f.evaluate(values) ** m
        for f, m in self.denom.items():
            d = f.evaluate(values)
            if d == 0:
                raise PoleError(f"{f.render()} vanishes at the evaluation point")
            value /= d ** m
        return value

    def __repr__(self):
        num = " ".join(f"({f.render()})^{m}" if m > 1 else f"({f.render()})" for f, m in self.numer.items())
        den = " ".join(f"({f.render()})^{m}" if m > 1 else f"({f.render()})" for f, m in self.denom.items())
        return f"FactoredRatio({self.scalar} {num} [{self.extra.render()}] / {den or 1})"


def ratio_cancel(r):
    return r.cancel()


def ratio_expand(r):
    return r.expand()


def poly_arith(f, g, op):
    """Dispatch for the four ring operations by name."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        return f.scale(g)
    raise UsageError(f"unknown polynomial operation {op!r}")


def poly_exact_div(f, g):
    return f.exact_div(g)


def poly_substitute(f, perm=None, h_shifts=None, constants=None):
    return f.affine_substitute(perm, h_shifts, constants)
