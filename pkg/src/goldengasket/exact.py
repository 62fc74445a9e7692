"""Exact arithmetic for the algebraic numbers the gasket constructions live on.

Everything here is rational-interval based: an algebraic number is an integer
polynomial plus an isolating interval with rational endpoints, and derived
quantities are integer (or rational) combinations of its powers.  Signs are
decided either symbolically (a combination that reduces to the zero vector is
exactly zero) or by shrinking the isolating interval until an interval Horner
evaluation excludes zero.  No float ever feeds back into a comparison.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

from .errors import DomainError, MultipleRootsError, NoRootError, PrecisionExhausted

__all__ = [
    "AlgebraicNumber",
    "LinearCombination",
    "as_scalar",
    "compare",
    "compare_values",
    "gasket_dimension",
    "isolate_root",
    "lambda_star",
    "multinacci",
    "scalar_ceil",
    "scalar_float",
    "scalar_floor",
    "scalar_is_integer",
    "scalar_sign",
    "sierpinski_dimension",
    "sigma",
    "smallest_positive_root",
    "tau",
    "uniqueness_dimension",
]

# Refinement rounds allowed before a sign query gives up.
MAX_REFINE_ROUNDS = 256

# Default isolating-interval width, chosen so float conversion is faithful.
DEFAULT_TOL = Fraction(1, 10**15)


# ----------------------------------------------------------------------
# dense univariate polynomials, ascending coefficient order


def poly_trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_deriv(coeffs):
    return [k * c for k, c in enumerate(coeffs)][1:]


def poly_divmod(num, den):
    den = poly_trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    num = [Fraction(c) for c in num]
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    lead = Fraction(den[-1])
    while len(poly_trim(num)) >= len(den):
        num = poly_trim(num)
        shift = len(num) - len(den)
        f = num[-1] / lead
        q[shift] = f
        for i, c in enumerate(den):
            num[shift + i] -= f * c
    return poly_trim(q), poly_trim(num)


def _poly_gcd(a, b):
    a, b = poly_trim(a), poly_trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, poly_trim(r)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def squarefree_part(coeffs):
    g = _poly_gcd(coeffs, poly_deriv(coeffs))
    if len(g) <= 1:
        return poly_trim(coeffs)
    q, _ = poly_divmod(coeffs, g)
    return q


def _primitive_int(coeffs):
    """Clear denominators and content; leading coefficient made positive."""
    dens = [Fraction(c).denominator for c in coeffs]
    scale = math.lcm(*dens) if dens else 1
    ints = [int(Fraction(c) * scale) for c in coeffs]
    ints = poly_trim(ints)
    if not ints:
        return []
    g = math.gcd(*(abs(c) for c in ints))
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def sturm_chain(coeffs):
    chain = [poly_trim([Fraction(c) for c in coeffs])]
    d = poly_trim(poly_deriv(chain[0]))
    if d:
        chain.append(d)
        while True:
            _, r = poly_divmod(chain[-2], chain[-1])
            r = poly_trim(r)
            if not r:
                break
            chain.append([-c for c in r])
    return chain


def _variations(chain, x):
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_between(coeffs, lo, hi):
    """Distinct real roots in the open interval (lo, hi).

    Endpoints must not be roots of the squarefree part.
    """
    sf = squarefree_part(coeffs)
    if poly_eval(sf, lo) == 0 or poly_eval(sf, hi) == 0:
        raise ValueError("interval endpoint is a root")
    chain = sturm_chain(sf)
    return _variations(chain, lo) - _variations(chain, hi)


def _divisors(n):
    n = abs(n)
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return sorted(out)


def _rational_roots(int_coeffs):
    """All rational roots of a primitive integer polynomial."""
    coeffs = poly_trim(int_coeffs)
    if not coeffs:
        return []
    shift = 0
    while coeffs[0] == 0:
        coeffs = coeffs[1:]
        shift += 1
    roots = set([Fraction(0)] if shift else [])
    a0, an = coeffs[0], coeffs[-1]
    if abs(a0) > 10**6 or abs(an) > 10**6:
        # Divisor enumeration would be unreasonable; callers with huge
        # coefficients lose rational-root canonicalization only.
        return sorted(roots)
    for p in _divisors(a0):
        for q in _divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if poly_eval(coeffs, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


# ----------------------------------------------------------------------


class AlgebraicNumber:
    """A real algebraic number: integer polynomial + isolating interval.

    The stored interval always contains exactly one root of the stored
    polynomial and shrinks monotonically as signs get decided.  Numbers that
    turn out to be rational are detected at construction and carry their
    exact value in ``rational``.
    """

    __slots__ = ("poly", "rational", "_lo", "_hi", "_sign_lo", "_gen")

    def __init__(self, coeffs, lo, hi, tol=DEFAULT_TOL):
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise DomainError("empty isolating interval")
        ints = _primitive_int([Fraction(c) for c in coeffs])
        if len(ints) < 2:
            raise DomainError("constant polynomial has no roots")
        sf = _primitive_int(squarefree_part(ints))
        n = count_roots_between(sf, lo, hi)
        if n == 0:
            raise NoRootError("no root in (%s, %s)" % (lo, hi))
        if n > 1:
            raise MultipleRootsError("%d roots in (%s, %s)" % (n, lo, hi))
        if poly_eval(sf, lo) * poly_eval(sf, hi) > 0:
            # One distinct root without a sign change means the original
            # polynomial touches without crossing; reject as non-simple.
            raise MultipleRootsError("no sign change across (%s, %s)" % (lo, hi))
        self.rational = None
        for r in _rational_roots(sf):
            if lo < r < hi:
                self.rational = r
                sf = [-r.numerator, r.denominator]
                break
        self.poly = tuple(sf)
        self._lo, self._hi = lo, hi
        self._sign_lo = 1 if poly_eval(self.poly, lo) > 0 else -1
        self._gen = 0
        self.refine_to(tol)

    # -- interval state

    @property
    def interval(self):
        return self._lo, self._hi

    @property
    def generation(self):
        return self._gen

    def refine(self):
        if self.rational is not None and self._hi - self._lo <= DEFAULT_TOL:
            return
        mid = (self._lo + self._hi) / 2
        v = poly_eval(self.poly, mid)
        if v == 0:
            # Only possible for a linear (rational) polynomial.
            eps = (self._hi - self._lo) / 4
            self._lo, self._hi = mid - eps, mid + eps
        elif (1 if v > 0 else -1) == self._sign_lo:
            self._lo = mid
        else:
            self._hi = mid
        self._gen += 1

    def refine_to(self, width):
        width = Fraction(width)
        while self._hi - self._lo > width:
            self.refine()

    def midpoint(self):
        return (self._lo + self._hi) / 2

    # -- conversions

    def combination(self, coeffs):
        return LinearCombination(self, coeffs)

    def as_scalar(self):
        if self.rational is not None:
            return self.rational
        return LinearCombination(self, (0, 1))

    def __float__(self):
        if self.rational is not None:
            return float(self.rational)
        self.refine_to(Fraction(1, 10**17))
        return float(self.midpoint())

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.poly):
            if c:
                terms.append(f"{c}*x^{k}" if k else f"{c}")
        return "AlgebraicNumber(%s ~ %.12g)" % (" + ".join(terms), float(self))


ScalarLike = Union[int, Fraction, "LinearCombination"]


def _interval_eval(coeffs, lo, hi):
    """Enclose poly(x) for x in [lo, hi] by interval Horner."""
    vlo = vhi = Fraction(coeffs[-1]) if coeffs else Fraction(0)
    for c in reversed(coeffs[:-1]):
        p1, p2, p3, p4 = vlo * lo, vlo * hi, vhi * lo, vhi * hi
        vlo = min(p1, p2, p3, p4) + c
        vhi = max(p1, p2, p3, p4) + c
    return vlo, vhi


class LinearCombination:
    """A value sum(c_k * alpha^k) reduced modulo alpha's defining polynomial.

    Immutable and hashable; arithmetic between combinations requires the same
    base number (object identity).  Rationals and ints mix freely.
    """

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg, coeffs):
        self.alg = alg
        deg = len(alg.poly) - 1
        c = list(coeffs) + [0] * max(0, deg - len(coeffs))
        if len(c) > deg:
            c = self._reduce(c, alg.poly, deg)
        self.coeffs = tuple(c)

    @staticmethod
    def _reduce(c, poly, deg):
        lead = poly[-1]
        for k in range(len(c) - 1, deg - 1, -1):
            f = c[k] if lead == 1 else Fraction(c[k], lead)
            if f:
                for i in range(deg):
                    c[k - deg + i] -= f * poly[i]
            c[k] = 0
        return c[:deg]

    # -- helpers

    def _coerce(self, other):
        if isinstance(other, LinearCombination):
            if other.alg is not self.alg:
                raise TypeError("combinations over different base numbers")
            return other
        if isinstance(other, (int, Fraction)):
            return LinearCombination(self.alg, (other,))
        return None

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise DomainError("combination is irrational")
        return Fraction(self.coeffs[0])

    # -- arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LinearCombination(self.alg, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return LinearCombination(self.alg, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LinearCombination(self.alg, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LinearCombination(self.alg, tuple(c * other for c in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        prod = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return LinearCombination(self.alg, prod)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = LinearCombination(self.alg, (1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- sign and order

    def sign(self):
        if self.alg.rational is not None:
            v = poly_eval(self.coeffs, self.alg.rational)
            return 0 if v == 0 else (1 if v > 0 else -1)
        if all(c == 0 for c in self.coeffs):
            return 0
        for _ in range(MAX_REFINE_ROUNDS):
            lo, hi = self.alg.interval
            vlo, vhi = _interval_eval(self.coeffs, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            self.alg.refine()
        raise PrecisionExhausted(
            "sign of %r undecided after %d rounds" % (self.coeffs, MAX_REFINE_ROUNDS)
        )

    def enclosure(self):
        lo, hi = self.alg.interval
        if self.alg.rational is not None:
            v = poly_eval(self.coeffs, self.alg.rational)
            return v, v
        return _interval_eval(self.coeffs, lo, hi)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __hash__(self):
        return hash((id(self.alg), self.coeffs))

    def __float__(self):
        if self.alg.rational is not None:
            return float(poly_eval(self.coeffs, self.alg.rational))
        for _ in range(MAX_REFINE_ROUNDS):
            vlo, vhi = self.enclosure()
            if vhi - vlo < Fraction(1, 10**17) * max(1, abs(vlo)):
                return float((vlo + vhi) / 2)
            self.alg.refine()
        return float((vlo + vhi) / 2)

    def __repr__(self):
        return "LinearCombination(%s ~ %.12g)" % (list(self.coeffs), float(self))


def compare(a, b):
    """Exact trichotomy for combinations over one base number: -1, 0 or +1."""
    if isinstance(a, LinearCombination):
        return (a - b).sign()
    if isinstance(b, LinearCombination):
        return -(b - a).sign()
    d = Fraction(a) - Fraction(b)
    return 0 if d == 0 else (1 if d > 0 else -1)


def compare_values(a, b):
    """Compare two AlgebraicNumber/Fraction/int values, possibly over
    different defining polynomials, by interval separation."""

    def iv(x):
        if isinstance(x, AlgebraicNumber):
            return x
        return Fraction(x)

    a, b = iv(a), iv(b)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return 0 if a == b else (1 if a > b else -1)
    if isinstance(a, Fraction):
        return -compare_values(b, a)
    if isinstance(b, Fraction):
        if a.rational is not None:
            return compare_values(a.rational, b)
        for _ in range(MAX_REFINE_ROUNDS):
            lo, hi = a.interval
            if b <= lo:
                return 1
            if b >= hi:
                return -1
            if poly_eval(a.poly, b) == 0:
                return 0
            a.refine()
        raise PrecisionExhausted("could not separate %r from %s" % (a, b))
    if a is b:
        return 0
    if a.rational is not None:
        return -compare_values(b, a.rational)
    if b.rational is not None:
        return compare_values(a, b.rational)
    # Equal values over different polynomials never separate by refinement;
    # a root of gcd(a.poly, b.poly) inside the interval overlap is forced to
    # be the unique root of each, certifying equality.
    g = _primitive_int(_poly_gcd(list(a.poly), list(b.poly)))
    for _ in range(MAX_REFINE_ROUNDS):
        alo, ahi = a.interval
        blo, bhi = b.interval
        if ahi <= blo:
            return -1
        if bhi <= alo:
            return 1
        if len(g) > 1:
            try:
                n = count_roots_between(g, max(alo, blo), min(ahi, bhi))
            except ValueError:
                n = None  # endpoint landed on a root of g; refine and retry
            if n == 1:
                return 0
            if n == 0:
                g = []  # no common root here, refinement must separate
        if ahi - alo >= bhi - blo:
            a.refine()
        else:
            b.refine()
    raise PrecisionExhausted("could not separate %r from %r" % (a, b))


# ----------------------------------------------------------------------
# scalar helpers shared by the geometric modules


def as_scalar(lam):
    """Coerce a contraction-ratio argument to an exact scalar.

    AlgebraicNumber becomes the generator combination; rationals pass
    through.  Floats are rejected: use a Fraction for decimal input.
    """
    if isinstance(lam, AlgebraicNumber):
        return lam.as_scalar()
    if isinstance(lam, LinearCombination):
        return lam
    if isinstance(lam, (int, Fraction)):
        return Fraction(lam)
    raise TypeError("exact scalar required, got %r" % type(lam).__name__)


def scalar_sign(v):
    if isinstance(v, LinearCombination):
        return v.sign()
    v = Fraction(v)
    return 0 if v == 0 else (1 if v > 0 else -1)


def scalar_float(v):
    return float(v)


def _scalar_int_boundary(v, op):
    if isinstance(v, (int, Fraction)):
        return op(Fraction(v))
    if v.is_rational():
        return op(v.rational_value())
    for _ in range(MAX_REFINE_ROUNDS):
        lo, hi = v.enclosure()
        a, b = op(lo), op(hi)
        if a == b:
            return a
        v.alg.refine()
    raise PrecisionExhausted("floor/ceil of %r undecided" % (v,))


def scalar_floor(v):
    return _scalar_int_boundary(v, math.floor)


def scalar_ceil(v):
    return _scalar_int_boundary(v, math.ceil)


def scalar_is_integer(v):
    """True when the exact value is an integer."""
    if isinstance(v, (int, Fraction)):
        return Fraction(v).denominator == 1
    if v.is_rational():
        return v.rational_value().denominator == 1
    for _ in range(MAX_REFINE_ROUNDS):
        lo, hi = v.enclosure()
        lo_i, hi_i = math.ceil(lo), math.floor(hi)
        if lo_i > hi_i:
            return False
        if lo_i == hi_i:
            return (v - lo_i).sign() == 0
        v.alg.refine()
    raise PrecisionExhausted("integrality of %r undecided" % (v,))


# ----------------------------------------------------------------------
# named roots


def isolate_root(coeffs, interval, tol=DEFAULT_TOL):
    """Isolate the unique simple root of an integer polynomial in an interval.

    The interval must bracket exactly one root with a sign change across its
    endpoints; the result interval has width at most ``tol``.
    """
    lo, hi = interval
    return AlgebraicNumber(coeffs, lo, hi, tol=Fraction(tol))


def smallest_positive_root(coeffs, window_hi=Fraction(1), tol=DEFAULT_TOL):
    """The smallest root in (0, window_hi); raises NoRootError if none."""
    window_hi = Fraction(window_hi)
    ints = _primitive_int([Fraction(c) for c in coeffs])
    sf = _primitive_int(squarefree_part(ints))
    if poly_eval(sf, 0) == 0 or poly_eval(sf, window_hi) == 0:
        raise DomainError("window endpoint is a root; shrink the window")
    rationals = [r for r in _rational_roots(sf) if 0 < r < window_hi]
    deflated = sf
    for r in _rational_roots(sf):
        q, rem = poly_divmod(deflated, [-r.numerator, r.denominator])
        assert not poly_trim(rem)
        deflated = _primitive_int(q)
    best_rat = min(rationals) if rationals else None
    # Bisect windows until each contains a single irrational root.
    intervals = []
    chain = sturm_chain(deflated) if len(deflated) > 1 else []
    stack = [(Fraction(0), window_hi)]
    while stack:
        a, b = stack.pop()
        if not chain:
            break
        n = _variations(chain, a) - _variations(chain, b)
        if n == 0:
            continue
        if n == 1:
            intervals.append((a, b))
            continue
        mid = (a + b) / 2
        while poly_eval(deflated, mid) == 0:
            mid = (a + 2 * mid) / 3
        stack.append((a, mid))
        stack.append((mid, b))
    intervals.sort()
    best_irr = None
    if intervals:
        a, b = intervals[0]
        best_irr = AlgebraicNumber(deflated, a, b, tol=Fraction(tol))
    if best_rat is None and best_irr is None:
        raise NoRootError("no root in (0, %s)" % (window_hi,))
    if best_rat is None:
        return best_irr
    if best_irr is None or compare_values(best_rat, best_irr) < 0:
        return AlgebraicNumber([-best_rat.numerator, best_rat.denominator],
                               best_rat - Fraction(1, 64), best_rat + Fraction(1, 64),
                               tol=Fraction(tol))
    return best_irr


def multinacci(m):
    """The contraction ratio at which the m-fold overlap identities hold:
    the unique positive root of x^m + ... + x = 1, in (1/2, 2/3)."""
    if not isinstance(m, int) or m < 2:
        raise DomainError("multinacci index must be an integer >= 2")
    coeffs = [-1] + [1] * m
    return isolate_root(coeffs, (Fraction(1, 2), Fraction(3, 4)))


def tau(m, d=2):
    """Similarity-dimension base for the d-simplex gasket: the smallest
    positive root of (d(d+1)/2) t^(m+1) - (d+1) t + 1."""
    if not isinstance(m, int) or m < 2:
        raise DomainError("m must be an integer >= 2")
    if not isinstance(d, int) or d < 2:
        raise DomainError("d must be an integer >= 2")
    lead = d * (d + 1) // 2
    coeffs = [1, -(d + 1)] + [0] * (m - 1) + [lead]
    return smallest_positive_root(coeffs)


def sigma(m):
    """Growth base of the unique-address subsystem: the smallest positive
    root of 2 t^m - 3 t + 1 (equal to 1/2 when m = 2)."""
    if not isinstance(m, int) or m < 2:
        raise DomainError("m must be an integer >= 2")
    coeffs = [1, -3] + [0] * (m - 2) + [2]
    return smallest_positive_root(coeffs, window_hi=Fraction(15, 16))


def lambda_star():
    """Boundary of the radial-hole regime: the real root of
    2 x^3 - 2 x^2 + 2 x - 1."""
    return isolate_root([-1, 2, -2, 2], (Fraction(1, 2), Fraction(3, 4)))


# ----------------------------------------------------------------------
# dimension formulas


def gasket_dimension(m, d=2):
    """log tau(m, d) / log multinacci(m), as a float."""
    t = tau(m, d)
    w = multinacci(m)
    return math.log(float(t)) / math.log(float(w))


def uniqueness_dimension(m):
    """log sigma(m) / log multinacci(m): dimension of the set of points
    with a unique address."""
    s = sigma(m)
    w = multinacci(m)
    return math.log(float(s)) / math.log(float(w))


def sierpinski_dimension(d, lam):
    """Similarity dimension log(d+1)/(-log lam) of the totally disconnected
    or just-touching regime; requires lam <= 1/2."""
    lamf = float(Fraction(lam) if isinstance(lam, (int, Fraction, str)) else lam)
    if not 0 < lamf <= 0.5:
        raise DomainError("separation requires 0 < lam <= 1/2")
    return math.log(d + 1) / (-math.log(lamf))
