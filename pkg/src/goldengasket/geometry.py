"""Barycentric geometry of the simplex IFS.

The maps f_i(x) = lam*x + (1-lam)*p_i act on barycentric coordinates as
(d+1)x(d+1) column-stochastic matrices.  A composed map f_w for a word w
has the closed form lam^n * I + t * 1^T where the translation vector t
depends only on which positions of w carry which digit.  Corner regions
(images of the simplex) are cut out by lower bounds, candidate holes by
strict upper bounds; everything here stays in exact scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exact import as_scalar, compare, scalar_sign

__all__ = [
    "CornerRegion",
    "HoleRegion",
    "Similitude",
    "apply_map",
    "barycenter",
    "compose_word",
    "feasible_point",
    "generator_matrix",
    "hole_meets_region",
    "hole_region",
    "image_region",
    "intersection_bounds",
    "region_feasible_point",
    "regions_intersect",
    "scalar_max",
    "validate_word",
    "vertex",
]


def validate_word(word, d):
    word = tuple(word)
    for digit in word:
        if not isinstance(digit, int) or not 0 <= digit <= d:
            raise DomainError("word digit %r outside alphabet 0..%d" % (digit, d))
    return word


def vertex(i, d=2):
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(d + 1))


def barycenter(d=2):
    return tuple(Fraction(1, d + 1) for _ in range(d + 1))


def scalar_max(a, b):
    return a if compare(a, b) >= 0 else b


def _powers(lam, n):
    out = [lam * 0 + 1] if not isinstance(lam, Fraction) else [Fraction(1)]
    for _ in range(n):
        out.append(out[-1] * lam)
    return out


def translation_vector(word, lam, d=2):
    """t_j = (1-lam) * sum of lam^k over positions k where word[k] == j."""
    word = validate_word(word, d)
    lam = as_scalar(lam)
    pw = _powers(lam, len(word))
    zero = lam * 0
    sums = [zero for _ in range(d + 1)]
    for k, digit in enumerate(word):
        sums[digit] = sums[digit] + pw[k]
    one_minus = 1 - lam
    return tuple(one_minus * s for s in sums), pw[len(word)]


@dataclass(frozen=True)
class Similitude:
    """A composed map: its matrix and the word that produced it."""

    word: tuple
    matrix: tuple

    @property
    def d(self):
        return len(self.matrix) - 1


def generator_matrix(i, lam, d=2):
    if not isinstance(i, int) or not 0 <= i <= d:
        raise DomainError("generator index %r outside 0..%d" % (i, d))
    return compose_word((i,), lam, d)


def compose_word(word, lam, d=2):
    """Closed-form matrix of f_w: lam^n on the diagonal plus the constant
    row pattern t_j.  Equals the product of the generator matrices."""
    t, lam_n = translation_vector(word, lam, d)
    rows = []
    for j in range(d + 1):
        rows.append(tuple(t[j] + lam_n if c == j else t[j] + 0 for c in range(d + 1)))
    return Similitude(word=validate_word(word, d), matrix=tuple(rows))


def apply_map(sim, point):
    if len(point) != len(sim.matrix):
        raise DomainError("point dimension does not match matrix")
    return tuple(
        sum((row[c] * point[c] for c in range(len(point))), row[0] * 0)
        for row in sim.matrix
    )


@dataclass(frozen=True)
class CornerRegion:
    """Closed sub-simplex {x_j >= L_j}: the image f_w(simplex).

    Never empty: the bounds always sum to 1 - lam^n < 1.  Equality and
    hashing go through the exact bound vector, which is what makes word
    deduplication at multinacci ratios work.
    """

    bounds: tuple
    level: int
    word: tuple = None

    def __eq__(self, other):
        if not isinstance(other, CornerRegion):
            return NotImplemented
        return self.bounds == other.bounds

    def __hash__(self):
        return hash(self.bounds)

    @property
    def d(self):
        return len(self.bounds) - 1


class HoleRegion:
    """Open inverted sub-simplex {x_j < U_j for all j} within the simplex.

    Infeasible bound vectors (sum(U) <= 1) are all the same empty set and
    compare equal regardless of their bounds.
    """

    __slots__ = ("bounds", "level", "word", "_empty")

    def __init__(self, bounds, level, word=None):
        self.bounds = tuple(bounds)
        self.level = level
        self.word = word
        self._empty = None

    @property
    def d(self):
        return len(self.bounds) - 1

    def is_empty(self):
        if self._empty is None:
            total = self.bounds[0] * 0
            for u in self.bounds:
                total = total + u
            self._empty = compare(total, 1) <= 0
        return self._empty

    def __eq__(self, other):
        if not isinstance(other, HoleRegion):
            return NotImplemented
        if self.is_empty() and other.is_empty():
            return True
        if self.is_empty() != other.is_empty():
            return False
        return self.bounds == other.bounds

    def __hash__(self):
        if self.is_empty():
            return hash("empty-hole")
        return hash(self.bounds)

    def __repr__(self):
        tag = " empty" if self.is_empty() else ""
        return "HoleRegion(level=%r%s)" % (self.level, tag)


def image_region(word, lam, d=2):
    """f_w(simplex) as lower bounds; the empty word gives the full simplex."""
    t, _ = translation_vector(word, lam, d)
    return CornerRegion(bounds=t, level=len(word), word=validate_word(word, d))


def hole_region(word, lam, d=2):
    """f_w(H_0) as strict upper bounds U_j = L_j + (1-lam)*lam^n."""
    word = validate_word(word, d)
    lam = as_scalar(lam)
    t, lam_n = translation_vector(word, lam, d)
    width = (1 - lam) * lam_n
    return HoleRegion(bounds=tuple(x + width for x in t), level=len(word), word=word)


def intersection_bounds(a, b):
    return tuple(scalar_max(x, y) for x, y in zip(a.bounds, b.bounds))


def regions_intersect(a, b):
    """Closed regions meet iff the componentwise max bounds are feasible."""
    m = intersection_bounds(a, b)
    total = m[0] * 0
    for x in m:
        total = total + x
    return compare(total, 1) <= 0


def hole_meets_region(h, r):
    """Does the open set {x_j < U_j} meet the closed set {x_j >= L_j}
    inside the simplex?

    Feasibility of {L_j <= x_j < U_j, sum x_j = 1}: every lower bound must
    sit strictly below its upper bound, the lower bounds must leave room
    (sum <= 1) and the upper bounds must overshoot (sum > 1).
    """
    for lj, uj in zip(r.bounds, h.bounds):
        if compare(lj, uj) >= 0:
            return False
    tl = r.bounds[0] * 0
    for lj in r.bounds:
        tl = tl + lj
    if compare(tl, 1) > 0:
        return False
    tu = h.bounds[0] * 0
    for uj in h.bounds:
        tu = tu + uj
    return compare(tu, 1) > 0


def region_feasible_point(a, b):
    """An exact point in the intersection of two corner regions.

    The componentwise max plus an even spread of the leftover mass stays
    inside both regions; raises DomainError when they are disjoint.
    """
    m = intersection_bounds(a, b)
    total = m[0] * 0
    for x in m:
        total = total + x
    rem = 1 - total
    if scalar_sign(rem) < 0:
        raise DomainError("regions are disjoint")
    share = Fraction(1, len(m))
    return tuple(x + rem * share for x in m)


def feasible_point(h, r):
    """An exact point in hole-minus-nothing: {L_j <= x_j < U_j, sum = 1}.

    Distributes the leftover mass R = 1 - sum(L) among the slack intervals
    g_j = U_j - L_j, staying strictly below each U_j.  Works without any
    field division: a dyadic shrink factor 1 - 2^-B is pushed up until the
    capped slacks can absorb R.  Raises DomainError on empty intersection.
    """
    if not hole_meets_region(h, r):
        raise DomainError("hole and region do not intersect")
    lower = r.bounds
    upper = h.bounds
    gaps = [u - l for l, u in zip(lower, upper)]
    total_l = lower[0] * 0
    for l in lower:
        total_l = total_l + l
    rem = 1 - total_l
    total_g = gaps[0] * 0
    for g in gaps:
        total_g = total_g + g
    # sum(g) > rem holds by feasibility; find B with (1 - 2^-B) sum(g) >= rem.
    shrink = Fraction(1, 2)
    while compare(total_g * (1 - shrink), rem) < 0:
        shrink = shrink / 2
    point = []
    for g in gaps:
        cap = g * (1 - shrink)
        take = rem if compare(rem, cap) <= 0 else cap
        point.append(take)
        rem = rem - take
    assert scalar_sign(rem) == 0
    return tuple(l + s for l, s in zip(lower, point))
