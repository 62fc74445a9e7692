"""Signed power sums, separation bounds and converse witnesses.

The central quantity is the smallest nonzero modulus of sum(s_k theta^k)
over coefficient vectors s in {0, +-1}, found by branch and bound over the
coefficients in order of decreasing weight.  Floats steer the pruning with
a safety margin; every surviving candidate is evaluated and compared
exactly, so the reported minimum and witness are exact for the given
degree bound.  The same search runs the small-difference gap check at
ratios below one.  Converse witnesses for the failure of the hole pattern
at non-multinacci ratios come from the greedy expansion of 1.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ResourceLimit
from .exact import (
    AlgebraicNumber,
    as_scalar,
    compare,
    compare_values,
    isolate_root,
    lambda_star,
    multinacci,
    scalar_sign,
)
from .words import greedy_expansion

__all__ = [
    "ConverseWitness",
    "NotFound",
    "SeparationReport",
    "SignedPolyValue",
    "converse_inequalities_hold",
    "converse_witness",
    "ell_upper",
    "erdos_joo_gap_check",
    "gap_property_holds",
    "golden_ratio",
    "is_multinacci_reciprocal",
    "min_abs_signed_sum",
    "multinacci_reciprocal",
    "near_multinacci",
    "pisot_number",
    "separation_bound_check",
]

# Search nodes allowed before the branch and bound gives up.
DEFAULT_NODE_CAP = 5_000_000

# Slack added to the float pruning test; candidates this close to the
# incumbent survive to the exact comparison.
PRUNE_MARGIN = 1e-6


# ----------------------------------------------------------------------
# named bases


def multinacci_reciprocal(m):
    """1/omega_m: the root in (3/2, 2) of x^m = x^(m-1) + ... + x + 1."""
    if not isinstance(m, int) or m < 2:
        raise DomainError("multinacci index must be an integer >= 2")
    return isolate_root([-1] * m + [1], (Fraction(3, 2), Fraction(2)))


def golden_ratio():
    """The golden ratio, reciprocal of the first multinacci ratio."""
    return multinacci_reciprocal(2)


_PISOT_POLYS = (
    ([-1, -1, 0, 1], (Fraction(1), Fraction(3, 2))),
    ([-1, 0, 0, -1, 1], (Fraction(1), Fraction(3, 2))),
    ([-1, 0, 1, -1, -1, 1], (Fraction(5, 4), Fraction(3, 2))),
    ([-1, 0, -1, 1], (Fraction(5, 4), Fraction(3, 2))),
)


def pisot_number(index):
    """The index-th smallest Pisot number, index in 1..4.

    1: x^3 = x + 1 (~1.3247)      2: x^4 = x^3 + 1 (~1.3803)
    3: x^5 = x^4 + x^3 - x^2 + 1 (~1.4433)   4: x^3 = x^2 + 1 (~1.4656)
    """
    if index not in (1, 2, 3, 4):
        raise DomainError("pisot_number index must be 1..4")
    coeffs, window = _PISOT_POLYS[index - 1]
    return isolate_root(coeffs, window)


# ----------------------------------------------------------------------
# multinacci proximity checks

_MULTINACCI_CACHE = {}


def _multinacci_interval(m):
    if m not in _MULTINACCI_CACHE:
        w = multinacci(m)
        _MULTINACCI_CACHE[m] = w.interval
    return _MULTINACCI_CACHE[m]


def near_multinacci(lam, m_max=30):
    """The m whose omega_m isolating interval contains lam, else None.

    Beyond m_max the ratios crowd against 1/2 closer than the isolating
    width and the distinction stops being meaningful.
    """
    lam = _rational_ratio(lam)
    if not Fraction(1, 2) < lam < Fraction(3, 4):
        return None
    for m in range(2, m_max + 1):
        lo, hi = _multinacci_interval(m)
        if lo <= lam <= hi:
            return m
        if hi < lam:
            # omega_m decreases with m; once below lam it stays below.
            return None
    return None


def is_multinacci_reciprocal(theta, m_max=30):
    """Is theta exactly (algebraic input) or nearly (rational input) some
    1/omega_m?  Returns the matching m or None."""
    if isinstance(theta, AlgebraicNumber):
        for m in range(2, m_max + 1):
            if list(theta.poly) == [-1] * m + [1]:
                return m
        return None
    inv = 1 / _rational_ratio(theta)
    return near_multinacci(inv, m_max)


# ----------------------------------------------------------------------
# branch and bound over signed power sums


@dataclass(frozen=True)
class SignedPolyValue:
    """A nonzero signed power sum: coefficients s_0..s_n and exact value.

    Trailing zero coefficients are trimmed, so len(coeffs) - 1 is the true
    degree of the witness.
    """

    coeffs: tuple
    value: object

    def abs_bracket(self):
        v = self.value
        if isinstance(v, Fraction):
            a = abs(v)
            return (a, a)
        lo, hi = v.enclosure()
        if lo >= 0:
            return (lo, hi)
        return (-hi, -lo)

    def abs_float(self):
        lo, hi = self.abs_bracket()
        return float((lo + hi) / 2)


def _trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def min_abs_signed_sum(base, n_max, node_cap=DEFAULT_NODE_CAP):
    """Exact minimum of |sum(s_k base^k)|, s in {0,+-1}^(n_max+1) nonzero.

    Branches over coefficients in decreasing weight order with the first
    nonzero forced positive (sign symmetry), prunes a prefix P when
    |P| - sum(remaining weights) clears the incumbent, and completes each
    surviving prefix against a presorted table of all signed sums of the
    low-weight half, so only completions within the float margin of the
    incumbent are ever evaluated exactly.  Every candidate that survives
    the float screen is settled by exact comparison.  Ties go to the
    witness of least degree, then the lexicographically smallest
    coefficient tuple.  Returns (float bound, SignedPolyValue); raises
    ResourceLimit with the incumbent attached when the node budget runs
    out.
    """
    if not isinstance(n_max, int) or n_max < 1:
        raise DomainError("n_max must be an integer >= 1")
    base = as_scalar(base)
    if scalar_sign(base) <= 0:
        raise DomainError("base must be positive")
    if isinstance(base, Fraction) and base == 1:
        raise DomainError("base 1 admits no nonzero minimum structure")
    powers = [base * 0 + 1]
    for _ in range(n_max):
        powers.append(powers[-1] * base)
    fweights = [float(p) for p in powers]
    order = sorted(range(n_max + 1), key=lambda k: -fweights[k])
    tails = [0.0] * (n_max + 2)
    for pos in range(n_max, -1, -1):
        tails[pos] = tails[pos + 1] + fweights[order[pos]]

    # Positions split into a branched prefix and a tabulated low half.
    table_len = min(12, max(1, (n_max + 2) // 2))
    boundary = n_max + 1 - table_len
    table = [(0.0, ())]
    for pos in range(boundary, n_max + 1):
        w = fweights[order[pos]]
        table = [
            (s + d * w, patch + (d,)) for s, patch in table for d in (-1, 0, 1)
        ]
    table.sort(key=lambda e: e[0])
    tsums = [e[0] for e in table]

    best_val = None
    best_abs_f = None
    best_coeffs = None
    nodes = 0

    def exact_value(coeffs):
        acc = None
        for k, s in enumerate(coeffs):
            if s:
                term = powers[k] if s > 0 else -powers[k]
                acc = term if acc is None else acc + term
        return acc

    def consider(coeffs):
        nonlocal best_val, best_abs_f, best_coeffs
        value = exact_value(coeffs)
        sgn = scalar_sign(value)
        if sgn == 0:
            return
        abs_val = value if sgn > 0 else -value
        cmp = -1 if best_val is None else compare(abs_val, best_val)
        if cmp < 0:
            best_val = abs_val
            best_abs_f = float(abs_val)
            best_coeffs = _trim(coeffs)
        elif cmp == 0:
            cand = _trim(coeffs)
            if (len(cand), cand) < (len(best_coeffs), best_coeffs):
                best_coeffs = cand

    coeffs = [0] * (n_max + 1)

    def check_budget():
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            witness = None
            if best_coeffs is not None:
                witness = SignedPolyValue(coeffs=best_coeffs, value=best_val)
            err = ResourceLimit("signed-sum search exceeded %d nodes" % node_cap)
            err.best = witness
            raise err

    def apply_patch(patch, any_nonzero):
        # Sign symmetry: with an all-zero prefix the patch must open with +1.
        if not any_nonzero:
            lead = next((d for d in patch if d), 0)
            if lead <= 0:
                return
        for off, d in enumerate(patch):
            coeffs[order[boundary + off]] = d
        consider(coeffs)
        for off in range(len(patch)):
            coeffs[order[boundary + off]] = 0

    def finish(partial, any_nonzero):
        # Walk table entries outward from -partial until the float distance
        # clears the incumbent plus margin; every visited entry is checked
        # exactly, so near-ties and true ties all reach consider().
        idx = bisect.bisect_left(tsums, -partial)
        left, right = idx - 1, idx
        while True:
            dl = abs(partial + tsums[left]) if left >= 0 else None
            dr = abs(partial + tsums[right]) if right < len(tsums) else None
            if dl is None and dr is None:
                return
            if dr is None or (dl is not None and dl <= dr):
                pick, left = left, left - 1
                dist = dl
            else:
                pick, right = right, right + 1
                dist = dr
            if best_abs_f is not None and dist > best_abs_f + PRUNE_MARGIN:
                return
            apply_patch(table[pick][1], any_nonzero)

    def descend(pos, partial, any_nonzero):
        check_budget()
        if pos == boundary:
            finish(partial, any_nonzero)
            return
        if (
            best_abs_f is not None
            and abs(partial) - tails[pos] > best_abs_f + PRUNE_MARGIN
        ):
            return
        k = order[pos]
        w = fweights[k]
        digits = (0, 1) if not any_nonzero else (-1, 0, 1)
        for s in sorted(digits, key=lambda s: abs(partial + s * w)):
            coeffs[k] = s
            descend(pos + 1, partial + s * w, any_nonzero or s != 0)
        coeffs[k] = 0

    descend(0, 0.0, False)
    witness = SignedPolyValue(coeffs=best_coeffs, value=best_val)
    return best_abs_f, witness


def ell_upper(theta, n_max, node_cap=DEFAULT_NODE_CAP):
    """Degree-bounded minimum of |sum(s_k theta^k)| with its witness.

    This is an upper bound for the infimum over all degrees; it is exact
    as a minimum over degrees <= n_max but is never the certified infimum.
    """
    theta_s = as_scalar(theta)
    if compare(theta_s, 1) <= 0:
        raise DomainError("theta must exceed 1")
    return min_abs_signed_sum(theta_s, n_max, node_cap=node_cap)


@dataclass(frozen=True)
class SeparationReport:
    """ell_upper versus the 2/(2+theta) ceiling at one truncation degree."""

    theta_float: float
    n_max: int
    min_abs: float
    witness: SignedPolyValue
    bound: float
    certified: bool
    multinacci_reciprocal: int

    def as_json_dict(self):
        return {
            "theta": self.theta_float,
            "n_max": self.n_max,
            "min_abs": self.min_abs,
            "witness_coeffs": list(self.witness.coeffs),
            "bound_2_over_2_plus_theta": self.bound,
            "certified": self.certified,
            "multinacci_reciprocal": self.multinacci_reciprocal,
        }


def separation_bound_check(theta, n_max, node_cap=DEFAULT_NODE_CAP):
    """Check the degree-bounded minimum against the 2/(2+theta) ceiling.

    The ceiling only applies when 1/theta is not multinacci; a multinacci
    reciprocal is flagged and reported uncertified.  Certification compares
    (2 + theta) * |witness| < 2 exactly.
    """
    theta_s = as_scalar(theta)
    if compare(theta_s, Fraction(3, 2)) <= 0 or compare(theta_s, 2) >= 0:
        raise DomainError("separation check expects theta in (3/2, 2)")
    m = is_multinacci_reciprocal(theta)
    min_abs, witness = ell_upper(theta_s, n_max, node_cap=node_cap)
    bound = 2.0 / (2.0 + float(theta_s))
    if m is not None:
        certified = False
    else:
        abs_val = witness.value if scalar_sign(witness.value) > 0 else -witness.value
        certified = compare((2 + theta_s) * abs_val, 2) < 0
    return SeparationReport(
        theta_float=float(theta_s),
        n_max=n_max,
        min_abs=min_abs,
        witness=witness,
        bound=bound,
        certified=certified,
        multinacci_reciprocal=m if m is not None else 0,
    )


# ----------------------------------------------------------------------
# small-difference gap property at ratios below one


def gap_property_holds(lam, n, node_cap=DEFAULT_NODE_CAP):
    """Is every nonzero |sum(d_k lam^k)|, d in {0,+-1}^(n+1), >= lam^(n+1)?

    Equivalent to the pairwise form over 0/1 vectors a, a' of length n+1:
    any two distinct values of sum(a_k lam^k) differ by at least lam^(n+1).
    Searching difference vectors directly avoids enumerating the 4^(n+1)
    pairs.
    """
    lam_s = as_scalar(lam)
    if scalar_sign(lam_s) <= 0 or compare(lam_s, 1) >= 0:
        raise DomainError("ratio must lie in (0, 1)")
    _, witness = min_abs_signed_sum(lam_s, n, node_cap=node_cap)
    abs_val = witness.value if scalar_sign(witness.value) > 0 else -witness.value
    return compare(abs_val, lam_s ** (n + 1)) >= 0


def erdos_joo_gap_check(m, n):
    """gap_property_holds at omega_m, with the small-case preconditions."""
    if not isinstance(m, int) or not 2 <= m <= 5:
        raise DomainError("m must be an integer in 2..5")
    if not isinstance(n, int) or not 1 <= n <= 12:
        raise DomainError("n must be an integer in 1..12")
    return gap_property_holds(multinacci(m), n)


# ----------------------------------------------------------------------
# converse witnesses from the greedy expansion of 1


@dataclass(frozen=True)
class ConverseWitness:
    """Digits a_1..a_(n-1) and position n satisfying both inequalities."""

    n: int
    digits: tuple


@dataclass(frozen=True)
class NotFound:
    """No witness produced; reason says why the search does not apply."""

    reason: str


def converse_inequalities_hold(lam, n, digits):
    """Exact check of the two-sided pinch at position n:

        (2 lam - 1) lam^n < (1 - lam) (1 - sum a_k lam^k) < (1 - lam) lam^n

    written division-free; digits are a_1..a_(n-1).
    """
    lam = _rational_ratio(lam)
    if len(digits) != n - 1:
        raise DomainError("need exactly n-1 digits")
    rest = 1 - sum(a * lam ** (k + 1) for k, a in enumerate(digits))
    if not rest < lam**n:
        return False
    return (2 * lam - 1) * lam**n < (1 - lam) * rest


def _rational_ratio(lam):
    if isinstance(lam, float):
        raise DomainError("exact ratio required, got a float")
    try:
        return Fraction(lam)
    except (TypeError, ValueError):
        raise DomainError("converse witness search needs a rational ratio") from None


def converse_witness(lam, n_max):
    """A digit witness that the hole pattern fails at a rational ratio.

    Three regimes inside (1/2, 2/3): below the first multinacci ratio the
    greedy expansion of 1 is scanned for a position with a_n = 0 and
    a_(n+1) = 1 whose prefix passes the exact pinch; between it and the
    radial threshold the fixed witness n = 2, digits (1,) works; from the
    threshold on there is no such witness and NotFound says so.  Ratios
    inside a multinacci isolating interval are rejected.
    """
    lam = _rational_ratio(lam)
    if not isinstance(n_max, int) or n_max < 2:
        raise DomainError("n_max must be an integer >= 2")
    if not (Fraction(1, 2) < lam < Fraction(2, 3)):
        raise DomainError("witness search expects a ratio in (1/2, 2/3)")
    m = near_multinacci(lam)
    if m is not None:
        raise DomainError(
            "ratio sits in the isolating interval of the index-%d ratio" % m
        )
    w2 = multinacci(2)
    if compare_values(lam, w2) > 0:
        star = lambda_star()
        if compare_values(lam, star) >= 0:
            return NotFound(reason="radial regime")
        witness = ConverseWitness(n=2, digits=(1,))
        assert converse_inequalities_hold(lam, witness.n, witness.digits)
        return witness
    expansion = greedy_expansion(lam, Fraction(1), n_max + 1)
    digits = expansion.digits
    for n in range(2, n_max + 1):
        if digits[n - 1] == 0 and digits[n] == 1:
            prefix = tuple(digits[: n - 1])
            if converse_inequalities_hold(lam, n, prefix):
                return ConverseWitness(n=n, digits=prefix)
    return NotFound(reason="no verified position within depth %d" % n_max)
