"""Signed power sums and hole-failure witnesses against brute force.

The oracle enumerates every coefficient vector in {-1,0,1}^(n+1), skips
exact zeros, canonicalizes sign by the highest-degree coefficient, and
minimizes by exact value then (length, lexicographic) on the trimmed
tuple.  The search must reproduce both the minimum and the witness.
"""

from fractions import Fraction
from itertools import product

import pytest

from goldengasket.errors import DomainError, ResourceLimit
from goldengasket.exact import as_scalar, compare, multinacci, scalar_sign
from goldengasket.separation import (
    ConverseWitness,
    NotFound,
    SignedPolyValue,
    converse_inequalities_hold,
    converse_witness,
    ell_upper,
    erdos_joo_gap_check,
    gap_property_holds,
    golden_ratio,
    min_abs_signed_sum,
    multinacci_reciprocal,
    pisot_number,
    separation_bound_check,
)
from goldengasket.attractor import check_total_self_similarity, Violation


def brute_min(base, n_max):
    """Exhaustive reference for min_abs_signed_sum."""
    base = as_scalar(base)
    powers = [base * 0 + 1]
    for _ in range(n_max):
        powers.append(powers[-1] * base)
    best_abs = None
    best_coeffs = None
    for vec in product((-1, 0, 1), repeat=n_max + 1):
        if not any(vec):
            continue
        value = base * 0
        for k, s in enumerate(vec):
            if s:
                value = value + powers[k] if s > 0 else value - powers[k]
        sgn = scalar_sign(value)
        if sgn == 0:
            continue
        abs_val = value if sgn > 0 else -value
        trimmed = list(vec)
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        if trimmed[-1] < 0:
            trimmed = [-s for s in trimmed]
        trimmed = tuple(trimmed)
        cmp = -1 if best_abs is None else compare(abs_val, best_abs)
        if cmp < 0:
            best_abs = abs_val
            best_coeffs = trimmed
        elif cmp == 0 and (len(trimmed), trimmed) < (len(best_coeffs), best_coeffs):
            best_coeffs = trimmed
    return best_abs, best_coeffs


BASES = [
    ("golden", golden_ratio()),
    ("tribonacci", multinacci_reciprocal(3)),
    ("pisot1", pisot_number(1)),
    ("rational", Fraction(9, 5)),
]


@pytest.mark.parametrize("name,base", BASES, ids=[b[0] for b in BASES])
def test_search_matches_brute_force(name, base):
    for n_max in (3, 5, 6):
        want_abs, want_coeffs = brute_min(base, n_max)
        got_f, got = min_abs_signed_sum(as_scalar(base), n_max)
        assert got.coeffs == want_coeffs
        got_abs = got.value if scalar_sign(got.value) > 0 else -got.value
        assert compare(got_abs, want_abs) == 0
        assert abs(got_f - float(want_abs)) < 1e-12


def test_search_matches_brute_force_deeper_pisot():
    base = pisot_number(3)
    want_abs, want_coeffs = brute_min(base, 4)
    got_f, got = min_abs_signed_sum(base.as_scalar(), 4)
    assert got.coeffs == want_coeffs
    got_abs = got.value if scalar_sign(got.value) > 0 else -got.value
    assert compare(got_abs, want_abs) == 0


def test_golden_minimum_is_theta_minus_one():
    theta = golden_ratio().as_scalar()
    got_f, got = min_abs_signed_sum(theta, 12)
    assert got.coeffs == (-1, 1)
    assert compare(got.value + 1, theta) == 0


def test_minimum_monotone_in_degree():
    base = pisot_number(1).as_scalar()
    floats = [min_abs_signed_sum(base, n)[0] for n in (6, 10, 14)]
    assert floats[0] >= floats[1] >= floats[2]


def test_pisot_bounds_at_degree_sixteen():
    targets = {1: (0.060085, 0.07), 2: (0.018929, 0.02),
               3: (0.006365, 0.01), 4: (0.147899, 0.16)}
    for idx, (frozen, ceiling) in targets.items():
        got_f, _ = min_abs_signed_sum(pisot_number(idx).as_scalar(), 16)
        assert abs(got_f - frozen) < 1e-5
        assert got_f <= ceiling


def test_pisot_index_range():
    with pytest.raises(DomainError):
        pisot_number(0)
    with pytest.raises(DomainError):
        pisot_number(5)


def test_node_cap_carries_best_so_far():
    base = pisot_number(1).as_scalar()
    with pytest.raises(ResourceLimit) as info:
        min_abs_signed_sum(base, 16, node_cap=40)
    assert isinstance(info.value.best, SignedPolyValue)
    with pytest.raises(ResourceLimit) as info:
        min_abs_signed_sum(base, 16, node_cap=3)
    assert info.value.best is None


def test_ell_upper_rejects_small_theta():
    with pytest.raises(DomainError):
        ell_upper(Fraction(1, 2), 6)


# ----------------------------------------------------------------------
# separation report

def test_report_golden_flagged_uncertified():
    rep = separation_bound_check(golden_ratio(), 12)
    assert rep.multinacci_reciprocal == 2
    assert not rep.certified
    assert rep.witness.coeffs == (-1, 1)
    d = rep.as_json_dict()
    assert set(d) == {
        "theta", "n_max", "min_abs", "witness_coeffs",
        "bound_2_over_2_plus_theta", "certified", "multinacci_reciprocal",
    }
    assert d["witness_coeffs"] == [-1, 1]


def test_report_certifies_generic_rational():
    rep = separation_bound_check(Fraction(9, 5), 8)
    assert rep.multinacci_reciprocal == 0
    assert rep.certified
    # exact certification: (2 + theta) * min < 2
    assert (2 + Fraction(9, 5)) * Fraction(rep.min_abs).limit_denominator(10**12) < 2


def test_report_window():
    with pytest.raises(DomainError):
        separation_bound_check(Fraction(7, 5), 8)
    with pytest.raises(DomainError):
        separation_bound_check(Fraction(21, 10), 8)


def test_multinacci_reciprocal_certified_exactly():
    for m, coeffs in [(2, (-1, 1)), (3, (-1, -1, 1)), (4, (-1, -1, -1, 1))]:
        theta = multinacci_reciprocal(m)
        _, got = min_abs_signed_sum(theta.as_scalar(), 10)
        assert got.coeffs == coeffs
        # witness value times the ratio collapses to 1: reciprocal pair
        assert compare(got.value * theta.as_scalar(), 1) == 0


# ----------------------------------------------------------------------
# gap property

def test_gap_property_at_multinacci():
    assert gap_property_holds(multinacci(2).as_scalar(), 8)
    assert gap_property_holds(multinacci(3).as_scalar(), 8)


def test_gap_fails_at_generic_ratio():
    assert not gap_property_holds(Fraction(3, 5), 3)
    assert not gap_property_holds(Fraction(3, 5), 5)


def test_gap_equality_is_attained():
    # From position m-1 on, the minimum equals lam^(n+1) exactly.
    for m, n in [(2, 3), (2, 5), (3, 2), (3, 4)]:
        lam = multinacci(m).as_scalar()
        _, res = min_abs_signed_sum(lam, n)
        abs_val = res.value if scalar_sign(res.value) > 0 else -res.value
        assert compare(abs_val, lam ** (n + 1)) == 0


def test_gap_strict_below_equality_threshold():
    lam = multinacci(3).as_scalar()
    _, res = min_abs_signed_sum(lam, 1)
    abs_val = res.value if scalar_sign(res.value) > 0 else -res.value
    assert compare(abs_val, lam**2) > 0


@pytest.mark.parametrize("m,n", [(2, 10), (3, 8), (4, 6), (5, 5)])
def test_erdos_joo_style_gap(m, n):
    assert erdos_joo_gap_check(m, n)


def test_erdos_joo_range():
    with pytest.raises(DomainError):
        erdos_joo_gap_check(6, 3)
    with pytest.raises(DomainError):
        erdos_joo_gap_check(2, 13)


# ----------------------------------------------------------------------
# converse witnesses

def pinch_reference(lam, n, digits):
    # independent restatement with divisions
    rest = 1 - sum(a * lam ** (k + 1) for k, a in enumerate(digits))
    lo = (2 * lam - 1) * lam**n / (1 - lam)
    return lo < rest < lam**n


CASES = [
    (Fraction(59, 100), 5, (1, 1, 0, 0)),
    (Fraction(3, 5), 6, (1, 1, 0, 0, 0)),
    (Fraction(63, 100), 2, (1,)),
]


@pytest.mark.parametrize("lam,n,digits", CASES, ids=["0.59", "0.60", "0.63"])
def test_converse_witness_examples(lam, n, digits):
    got = converse_witness(lam, 12)
    assert got == ConverseWitness(n=n, digits=digits)
    assert converse_inequalities_hold(lam, n, digits)
    assert pinch_reference(lam, n, digits)


def test_converse_radial_regime():
    got = converse_witness(Fraction(131, 200), 12)
    assert isinstance(got, NotFound)
    assert "radial" in got.reason


def test_converse_rejects_multinacci_neighborhood():
    with pytest.raises(DomainError):
        converse_witness(Fraction(6180339887498949, 10**16), 8)


def test_converse_rejects_floats_and_window():
    with pytest.raises(DomainError):
        converse_witness(0.59, 8)
    with pytest.raises(DomainError):
        converse_witness(Fraction(2, 5), 8)
    with pytest.raises(DomainError):
        converse_witness(Fraction(59, 100), 1)


def test_pinch_needs_matching_digit_count():
    with pytest.raises(DomainError):
        converse_inequalities_hold(Fraction(59, 100), 5, (1, 1))


def test_pinch_rejects_early_positions():
    # n = 2 overshoots the right inequality, n = 3 the left one; n = 4
    # would pass the pinch but is filtered out by the digit-pattern gate
    # (the greedy expansion of 1 at 0.59 has a_5 = 0, not 1).
    lam = Fraction(59, 100)
    digits = converse_witness(lam, 12).digits
    for n in (2, 3):
        assert not converse_inequalities_hold(lam, n, digits[: n - 1])
    assert converse_inequalities_hold(lam, 4, digits[:3])


def test_witness_implies_hole_violation():
    # A verified pinch forces a hole failure at or before that depth.
    for lam in (Fraction(59, 100), Fraction(3, 5), Fraction(63, 100)):
        wit = converse_witness(lam, 12)
        verdict = check_total_self_similarity(lam, 2, wit.n)
        assert isinstance(verdict, Violation)
        assert verdict.level <= wit.n
