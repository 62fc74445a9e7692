"""Level sets, hole verdicts, and measured views against closed forms.

Area oracles used here: with full self-similarity the level-n normalized
area is 1 - (2-3L)^2 * sum_{k<n} c_k L^(2k) with c_k the distinct-piece
count at level k; past the golden ratio only the three extreme holes per
level survive, giving c_0 = 1 and c_k = 3.  Both are evaluated exactly
and must land inside the grid brackets.
"""

import math
import xml.dom.minidom
from fractions import Fraction

import pytest

from goldengasket.attractor import (
    ConsistentUpTo,
    Violation,
    box_dimension_estimate,
    build_level,
    check_total_self_similarity,
    classify_holes,
    estimate_area,
    render_svg,
    word_cap,
    RenderOptions,
)
from goldengasket.errors import DomainError, ResourceLimit
from goldengasket.exact import as_scalar, compare, multinacci, tau
from goldengasket.words import u_sequence

W2 = multinacci(2)
W3 = multinacci(3)


# ----------------------------------------------------------------------
# level sets

def test_dedup_counts_match_piece_sequence():
    u = u_sequence(7)
    for n in range(8):
        level = build_level(W2, 2, n)
        assert len(level) == u[n]
        assert level.n == n and level.d == 2


@pytest.mark.parametrize("lam", [Fraction(59, 100), Fraction(33, 50)])
def test_no_coincidences_at_generic_rationals(lam):
    for n in range(6):
        assert len(build_level(lam, 2, n)) == 3**n


def test_level_regions_dominate_parents():
    # Kept words extend kept words, and bounds only grow along the way.
    parents = {r.word: r for r in build_level(W2, 2, 3).regions}
    for child in build_level(W2, 2, 4).regions:
        parent = parents[child.word[:3]]
        assert all(compare(c, p) >= 0 for c, p in zip(child.bounds, parent.bounds))


def test_growth_ratio_tracks_reciprocal_root():
    a7 = len(build_level(W2, 2, 7))
    a8 = len(build_level(W2, 2, 8))
    target = 1 / float(tau(2, 2).as_scalar())
    assert abs(a8 / a7 - target) / target < 0.10


def test_build_level_validation():
    with pytest.raises(DomainError):
        build_level(Fraction(0), 2, 2)
    with pytest.raises(DomainError):
        build_level(Fraction(3, 5), 2, -1)
    with pytest.raises(DomainError):
        build_level(Fraction(3, 5), 0, 2)


def test_word_cap_limits_enumeration(monkeypatch):
    monkeypatch.setenv("GASKET_MAX_WORDS", "100")
    assert word_cap() == 100
    with pytest.raises(ResourceLimit):
        build_level(W2, 2, 5)
    with pytest.raises(ResourceLimit):
        classify_holes(W2, 2, 4)
    monkeypatch.setenv("GASKET_MAX_WORDS", "banana")
    with pytest.raises(DomainError):
        word_cap()


# ----------------------------------------------------------------------
# holes

def test_holes_all_genuine_at_golden_ratio():
    rep = classify_holes(W2, 2, 2)
    assert len(rep.candidates) == 9
    assert rep.genuine == rep.candidates
    assert rep.violations == ()


def test_holes_violated_past_golden_ratio():
    rep = classify_holes(Fraction(59, 100), 2, 3)
    assert len(rep.candidates) == 27
    assert len(rep.genuine) == 21
    assert len(rep.violations) == 6
    assert rep.violating_holes()[0].word == (0, 1, 1)
    assert set(rep.genuine) | {h for h, _ in rep.violations} == set(rep.candidates)


def test_holes_empty_past_two_thirds():
    rep = classify_holes(Fraction(7, 10), 2, 2)
    assert rep.candidates == () and rep.genuine == () and rep.violations == ()


def test_hole_report_json_shape():
    rep = classify_holes(Fraction(59, 100), 2, 3)
    d = rep.as_json_dict(0.59)
    assert d["lambda"] == 0.59 and d["n"] == 3
    assert len(d["candidates"]) == 27
    assert all(set(v) == {"hole_word", "region_word"} for v in d["violations"])


def test_self_similarity_verdicts():
    assert check_total_self_similarity(Fraction(59, 100), 2, 6) == Violation(
        word=(0, 1, 1), level=3
    )
    assert check_total_self_similarity(W3, 2, 5) == ConsistentUpTo(n_max=5)
    assert check_total_self_similarity(W2, 2, 5) == ConsistentUpTo(n_max=5)


def test_self_similarity_window():
    with pytest.raises(DomainError):
        check_total_self_similarity(Fraction(1, 2), 2, 3)
    with pytest.raises(DomainError):
        check_total_self_similarity(Fraction(7, 10), 2, 3)


# ----------------------------------------------------------------------
# area brackets

def mu_self_similar(lam, counts, n):
    lam = as_scalar(lam)
    acc = lam * 0
    pw = lam * 0 + 1
    for k in range(n):
        acc = acc + counts[k] * pw
        pw = pw * lam * lam
    return 1 - (2 - 3 * lam) ** 2 * acc


@pytest.mark.parametrize("n,r", [(2, 96), (4, 96), (4, 256), (6, 256)])
def test_area_bracket_at_golden_ratio(n, r):
    lo, hi = estimate_area(W2, 2, n, r)
    mu = mu_self_similar(W2, u_sequence(max(n - 1, 0)).values, n)
    assert compare(mu, lo) >= 0
    assert compare(mu, hi) <= 0


@pytest.mark.parametrize("n,r", [(2, 96), (4, 128)])
def test_area_bracket_past_golden_ratio(n, r):
    lam = Fraction(13, 20)
    lo, hi = estimate_area(lam, 2, n, r)
    mu = mu_self_similar(lam, (1,) + (3,) * max(n - 1, 0), n)
    assert lo <= mu <= hi


def test_area_bracket_tightens_with_resolution():
    lo96, hi96 = estimate_area(W2, 2, 4, 96)
    lo256, hi256 = estimate_area(W2, 2, 4, 256)
    assert hi256 - lo256 < hi96 - lo96


def test_area_monotone_in_level():
    prev = None
    for n in range(5):
        cur = estimate_area(W2, 2, n, 96)
        if prev is not None:
            assert cur[0] <= prev[0] and cur[1] <= prev[1]
        prev = cur


def test_area_exact_on_aligned_grid():
    # Non-overlapping tiling plus power-of-two pitch: both counts exact.
    for n, r in [(2, 64), (3, 64), (4, 128)]:
        lo, hi = estimate_area(Fraction(1, 2), 2, n, r)
        assert lo == hi == Fraction(3, 4) ** n


def test_area_full_simplex_without_holes():
    assert estimate_area(Fraction(7, 10), 2, 3, 64) == (1, 1)
    lo, hi = estimate_area(Fraction(2, 3), 2, 2, 96)
    assert hi == 1 and lo >= Fraction(766, 768)


def test_area_validation():
    with pytest.raises(DomainError):
        estimate_area(W2, 3, 2, 96)
    with pytest.raises(DomainError):
        estimate_area(W2, 2, 2, 32)
    with pytest.raises(DomainError):
        estimate_area(W2, 2, 2, 96.0)


# ----------------------------------------------------------------------
# box dimension

def test_box_dimension_exact_at_half():
    got = box_dimension_estimate(Fraction(1, 2), n=6)
    assert abs(got - math.log(3) / math.log(2)) < 1e-12


def test_box_dimension_frozen_slopes():
    assert abs(box_dimension_estimate(W2, n=8) - 1.956463940694707) < 1e-9
    assert abs(box_dimension_estimate(W3, n=8) - 1.736067540917485) < 1e-9


def test_box_dimension_validation():
    with pytest.raises(DomainError):
        box_dimension_estimate(W2, n=8, delta_range=[0.1])
    with pytest.raises(DomainError):
        box_dimension_estimate(W2, n=4, delta_range=[0.9, 0.0001])
    with pytest.raises(DomainError):
        # both scales round to the same cylinder level
        box_dimension_estimate(W2, n=8, delta_range=[0.23, 0.24])


# ----------------------------------------------------------------------
# rendering

def test_render_deterministic(tmp_path):
    a = render_svg(W2, n=4, path=str(tmp_path / "a.svg"))
    b = render_svg(W2, n=4, path=str(tmp_path / "b.svg"))
    with open(a, "rb") as fa, open(b, "rb") as fb:
        assert fa.read() == fb.read()


def test_render_is_wellformed_svg(tmp_path):
    out = render_svg(W2, n=3, path=str(tmp_path / "g.svg"))
    doc = xml.dom.minidom.parse(out)
    assert doc.documentElement.tagName == "svg"
    paths = doc.getElementsByTagName("path")
    assert len(paths) >= len(build_level(W2, 2, 3))


def test_render_overlays_add_paths(tmp_path):
    plain = render_svg(W2, n=3, path=str(tmp_path / "p.svg"))
    fancy = render_svg(
        W2,
        n=3,
        path=str(tmp_path / "f.svg"),
        options=RenderOptions(radial_holes=True, overlap_regions=True),
    )
    n_plain = xml.dom.minidom.parse(plain).getElementsByTagName("path").length
    n_fancy = xml.dom.minidom.parse(fancy).getElementsByTagName("path").length
    assert n_fancy > n_plain
