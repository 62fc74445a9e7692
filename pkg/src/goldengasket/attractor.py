"""Level sets, hole classification and measured views of the attractor.

The level-n set is a union of deduplicated corner regions f_w(simplex) over
words of length n.  Candidate holes are the images f_w(H_0) of the central
hole; a candidate is genuine when it misses every region one level deeper.
Area brackets and box counts ride on a barycentric grid whose cell tests
reduce to integer comparisons once the region bounds have exact ceilings.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ResourceLimit
from .exact import as_scalar, compare, scalar_ceil, scalar_sign
from .geometry import (
    CornerRegion,
    HoleRegion,
    hole_meets_region,
    hole_region,
    intersection_bounds,
)

__all__ = [
    "ConsistentUpTo",
    "HoleReport",
    "LevelSet",
    "RenderOptions",
    "Violation",
    "box_dimension_estimate",
    "build_level",
    "check_total_self_similarity",
    "classify_holes",
    "estimate_area",
    "render_svg",
    "word_cap",
]

DEFAULT_WORD_CAP = 3**14


def word_cap():
    """Word-count ceiling for level enumeration (env GASKET_MAX_WORDS)."""
    raw = os.environ.get("GASKET_MAX_WORDS")
    if raw is None:
        return DEFAULT_WORD_CAP
    try:
        return int(raw)
    except ValueError:
        raise DomainError("GASKET_MAX_WORDS must be an integer") from None


def _check_lam(lam):
    lam = as_scalar(lam)
    if scalar_sign(lam) <= 0 or compare(lam, 1) >= 0:
        raise DomainError("contraction ratio must lie in (0, 1)")
    return lam


def _check_level(d, n):
    if not isinstance(d, int) or d < 1:
        raise DomainError("simplex dimension must be a positive integer")
    if not isinstance(n, int) or n < 0:
        raise DomainError("level must be a nonnegative integer")


def _zero_bounds(lam, d):
    zero = lam * 0
    return tuple(zero for _ in range(d + 1))


def _child(region, digit, step):
    bounds = tuple(
        b + step if j == digit else b for j, b in enumerate(region.bounds)
    )
    return CornerRegion(bounds=bounds, level=region.level + 1,
                        word=region.word + (digit,))


@dataclass(frozen=True)
class LevelSet:
    """Deduplicated corner regions whose union is the level-n set."""

    lam: object
    d: int
    n: int
    regions: tuple

    def __len__(self):
        return len(self.regions)


def _frontier_levels(lam, d, depth):
    """Yield the deduplicated frontier of each level 0..depth in turn."""
    frontier = [CornerRegion(bounds=_zero_bounds(lam, d), level=0, word=())]
    pw = lam * 0 + 1
    one_minus = 1 - lam
    yield frontier
    for _ in range(depth):
        step = one_minus * pw
        seen = {}
        for reg in frontier:
            for digit in range(d + 1):
                child = _child(reg, digit, step)
                if child not in seen:
                    seen[child] = child
        frontier = list(seen.values())
        pw = pw * lam
        yield frontier


def build_level(lam, d, n):
    """The level-n set as deduplicated corner regions.

    Children of bound-identical regions are bound-identical, so dedup runs
    level by level and merged branches are never revisited.  Word order of
    first appearance is kept, which makes the output deterministic.
    """
    _check_level(d, n)
    lam = _check_lam(lam)
    if (d + 1) ** n > word_cap():
        raise ResourceLimit(
            "%d words at level %d exceed the cap %d"
            % ((d + 1) ** n, n, word_cap())
        )
    for frontier in _frontier_levels(lam, d, n):
        pass
    return LevelSet(lam=lam, d=d, n=n, regions=tuple(frontier))


def _region_tree(lam, d, depth):
    """Deduplicated level lists plus child-index links between them."""
    levels = [[CornerRegion(bounds=_zero_bounds(lam, d), level=0, word=())]]
    children = []
    pw = lam * 0 + 1
    one_minus = 1 - lam
    for _ in range(depth):
        step = one_minus * pw
        index = {}
        next_level = []
        links_per_parent = []
        for reg in levels[-1]:
            links = []
            for digit in range(d + 1):
                child = _child(reg, digit, step)
                at = index.get(child)
                if at is None:
                    at = len(next_level)
                    index[child] = at
                    next_level.append(child)
                links.append(at)
            links_per_parent.append(links)
        levels.append(next_level)
        children.append(links_per_parent)
        pw = pw * lam
    return levels, children


@dataclass(frozen=True)
class HoleReport:
    """Outcome of classify_holes at one level.

    Every candidate lands either in ``genuine`` or among the holes that
    appear in ``violations``; the two never overlap.
    """

    n: int
    candidates: tuple
    genuine: tuple
    violations: tuple

    def violating_holes(self):
        return tuple(dict.fromkeys(h for h, _ in self.violations))

    def as_json_dict(self, lam_value):
        return {
            "lambda": lam_value,
            "n": self.n,
            "candidates": [list(h.word) for h in self.candidates],
            "genuine": [list(h.word) for h in self.genuine],
            "violations": [
                {"hole_word": list(h.word), "region_word": list(r.word)}
                for h, r in self.violations
            ],
        }


def classify_holes(lam, d, n):
    """Classify the candidate holes f_w(H_0), |w| = n, against level n+1.

    Candidates are deduplicated by their exact bound vectors.  Each one is
    pushed down the region tree; subtrees whose region already misses the
    hole cannot contain a meeting descendant and are pruned.  At ratios
    >= 2/3 the central hole is empty, so there are no candidates at all.
    """
    _check_level(d, n)
    lam = _check_lam(lam)
    if (d + 1) ** (n + 1) > word_cap():
        raise ResourceLimit(
            "%d words at level %d exceed the cap %d"
            % ((d + 1) ** (n + 1), n + 1, word_cap())
        )
    levels, children = _region_tree(lam, d, n + 1)
    width = (1 - lam) * lam**n
    holes = [
        HoleRegion(tuple(b + width for b in reg.bounds), n, reg.word)
        for reg in levels[n]
    ]
    holes = [h for h in holes if not h.is_empty()]
    genuine = []
    violations = []
    for hole in holes:
        hits = []
        stack = [(0, 0)]
        while stack:
            level, at = stack.pop()
            reg = levels[level][at]
            if not hole_meets_region(hole, reg):
                continue
            if level == n + 1:
                hits.append(reg)
                continue
            stack.extend((level + 1, c) for c in children[level][at])
        if hits:
            hits.sort(key=lambda reg: reg.word)
            violations.extend((hole, reg) for reg in hits)
        else:
            genuine.append(hole)
    return HoleReport(
        n=n,
        candidates=tuple(holes),
        genuine=tuple(genuine),
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class ConsistentUpTo:
    """No hole violation at any level <= n_max.  Evidence, not a proof."""

    n_max: int


@dataclass(frozen=True)
class Violation:
    """A candidate hole meets a region one level deeper: a disproof."""

    word: tuple
    level: int


def check_total_self_similarity(lam, d, n_max):
    """First hole violation in levels 0..n_max, or consistency up to n_max."""
    lam = _check_lam(lam)
    if compare(lam, Fraction(1, 2)) <= 0 or compare(lam, Fraction(2, 3)) >= 0:
        raise DomainError("self-similarity scan expects lam in (1/2, 2/3)")
    for n in range(n_max + 1):
        report = classify_holes(lam, d, n)
        if report.violations:
            hole, _ = report.violations[0]
            return Violation(word=hole.word, level=n)
    return ConsistentUpTo(n_max=n_max)


# ----------------------------------------------------------------------
# barycentric grid counting
#
# Side split r gives r^2 cells: upward cells indexed by (i, j) with
# i + j <= r-1 (third index k = r-1-i-j) and downward cells with
# i + j <= r-2 (k = r-2-i-j).  For a region with lower bounds L put
# C_j = ceil(r L_j) and D_j = C_j - 1 when r L_j is fractional, else C_j.
# Then a cell of either orientation is contained in the region iff
# idx >= C componentwise, a downward cell meets the open region with
# positive area iff idx >= D componentwise, and an upward cell does iff
# idx >= D and additionally, when exactly the coordinates in S sit below
# their C, sum(idx_t, t not in S) < r * (1 - sum(L_t, t in S)).  With one
# deficient coordinate that inequality is automatic; with three it reads
# 0 < r * lam^n; only the two-deficient corner cells need an exact check.


def _grid_counts(regions, r, want_lo):
    up_base = []
    acc = 0
    for i in range(r):
        up_base.append(acc)
        acc += r - i
    up_hi = bytearray(acc)
    up_lo = bytearray(acc) if want_lo else None
    dn_base = []
    acc = 0
    for i in range(r - 1):
        dn_base.append(acc)
        acc += r - 1 - i
    dn_hi = bytearray(acc)
    dn_lo = bytearray(acc) if want_lo else None
    ones = bytes([1]) * r

    for reg in regions:
        rl = [r * b for b in reg.bounds]
        cs = [scalar_ceil(x) for x in rl]
        frac = [compare(x, c) != 0 for x, c in zip(rl, cs)]
        ds = [c - 1 if f else c for c, f in zip(cs, frac)]
        c0, c1, c2 = cs
        d0, d1, d2 = ds

        # contained cells, both orientations: idx >= C
        for i in range(c0, r - c1 - c2):
            a = up_base[i] + c1
            b = up_base[i] + (r - c2 - i)
            up_hi[a:b] = ones[: b - a]
            if want_lo:
                up_lo[a:b] = ones[: b - a]
        if want_lo:
            for i in range(c0, r - 1 - c1 - c2):
                a = dn_base[i] + c1
                b = dn_base[i] + (r - 1 - c2 - i)
                dn_lo[a:b] = ones[: b - a]

        # downward cells with positive-area overlap: idx >= D
        for i in range(d0, r - 1 - d1 - d2):
            a = dn_base[i] + d1
            b = dn_base[i] + (r - 1 - d2 - i)
            dn_hi[a:b] = ones[: b - a]

        # upward shell, one coordinate a single layer below its ceiling
        if frac[0] and c0 >= 1:
            i = c0 - 1
            a = up_base[i] + c1
            b = up_base[i] + (r - c2 - i)
            if b > a:
                up_hi[a:b] = ones[: b - a]
        if frac[1] and c1 >= 1:
            for i in range(c0, r - c1 - c2 + 1):
                up_hi[up_base[i] + (c1 - 1)] = 1
        if frac[2] and c2 >= 1:
            for i in range(c0, r - c2 - c1 + 1):
                up_hi[up_base[i] + (r - c2 - i)] = 1

        # two deficient coordinates pin a single corner cell each
        k01 = r + 1 - c0 - c1
        if frac[0] and frac[1] and c0 >= 1 and c1 >= 1 and k01 >= c2:
            if compare(rl[0] + rl[1], c0 + c1 - 1) < 0:
                up_hi[up_base[c0 - 1] + (c1 - 1)] = 1
        j02 = r + 1 - c0 - c2
        if frac[0] and frac[2] and c0 >= 1 and c2 >= 1 and j02 >= c1:
            if compare(rl[0] + rl[2], c0 + c2 - 1) < 0:
                up_hi[up_base[c0 - 1] + j02] = 1
        i12 = r + 1 - c1 - c2
        if frac[1] and frac[2] and c1 >= 1 and c2 >= 1 and i12 >= c0:
            if compare(rl[1] + rl[2], c1 + c2 - 1) < 0:
                up_hi[up_base[i12] + (c1 - 1)] = 1

        # all three deficient: the cell exists only when the ceilings are
        # tight, and then r * lam^n > 0 passes it unconditionally
        if all(frac) and c0 >= 1 and c1 >= 1 and c2 >= 1 and c0 + c1 + c2 == r + 2:
            up_hi[up_base[c0 - 1] + (c1 - 1)] = 1

    lo_count = (sum(up_lo) + sum(dn_lo)) if want_lo else 0
    hi_count = sum(up_hi) + sum(dn_hi)
    return lo_count, hi_count


def estimate_area(lam, d=2, n=0, resolution=256):
    """Two-sided bracket of area(level-n set) / area(simplex) on an r-grid.

    Cells contained in some region count toward lo; cells meeting some open
    region with positive area count toward hi.  Both counts are decided
    exactly, so [lo, hi] always brackets the true normalized area.
    """
    if d != 2:
        raise DomainError("area grid is implemented for the planar case d = 2")
    if not isinstance(resolution, int) or resolution < 64:
        raise DomainError("resolution must be an integer >= 64")
    level = build_level(lam, d, n)
    lo_count, hi_count = _grid_counts(level.regions, resolution, want_lo=True)
    cells = resolution * resolution
    return Fraction(lo_count, cells), Fraction(hi_count, cells)


def box_dimension_estimate(lam, d=2, n=8, delta_range=None):
    """Least-squares slope of log N against log(1/scale).

    N(delta) counts the cylinder cells occupied by the level-n set: the
    deduplicated level-k regions of side lam^k, with k matched to delta and
    the realized scale lam^k entering the fit.  Cylinder cells are the
    barycentric grid aligned with the maps; a uniform-pitch grid saturates
    at coarse scales, where every cell meets the set as soon as the pitch
    exceeds the widest hole.  Scales must stay at or above lam^n, below
    which truncation to the level-n set dominates.  Default scales are
    lam^3 .. lam^8.
    """
    _check_level(d, n)
    lam = _check_lam(lam)
    lam_f = float(lam)
    if delta_range is None:
        deltas = [lam_f**k for k in range(3, min(n, 8) + 1)]
    else:
        deltas = [float(x) for x in delta_range]
    if len(deltas) < 2:
        raise DomainError("need at least two scales for a slope")
    ks = []
    for delta in deltas:
        if not 0 < delta < 1:
            raise DomainError("scales must lie in (0, 1)")
        k = round(math.log(delta) / math.log(lam_f))
        if not 1 <= k <= n:
            raise DomainError("scale %g falls outside lam^1 .. lam^n" % delta)
        ks.append(k)
    top = max(ks)
    if (d + 1) ** top > word_cap():
        raise ResourceLimit(
            "%d words at level %d exceed the cap %d"
            % ((d + 1) ** top, top, word_cap())
        )
    counts = [len(regions) for regions in _frontier_levels(lam, d, top)]
    xs = [-k * math.log(lam_f) for k in ks]
    ys = [math.log(counts[k]) for k in ks]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    sxx = sum((x - mean_x) ** 2 for x in xs)
    if sxx == 0:
        raise DomainError("scales collapse to a single cylinder level")
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    return sxy / sxx


# ----------------------------------------------------------------------
# rendering

_VERTS = (
    (0.0, 2.0 / 3.0),
    (-math.sqrt(3.0) / 3.0, -1.0 / 3.0),
    (math.sqrt(3.0) / 3.0, -1.0 / 3.0),
)


@dataclass(frozen=True)
class RenderOptions:
    """Appearance knobs for render_svg; defaults are greyscale."""

    size: int = 640
    fill: str = "#4d4d4d"
    outline: str = "#1a1a1a"
    outline_width: float = 0.006
    background: str = "#ffffff"
    radial_holes: bool = False
    radial_fill: str = "#c9c9c9"
    overlap_regions: bool = False
    overlap_fill: str = "#8f8f8f"


def _plane(bary):
    x = bary[0] * _VERTS[0][0] + bary[1] * _VERTS[1][0] + bary[2] * _VERTS[2][0]
    y = bary[0] * _VERTS[0][1] + bary[1] * _VERTS[1][1] + bary[2] * _VERTS[2][1]
    return x, -y


def _tri_path(p, q, s):
    return "M %.6f %.6f L %.6f %.6f L %.6f %.6f Z" % (
        p[0], p[1], q[0], q[1], s[0], s[1],
    )


def render_svg(lam, d=2, n=6, path="gasket.svg", options=None):
    """Write the level-n set as a deterministic SVG and return the path.

    One filled path per deduplicated region on the outline of the simplex;
    options overlay the radial candidate holes f_i^k(H_0) and the pairwise
    overlaps of the first-level images.
    """
    if d != 2:
        raise DomainError("rendering is implemented for the planar case d = 2")
    opts = options if options is not None else RenderOptions()
    level = build_level(lam, d, n)
    lam_s = level.lam
    side = float(lam_s**n)

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%d" height="%d" viewBox="-0.72 -0.72 1.44 1.44">'
        % (opts.size, opts.size)
    ]
    if opts.background:
        lines.append(
            '<rect x="-0.72" y="-0.72" width="1.44" height="1.44" fill="%s"/>'
            % opts.background
        )
    corners = [_plane((1.0, 0.0, 0.0)), _plane((0.0, 1.0, 0.0)), _plane((0.0, 0.0, 1.0))]
    lines.append(
        '<path d="%s" fill="none" stroke="%s" stroke-width="%.6f"/>'
        % (_tri_path(*corners), opts.outline, opts.outline_width)
    )
    lines.append('<g fill="%s" fill-rule="nonzero">' % opts.fill)
    for reg in level.regions:
        fb = [float(b) for b in reg.bounds]
        pts = []
        for j in range(3):
            bary = (
                fb[0] + (side if j == 0 else 0.0),
                fb[1] + (side if j == 1 else 0.0),
                fb[2] + (side if j == 2 else 0.0),
            )
            pts.append(_plane(bary))
        lines.append('<path d="%s"/>' % _tri_path(*pts))
    lines.append("</g>")

    if opts.overlap_regions:
        first = build_level(lam_s, 2, 1).regions
        lines.append('<g fill="%s" fill-rule="nonzero">' % opts.overlap_fill)
        for a in range(3):
            for b in range(a + 1, 3):
                m = intersection_bounds(first[a], first[b])
                fb = [float(x) for x in m]
                rest = 1.0 - sum(fb)
                if rest <= 0.0:
                    continue
                pts = [
                    _plane((fb[0] + (rest if j == 0 else 0.0),
                            fb[1] + (rest if j == 1 else 0.0),
                            fb[2] + (rest if j == 2 else 0.0)))
                    for j in range(3)
                ]
                lines.append('<path d="%s"/>' % _tri_path(*pts))
        lines.append("</g>")

    if opts.radial_holes:
        words = [()] + [(i,) * k for k in range(1, n + 1) for i in range(3)]
        lines.append('<g fill="%s" fill-rule="nonzero">' % opts.radial_fill)
        for w in words:
            h = hole_region(w, lam_s, 2)
            if h.is_empty():
                continue
            ub = [float(u) for u in h.bounds]
            slack = sum(ub) - 1.0
            pts = [
                _plane((ub[0] - (slack if j == 0 else 0.0),
                        ub[1] - (slack if j == 1 else 0.0),
                        ub[2] - (slack if j == 2 else 0.0)))
                for j in range(3)
            ]
            lines.append('<path d="%s"/>' % _tri_path(*pts))
        lines.append("</g>")

    lines.append("</svg>")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
    return path
