"""Command-line front end.

Every ratio and base enters through an exact token (omega:<m>,
rational:<p>/<q>, lambda-star, real:<decimal>, and for bases golden,
omega-inv:<m>, pisot:<1..4>), so no float ever reaches the exact core.
Exit codes separate tool failure (1) from a negative mathematical verdict
(2: a self-similarity violation, genuine hole violations, or a witness
search coming back empty); 0 means the run succeeded and the verdict,
if any, was positive.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .attractor import (
    ConsistentUpTo,
    RenderOptions,
    box_dimension_estimate,
    check_total_self_similarity,
    classify_holes,
    estimate_area,
    render_svg,
)
from .errors import (
    DomainError,
    MultipleRootsError,
    NoRootError,
    PrecisionExhausted,
    ResourceLimit,
)
from .exact import (
    AlgebraicNumber,
    compare,
    gasket_dimension,
    lambda_star,
    multinacci,
    sierpinski_dimension,
)
from .separation import (
    DEFAULT_NODE_CAP,
    NotFound,
    converse_witness,
    ell_upper,
    golden_ratio,
    is_multinacci_reciprocal,
    multinacci_reciprocal,
    pisot_number,
    separation_bound_check,
)
from .words import (
    count_unique_addresses,
    greedy_expansion,
    h_sequence,
    p_sequence,
    u_sequence,
)

__all__ = ["RunConfig", "main", "parse_ratio_token", "parse_theta_token"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERDICT = 2


class _ParseFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; here that code means a negative
    # verdict, so parse problems are turned into ordinary errors instead.
    def error(self, message):
        raise _ParseFailure(message)


# ----------------------------------------------------------------------
# exact tokens


def parse_ratio_token(token):
    """omega:<m> | rational:<p>/<q> | lambda-star | real:<decimal>"""
    if token == "lambda-star":
        return lambda_star()
    kind, sep, rest = token.partition(":")
    if sep and rest:
        if kind == "omega":
            return multinacci(int(rest))
        if kind == "rational":
            p, slash, q = rest.partition("/")
            if not slash:
                raise DomainError("rational token needs <p>/<q>")
            return Fraction(int(p), int(q))
        if kind == "real":
            return Fraction(rest)
    raise DomainError("unrecognized ratio token %r" % token)


def parse_theta_token(token):
    """golden | omega-inv:<m> | pisot:<1..4> | rational:<p>/<q> | real:<dec>"""
    if token == "golden":
        return golden_ratio()
    kind, sep, rest = token.partition(":")
    if sep and rest:
        if kind == "omega-inv":
            return multinacci_reciprocal(int(rest))
        if kind == "pisot":
            return pisot_number(int(rest))
        if kind == "rational":
            p, slash, q = rest.partition("/")
            if not slash:
                raise DomainError("rational token needs <p>/<q>")
            return Fraction(int(p), int(q))
        if kind == "real":
            return Fraction(rest)
    raise DomainError("unrecognized base token %r" % token)


def _describe(value):
    if value is None:
        return None
    if isinstance(value, Fraction):
        return "%d/%d" % (value.numerator, value.denominator)
    if isinstance(value, AlgebraicNumber):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand run depends on, resolved and exact."""

    subcommand: str
    lam_token: str = None
    lam: object = None
    theta_token: str = None
    theta: object = None
    depth: int = None
    dimension: int = 2
    resolution: int = 256
    degree: int = None
    m: int = None
    which: str = None
    x: Fraction = None
    tail: bool = False
    size: int = 640
    radial_holes: bool = False
    overlaps: bool = False
    output: str = None
    fmt: str = None
    max_words: int = None
    node_cap: int = DEFAULT_NODE_CAP
    threads: int = 1

    def dry_run_dict(self):
        d = {
            "subcommand": self.subcommand,
            "caps": {
                "max_words": self.max_words,
                "node_cap": self.node_cap,
                "threads": self.threads,
            },
        }
        if self.lam is not None:
            d["lambda"] = {
                "token": self.lam_token,
                "exact": _describe(self.lam),
                "float": float(self.lam),
            }
        if self.theta is not None:
            d["theta"] = {
                "token": self.theta_token,
                "exact": _describe(self.theta),
                "float": float(self.theta),
            }
        for name in ("depth", "dimension", "resolution", "degree", "m",
                     "which", "output", "fmt"):
            value = getattr(self, name)
            if value is not None:
                d[name] = value
        return d


def _config_from(args):
    lam = parse_ratio_token(args.lam_token) if getattr(args, "lam_token", None) else None
    theta = parse_theta_token(args.theta_token) if getattr(args, "theta_token", None) else None
    x = None
    if getattr(args, "x", None) is not None:
        p, slash, q = args.x.partition("/")
        x = Fraction(int(p), int(q)) if slash else Fraction(args.x)
    threads = getattr(args, "threads", 1)
    if threads < 1:
        raise DomainError("--threads must be >= 1")
    node_cap = getattr(args, "node_cap", None) or DEFAULT_NODE_CAP
    if node_cap < 1:
        raise DomainError("--node-cap must be >= 1")
    return RunConfig(
        subcommand=args.command,
        lam_token=getattr(args, "lam_token", None),
        lam=lam,
        theta_token=getattr(args, "theta_token", None),
        theta=theta,
        depth=getattr(args, "depth", None),
        dimension=getattr(args, "dimension", 2),
        resolution=getattr(args, "resolution", 256),
        degree=getattr(args, "degree", None),
        m=getattr(args, "m", None),
        which=getattr(args, "which", None),
        x=x,
        tail=getattr(args, "tail", False),
        size=getattr(args, "size", 640),
        radial_holes=getattr(args, "radial_holes", False),
        overlaps=getattr(args, "overlaps", False),
        output=getattr(args, "output", None),
        fmt=getattr(args, "fmt", None),
        max_words=getattr(args, "max_words", None),
        node_cap=node_cap,
        threads=threads,
    )


# ----------------------------------------------------------------------
# output plumbing


def _write_text(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def _emit_json(obj, path):
    _write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _emit_csv(rows, path):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerows(rows)
    _write_text(path, buf.getvalue())


def _check_format(cfg, allowed):
    if cfg.fmt is not None and cfg.fmt not in allowed:
        raise DomainError(
            "subcommand %s writes %s, not %s"
            % (cfg.subcommand, "/".join(allowed), cfg.fmt)
        )


# ----------------------------------------------------------------------
# subcommands


def cmd_table1(cfg, args):
    _check_format(cfg, ("csv",))
    rows = [["m", "omega", "dimension"]]
    for m in range(2, 10):
        rows.append([
            str(m),
            "%.5f" % float(multinacci(m)),
            "%.5f" % gasket_dimension(m),
        ])
    rows.append(["inf", "%.5f" % 0.5, "%.5f" % (math.log(3) / math.log(2))])
    _emit_csv(rows, cfg.output)
    return EXIT_OK


def cmd_table2(cfg, args):
    _check_format(cfg, ("csv",))
    header = ["d"] + ["m=%d" % m for m in range(2, 7)] + ["half"]
    rows = [header]
    for d in range(2, 7):
        row = [str(d)]
        row += ["%.2f" % gasket_dimension(m, d) for m in range(2, 7)]
        row.append("%.3f" % sierpinski_dimension(d, Fraction(1, 2)))
        rows.append(row)
    _emit_csv(rows, cfg.output)
    return EXIT_OK


def cmd_render(cfg, args):
    _check_format(cfg, ("svg",))
    options = RenderOptions(
        size=cfg.size,
        radial_holes=cfg.radial_holes,
        overlap_regions=cfg.overlaps,
    )
    path = render_svg(
        cfg.lam,
        d=cfg.dimension,
        n=cfg.depth,
        path=cfg.output or "gasket.svg",
        options=options,
    )
    print(path)
    return EXIT_OK


def cmd_holes(cfg, args):
    _check_format(cfg, ("json",))
    report = classify_holes(cfg.lam, cfg.dimension, cfg.depth)
    _emit_json(report.as_json_dict(float(cfg.lam)), cfg.output)
    return EXIT_VERDICT if report.violations else EXIT_OK


def cmd_selfsim(cfg, args):
    _check_format(cfg, ("json",))
    verdict = check_total_self_similarity(cfg.lam, cfg.dimension, cfg.depth)
    if isinstance(verdict, ConsistentUpTo):
        _emit_json(
            {"lambda": float(cfg.lam), "consistent_up_to": verdict.n_max},
            cfg.output,
        )
        return EXIT_OK
    _emit_json(
        {
            "lambda": float(cfg.lam),
            "violation": {"word": list(verdict.word), "level": verdict.level},
        },
        cfg.output,
    )
    return EXIT_VERDICT


def cmd_area(cfg, args):
    _check_format(cfg, ("json",))
    lo, hi = estimate_area(cfg.lam, cfg.dimension, cfg.depth, cfg.resolution)
    _emit_json(
        {
            "lambda": float(cfg.lam),
            "n": cfg.depth,
            "resolution": cfg.resolution,
            "lower": float(lo),
            "upper": float(hi),
            "lower_exact": _describe(lo),
            "upper_exact": _describe(hi),
        },
        cfg.output,
    )
    return EXIT_OK


def cmd_boxdim(cfg, args):
    _check_format(cfg, ("json",))
    estimate = box_dimension_estimate(cfg.lam, cfg.dimension, cfg.depth)
    _emit_json(
        {"lambda": float(cfg.lam), "n": cfg.depth, "estimate": estimate},
        cfg.output,
    )
    return EXIT_OK


def cmd_ell(cfg, args):
    _check_format(cfg, ("json",))
    theta = cfg.theta
    in_window = (
        compare(theta if isinstance(theta, Fraction) else theta.as_scalar(),
                Fraction(3, 2)) > 0
        and compare(theta if isinstance(theta, Fraction) else theta.as_scalar(),
                    2) < 0
    )
    if in_window:
        report = separation_bound_check(theta, cfg.degree, node_cap=cfg.node_cap)
        _emit_json(report.as_json_dict(), cfg.output)
        return EXIT_OK
    # Outside (3/2, 2) the ceiling does not apply: report the raw minimum.
    min_abs, witness = ell_upper(theta, cfg.degree, node_cap=cfg.node_cap)
    m = is_multinacci_reciprocal(theta)
    _emit_json(
        {
            "theta": float(theta),
            "n_max": cfg.degree,
            "min_abs": min_abs,
            "witness_coeffs": list(witness.coeffs),
            "bound_2_over_2_plus_theta": 2.0 / (2.0 + float(theta)),
            "certified": False,
            "multinacci_reciprocal": m if m is not None else 0,
        },
        cfg.output,
    )
    return EXIT_OK


def cmd_witness(cfg, args):
    _check_format(cfg, ("json",))
    result = converse_witness(cfg.lam, cfg.depth)
    if isinstance(result, NotFound):
        _emit_json(
            {"lambda": float(cfg.lam), "not_found": result.reason},
            cfg.output,
        )
        return EXIT_VERDICT
    _emit_json(
        {"lambda": float(cfg.lam), "n": result.n, "digits": list(result.digits)},
        cfg.output,
    )
    return EXIT_OK


def cmd_uniq(cfg, args):
    _check_format(cfg, ("csv",))
    rows = [["n", "count", "ratio"]]
    prev = None
    for n in range(1, cfg.depth + 1):
        c = count_unique_addresses(cfg.m, n)
        ratio = "" if prev is None else "%.10f" % (c / prev)
        rows.append([str(n), str(c), ratio])
        prev = c
    _emit_csv(rows, cfg.output)
    return EXIT_OK


def cmd_seq(cfg, args):
    _check_format(cfg, ("csv",))
    if cfg.which == "u":
        seq = u_sequence(cfg.depth)
    elif cfg.which == "h":
        seq = h_sequence(cfg.m, cfg.depth)
    else:
        seq = p_sequence(cfg.m, cfg.depth)
    rows = [["n", "value"]]
    rows += [[str(n), str(v)] for n, v in enumerate(seq.values)]
    _emit_csv(rows, cfg.output)
    return EXIT_OK


def cmd_expand(cfg, args):
    _check_format(cfg, ("json",))
    x = Fraction(1) if cfg.x is None else cfg.x
    expansion = greedy_expansion(cfg.lam, x, cfg.depth, tail_convention=cfg.tail)
    _emit_json(
        {
            "lambda": float(cfg.lam),
            "x": _describe(x),
            "digits": list(expansion.digits),
        },
        cfg.output,
    )
    return EXIT_OK


# ----------------------------------------------------------------------
# parser


def _add_common(sub, lam=False, theta=False, depth=None, res=False):
    if lam:
        sub.add_argument("--lambda", dest="lam_token", required=True,
                         help="omega:<m> | rational:<p>/<q> | lambda-star | real:<dec>")
    if theta:
        sub.add_argument("--theta", dest="theta_token", required=True,
                         help="golden | omega-inv:<m> | pisot:<1..4> | "
                              "rational:<p>/<q> | real:<dec>")
    if depth is not None:
        sub.add_argument("--depth", "-n", type=int, default=depth)
    if res:
        sub.add_argument("--resolution", type=int, default=256)
    sub.add_argument("--dimension", "-d", type=int, default=2)
    sub.add_argument("-o", "--output", default=None)
    sub.add_argument("--format", dest="fmt", default=None,
                     choices=("svg", "csv", "json"))
    sub.add_argument("--dry-run", action="store_true", dest="dry_run")
    sub.add_argument("--threads", type=int, default=1,
                     help="accepted for forward compatibility; runs are single-threaded")
    sub.add_argument("--max-words", type=int, default=None,
                     help="override the enumeration cap (GASKET_MAX_WORDS)")
    sub.add_argument("--node-cap", type=int, default=None,
                     help="search-node budget for the signed-sum minimizer")


def build_parser():
    parser = _Parser(prog="gasket",
                     description="Overlapping simplex gaskets, exactly.")
    subs = parser.add_subparsers(dest="command", required=True,
                                 parser_class=_Parser)

    s = subs.add_parser("table1", help="dimension table over multinacci ratios")
    _add_common(s)
    s.set_defaults(handler=cmd_table1)

    s = subs.add_parser("table2", help="dimension grid over simplex dimensions")
    _add_common(s)
    s.set_defaults(handler=cmd_table2)

    s = subs.add_parser("render", help="write an SVG of the level-n region set")
    _add_common(s, lam=True, depth=6)
    s.add_argument("--size", type=int, default=640)
    s.add_argument("--radial-holes", action="store_true")
    s.add_argument("--overlaps", action="store_true")
    s.set_defaults(handler=cmd_render)

    s = subs.add_parser("holes", help="classify level-n hole candidates")
    _add_common(s, lam=True, depth=4)
    s.set_defaults(handler=cmd_holes)

    s = subs.add_parser("selfsim", help="search for a self-similarity violation")
    _add_common(s, lam=True, depth=6)
    s.set_defaults(handler=cmd_selfsim)

    s = subs.add_parser("area", help="bracket the covered fraction of the simplex")
    _add_common(s, lam=True, depth=8, res=True)
    s.set_defaults(handler=cmd_area)

    s = subs.add_parser("boxdim", help="box-counting dimension estimate")
    _add_common(s, lam=True, depth=8)
    s.set_defaults(handler=cmd_boxdim)

    s = subs.add_parser("ell", help="degree-bounded separation minimum")
    _add_common(s, theta=True)
    s.add_argument("--degree", type=int, default=14)
    s.set_defaults(handler=cmd_ell)

    s = subs.add_parser("witness", help="digit witness against total self-similarity")
    _add_common(s, lam=True, depth=16)
    s.set_defaults(handler=cmd_witness)

    s = subs.add_parser("uniq", help="counts of words with unique addresses")
    _add_common(s, depth=15)
    s.add_argument("--m", type=int, default=2)
    s.set_defaults(handler=cmd_uniq)

    s = subs.add_parser("seq", help="hole counting sequences")
    _add_common(s, depth=12)
    s.add_argument("--which", choices=("u", "h", "p"), default="u")
    s.add_argument("--m", type=int, default=3)
    s.set_defaults(handler=cmd_seq)

    s = subs.add_parser("expand", help="greedy digit expansion")
    _add_common(s, lam=True, depth=12)
    s.add_argument("--x", default=None, help="rational argument, e.g. 1 or 3/4")
    s.add_argument("--tail", action="store_true",
                   help="use the periodic tail form of the expansion of 1")
    s.set_defaults(handler=cmd_expand)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ParseFailure as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR
    saved_cap = os.environ.get("GASKET_MAX_WORDS")
    try:
        cfg = _config_from(args)
        if cfg.max_words is not None:
            if cfg.max_words < 1:
                raise DomainError("--max-words must be >= 1")
            os.environ["GASKET_MAX_WORDS"] = str(cfg.max_words)
        if args.dry_run:
            _emit_json(cfg.dry_run_dict(), cfg.output)
            return EXIT_OK
        return args.handler(cfg, args)
    except (DomainError, NoRootError, MultipleRootsError, PrecisionExhausted,
            ResourceLimit, OSError, TypeError, ValueError,
            ZeroDivisionError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR
    finally:
        if saved_cap is None:
            os.environ.pop("GASKET_MAX_WORDS", None)
        else:
            os.environ["GASKET_MAX_WORDS"] = saved_cap


if __name__ == "__main__":
    sys.exit(main())
