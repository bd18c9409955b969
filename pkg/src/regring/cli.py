"""Command-line front end: ``regring VERB [options] MATRICES``.

Matrix arguments are file paths or inline text such as ``"1 0 / 0 1/2+i"``.
Exit status is 0 on success, 1 when a verdict is false or a check fails,
and 2 for usage, parse and precondition errors.
"""

import argparse
import json
import os
import sys

from . import golden
from .core import ExactMatrix, eliminate, format_matrix, parse_matrix
from .errors import RegringError
from .geninv import group_inverse, moore_penrose, one_inverse, weighted_mp
from .lab import CLAIMS, make_ring, verify
from .orders import (
    common_one_inverse,
    direct_sum_leq,
    hartwig_split_inverse,
    idempotent_leq,
    loewner_leq,
    minus_leq,
)
from .shorted import (
    Frame,
    anderson_trapp,
    core_matrix,
    is_maximal,
    max_from_strong,
    permutation_equivalent,
    shorted_psd,
)

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class Report:
    """One command's outcome: ``command, inputs, anchor, expected, actual, pass``."""

    def __init__(self, command, inputs, actual, passed=True, anchor=None, expected=None):
        self.command = command
        self.inputs = inputs
        self.actual = actual
        self.passed = passed
        self.anchor = anchor
        self.expected = expected

    def to_json(self):
        doc = {
            "command": self.command,
            "inputs": _jsonable(self.inputs),
            "anchor": self.anchor,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "pass": self.passed,
        }
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)

    def to_text(self):
        lines = []
        for key, value in self.actual.items():
            lines.extend(_text_field(key, value))
        return "\n".join(lines)


def _matrix_json(m):
    return [[str(x) for x in m.row(i)] for i in range(m.rows)]


def _jsonable(value):
    if isinstance(value, ExactMatrix):
        return _matrix_json(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


def _text_field(key, value):
    if isinstance(value, ExactMatrix):
        body = format_matrix(value) if value.rows else "(empty)"
        return [f"{key}:"] + ["  " + line for line in body.splitlines()]
    if value is None:
        return [f"{key}: none"]
    if isinstance(value, bool):
        return [f"{key}: {'true' if value else 'false'}"]
    if isinstance(value, (list, tuple)):
        return [f"{key}: " + ", ".join(str(_jsonable(v)) for v in value)]
    return [f"{key}: {value}"]


def read_matrix(arg):
    """Load a matrix from a file path, falling back to inline text."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse_matrix(fh.read())
    return parse_matrix(arg)


# -- verbs -----------------------------------------------------------------------


def cmd_rank(args):
    a = read_matrix(args.a)
    el = eliminate(a)
    return Report("rank", {"a": a}, {"rank": el.rank, "pivots": list(el.pivots), "rref": el.rref})


def cmd_pinv(args):
    a = read_matrix(args.a)
    return Report("pinv", {"a": a}, {"pinv": moore_penrose(a)})


def cmd_ginv(args):
    a = read_matrix(args.a)
    g = group_inverse(a)
    actual = {"exists": g is not None, "group_inverse": g}
    return Report("ginv", {"a": a}, actual, passed=g is not None)


def cmd_winv(args):
    b, w = read_matrix(args.b), read_matrix(args.weight)
    res = weighted_mp(b, w)
    actual = {
        "solution": res.solution,
        "solution_set_dim": res.solution_set_dim,
        "unique": res.unique,
    }
    return Report("winv", {"b": b, "weight": w}, actual)


def cmd_oneinv(args):
    a = read_matrix(args.a)
    fam = one_inverse(a)
    actual = {
        "one_inverse": fam.base,
        "left_annihilator": fam.left_annihilator,
        "right_annihilator": fam.right_annihilator,
    }
    return Report("oneinv", {"a": a}, actual)


def cmd_order(args):
    a, b = read_matrix(args.a), read_matrix(args.b)
    inputs = {"a": a, "b": b}
    if args.relation == "minus":
        cert = minus_leq(a, b)
        ra, rb, rd = cert.rank_data
        actual = {
            "relation": "minus",
            "verdict": cert.verdict,
            "rank_a": ra,
            "rank_b": rb,
            "rank_b_minus_a": rd,
            "witness": cert.witness,
        }
        if cert.violated:
            actual["violated"] = cert.violated
        return Report("order", inputs, actual, passed=cert.verdict)
    test = {"dsum": direct_sum_leq, "loewner": loewner_leq, "idem": idempotent_leq}[args.relation]
    verdict = bool(test(a, b))
    return Report("order", inputs, {"relation": args.relation, "verdict": verdict}, passed=verdict)


def cmd_common_inv(args):
    a, b = read_matrix(args.a), read_matrix(args.b)
    x = common_one_inverse(a, b)
    return Report("common-inv", {"a": a, "b": b}, {"exists": x is not None, "x": x}, passed=x is not None)


def cmd_hartwig(args):
    a, c = read_matrix(args.a), read_matrix(args.c)
    return Report("hartwig", {"a": a, "c": c}, {"x": hartwig_split_inverse(a, c)})


def cmd_short(args):
    if args.psd:
        a, e = read_matrix(args.psd[0]), read_matrix(args.psd[1])
        res = shorted_psd(a, e)
        actual = {
            "shorted": res.value,
            "via_weighted": res.via_weighted,
            "via_core": res.via_core,
            "rank_drop": res.rank_drop,
        }
        return Report("short", {"a": a, "e": e}, actual)
    if len(args.general) not in (3, 4) or (len(args.general) == 4 and args.a1):
        raise UsageError("short --general takes A E F [A1] (A1 either positional or via --a1)")
    a, e, f = (read_matrix(x) for x in args.general[:3])
    a1_arg = args.general[3] if len(args.general) == 4 else args.a1
    a1 = read_matrix(a1_arg) if a1_arg else moore_penrose(a)
    frame = Frame(e, f)
    core = core_matrix(a, frame, a1)
    d = max_from_strong(a, frame, a1, args.strategy)
    actual = {
        "core": core.core,
        "core_invariant": core.invariant_under_choice,
        "strategy": args.strategy,
        "maximum": d,
        "maximal": is_maximal(d, a, frame, a1),
        "rank_drop": eliminate(a).rank - eliminate(d).rank,
    }
    return Report("short", {"a": a, "e": e, "f": f, "a1": a1}, actual)


def cmd_anderson_trapp(args):
    a = read_matrix(args.a)
    return Report("anderson-trapp", {"a": a, "k": args.k}, {"shorted": anderson_trapp(a, args.k)})


def cmd_perm_equiv(args):
    x, y = read_matrix(args.x), read_matrix(args.y)
    p = permutation_equivalent(x, y)
    return Report("perm-equiv", {"x": x, "y": y}, {"equivalent": p is not None, "p": p}, passed=p is not None)


def cmd_lab(args):
    ring = make_ring(args.ring)
    report = verify(ring, args.claim, order=args.order, workers=args.workers)

    def show(item):
        return item if isinstance(item, str) else ring.decode(item)

    actual = {
        "ring": ring.spec,
        "claim": report.claim_id,
        "tuples_checked": report.universe_size,
        "holds": report.holds,
        "counterexamples": [[show(v) for v in t] for t in report.counterexamples],
    }
    return Report("lab", {"ring": args.ring, "claim": args.claim}, actual, passed=report.holds)


def _side_by_side(left, right, gap=4):
    lcol = format_matrix(left).splitlines()
    rcol = format_matrix(right).splitlines()
    width = max(len("expected"), *(len(s) for s in lcol))
    out = [f"    {'expected'.ljust(width)}{' ' * gap}actual"]
    for i in range(max(len(lcol), len(rcol))):
        l = lcol[i] if i < len(lcol) else ""
        r = rcol[i] if i < len(rcol) else ""
        out.append(f"    {l.ljust(width)}{' ' * gap}{r}")
    return out


class CheckListReport(Report):
    def __init__(self, checks, only):
        records = [c.as_record() for c in checks]
        passed = all(c.passed for c in checks)
        super().__init__("verify-paper", {"only": only}, {"checks": records}, passed=passed)
        self.checks = checks

    def to_text(self):
        lines = []
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.block}: {c.anchor}")
            if c.passed:
                continue
            if isinstance(c.expected, ExactMatrix) and isinstance(c.actual, ExactMatrix):
                lines.extend(_side_by_side(c.expected, c.actual))
            else:
                lines.append(f"    expected: {golden._render(c.expected)}")
                lines.append(f"    actual:   {golden._render(c.actual)}")
        failed = [c for c in self.checks if not c.passed]
        lines.append(f"{len(self.checks) - len(failed)}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def cmd_verify_paper(args):
    fixtures = None
    if args.fixtures:
        with open(args.fixtures, encoding="utf-8") as fh:
            fixtures = dict(golden.FIXTURES)
            fixtures.update(json.load(fh))
    only = [args.only] if args.only else None
    return CheckListReport(golden.run_checks(only=only, fixtures=fixtures), args.only)


# -- parser -----------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="regring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    verb("rank", cmd_rank, "rank, pivot columns and reduced row echelon form").add_argument("a")
    verb("pinv", cmd_pinv, "Moore-Penrose inverse").add_argument("a")
    verb("ginv", cmd_ginv, "group inverse (exit 1 if none exists)").add_argument("a")
    p = verb("winv", cmd_winv, "weighted Moore-Penrose inverse b_w^+")
    p.add_argument("b")
    p.add_argument("--weight", required=True)
    verb("oneinv", cmd_oneinv, "a {1}-inverse and the annihilators describing all of them").add_argument("a")

    p = verb("order", cmd_order, "decide a <= b in a matrix partial order")
    rel = p.add_mutually_exclusive_group(required=True)
    for flag in ("minus", "dsum", "loewner", "idem"):
        rel.add_argument(f"--{flag}", dest="relation", action="store_const", const=flag)
    p.add_argument("a")
    p.add_argument("b")

    p = verb("common-inv", cmd_common_inv, "a common {1}-inverse of a and b")
    p.add_argument("a")
    p.add_argument("b")
    p = verb("hartwig", cmd_hartwig, "{1}-inverse x of a with x c = 0 = c x")
    p.add_argument("a")
    p.add_argument("c")

    p = verb("short", cmd_short, "shorted operators")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--psd", nargs=2, metavar=("A", "E"))
    mode.add_argument("--general", nargs="+", metavar="M", help="A E F [A1]")
    p.add_argument("--a1", help="{1}-inverse of A to use (default: Moore-Penrose)")
    p.add_argument("--strategy", choices=("mp", "group"), default="mp")

    p = verb("anderson-trapp", cmd_anderson_trapp, "block formula for the shorted operator")
    p.add_argument("a")
    p.add_argument("--k", type=int, required=True)

    p = verb("perm-equiv", cmd_perm_equiv, "find P with P x P^T = y")
    p.add_argument("x")
    p.add_argument("y")

    p = verb("lab", cmd_lab, "exhaustively check a claim in a finite regular ring")
    p.add_argument("--ring", required=True)
    p.add_argument("--claim", required=True, choices=sorted(CLAIMS))
    p.add_argument("--order", default=None, help="natural, reversed or an integer shuffle seed")
    p.add_argument("--workers", type=int, default=1)

    p = verb("verify-paper", cmd_verify_paper, "recompute the worked examples and lemma suites")
    p.add_argument("--only", choices=golden.BLOCKS)
    p.add_argument("--fixtures", help="JSON file overriding fixture blocks")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "order", None) not in (None, "natural", "reversed"):
        try:
            args.order = int(args.order)
        except ValueError:
            parser.error(f"--order must be natural, reversed or an integer, not {args.order!r}")
    try:
        report = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (RegringError, OSError, KeyError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"regring {args.verb}: error: {msg}", file=sys.stderr)
        return EXIT_ERROR
    print(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK if report.passed else EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
