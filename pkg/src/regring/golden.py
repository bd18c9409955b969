"""Worked examples with known exact answers, and the runner that checks them.

Each block (``example7``, ``example14``, ``example18``, ``lemmas``) takes a
fixture dict of matrix texts and yields :class:`Check` records. Fixtures are
plain data so a caller can hand in altered copies and watch checks fail.
"""

import contextlib
import copy
import io
from dataclasses import dataclass, field
from typing import Any

from .core import ExactMatrix, Subspace, eliminate, format_matrix, is_psd, parse_matrix, rank
from .geninv import group_inverse, moore_penrose, weighted_mp
from .lab import make_ring, verify
from .lab.witness import minus_leq_gf
from .orders import (
    direct_sum_leq,
    inverse_containment,
    loewner_leq,
    minus_leq,
    theorem1_conditions,
)
from .shorted import (
    Frame,
    anderson_trapp,
    is_maximal,
    max_from_strong,
    member_from_weak,
    permutation_equivalent,
    projector_intersection,
    shorted_psd,
)

FIXTURES = {
    "example7": {
        "a": "0 0 1 0 / 0 0 0 0 / 0 0 0 0 / 0 0 0 0",
        "b": "0 0 0 0 / 0 0 0 1 / 0 0 0 0 / 0 0 0 0",
        "c": "0 0 1 1 / 0 0 0 1 / 0 0 0 0 / 0 0 0 0",
        "rank_c": 2,
        "rank_a_plus_b": 2,
        "rank_c_minus_a_plus_b": 1,
    },
    "example14": {
        "a": "1 0 0 0 / 0 1 0 0 / 0 0 1 0 / 0 0 0 1",
        "a1": "1 0 0 0 / 0 1 0 0 / 0 0 1 0 / 0 0 0 1",
        "e": "1 0 0 0 / 0 1/2 1/2 0 / 0 1/2 1/2 0 / 0 0 0 1",
        "f": "1/2 1/4 0 0 / 1 1/2 0 0 / 0 0 0 0 / 0 0 0 1",
        "core": "1/2 1/8 1/8 0 / 1 1/4 1/4 0 / 0 0 0 0 / 0 0 0 1",
        "v1": "16/45 32/45 0 0 / 4/45 8/45 0 0 / 4/45 8/45 0 0 / 0 0 0 1",
        "ev1f": "8/9 4/9 0 0 / 2/9 1/9 0 0 / 2/9 1/9 0 0 / 0 0 0 1",
        "v2": "8/9 2/9 2/9 0 / 16/9 4/9 4/9 0 / 0 0 0 0 / 0 0 0 1",
        "ev2f": "2/3 1/3 0 0 / 2/3 1/3 0 0 / 2/3 1/3 0 0 / 0 0 0 1",
        "f_rows": [["1/2", "1/4", "0", "0"], ["1", "1/2", "0", "0"], ["0", "0", "0", "0"], ["0", "0", "0", "1"]],
        "rank_drop": 2,
    },
    "example18": {
        "a": "1 0 1 0 / 0 1 0 0 / 1 0 1 0 / 0 0 0 1",
        "e": "1/2 0 1/2 0 / 0 0 0 0 / 1/2 0 1/2 0 / 0 0 0 1",
        "e_span": "1 0 / 0 0 / 1 0 / 0 1",
        "a_pinv": "1/4 0 1/4 0 / 0 1 0 0 / 1/4 0 1/4 0 / 0 0 0 1",
        "f_weighted": "1/2 0 1/2 0 / 0 0 0 0 / 1/2 0 1/2 0 / 0 0 0 1",
        "core_pinv": "1 0 1 0 / 0 0 0 0 / 1 0 1 0 / 0 0 0 1",
        "shorted": "1 0 1 0 / 0 0 0 0 / 1 0 1 0 / 0 0 0 1",
        "a_s": "1 0 1 0 / 0 1 0 0 / 1 0 1 0 / 0 0 0 0",
        "k": 3,
        "p": "1 0 0 0 / 0 0 0 1 / 0 0 1 0 / 0 1 0 0",
        "rank_a": 3,
        "rank_shorted": 2,
    },
    "lemmas": {
        "rings": ["M_2(GF(2))", "Z/30"],
        "claims": ["thm1", "lemma2", "lemma3", "cor4", "cor5", "prop6", "lemma8", "lemma9", "lemma12_13"],
    },
}

BLOCKS = ("example7", "example14", "example18", "lemmas")


@dataclass
class Check:
    block: str
    anchor: str
    expected: Any
    actual: Any
    inputs: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.expected == self.actual

    def as_record(self):
        return {
            "command": "verify-paper",
            "block": self.block,
            "anchor": self.anchor,
            "inputs": dict(self.inputs),
            "expected": self.expected,
            "actual": self.actual,
            "pass": self.passed,
        }


def _render(value):
    if isinstance(value, ExactMatrix):
        return format_matrix(value, row_sep=" / ")
    if isinstance(value, tuple):
        return [_render(v) for v in value]
    return value


def _m(fx, key):
    return parse_matrix(fx[key])


def _cli(*argv):
    """Exit status and stdout of one command-line invocation."""
    from .cli import main

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main(list(argv))
    return code, buf.getvalue()


def _cli_matrix(out, key):
    lines = out.split(f"{key}:\n", 1)[1].splitlines()
    body = []
    for line in lines:
        if not line.startswith("  "):
            break
        body.append(line)
    return parse_matrix("\n".join(body))


def example7_checks(fx):
    a, b, c = _m(fx, "a"), _m(fx, "b"), _m(fx, "c")
    s = a + b
    ins = {"a": a, "b": b, "c": c}
    blk = "example7"
    yield Check(blk, "rank(c)", fx["rank_c"], eliminate(c).rank, ins)
    yield Check(blk, "rank(a+b)", fx["rank_a_plus_b"], rank(s), ins)
    yield Check(blk, "rank(c-(a+b))", fx["rank_c_minus_a_plus_b"], rank(c - s), ins)
    yield Check(blk, "a <=- c", True, minus_leq(a, c).verdict, ins)
    yield Check(blk, "b <=- c", True, minus_leq(b, c).verdict, ins)
    yield Check(blk, "col(a)∩col(b)=0=row(a)∩row(b)", True, theorem1_conditions(a, b)[2], ins)
    yield Check(blk, "a+b not <=- c", False, minus_leq(s, c).verdict, ins)
    yield Check(blk, "a+b not <=⊕ c", False, direct_sum_leq(s, c), ins)
    as_ints = [[int(x.re) for x in m.row(i)] for m in (a, b, c) for i in range(m.rows)]
    ga, gb, gc = as_ints[0:4], as_ints[4:8], as_ints[8:12]
    gs = [[(x + y) % 2 for x, y in zip(r1, r2)] for r1, r2 in zip(ga, gb)]
    yield Check(
        blk, "over GF(2): a <=- c, b <=- c, a+b not <=- c (witness search)",
        (True, True, False),
        (minus_leq_gf(ga, gc, 2), minus_leq_gf(gb, gc, 2), minus_leq_gf(gs, gc, 2)),
        ins,
    )


def example14_checks(fx):
    a, a1, e, f = _m(fx, "a"), _m(fx, "a1"), _m(fx, "e"), _m(fx, "f")
    frame = Frame(e, f)
    ins = {"a": a, "a1": a1, "e": e, "f": f}
    blk = "example14"
    yield Check(blk, "f parsed entrywise", fx["f_rows"], [[str(x) for x in f.row(i)] for i in range(f.rows)], ins)
    core = f @ a1 @ e
    yield Check(blk, "f a1 e", _m(fx, "core"), core, ins)
    yield Check(blk, "rank(f a1 e)", 2, rank(core), ins)
    v1 = moore_penrose(core)
    yield Check(blk, "v1 = (f a1 e)^+", _m(fx, "v1"), v1, ins)
    ev1f = max_from_strong(a, frame, a1, "mp")
    yield Check(blk, "e v1 f", _m(fx, "ev1f"), ev1f, ins)
    v2 = group_inverse(core)
    yield Check(blk, "v2 = (f a1 e)^#", _m(fx, "v2"), v2, ins)
    ev2f = max_from_strong(a, frame, a1, "group")
    yield Check(blk, "e v2 f", _m(fx, "ev2f"), ev2f, ins)
    for name, d in (("e v1 f", ev1f), ("e v2 f", ev2f)):
        yield Check(blk, f"rank(a) - rank({name})", fx["rank_drop"], rank(a) - rank(d), ins)
        yield Check(blk, f"rank(a - {name})", fx["rank_drop"], rank(a - d), ins)
    yield Check(blk, "e v1 f != e v2 f", True, ev1f != ev2f, ins)
    yield Check(blk, "e v1 f <=- a", True, minus_leq(ev1f, a).verdict, ins)
    yield Check(blk, "e v2 f <=⊕ a", True, direct_sum_leq(ev2f, a), ins)
    yield Check(blk, "{a^(1)} ⊆ {(e v1 f)^(1)}", True, inverse_containment(a, ev1f), ins)
    yield Check(blk, "e v1 f from weak inverse v1", _m(fx, "ev1f"), member_from_weak(a, frame, a1, v1), ins)
    yield Check(blk, "e v1 f maximal", True, is_maximal(ev1f, a, frame, a1), ins)
    yield Check(blk, "e v2 f maximal", True, is_maximal(ev2f, a, frame, a1), ins)
    code, out = _cli("order", "--minus", fx["ev1f"], fx["a"])
    yield Check(blk, "cli: order --minus (e v1 f, a) exit", 0, code, ins)
    witness = _cli_matrix(out, "witness") if "witness:\n" in out else None
    yield Check(
        blk, "cli: order --minus (e v1 f, a) witness",
        True, witness is not None and minus_leq(ev1f, a).witness == witness, ins,
    )


def example18_checks(fx):
    a, e = _m(fx, "a"), _m(fx, "e")
    f = e.H
    ins = {"a": a, "e": e}
    blk = "example18"
    yield Check(blk, "a is PSD", True, is_psd(a), ins)
    span = Subspace.span(_m(fx, "e_span"))
    yield Check(blk, "e = orthogonal projector", e, projector_intersection(span, span), ins)
    ap = moore_penrose(a)
    yield Check(blk, "a^+", _m(fx, "a_pinv"), ap, ins)
    yield Check(blk, "f_a^+ = f", _m(fx, "f_weighted"), weighted_mp(f, a).solution, ins)
    yield Check(blk, "(f a^+ e)^+", _m(fx, "core_pinv"), moore_penrose(f @ ap @ e), ins)
    result = shorted_psd(a, e)
    yield Check(blk, "a f_a^+ f", _m(fx, "shorted"), result.via_weighted, ins)
    yield Check(blk, "e (f a^+ e)^+ f", _m(fx, "shorted"), result.via_core, ins)
    value = result.value
    yield Check(blk, "rank(a)", fx["rank_a"], rank(a), ins)
    yield Check(blk, "rank(a f_a^+ f)", fx["rank_shorted"], rank(value), ins)
    yield Check(blk, "rank(a - a f_a^+ f)", fx["rank_a"] - fx["rank_shorted"], rank(a - value), ins)
    yield Check(blk, "rank drop", fx["rank_a"] - fx["rank_shorted"], result.rank_drop, ins)
    yield Check(blk, "a f_a^+ f <=L a", True, loewner_leq(value, a), ins)
    yield Check(blk, "a f_a^+ f <=⊕ a", True, direct_sum_leq(value, a), ins)
    a_s = anderson_trapp(a, fx["k"])
    yield Check(blk, "a_S (Anderson-Trapp, k=3)", _m(fx, "a_s"), a_s, ins)
    code, out = _cli("anderson-trapp", fx["a"], "--k", str(fx["k"]))
    yield Check(blk, "cli: anderson-trapp a --k 3", _m(fx, "a_s"), _cli_matrix(out, "shorted") if code == 0 else None, ins)
    p = _m(fx, "p")
    yield Check(blk, "P a f_a^+ f P^T = a_S for the listed P", a_s, p @ value @ p.T, ins)
    found = permutation_equivalent(value, a_s)
    yield Check(
        blk, "permutation search finds P with P x P^T = a_S",
        True, found is not None and found @ value @ found.T == a_s, ins,
    )


def lemma_checks(fx):
    for spec in fx["rings"]:
        ring = make_ring(spec)
        for claim in fx["claims"]:
            report = verify(ring, claim)
            yield Check(
                "lemmas", f"{claim} on {ring.spec}", [], report.counterexamples,
                {"ring": ring.spec, "tuples": report.universe_size},
            )


RUNNERS = {
    "example7": example7_checks,
    "example14": example14_checks,
    "example18": example18_checks,
    "lemmas": lemma_checks,
}


def run_checks(only=None, fixtures=None):
    """All checks for the selected blocks; exceptions become failed checks."""
    fixtures = copy.deepcopy(FIXTURES if fixtures is None else fixtures)
    blocks = BLOCKS if not only else tuple(only)
    checks = []
    for block in blocks:
        if block not in RUNNERS:
            raise KeyError(f"unknown block {block!r}; known: {', '.join(BLOCKS)}")
        try:
            checks.extend(RUNNERS[block](fixtures[block]))
        except Exception as exc:  # a crash is reported as a failure of its block
            checks.append(Check(block, f"{block} raised", "no error", f"{type(exc).__name__}: {exc}"))
    return checks
