"""The word family W_p in the elementary palindromic generators, and its audit.

    W_p = A_ij^-p A_kj^-p A_ij^p A_ki A_ij^p A_kj^-p A_ij^-p A_ki^-1

:func:`verify_wp` computes the images of the basis letters under W_p by
substitution and reports whatever the engine finds; the published claim that
W_p acts trivially is carried alongside as ``CLAIMED_VERDICT`` and is never
used as an expected value.  :func:`replay_paper_steps` re-derives every
intermediate line of the published derivation from the line above it.

Each A_ij^{±1} factors as the commuting pair of elementary transvections
(rho_ij^{±1}, lambda_ij^{±1}); :func:`expand_transvections` unrolls a word
into that form and :func:`rose_path` lists the prefix composites, which are
the successive roses visited by the corresponding loop.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import freeword as fw
from .fgauto import (LR, RL, Convention, Endomorphism, GenSymbol, GenWord,
                     compose, compose_word, is_identity, power)
from .freeword import P, Exponent, LinExpr, Word

__all__ = [
    "WpSpec", "StepRecord", "AuditReport", "TransvectionSeq", "RosePath",
    "CLAIMED_VERDICT", "build_wp", "verify_wp", "replay_paper_steps",
    "expand_transvections", "rose_path", "audit_batch", "displayed_lines",
]

CLAIMED_VERDICT = "trivial"

HEADER = "# palaut-lab v1"


@dataclass(frozen=True)
class WpSpec:
    """Indices i, j, k (pairwise distinct) and p: an int >= 0 or the symbol ``P``."""

    i: int = 1
    j: int = 2
    k: int = 3
    p: Exponent = P
    rank: int = 3

    def __post_init__(self):
        if len({self.i, self.j, self.k}) != 3:
            raise ValueError("i, j, k must be pairwise distinct")
        if not all(1 <= x <= self.rank for x in (self.i, self.j, self.k)):
            raise ValueError(f"indices must lie in 1..{self.rank}")
        if isinstance(self.p, int) and self.p < 0:
            raise ValueError("p must be >= 0")
        if isinstance(self.p, LinExpr) and self.p != P:
            raise ValueError("the symbolic parameter must be P itself")

    @property
    def symbolic(self) -> bool:
        return isinstance(self.p, LinExpr)

    def target_index(self, target: str) -> int:
        return {"ai": self.i, "aj": self.j, "ak": self.k}[target]

    def ground(self, w: Word) -> Word:
        """Evaluate a word built with the symbol P at this spec's p (p=0 included)."""
        if self.symbolic:
            return w
        if self.p >= 1:
            return fw.evaluate(w, self.p)
        blocks = [(g, e.c0 if isinstance(e, LinExpr) else e) for g, e in w.blocks]
        return fw.reduce(blocks, w.rank)


@dataclass(frozen=True)
class StepRecord:
    step: int
    op: str
    operand: Word
    result: Word
    shown: str | None = None
    match: bool | None = None
    target: int = 0


@dataclass
class AuditReport:
    spec: WpSpec
    convention: Convention
    steps: list = field(default_factory=list)
    final_images: tuple = ()
    verdict: str = ""
    claimed: str = CLAIMED_VERDICT
    kind: str = "verify"

    @property
    def mismatches(self) -> tuple:
        return tuple((r.target, r.step) for r in self.steps if r.match is False)

    @property
    def match_flags(self) -> tuple:
        return tuple(r.match for r in self.steps)

    def _rows(self):
        for r in self.steps:
            match = "-" if r.match is None else ("yes" if r.match else "no")
            yield r, [str(r.step), r.op, str(r.operand), str(r.result), r.shown or "-", match]

    def _preamble(self) -> list:
        s = self.spec
        return [HEADER,
                f"# {self.kind} i={s.i} j={s.j} k={s.k} p={s.p} convention={self.convention}"]

    def _trailer(self) -> list:
        lines = [f"final a{x} = {im}" for x, im in enumerate(self.final_images, start=1)]
        lines.append(f"verdict {self.verdict}")
        lines.append(f"claimed {self.claimed}")
        return lines

    def to_text(self) -> str:
        lines = self._preamble()
        current = None
        for r, (step, op, a, b, shown, match) in self._rows():
            if r.target != current:
                current = r.target
                lines.append(f"# target a{current}")
            lines.append(f"step {step} | op {op} | in {a} | out {b} | paper {shown} | match {match}")
        lines.extend(self._trailer())
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("\n".join(self._preamble()) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["step", "op", "in", "out", "paper", "match"])
        current = None
        for r, row in self._rows():
            if r.target != current:
                current = r.target
                buf.write(f"# target a{current}\n")
            writer.writerow(row)
        for line in self._trailer():
            buf.write(f"# {line}\n")
        return buf.getvalue()


def _factor_list(spec: WpSpec) -> list:
    i, j, k, p = spec.i, spec.j, spec.k, spec.p
    A = GenSymbol.A
    return [(A(i, j), -p), (A(k, j), -p), (A(i, j), p), (A(k, i), 1),
            (A(i, j), p), (A(k, j), -p), (A(i, j), -p), (A(k, i), -1)]


def build_wp(spec: WpSpec) -> GenWord:
    factors = [(s, e) for s, e in _factor_list(spec) if not (isinstance(e, int) and e == 0)]
    return GenWord(spec.rank, tuple(factors))


def _ordered(gw: GenWord, c: Convention) -> list:
    return list(reversed(gw.factors)) if c is RL else list(gw.factors)


def _factor_str(s: GenSymbol, e: Exponent) -> str:
    return str(s) if e == 1 else f"{s}^{fw.format_exponent(e)}"


# Published derivation, factors consumed in rightmost-first order.  Each entry
# is (number of factors consumed so far, displayed word).  Words use a_i, a_j,
# a_k as placeholders ``I J K`` and are kept unreduced, as displayed.
_DISPLAYED = {
    "ak": [
        (1, "I^-1 K I^-1"),
        (2, "I^-1 K I^-1"),
        (3, "I^-1 J^(-p) K J^(-p) I^-1"),
        (4, "I^-1 J^(-p) K J^(-p) I^-1"),
        (5, "I^-1 J^(-p) I K I J^(-p) I^-1"),
        (6, "J^(p) K J^(p)"),
        (7, "J^(p) J^(-p) K J^(-p) J^(p)"),
        (7, "K"),
        (8, "K"),
    ],
    "ai": [
        (2, "J^(-p) I J^(-p)"),
        (4, "J^(-p) J^(p) I J^(p) J^(-p)"),
        (6, "J^(p) I J^(p)"),
        (7, "J^(p) I J^(p)"),
        (8, "J^(p) J^(-p) I J^(-p) J^(p)"),
        (8, "I"),
    ],
    # only the final value is displayed for a_j
    "aj": [(8, "J")],
}


def displayed_lines(spec: WpSpec, target: str) -> list:
    """Displayed lines for ``target`` as (consumed, raw text, reduced Word) triples."""
    names = {"I": f"a{spec.i}", "J": f"a{spec.j}", "K": f"a{spec.k}"}
    out = []
    for consumed, text in _DISPLAYED[target]:
        raw = " ".join(names[t[0]] + t[1:] for t in text.split())
        w = fw.parse_word(raw, spec.rank)
        if spec.symbolic:
            shown = raw
        else:
            w = spec.ground(w)
            shown = _ground_raw(raw, spec)
        out.append((consumed, shown, w))
    return out


def _ground_raw(raw: str, spec: WpSpec) -> str:
    blocks = fw.parse_word(raw, spec.rank, raw=True)
    parts = []
    for g, e in blocks:
        v = e.value(spec.p) if isinstance(e, LinExpr) else e
        if v:
            parts.append(f"a{g}" if v == 1 else f"a{g}^{v}")
    return " ".join(parts) or "e"


def _apply_factor(s: GenSymbol, e: Exponent, w: Word, spec: WpSpec) -> Word:
    return fw.substitute(w, power(s, e, spec.rank).images)


def verify_wp(spec: WpSpec, c: Convention = RL) -> AuditReport:
    """Apply W_p to every basis letter, one factor at a time, in convention order.

    The per-letter chains are cross-checked against the composite built by
    :func:`compose_word`; a disagreement is an internal error.
    """
    gw = build_wp(spec)
    factors = _ordered(gw, c)
    report = AuditReport(spec, c)
    lines_by_target = {spec.i: "ai", spec.j: "aj", spec.k: "ak"}
    finals = []
    for x in range(1, spec.rank + 1):
        displayed = {}
        if x in lines_by_target and spec.p != 0:
            for consumed, shown, w in displayed_lines(spec, lines_by_target[x]):
                displayed[consumed] = (shown, w)
        w = Word.letter(x, spec.rank)
        for t, (s, e) in enumerate(factors, start=1):
            out = _apply_factor(s, e, w, spec)
            shown = displayed.get(t)
            report.steps.append(StepRecord(
                t, _factor_str(s, e), w, out,
                shown[0] if shown else None,
                (out == shown[1]) if shown else None, x))
            w = out
        finals.append(w)
    composite = compose_word(gw, c)
    if tuple(finals) != composite.images:
        raise AssertionError("stepwise chain disagrees with the composite endomorphism")
    report.final_images = tuple(finals)
    report.verdict = "trivial" if is_identity(composite) else "nontrivial"
    return report


def replay_paper_steps(spec: WpSpec, target: str, c: Convention = RL) -> AuditReport:
    """Recompute each displayed line from the displayed line above it.

    Factors are consumed in convention order (the published derivation is
    rightmost-first, so only ``RL`` compares like with like).  A line that
    consumes no new factor is a free reduction of its predecessor.
    """
    if spec.p == 0:
        raise ValueError("the displayed derivation assumes p >= 1")
    factors = _ordered(build_wp(spec), c)
    x = spec.target_index(target)
    report = AuditReport(spec, c, kind=f"replay target=a{x}")
    operand = Word.letter(x, spec.rank)
    consumed_so_far = 0
    for t, (consumed, shown, displayed_word) in enumerate(displayed_lines(spec, target), start=1):
        todo = factors[consumed_so_far:consumed]
        out = operand
        for s, e in todo:
            out = _apply_factor(s, e, out, spec)
        op = " ".join(_factor_str(s, e) for s, e in todo) or "reduce"
        report.steps.append(StepRecord(t, op, operand, out, shown, out == displayed_word, x))
        operand = displayed_word
        consumed_so_far = consumed
    full = verify_wp(spec, c)
    report.final_images = full.final_images
    report.verdict = full.verdict
    return report


def audit_batch(specs: Sequence[WpSpec], conventions: Sequence[Convention] = (RL, LR),
                targets: Sequence[str] | None = None, threads: int = 1) -> list:
    """Run many audits; output is ordered by (p, convention, target) whatever ``threads`` is."""
    jobs = []
    for spec in specs:
        for c in conventions:
            for tgt in (targets or [None]):
                jobs.append((spec, c, tgt))

    def key(job):
        spec, c, tgt = job
        return (0 if spec.symbolic else 1, spec.p if not spec.symbolic else 0,
                c.value, tgt or "")

    jobs.sort(key=key)

    def run(job):
        spec, c, tgt = job
        return verify_wp(spec, c) if tgt is None else replay_paper_steps(spec, tgt, c)

    if threads <= 1:
        return [run(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(run, jobs))


# --- transvections and rose paths ----------------------------------------------

@dataclass(frozen=True)
class TransvectionSeq:
    rank: int
    factors: tuple = ()

    def __post_init__(self):
        for s, e in self.factors:
            if s.kind not in ("lambda", "rho") or e not in (1, -1):
                raise ValueError(f"{s}^{e} is not an elementary transvection")

    def __len__(self):
        return len(self.factors)

    def to_genword(self) -> GenWord:
        return GenWord(self.rank, self.factors)

    def __str__(self):
        return " ".join(_factor_str(s, e) for s, e in self.factors) or "e"


@dataclass(frozen=True)
class RosePath:
    roses: tuple
    edges: tuple
    closed: bool
    convention: Convention = RL

    def __len__(self):
        return len(self.edges)


def expand_transvections(gw: GenWord, p_value: int | None = None) -> TransvectionSeq:
    """Replace each A_ij^{±1} by (rho_ij^{±1}, lambda_ij^{±1}); powers are unrolled.

    Symbolic exponents are grounded at ``p_value`` (0 allowed).  Factors that
    are already transvections pass through unrolled.
    """
    out = []
    for s, e in gw.factors:
        if isinstance(e, LinExpr):
            if p_value is None:
                raise ValueError("symbolic exponent needs a concrete p_value")
            e = e.value(p_value)
        if e == 0:
            continue
        unit = 1 if e > 0 else -1
        if s.kind == "A":
            pair = [(GenSymbol.rho(s.i, s.j), unit), (GenSymbol.lam(s.i, s.j), unit)]
        elif s.kind in ("lambda", "rho"):
            pair = [(s, unit)]
        else:
            raise ValueError(f"{s} is not a product of elementary transvections")
        out.extend(pair * abs(e))
    return TransvectionSeq(gw.rank, tuple(out))


def rose_path(ts: TransvectionSeq, c: Convention = RL) -> RosePath:
    """Prefix composites starting at the identity rose; closed iff the last one is the identity."""
    current = Endomorphism.identity(ts.rank)
    roses = [current]
    for s, e in ts.factors:
        current = compose(current, power(s, e, ts.rank), c)
        roses.append(current)
    edges = tuple(_factor_str(s, e) for s, e in ts.factors)
    return RosePath(tuple(roses), edges, is_identity(current), c)
