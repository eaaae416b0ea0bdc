"""Endomorphisms of F_n as image tuples, and words in the palindromic generators.

Generator kinds (images of the moved letter; every other letter is fixed):

    A(i,j)       a_i -> a_j a_i a_j
    sigma(i)     a_i -> a_i^-1
    perm(pi)     a_i -> a_pi(i)        (pi given as an image list)
    lambda(i,j)  a_i -> a_j a_i
    rho(i,j)     a_i -> a_i a_j

Composition is available under two conventions.  ``RL`` (the default) applies
the rightmost factor first, so ``compose(f, g, RL)(x) == f(g(x))``; ``LR``
applies the leftmost factor first.  The published derivation of the W_p
computation peels factors from the right, while the third defining relation
of the elementary palindromic subgroup only holds under ``LR``; both are kept.

The relation families of the elementary palindromic subgroup are instantiated
over pairwise distinct indices only.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from . import freeword as fw
from .freeword import Exponent, LinExpr, Word

__all__ = [
    "Convention", "RL", "LR", "GenSymbol", "GenWord", "Endomorphism",
    "make_generator", "apply", "compose", "power", "compose_word",
    "is_identity", "is_palindromic", "check_relation",
    "epa_relations", "epa_presentation", "parse_genword", "format_genword",
    "GeneratorError",
]


class GeneratorError(ValueError):
    pass


class Convention(enum.Enum):
    RL = "RL"
    LR = "LR"

    def __str__(self):
        return self.value


RL = Convention.RL
LR = Convention.LR

_KINDS = ("A", "sigma", "perm", "lambda", "rho")
_PAIR_KINDS = ("A", "lambda", "rho")


@dataclass(frozen=True)
class GenSymbol:
    kind: str
    i: int = 0
    j: int = 0
    perm: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise GeneratorError(f"unknown generator kind {self.kind!r}")
        if self.kind in _PAIR_KINDS and self.i == self.j:
            raise GeneratorError(f"{self.kind}({self.i},{self.j}) needs i != j")
        if self.kind == "perm" and sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise GeneratorError(f"{self.perm} is not a permutation")

    @classmethod
    def A(cls, i, j):
        return cls("A", i, j)

    @classmethod
    def sigma(cls, i):
        return cls("sigma", i)

    @classmethod
    def lam(cls, i, j):
        return cls("lambda", i, j)

    @classmethod
    def rho(cls, i, j):
        return cls("rho", i, j)

    @classmethod
    def permutation(cls, images):
        return cls("perm", perm=tuple(images))

    def validate(self, n: int) -> None:
        if self.kind == "perm":
            if sorted(self.perm) != list(range(1, n + 1)):
                raise GeneratorError(f"{self.perm} is not a permutation of 1..{n}")
            return
        idx = (self.i,) if self.kind == "sigma" else (self.i, self.j)
        if not all(1 <= x <= n for x in idx):
            raise GeneratorError(f"{self} has an index outside 1..{n}")

    def max_index(self) -> int:
        return len(self.perm) if self.kind == "perm" else max(self.i, self.j)

    def __str__(self):
        if self.kind == "perm":
            return "P(" + " ".join(map(str, self.perm)) + ")"
        if self.kind == "sigma":
            return f"s{self.i}"
        letter = {"A": "A", "lambda": "L", "rho": "R"}[self.kind]
        return f"{letter}{self.i}{self.j}"


@dataclass(frozen=True)
class GenWord:
    """Formal product of generator powers; factors are ``(GenSymbol, exponent)``."""

    rank: int
    factors: tuple = ()

    def __post_init__(self):
        for s, e in self.factors:
            s.validate(self.rank)
            if (e == 0) if isinstance(e, int) else (e.c0 == 0 and e.c1 == 0):
                raise GeneratorError(f"zero exponent on {s}")
            if isinstance(e, LinExpr) and s.kind not in _PAIR_KINDS:
                raise GeneratorError(f"symbolic exponent on {s}")

    def reverse(self) -> "GenWord":
        return GenWord(self.rank, tuple(reversed(self.factors)))

    def inverse(self) -> "GenWord":
        return GenWord(self.rank, tuple((s, -e) for s, e in reversed(self.factors)))

    def __mul__(self, other: "GenWord") -> "GenWord":
        if self.rank != other.rank:
            raise fw.RankMismatchError(f"rank {self.rank} != {other.rank}")
        return GenWord(self.rank, self.factors + other.factors)

    def evaluate(self, p: int) -> "GenWord":
        out = []
        for s, e in self.factors:
            v = e.value(p) if isinstance(e, LinExpr) else e
            if v:
                out.append((s, v))
        return GenWord(self.rank, tuple(out))

    def __str__(self):
        return format_genword(self)


@dataclass(frozen=True)
class Endomorphism:
    rank: int
    images: tuple

    @classmethod
    def identity(cls, n: int) -> "Endomorphism":
        return cls(n, tuple(Word.letter(i, n) for i in range(1, n + 1)))

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def evaluate(self, p: int) -> "Endomorphism":
        return Endomorphism(self.rank, tuple(fw.evaluate(im, p) for im in self.images))

    def __str__(self):
        return ", ".join(f"a{i}->{im}" for i, im in enumerate(self.images, start=1))


def _images(n: int, moved: int, image: Word) -> Endomorphism:
    ims = [Word.letter(x, n) for x in range(1, n + 1)]
    ims[moved - 1] = image
    return Endomorphism(n, tuple(ims))


def power(s: GenSymbol, e: Exponent, n: int) -> Endomorphism:
    """Closed-form ``s**e``; symbolic exponents are allowed for A, lambda and rho."""
    s.validate(n)
    e = fw.linear(e.c0, e.c1) if isinstance(e, LinExpr) else e
    if e == 0:
        return Endomorphism.identity(n)
    if s.kind in _PAIR_KINDS:
        i, j = s.i, s.j
        blocks = {"A": [(j, e), (i, 1), (j, e)],
                  "lambda": [(j, e), (i, 1)],
                  "rho": [(i, 1), (j, e)]}[s.kind]
        return _images(n, i, fw.reduce(blocks, n))
    if isinstance(e, LinExpr):
        raise GeneratorError(f"{s} admits integer exponents only")
    if s.kind == "sigma":
        if e % 2 == 0:
            return Endomorphism.identity(n)
        return _images(n, s.i, Word.letter(s.i, n, -1))
    # permutation: a_x -> a_{pi^e(x)}
    pi = list(range(1, n + 1))
    step = list(s.perm)
    if e < 0:
        inv = [0] * n
        for x, y in enumerate(step, start=1):
            inv[y - 1] = x
        step = inv
    for _ in range(abs(e)):
        pi = [step[y - 1] for y in pi]
    return Endomorphism(n, tuple(Word.letter(y, n) for y in pi))


def make_generator(s: GenSymbol, n: int) -> Endomorphism:
    return power(s, 1, n)


def apply(f: Endomorphism, w: Word) -> Word:
    if f.rank != w.rank:
        raise fw.RankMismatchError(f"endomorphism rank {f.rank} != word rank {w.rank}")
    return fw.substitute(w, f.images)


def compose(f: Endomorphism, g: Endomorphism, c: Convention = RL) -> Endomorphism:
    """RL: x -> f(g(x)).  LR: x -> g(f(x))."""
    if f.rank != g.rank:
        raise fw.RankMismatchError(f"rank {f.rank} != {g.rank}")
    outer, inner = (f, g) if c is RL else (g, f)
    return Endomorphism(f.rank, tuple(fw.substitute(im, outer.images) for im in inner.images))


def compose_word(gw: GenWord, c: Convention = RL) -> Endomorphism:
    result = Endomorphism.identity(gw.rank)
    for s, e in gw.factors:
        result = compose(result, power(s, e, gw.rank), c)
    return result


def is_identity(f: Endomorphism) -> bool:
    for im in f.images:
        if im.indeterminate:
            raise fw.IndeterminateReductionError(f"image {im} is indeterminate")
    return all(im.blocks == ((i, 1),) for i, im in enumerate(f.images, start=1))


def is_palindromic(f: Endomorphism) -> bool:
    return all(fw.is_palindrome(im) for im in f.images)


def check_relation(lhs: GenWord, rhs: GenWord, c: Convention = RL) -> bool:
    if lhs.rank != rhs.rank:
        raise fw.RankMismatchError(f"rank {lhs.rank} != {rhs.rank}")
    left, right = compose_word(lhs, c), compose_word(rhs, c)
    for im in left.images + right.images:
        if im.indeterminate:
            raise fw.IndeterminateReductionError(f"image {im} is indeterminate")
    return left.images == right.images


# --- presentation of the elementary palindromic subgroup ----------------------

def epa_relations(n: int) -> list:
    """All distinct-index instances of the three relation families.

    Returns ``(family, indices, lhs, rhs)`` tuples in a fixed order:
    ``comm-shared`` is [A_ik, A_jk] = 1, ``comm-disjoint`` is [A_ik, A_jl] = 1
    and ``triangle`` is A_ik A_jk A_ij = A_ij A_jk A_ik^-1.
    """
    if n < 3:
        raise GeneratorError("the relation families need n >= 3")
    A = GenSymbol.A
    ident = GenWord(n)
    out = []
    for i, j, k in permutations(range(1, n + 1), 3):
        lhs = GenWord(n, ((A(i, k), 1), (A(j, k), 1), (A(i, k), -1), (A(j, k), -1)))
        out.append(("comm-shared", (i, j, k), lhs, ident))
    for i, j, k, l in permutations(range(1, n + 1), 4):
        lhs = GenWord(n, ((A(i, k), 1), (A(j, l), 1), (A(i, k), -1), (A(j, l), -1)))
        out.append(("comm-disjoint", (i, j, k, l), lhs, ident))
    for i, j, k in permutations(range(1, n + 1), 3):
        lhs = GenWord(n, ((A(i, k), 1), (A(j, k), 1), (A(i, j), 1)))
        rhs = GenWord(n, ((A(i, j), 1), (A(j, k), 1), (A(i, k), -1)))
        out.append(("triangle", (i, j, k), lhs, rhs))
    return out


def epa_presentation(n: int):
    """Presentation with generators ``Aij`` (i != j) and one relator per relation instance."""
    from .dehn import Presentation

    names = tuple(f"A{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1) if i != j)
    index = {name: x for x, name in enumerate(names, start=1)}
    relators = []
    for _, _, lhs, rhs in epa_relations(n):
        blocks = [(index[f"A{s.i}{s.j}"], e) for s, e in (lhs * rhs.inverse()).factors]
        relators.append(fw.reduce(blocks, len(names)))
    return Presentation(names, tuple(relators))


# --- text syntax ----------------------------------------------------------------

_FACTOR = re.compile(r"P\([^()]*\)(?:\^(?:-?\d+|\([^()]*\)))?|\S+")
_PAIR = re.compile(r"^([ALR])(\d)(\d)$")
_SIGMA = re.compile(r"^s(\d+)$")
_PERM = re.compile(r"^P\(([^()]*)\)$")
_EXP = re.compile(r"^(.*?)(?:\^(?:(-?\d+)|\(([^()]*)\)))?$")


def _parse_symbol(head: str) -> GenSymbol:
    m = _PAIR.match(head)
    if m:
        kind = {"A": "A", "L": "lambda", "R": "rho"}[m.group(1)]
        return GenSymbol(kind, int(m.group(2)), int(m.group(3)))
    m = _SIGMA.match(head)
    if m:
        return GenSymbol.sigma(int(m.group(1)))
    m = _PERM.match(head)
    if m:
        try:
            return GenSymbol.permutation(int(x) for x in m.group(1).split())
        except ValueError:
            raise fw.WordSyntaxError(f"bad permutation {head!r}") from None
    raise fw.WordSyntaxError(f"bad generator token {head!r}")


def parse_genword(text: str, n: int | None = None) -> GenWord:
    """Parse ``A12 A12^-1 A12^(p) s1 L12 R12 P(2 1 3)``.

    Pair generators take single-digit indices.  The rank defaults to the
    largest index that occurs.
    """
    factors = []
    for tok in _FACTOR.findall(text):
        if tok == "e":
            continue
        head, k, lin = _EXP.match(tok).groups()
        sym = _parse_symbol(head)
        if k is not None:
            e = int(k)
            if e == 0:
                raise fw.WordSyntaxError(f"zero exponent in {tok!r}")
        elif lin is not None:
            e = fw.parse_exponent(lin)
        else:
            e = 1
        factors.append((sym, e))
    if n is None:
        n = max([s.max_index() for s, _ in factors], default=1)
    try:
        return GenWord(n, tuple(factors))
    except GeneratorError as exc:
        raise fw.WordSyntaxError(str(exc)) from None


def format_genword(gw: GenWord) -> str:
    if not gw.factors:
        return "e"
    parts = []
    for s, e in gw.factors:
        parts.append(str(s) if e == 1 else f"{s}^{fw.format_exponent(e)}")
    return " ".join(parts)
