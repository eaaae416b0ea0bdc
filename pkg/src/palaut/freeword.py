"""Freely reduced words over a finite basis, stored as run-length blocks.

A word is a tuple of ``Block(gen, exp)`` pairs with 1-based generator indices.
Exponents are plain integers or :class:`LinExpr` values ``c0 + c1*p`` for a
single integer parameter ``p >= 1``.  Adjacent blocks never share a generator.

Parametric reduction merges same-generator neighbours by adding exponents.  A
merged exponent that is identically zero deletes the block.  If a surviving
exponent vanishes for *some* ``p >= 1`` the word is flagged
``indeterminate``: its block structure is no longer reduced for every value of
the parameter, and operations that depend on reducedness refuse it.

Text syntax::

    a1 a2^-3 a2^(p) a1^(2p-1)      # `e` alone is the empty word
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union

__all__ = [
    "LinExpr", "P", "Block", "Word", "Exponent",
    "WordError", "WordSyntaxError", "RankMismatchError",
    "IndeterminateReductionError", "UnsupportedPowerError",
    "linear", "nonzero_for_all_p", "reduce", "multiply", "invert", "reverse",
    "is_palindrome", "substitute", "power", "evaluate",
    "parse_word", "format_word", "format_exponent", "parse_exponent",
    "default_names",
]


class WordError(ValueError):
    pass


class WordSyntaxError(WordError):
    pass


class RankMismatchError(WordError):
    pass


class IndeterminateReductionError(ArithmeticError):
    """A parametric word whose reduced form depends on the value of p."""


class UnsupportedPowerError(WordError):
    """A symbolic power that has no block closed form (e.g. ``(a1 a2)^p``)."""


@dataclass(frozen=True)
class LinExpr:
    """``c0 + c1*p``.  Use :func:`linear` to build normalized exponents."""

    c0: int
    c1: int

    def value(self, p: int) -> int:
        return self.c0 + self.c1 * p

    def __add__(self, other):
        if isinstance(other, LinExpr):
            return linear(self.c0 + other.c0, self.c1 + other.c1)
        if isinstance(other, int):
            return linear(self.c0 + other, self.c1)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return linear(-self.c0, -self.c1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return linear(self.c0 * other, self.c1 * other)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self):
        if self.c1 == 1:
            s = "p"
        elif self.c1 == -1:
            s = "-p"
        else:
            s = f"{self.c1}p"
        if self.c0 > 0:
            s += f"+{self.c0}"
        elif self.c0 < 0:
            s += f"-{-self.c0}"
        return s


Exponent = Union[int, LinExpr]

P = LinExpr(0, 1)


def linear(c0: int, c1: int = 0) -> Exponent:
    """Normalized exponent: a plain int when the p-coefficient vanishes."""
    if c1 == 0:
        return int(c0)
    return LinExpr(int(c0), int(c1))


def _norm(e) -> Exponent:
    if isinstance(e, LinExpr):
        return linear(e.c0, e.c1)
    if isinstance(e, bool) or not isinstance(e, int):
        raise TypeError(f"exponent must be int or LinExpr, got {e!r}")
    return e


def _is_zero(e: Exponent) -> bool:
    return e == 0 if isinstance(e, int) else (e.c0 == 0 and e.c1 == 0)


def nonzero_for_all_p(e: Exponent) -> bool:
    """True iff the exponent is nonzero at every integer p >= 1.

    >>> nonzero_for_all_p(P), nonzero_for_all_p(P - 2), nonzero_for_all_p(1 - P)
    (True, False, False)
    """
    if isinstance(e, int):
        return e != 0
    if e.c1 == 0:
        return e.c0 != 0
    if (-e.c0) % e.c1 != 0:
        return True
    return (-e.c0) // e.c1 < 1


def _value(e: Exponent, p: int) -> int:
    return e if isinstance(e, int) else e.value(p)


class Block(NamedTuple):
    gen: int
    exp: Exponent


@dataclass(frozen=True)
class Word:
    """Immutable reduced word.  Build with :func:`reduce` or :func:`parse_word`."""

    rank: int
    blocks: tuple = ()
    indeterminate: bool = False

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank)

    @classmethod
    def letter(cls, gen: int, rank: int, exp: Exponent = 1) -> "Word":
        return reduce([(gen, exp)], rank)

    @property
    def is_parametric(self) -> bool:
        return any(isinstance(b.exp, LinExpr) for b in self.blocks)

    def is_empty(self) -> bool:
        return not self.blocks

    def __len__(self) -> int:
        if self.is_parametric:
            raise TypeError("length of a parametric word depends on p; use evaluate()")
        return sum(abs(b.exp) for b in self.blocks)

    def letters(self) -> list:
        """Signed letter list (concrete words only)."""
        if self.is_parametric:
            raise TypeError("parametric word has no fixed letter sequence")
        out = []
        for g, e in self.blocks:
            out.extend([g if e > 0 else -g] * abs(e))
        return out

    def exponent_sums(self) -> tuple:
        """Exponent sum per generator (concrete words only)."""
        sums = [0] * self.rank
        for g, e in self.blocks:
            if isinstance(e, LinExpr):
                raise TypeError("exponent sums of a parametric word depend on p")
            sums[g - 1] += e
        return tuple(sums)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def inverse(self) -> "Word":
        return invert(self)

    def __pow__(self, e) -> "Word":
        return power(self, e)

    def evaluate(self, p: int) -> "Word":
        return evaluate(self, p)

    def __str__(self) -> str:
        return format_word(self)


def _check_consumable(*words: Word) -> None:
    for w in words:
        if w.indeterminate:
            raise IndeterminateReductionError(
                f"word {format_word(w)} has a block exponent that vanishes for some p >= 1")


def _items_to_blocks(raw, rank: int):
    for item in raw:
        if isinstance(item, tuple):
            g, e = item
            e = _norm(e)
        else:
            if isinstance(item, bool) or not isinstance(item, int) or item == 0:
                raise WordError(f"bad letter {item!r}")
            g, e = abs(item), (1 if item > 0 else -1)
        if not 1 <= g <= rank:
            raise WordError(f"generator index {g} outside 1..{rank}")
        yield g, e


def _reduce_blocks(blocks: Iterable, rank: int) -> Word:
    out: list = []
    for g, e in blocks:
        if _is_zero(e):
            continue
        if out and out[-1][0] == g:
            s = _norm(out[-1][1] + e)
            out.pop()
            if not _is_zero(s):
                out.append(Block(g, s))
        else:
            out.append(Block(g, e))
    flag = not all(nonzero_for_all_p(b.exp) for b in out)
    return Word(rank, tuple(out), flag)


def reduce(raw: Iterable, rank: int) -> Word:
    """Free reduction of signed letters (``±g``) and/or ``(gen, exp)`` blocks.

    >>> str(reduce([1, -1], 2)), str(reduce([(1, 2), (1, 3)], 2))
    ('e', 'a1^5')
    """
    return _reduce_blocks(_items_to_blocks(raw, rank), rank)


def multiply(w1: Word, w2: Word) -> Word:
    if w1.rank != w2.rank:
        raise RankMismatchError(f"rank {w1.rank} != {w2.rank}")
    _check_consumable(w1, w2)
    return _reduce_blocks(w1.blocks + w2.blocks, w1.rank)


def invert(w: Word) -> Word:
    return Word(w.rank, tuple(Block(g, -e) for g, e in reversed(w.blocks)), w.indeterminate)


def reverse(w: Word) -> Word:
    """Blocks in reverse order with exponents unchanged (the palindrome mirror)."""
    return Word(w.rank, tuple(reversed(w.blocks)), w.indeterminate)


def is_palindrome(w: Word) -> bool:
    _check_consumable(w)
    return w.blocks == w.blocks[::-1]


def _cyclic_split(u: Word):
    """Return (conj, core) with u = conj * core * conj^-1 and core cyclically reduced."""
    conj: list = []
    core = list(u.blocks)
    while len(core) >= 2 and core[0].gen == core[-1].gen:
        g, y = core[-1]
        conj.append((g, -y))
        merged = _reduce_blocks([(g, _norm(core[0].exp + y))] + core[1:-1], u.rank)
        core = list(merged.blocks)
    return _reduce_blocks(conj, u.rank), core


def power(u: Word, e: Exponent) -> Word:
    """``u**e``.  Symbolic exponents need u to be a conjugate of a single block."""
    e = _norm(e)
    _check_consumable(u)
    if isinstance(e, int):
        blocks = u.blocks if e >= 0 else invert(u).blocks
        return _reduce_blocks(blocks * abs(e), u.rank)
    if u.is_empty():
        return u
    conj, core = _cyclic_split(u)
    if len(core) != 1:
        raise UnsupportedPowerError(f"({format_word(u)})^({e}) has no block closed form")
    g, m = core[0]
    if isinstance(m, LinExpr):
        raise UnsupportedPowerError(f"exponent ({m})*({e}) is not linear in p")
    return _reduce_blocks(conj.blocks + ((g, e * m),) + invert(conj).blocks, u.rank)


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """Replace every block ``a_i^e`` of w by ``images[i-1]^e`` and reduce."""
    if len(images) != w.rank:
        raise RankMismatchError(f"{len(images)} images for a rank-{w.rank} word")
    ranks = {im.rank for im in images}
    if len(ranks) > 1:
        raise RankMismatchError(f"images have mixed ranks {sorted(ranks)}")
    _check_consumable(w, *images)
    rank = images[0].rank if images else w.rank
    blocks: list = []
    for g, e in w.blocks:
        blocks.extend(power(images[g - 1], e).blocks)
    return _reduce_blocks(blocks, rank)


def evaluate(w: Word, p: int) -> Word:
    """Ground every symbolic exponent at ``p`` and reduce.  Flagged words are accepted."""
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise ValueError(f"p must be an integer >= 1, got {p!r}")
    return _reduce_blocks(((g, _value(e, p)) for g, e in w.blocks), w.rank)


# --- text syntax -------------------------------------------------------------

_NAME = r"[A-Za-z][A-Za-z0-9_]*"
_TOKEN = re.compile(rf"^({_NAME})(?:\^(?:(-?\d+)|\(([^()]*)\)))?$")
_TERM = re.compile(r"([+-]?)(\d*)(p?)")


def default_names(rank: int) -> tuple:
    return tuple(f"a{i}" for i in range(1, rank + 1))


def parse_exponent(text: str) -> Exponent:
    """Parse the inside of ``^( ... )``: a linear form in p such as ``2p-1``."""
    s = text.replace(" ", "")
    if not s:
        raise WordSyntaxError("empty exponent")
    c0 = c1 = 0
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, digits, var = m.groups()
        if m.end() == pos or (not digits and not var) or (pos > 0 and not sign):
            raise WordSyntaxError(f"bad exponent {text!r}")
        k = int(digits) if digits else 1
        if sign == "-":
            k = -k
        if var:
            c1 += k
        else:
            c0 += k
        pos = m.end()
    return linear(c0, c1)


def format_exponent(e: Exponent) -> str:
    if isinstance(e, LinExpr):
        return f"({e})"
    return str(e)


def _infer_rank(tokens) -> int:
    rank = 0
    for tok in tokens:
        m = _TOKEN.match(tok)
        if m and re.fullmatch(r"a\d+", m.group(1)):
            rank = max(rank, int(m.group(1)[1:]))
    return max(rank, 1)


def parse_word(text: str, rank: int | None = None, names: Sequence[str] | None = None,
               *, raw: bool = False):
    """Parse the whitespace-separated token syntax.

    Without ``names`` the generators are ``a1..a<rank>``; a missing rank is
    inferred from the largest index.  ``raw=True`` returns the unreduced block
    list instead of a :class:`Word`.
    """
    tokens = text.split()
    if names is None:
        if rank is None:
            rank = _infer_rank(tokens)
        names = default_names(rank)
    else:
        names = tuple(names)
        if rank is not None and rank != len(names):
            raise RankMismatchError(f"rank {rank} != {len(names)} names")
        rank = len(names)
    index = {name: i for i, name in enumerate(names, start=1)}
    blocks = []
    for tok in tokens:
        if tok == "e" and "e" not in index:
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise WordSyntaxError(f"bad token {tok!r}")
        name, k, lin = m.groups()
        if name not in index:
            raise WordSyntaxError(f"unknown generator {name!r}")
        if k is not None:
            e = int(k)
            if e == 0:
                raise WordSyntaxError(f"zero exponent in {tok!r}")
        elif lin is not None:
            e = parse_exponent(lin)
            if _is_zero(e):
                raise WordSyntaxError(f"identically zero exponent in {tok!r}")
        else:
            e = 1
        blocks.append((index[name], e))
    if raw:
        return blocks
    return _reduce_blocks(blocks, rank)


def format_word(w: Word, names: Sequence[str] | None = None) -> str:
    if not w.blocks:
        return "e"
    names = default_names(w.rank) if names is None else names
    parts = []
    for g, e in w.blocks:
        parts.append(names[g - 1] if e == 1 else f"{names[g - 1]}^{format_exponent(e)}")
    return " ".join(parts)
