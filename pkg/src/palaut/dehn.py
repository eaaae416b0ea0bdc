"""Exact van Kampen area and Dehn-function profiles at desk scale.

Two independent searches compute ``Area(w)``, the least number of conjugated
relators whose product freely equals ``w``:

``method="fill"`` (default)
    Depth-bounded search over cyclically reduced words up to rotation and
    inversion.  In a minimal diagram the boundary edge at position 0 either
    lies on a 2-cell, which can be peeled off (replace its boundary arc
    ``alpha`` by the complement ``beta^-1``), or on a spur, which splits the
    word as ``l u l^-1 v`` with ``Area = Area(u) + Area(v)``.  Trying every
    such move with iterative deepening on the cost gives the exact minimum.

``method="bfs"``
    Breadth-first search over freely reduced based words.  A move inserts a
    cyclic permutation of a relator or its inverse at any position and
    reduces.

Both reconstruct an explicit certificate, and every certificate is checked by
:func:`check_certificate` before it is returned.  Words longer than the
budget's ``max_word_len`` are pruned; when pruning could have hidden a shorter
filling the status is ``EXACT_WITHIN_LENGTH_BOUND`` instead of ``EXACT``.

When every relator has zero exponent sum in every generator, a word with a
nonzero exponent-sum vector is reported as definitely not null-homotopic.
"""

from __future__ import annotations

import enum
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple, Sequence

from . import freeword as fw
from .freeword import Word

__all__ = [
    "Presentation", "CertEntry", "SearchBudget", "AreaStatus", "AreaResult",
    "NullHomotopy", "PresentationError",
    "load_presentation", "dump_presentation", "load_certificate", "dump_certificate",
    "area", "check_certificate", "dehn_profile", "is_null_homotopic",
    "profile_to_csv",
]

HEADER = "# palaut-lab v1"


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    names: tuple
    relators: tuple = ()

    def __post_init__(self):
        if "e" in self.names:
            raise PresentationError("'e' is reserved for the empty word")
        if len(set(self.names)) != len(self.names):
            raise PresentationError("duplicate generator names")
        for r in self.relators:
            if r.rank != len(self.names):
                raise PresentationError("relator rank does not match the generators")
            if r.is_parametric:
                raise PresentationError("relators must have integer exponents")
            if r.is_empty():
                raise PresentationError("empty relator")
            if len(r.blocks) > 1 and r.blocks[0].gen == r.blocks[-1].gen:
                raise PresentationError(f"relator {self.format(r)} is not cyclically reduced")

    @property
    def rank(self) -> int:
        return len(self.names)

    def word(self, text: str) -> Word:
        return fw.parse_word(text, names=self.names)

    def format(self, w: Word) -> str:
        return fw.format_word(w, self.names)


class CertEntry(NamedTuple):
    conj: Word
    rel: int
    sign: int


@dataclass(frozen=True)
class SearchBudget:
    max_word_len: int | None = None
    max_states: int = 10**7
    max_area: int = 64

    def __post_init__(self):
        for name in ("max_word_len", "max_states", "max_area"):
            v = getattr(self, name)
            if v is not None and (not isinstance(v, int) or v <= 0):
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    def word_len(self, w_len: int, pres: Presentation) -> int:
        if self.max_word_len is not None:
            return self.max_word_len
        longest = max((len(r) for r in pres.relators), default=0)
        return w_len + 2 * longest


class AreaStatus(enum.Enum):
    EXACT = "exact"
    EXACT_WITHIN_LENGTH_BOUND = "exact-within-length-bound"
    NOT_NULL_HOMOTOPIC = "not-null-homotopic"
    NOT_FOUND_WITHIN_BUDGET = "not-null-homotopic-within-budget"
    BUDGET_EXHAUSTED = "budget-exhausted"

    def __str__(self):
        return self.value


@dataclass
class AreaResult:
    status: AreaStatus
    area: int | None = None
    certificate: list | None = None
    states: int = 0
    upper_bound: int | None = None
    method: str = "fill"

    @property
    def found(self) -> bool:
        return self.area is not None


# --- parsing and formatting ------------------------------------------------------

def _cyclically_reduce_word(w: Word) -> Word:
    blocks = list(w.blocks)
    while len(blocks) >= 2 and blocks[0].gen == blocks[-1].gen:
        g = blocks[0].gen
        merged = fw.reduce([(g, blocks[0].exp + blocks[-1].exp)] + blocks[1:-1], w.rank)
        blocks = list(merged.blocks)
    return fw.reduce(blocks, w.rank)


def load_presentation(text: str) -> Presentation:
    """Parse ``gens: a b`` followed by ``rel: <word>`` lines; ``#`` starts a comment line."""
    names = None
    rel_texts = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        key, sep, rest = s.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rel"):
            raise PresentationError(f"line {lineno}: expected 'gens:' or 'rel:'")
        if key == "gens":
            if names is not None:
                raise PresentationError(f"line {lineno}: duplicate 'gens:' line")
            names = tuple(rest.split())
            if not names:
                raise PresentationError(f"line {lineno}: no generators")
        else:
            if names is None:
                raise PresentationError(f"line {lineno}: 'rel:' before 'gens:'")
            rel_texts.append((lineno, rest))
    if names is None:
        raise PresentationError("missing 'gens:' line")
    relators = []
    for lineno, rest in rel_texts:
        try:
            w = fw.parse_word(rest, names=names)
        except fw.WordError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from None
        if w.is_parametric:
            raise PresentationError(f"line {lineno}: relators must have integer exponents")
        c = _cyclically_reduce_word(w)
        if c.is_empty():
            raise PresentationError(f"line {lineno}: relator reduces to the empty word")
        if c != w:
            warnings.warn(f"line {lineno}: relator cyclically reduced to "
                          f"{fw.format_word(c, names)}", stacklevel=2)
        relators.append(c)
    return Presentation(names, tuple(relators))


def dump_presentation(pres: Presentation) -> str:
    lines = ["gens: " + " ".join(pres.names)]
    lines += ["rel: " + pres.format(r) for r in pres.relators]
    return "\n".join(lines) + "\n"


def dump_certificate(pres: Presentation, cert: Sequence[CertEntry]) -> str:
    """One line per factor: ``r<index, 1-based> <+1|-1> <conjugator word>``."""
    lines = [HEADER]
    for g, idx, sign in cert:
        lines.append(f"r{idx + 1} {'+1' if sign > 0 else '-1'} {pres.format(g)}")
    return "\n".join(lines) + "\n"


def load_certificate(text: str, pres: Presentation) -> list:
    cert = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split(None, 2)
        if len(parts) < 2 or not parts[0].startswith("r") or parts[1] not in ("+1", "-1"):
            raise PresentationError(f"line {lineno}: expected 'r<i> <+1|-1> <word>'")
        try:
            idx = int(parts[0][1:]) - 1
        except ValueError:
            raise PresentationError(f"line {lineno}: bad relator index {parts[0]!r}") from None
        conj = pres.word(parts[2] if len(parts) == 3 else "e")
        cert.append(CertEntry(conj, idx, int(parts[1])))
    return cert


# --- letter-tuple helpers --------------------------------------------------------------

def _red(t) -> tuple:
    out = []
    for x in t:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _inv(t) -> tuple:
    return tuple(-x for x in reversed(t))


def _cyc(t: tuple):
    """t reduced -> (h, core) with t = h core h^-1 and core cyclically reduced."""
    k = 0
    while 2 * k + 1 < len(t) and t[k] == -t[len(t) - 1 - k]:
        k += 1
    return t[:k], t[k:len(t) - k]


def _canon(core: tuple):
    """Least rotation of core or its inverse: (K, inverted, s) with
    (inv(core) if inverted else core) == s K s^-1."""
    best = None
    for inverted, base in ((False, core), (True, _inv(core))):
        for r in range(max(len(base), 1)):
            cand = base[r:] + base[:r]
            if best is None or cand < best[0]:
                best = (cand, inverted, base[:r])
    return best


def _to_word(t, rank: int) -> Word:
    return fw.reduce(t, rank)


def _conj_cert(cert, h):
    if not h:
        return list(cert)
    return [(_red(h + g), idx, s) for g, idx, s in cert]


def _invert_cert(cert):
    return [(g, idx, -s) for g, idx, s in reversed(cert)]


class _CyclicWord(NamedTuple):
    letters: tuple
    rel: int
    sign: int
    conj: tuple   # letters == conj r^sign conj^-1 as group elements


def _cyclic_words(relators: Sequence[tuple]) -> list:
    seen = set()
    out = []
    for idx, r in enumerate(relators):
        for sign, base in ((1, r), (-1, _inv(r))):
            for q in range(len(base)):
                c = base[q:] + base[:q]
                if c not in seen:
                    seen.add(c)
                    out.append(_CyclicWord(c, idx, sign, _inv(base[:q])))
    return out


class _BudgetExceeded(Exception):
    pass


def _zero_sum(relators: Sequence[tuple], rank: int) -> bool:
    for r in relators:
        sums = [0] * (rank + 1)
        for x in r:
            sums[abs(x)] += 1 if x > 0 else -1
        if any(sums):
            return False
    return True


def _sums_vanish(t) -> bool:
    sums = {}
    for x in t:
        sums[abs(x)] = sums.get(abs(x), 0) + (1 if x > 0 else -1)
    return not any(sums.values())


# --- filling search ------------------------------------------------------------

class _FillSearch:
    def __init__(self, relators, max_len: int, max_states: int, zero_sum: bool):
        self.cwords = _cyclic_words(relators)
        self.by_letter: dict = {}
        for cw in self.cwords:
            for b, x in enumerate(cw.letters):
                self.by_letter.setdefault(x, []).append((cw, b))
        self.max_len = max_len
        self.longest = max((len(r) for r in relators), default=1)
        self.max_states = max_states
        self.zero_sum = zero_sum
        self.exact: dict = {}
        self.lower: dict = {}
        self.states = 0
        self.pruned = False
        self.bound_hit = False

    def possible(self, t) -> bool:
        return not self.zero_sum or _sums_vanish(t)

    def fill_word(self, t: tuple, bound: int):
        _, core = _cyc(t)
        if not core:
            return 0
        return self.fill(_canon(core)[0], bound)

    def fill(self, K: tuple, bound: int):
        if not K:
            return 0
        hit = self.exact.get(K)
        if hit is not None:
            return hit[0] if hit[0] <= bound else None
        # each 2-cell contributes at most `longest` boundary edges
        need = max(self.lower.get(K, 0), -(-len(K) // self.longest))
        if need > bound:
            self.bound_hit = True
            self.lower[K] = need
            return None
        self.states += 1
        if self.states > self.max_states:
            raise _BudgetExceeded
        n = len(K)
        best = None
        plan = None
        first = K[0]
        for m in range(2, n):
            if K[m] != -first:
                continue
            u, v = K[1:m], K[m + 1:]
            if not (self.possible(u) and self.possible(v)):
                continue
            cur = bound if best is None else best - 1
            au = self.fill_word(u, cur - 1)
            if au is None:
                continue
            av = self.fill_word(v, cur - au)
            if av is None:
                continue
            best, plan = au + av, ("split", m)
        for cw, b in self.by_letter.get(first, ()):
            c = cw.letters
            L = len(c)
            if b >= n or any(c[b - 1 - t] != K[n - 1 - t] for t in range(b)):
                continue
            a = 1
            while a + b <= min(L, n) and c[b + a - 1] == K[a - 1]:
                cur = (bound if best is None else best - 1) - 1
                if cur < 0:
                    break
                child = _red(_inv(c[a + b:]) + K[a:n - b])
                if len(child) > self.longest * cur:
                    self.bound_hit = True
                elif len(child) > self.max_len:
                    self.pruned = True
                elif self.possible(child):
                    r = self.fill_word(child, cur)
                    if r is not None:
                        best, plan = r + 1, ("face", cw, a, b)
                a += 1
        if best is None:
            self.lower[K] = bound + 1
            return None
        self.exact[K] = (best, plan)
        return best

    # certificate reconstruction; letters tuples throughout
    def cert_word(self, t: tuple) -> list:
        h, core = _cyc(t)
        if not core:
            return []
        K, inverted, s = _canon(core)
        cert = _conj_cert(self.cert_cyclic(K), s)
        if inverted:
            cert = _invert_cert(cert)
        return _conj_cert(cert, h)

    def cert_cyclic(self, K: tuple) -> list:
        _, plan = self.exact[K]
        if plan[0] == "split":
            m = plan[1]
            return _conj_cert(self.cert_word(K[1:m]), K[:1]) + self.cert_word(K[m + 1:])
        _, cw, a, b = plan
        n = len(K)
        child = _red(_inv(cw.letters[a + b:]) + K[a:n - b])
        cert = [(cw.conj, cw.rel, cw.sign)] + self.cert_word(child)
        return cert if b == 0 else _conj_cert(cert, K[:n - b])


def _insert(x: tuple, pos: int, c: tuple) -> tuple:
    """Reduced form of x[:pos] + c + x[pos:] for reduced x and c."""
    left = list(x[:pos])
    mid = list(c)
    right = x[pos:]
    i = 0
    while mid and i < len(right) and mid[-1] == -right[i]:
        mid.pop()
        i += 1
    while left and mid and left[-1] == -mid[0]:
        left.pop()
        mid.pop(0)
    if mid:
        return tuple(left) + tuple(mid) + right[i:]
    return _red(tuple(left) + right[i:])


def _bfs_search(w: tuple, relators, max_len: int, budget: SearchBudget):
    cwords = _cyclic_words(relators)
    parents = {w: None}
    frontier = [w]
    depth = 0
    min_pruned = math.inf
    while frontier:
        if depth >= budget.max_area:
            return AreaResult(AreaStatus.BUDGET_EXHAUSTED, states=len(parents), method="bfs")
        nxt = []
        for x in frontier:
            for pos in range(len(x) + 1):
                for cw in cwords:
                    y = _insert(x, pos, cw.letters)
                    if y in parents:
                        continue
                    if len(y) > max_len:
                        min_pruned = min(min_pruned, depth + 1)
                        continue
                    parents[y] = (x, pos, cw)
                    if len(parents) > budget.max_states:
                        return AreaResult(AreaStatus.BUDGET_EXHAUSTED, states=len(parents),
                                          method="bfs")
                    if not y:
                        d = depth + 1
                        cert = []
                        node = y
                        while parents[node] is not None:
                            px, ppos, pcw = parents[node]
                            cert.append((_red(px[:ppos] + pcw.conj), pcw.rel, -pcw.sign))
                            node = px
                        cert.reverse()
                        status = (AreaStatus.EXACT if min_pruned >= d - 1
                                  else AreaStatus.EXACT_WITHIN_LENGTH_BOUND)
                        return AreaResult(status, d, cert, len(parents), d, "bfs")
                    nxt.append(y)
        frontier = nxt
        depth += 1
    status = AreaStatus.NOT_NULL_HOMOTOPIC if min_pruned == math.inf else AreaStatus.NOT_FOUND_WITHIN_BUDGET
    return AreaResult(status, states=len(parents), method="bfs")


def area(pres: Presentation, w: Word, budget: SearchBudget | None = None,
         method: str = "fill") -> AreaResult:
    """Least number of relator conjugates whose product freely equals ``w``."""
    budget = budget or SearchBudget()
    if w.rank != pres.rank:
        raise fw.RankMismatchError(f"word rank {w.rank} != presentation rank {pres.rank}")
    if w.indeterminate or w.is_parametric:
        raise ValueError("area needs a concrete word")
    t = tuple(w.letters())
    relators = [tuple(r.letters()) for r in pres.relators]
    max_len = budget.word_len(len(t), pres)
    if not t:
        return AreaResult(AreaStatus.EXACT, 0, [], 0, 0, method)
    if _zero_sum(relators, pres.rank) and not _sums_vanish(t):
        return AreaResult(AreaStatus.NOT_NULL_HOMOTOPIC, method=method)
    if method == "bfs":
        result = _bfs_search(t, relators, max_len, budget)
    elif method == "fill":
        result = _fill_area(t, relators, max_len, budget, _zero_sum(relators, pres.rank))
    else:
        raise ValueError(f"unknown method {method!r}")
    if result.certificate is not None:
        result.certificate = [CertEntry(_to_word(g, pres.rank), idx, s)
                              for g, idx, s in result.certificate]
        if not check_certificate(pres, w, result.certificate):
            raise AssertionError("reconstructed certificate failed validation")
    return result


def _fill_area(t, relators, max_len, budget, zero_sum) -> AreaResult:
    search = _FillSearch(relators, max_len, budget.max_states, zero_sum)
    try:
        for bound in range(1, budget.max_area + 1):
            search.bound_hit = False
            d = search.fill_word(t, bound)
            if d is not None:
                status = AreaStatus.EXACT_WITHIN_LENGTH_BOUND if search.pruned else AreaStatus.EXACT
                return AreaResult(status, d, search.cert_word(t), search.states, d)
            if not search.bound_hit:
                status = (AreaStatus.NOT_FOUND_WITHIN_BUDGET if search.pruned
                          else AreaStatus.NOT_NULL_HOMOTOPIC)
                return AreaResult(status, states=search.states)
    except _BudgetExceeded:
        pass
    return AreaResult(AreaStatus.BUDGET_EXHAUSTED, states=search.states)


def check_certificate(pres: Presentation, w: Word, cert: Sequence) -> bool:
    """True iff the product of ``conj * r^sign * conj^-1`` over ``cert`` freely equals ``w``."""
    out: tuple = ()
    rels = [tuple(r.letters()) for r in pres.relators]
    for g, idx, sign in cert:
        if not 0 <= idx < len(rels):
            raise IndexError(f"relator index {idx} out of range")
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign!r}")
        g = tuple(g.letters()) if isinstance(g, Word) else tuple(g)
        r = rels[idx] if sign == 1 else _inv(rels[idx])
        out = _red(out + g + r + _inv(g))
    return out == tuple(w.letters())


class NullHomotopy(NamedTuple):
    answer: bool | None
    result: AreaResult


def is_null_homotopic(pres: Presentation, w: Word, budget: SearchBudget | None = None) -> NullHomotopy:
    """``True`` with a certificate, ``False`` when definitely not, ``None`` when undecided."""
    res = area(pres, w, budget)
    if res.found:
        return NullHomotopy(True, res)
    if res.status is AreaStatus.NOT_NULL_HOMOTOPIC:
        return NullHomotopy(False, res)
    return NullHomotopy(None, res)


# --- Dehn profile ---------------------------------------------------------------

def _reduced_words(rank: int, length: int):
    letters = [x for g in range(1, rank + 1) for x in (g, -g)]
    if length == 0:
        yield ()
        return
    for t in product(letters, repeat=length):
        if all(t[q] != -t[q + 1] for q in range(length - 1)):
            yield t


def _profile_chunk(args):
    pres, words, budget = args
    out = []
    for t in words:
        res = area(pres, fw.reduce(t, pres.rank), budget)
        out.append((res.status, res.area))
    return out


def dehn_profile(pres: Presentation, nmax: int, budget: SearchBudget | None = None,
                 threads: int = 1) -> list:
    """Rows ``(n, delta, flag)`` for n = 0..nmax.

    ``delta`` is the largest area among null-homotopic reduced words of length
    at most n (0 when there are none).  ``flag`` is ``exact`` or a ``+``-joined
    subset of ``lower-bound`` (some word undecided within budget) and
    ``length-bounded`` (some area is only minimal within the length bound).
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    budget = budget or SearchBudget()
    rows = []
    delta = 0
    lower = bounded = False
    for n in range(nmax + 1):
        words = list(_reduced_words(pres.rank, n))
        if threads > 1 and len(words) > 1:
            size = math.ceil(len(words) / threads)
            chunks = [(pres, words[q:q + size], budget) for q in range(0, len(words), size)]
            with ProcessPoolExecutor(max_workers=threads) as ex:
                results = [r for part in ex.map(_profile_chunk, chunks) for r in part]
        else:
            results = _profile_chunk((pres, words, budget))
        for status, a in results:
            if a is not None:
                delta = max(delta, a)
                if status is AreaStatus.EXACT_WITHIN_LENGTH_BOUND:
                    bounded = True
            elif status is not AreaStatus.NOT_NULL_HOMOTOPIC:
                lower = True
        flags = [f for f, on in (("lower-bound", lower), ("length-bounded", bounded)) if on]
        rows.append((n, delta, "+".join(flags) or "exact"))
    return rows


def profile_to_csv(rows) -> str:
    lines = [HEADER, "n,delta,flag"]
    lines += [f"{n},{d},{flag}" for n, d, flag in rows]
    return "\n".join(lines) + "\n"
