"""The language of the shift: admissibility, suffix statistics, enumeration.

A finite digit word is admissible exactly when every suffix lies
lexicographically between the equal-length prefixes of the two boundary
expansions a and b. The suffix statistics k1/k2 (longest suffix equal to
a prefix of a, resp. of b) drive the canonical suffix decomposition and
name the follower-set vertex [k1, k2].
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError, InadmissibleWordError
from .expansion import Boundary, Params, Word, boundary


class SuffixTag(enum.Enum):
    """Which boundary the canonical suffix follows (EPS when neither)."""

    EPS = "eps"
    A = "a"
    B = "b"


@dataclass(frozen=True)
class SuffixDecomposition:
    """Unique split w = head + suffix with the suffix a boundary prefix.

    ``tag`` is A when k1 > k2 (suffix = first k1 digits of a), B when
    k2 > k1 (suffix = first k2 digits of b), and EPS when k1 = k2 = 0.
    """

    head: Word
    suffix: Word
    tag: SuffixTag
    k1: int
    k2: int


class BoundaryStream:
    """Read-only 0-based view of one boundary expansion, for lex_compare."""

    __slots__ = ("_bd", "_which")

    def __init__(self, bd: Boundary, which: str) -> None:
        if which not in ("a", "b"):
            raise DomainError(f"unknown boundary {which!r}")
        self._bd = bd
        self._which = which

    def __getitem__(self, i: int) -> int:
        if self._which == "a":
            return self._bd.a_at(i + 1)
        return self._bd.b_at(i + 1)


def stream_a(p: Params) -> BoundaryStream:
    return BoundaryStream(boundary(p), "a")


def stream_b(p: Params) -> BoundaryStream:
    return BoundaryStream(boundary(p), "b")


def lex_compare(x, y, length: int) -> int:
    """Strict lexicographic comparison of the first ``length`` digits.

    Returns -1, 0 or +1. Both arguments may be finite words or boundary
    streams; they only need to support 0-based digit indexing up to
    ``length`` digits.

    >>> lex_compare((0, 1), (0, 1), 2)
    0
    >>> lex_compare((0, 0), (0, 1), 2)
    -1
    """
    for i in range(length):
        xi, yi = x[i], y[i]
        if xi != yi:
            return -1 if xi < yi else 1
    return 0


def _check_digits(p: Params, w: Sequence[int]) -> None:
    lam = p.lam
    for d in w:
        if not (0 <= d <= lam):
            raise DomainError(f"digit {d} outside the alphabet 0..{lam}")


def is_admissible(p: Params, w: Word) -> bool:
    """Whether every suffix of w sits between the a- and b-prefixes.

    >>> p = Params.make("2/7", "7/2")
    >>> is_admissible(p, (3, 3, 0, 1))
    True
    >>> is_admissible(p, (3, 3, 3))
    False
    """
    _check_digits(p, w)
    n = len(w)
    if n == 0:
        return True
    bd = boundary(p)
    a = bd.a_prefix(n)
    b = bd.b_prefix(n)
    for k in range(n):
        # a-prefix <= w[k:]: reject on a first difference that is below a.
        for i in range(n - k):
            wi = w[k + i]
            ai = a[i]
            if wi != ai:
                if wi < ai:
                    return False
                break
        # w[k:] <= b-prefix: reject on a first difference that is above b.
        for i in range(n - k):
            wi = w[k + i]
            bi = b[i]
            if wi != bi:
                if wi > bi:
                    return False
                break
    return True


def _k_values_scan(bd: Boundary, w: Word) -> tuple[int, int]:
    """Suffix statistics by direct scan; assumes digits are in range."""
    n = len(w)
    a = bd.a_prefix(n)
    b = bd.b_prefix(n)
    k1 = 0
    for k in range(n, 0, -1):
        if w[n - k :] == a[:k]:
            k1 = k
            break
    k2 = 0
    for k in range(n, 0, -1):
        if w[n - k :] == b[:k]:
            k2 = k
            break
    return k1, k2


def k_values(p: Params, w: Word) -> tuple[int, int]:
    """(k1, k2): longest suffixes of w equal to prefixes of a resp. b.

    >>> p = Params.make("2/7", "7/2")
    >>> k_values(p, (2, 0, 1))
    (2, 0)
    """
    if not is_admissible(p, w):
        raise InadmissibleWordError(f"word {w} is not in the language")
    return _k_values_scan(boundary(p), w)


def suffix_decompose(p: Params, w: Word) -> SuffixDecomposition:
    """The unique decomposition w = head + suffix (see SuffixDecomposition).

    >>> p = Params.make("2/7", "7/2")
    >>> d = suffix_decompose(p, (2, 0, 1))
    >>> d.head, d.suffix, d.tag.value
    ((2,), (0, 1), 'a')
    """
    k1, k2 = k_values(p, w)
    n = len(w)
    if k1 > k2:
        return SuffixDecomposition(w[: n - k1], w[n - k1 :], SuffixTag.A, k1, k2)
    if k2 > k1:
        return SuffixDecomposition(w[: n - k2], w[n - k2 :], SuffixTag.B, k1, k2)
    return SuffixDecomposition(w, (), SuffixTag.EPS, 0, 0)


def follower_vertex(p: Params, w: Word) -> tuple[int, int]:
    """The follower-set label [k1, k2]; equal vertices, equal follower sets."""
    return k_values(p, w)


def _adjacency(p: Params, depth: int):
    """Sorted adjacency of the shared graph at this depth (internal)."""
    from . import graph as _graph

    g = _graph.shared_graph(p, depth)
    return {v: tuple(sorted(e.items())) for v, e in g.edges.items()}


def words_with_vertex(
    p: Params, n: int, prefix: Word = ()
) -> Iterator[tuple[Word, tuple[int, int]]]:
    """Admissible length-n words in lex order, paired with their vertex.

    The vertex comes from walking the graph, which makes per-word suffix
    statistics O(1) for bulk consumers. ``prefix`` restricts the stream
    to words starting with the given digits (used to shard work).
    """
    if n < 0:
        raise DomainError("length must be nonnegative")
    adj = _adjacency(p, max(n, 1))
    vertex = (0, 0)
    for d in prefix:
        for label, tgt in adj.get(vertex, ()):
            if label == d:
                vertex = tgt
                break
        else:
            return  # prefix not admissible: empty stream
    k = len(prefix)
    if k > n:
        return
    if k == n:
        yield tuple(prefix), vertex
        return
    rest = n - k
    word = list(prefix) + [0] * rest
    path: list = [vertex] + [None] * rest
    idx = [0] * (rest + 1)
    depth = 0
    while depth >= 0:
        if depth == rest:
            yield tuple(word), path[depth]
            depth -= 1
            if depth >= 0:
                idx[depth] += 1
            continue
        opts = adj.get(path[depth], ())
        i = idx[depth]
        if i >= len(opts):
            depth -= 1
            if depth >= 0:
                idx[depth] += 1
            continue
        label, tgt = opts[i]
        word[k + depth] = label
        path[depth + 1] = tgt
        depth += 1
        idx[depth] = 0


def enumerate_words(p: Params, n: int) -> Iterator[Word]:
    """All admissible words of length n, each once, in lexicographic order.

    >>> p = Params.make("2/7", "7/2")
    >>> list(enumerate_words(p, 1))
    [(0,), (1,), (2,), (3,)]
    """
    for w, _ in words_with_vertex(p, n):
        yield w


def count_words(p: Params, n: int) -> int:
    """|L_n| by path counting over the graph (big integers).

    >>> count_words(Params.make("2/7", "7/2"), 2)
    15
    """
    if n < 0:
        raise DomainError("length must be nonnegative")
    adj = _adjacency(p, max(n, 1))
    counts = {(0, 0): 1}
    for _ in range(n):
        nxt: dict = {}
        for v, c in counts.items():
            for _, tgt in adj.get(v, ()):
                nxt[tgt] = nxt.get(tgt, 0) + c
        counts = nxt
    return sum(counts.values())


def brute_force_words(p: Params, n: int) -> list[Word]:
    """All length-n words by filtering the full alphabet product.

    Exponential; exists as the independent validation oracle for
    enumerate_words on small n.
    """
    return [
        w for w in itertools.product(p.alphabet, repeat=n) if is_admissible(p, w)
    ]
