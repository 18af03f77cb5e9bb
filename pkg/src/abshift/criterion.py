"""Obstruction counters z and zbar and the ratio series zbar(n)/n.

z of a b-prefix u counts how many digits of the zero expansion can be
appended after u's maximal a-suffix while the whole word stays a prefix
of b. The running maximum zbar over prefix lengths up to n, divided by
n, is the series whose decay decides weak-Gibbsness; the series is only
reported here, never classified, since no finite horizon decides a
limsup.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InadmissibleWordError, ScanDivergenceError
from .expansion import Params, Word, boundary
from .language import _k_values_scan, is_admissible


@dataclass(frozen=True)
class CriterionSeries:
    horizon: int
    zbar: tuple
    ratios: tuple

    def last_quartile_max(self) -> Fraction:
        start = max(1, self.horizon - self.horizon // 4 + 1)
        return max(self.ratios[start - 1 :])


def _k1_of_prefix(p: Params, u: Word) -> int:
    bd = boundary(p)
    n = len(u)
    a = bd.a_prefix(n)
    for k in range(n, 0, -1):
        if u[n - k :] == a[:k]:
            return k
    return 0


def z_of_b_prefix(p: Params, u: Word, max_scan: int | None = None) -> int:
    """Largest k such that u extended by the next k digits of the zero
    expansion (continuing its maximal a-suffix) is still a prefix of b.

    Prefix-hood is monotone in k here, so the scan stops at the first
    mismatch. Termination is guaranteed by cycle detection on the pair
    of orbit points driving the two digit streams: both orbits take
    finitely many values, so the pair either mismatches or repeats;
    a repeat would mean an infinite continuation and raises.

    >>> p = Params.make("2/7", "7/2")
    >>> z_of_b_prefix(p, (3, 3))
    2
    >>> z_of_b_prefix(p, ())
    0
    """
    bd = boundary(p)
    l = len(u)
    if u != bd.b_prefix(l):
        raise DomainError(f"{u} is not a prefix of the one expansion")
    if l == 0:
        return 0
    k1 = _k1_of_prefix(p, u)
    count = 0
    seen = {(bd.a_orbit_at(k1), bd.b_orbit_at(l))}
    while True:
        if bd.a_at(k1 + count + 1) != bd.b_at(l + count + 1):
            return count
        count += 1
        pair = (bd.a_orbit_at(k1 + count), bd.b_orbit_at(l + count))
        if pair in seen:
            raise ScanDivergenceError(
                f"continuation of b-prefix of length {l} never breaks: "
                "orbit pair cycles, z would be infinite"
            )
        seen.add(pair)
        if max_scan is not None and count > max_scan:
            raise ScanDivergenceError(
                f"z scan exceeded the cap {max_scan} without a mismatch"
            )


def z_of_word(p: Params, w: Word) -> int:
    """z of the canonical b-suffix of w; 0 unless the b-match dominates.

    >>> p = Params.make("2/7", "7/2")
    >>> z_of_word(p, (1, 3, 3))
    2
    >>> z_of_word(p, (3, 3, 0))
    1
    """
    if not is_admissible(p, w):
        raise InadmissibleWordError(f"word {w} is not in the language")
    k1, k2 = _k_values_scan(boundary(p), w)
    if k1 >= k2:
        return 0
    return z_of_b_prefix(p, w[len(w) - k2 :])


def p1(p: Params) -> int:
    """z of the one-letter b-prefix; enters every multiplicity constant.

    >>> p1(Params.make("2/7", "7/2"))
    0
    """
    if not p.main_mode:
        raise DomainError("p1 is used by main-mode machinery only")
    return z_of_b_prefix(p, (p.lam,))


def zbar_series(p: Params, horizon: int) -> CriterionSeries:
    """Exact zbar(n) and the ratios zbar(n)/n for n = 1..horizon.

    >>> s = zbar_series(Params.make("2/7", "7/2"), 4)
    >>> s.zbar
    (0, 2, 2, 2)
    """
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    bd = boundary(p)
    zbar = []
    best = 0
    for n in range(1, horizon + 1):
        best = max(best, z_of_b_prefix(p, bd.b_prefix(n)))
        zbar.append(best)
    ratios = tuple(Fraction(zbar[n - 1], n) for n in range(1, horizon + 1))
    return CriterionSeries(horizon=horizon, zbar=tuple(zbar), ratios=ratios)
