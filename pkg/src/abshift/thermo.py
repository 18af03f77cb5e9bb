"""Thermodynamic layer: partition sums over the canonical configuration
sets, pressure by transfer DP, finite-horizon cylinder estimates, total
oscillation of locally constant potentials, and the two-sided bound
constants for weak-Gibbs diagnostics.

Conventions fixed here: a potential of range r reads coordinates 1..r of
its argument, and Birkhoff sums run over shifts j in a closed integer
window, so phi(sigma^j x) reads coordinates j+1 .. j+r.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

import numpy as np

from . import graph as _graph
from . import language as _language
from .criterion import p1 as _p1
from .criterion import z_of_word
from .errors import DomainError, InadmissibleWordError, MainModeError
from .expansion import Params, Word, boundary
from .surgery import Configuration, _g_from_vertex, sharp, tilde

__all__ = [
    "Configuration",
    "Potential",
    "PressureMethod",
    "PressureReport",
    "GibbsReport",
    "total_oscillation",
    "birkhoff_window",
    "build_En",
    "pressure_estimate",
    "restricted_pressure_estimate",
    "cylinder_estimate",
    "cylinder_estimate_exact",
    "gibbs_bounds",
    "gibbs_diagnostic",
    "complete_to_zero",
    "window_partition_sums",
    "tilde_configuration",
]


def _require_main_mode(p: Params) -> None:
    if not p.main_mode:
        raise MainModeError(
            "this operation is defined only for beta > 3 with alpha*beta = 1"
        )


class Potential:
    """Locally constant potential with an explicit finite table.

    ``table`` maps length-``rank`` digit words to values; missing words
    take the value 0, so the table is total over the full alphabet power
    (inadmissible words included, since oscillations probe them).
    """

    def __init__(self, p: Params, rank: int, table: Mapping) -> None:
        if rank < 1:
            raise DomainError("potential range must be >= 1")
        self.range = rank
        self.lam = p.lam
        tbl: dict[Word, float] = {}
        for key, val in table.items():
            word = self._coerce_key(key)
            if len(word) != rank:
                raise DomainError(f"table key {key!r} is not of length {rank}")
            for d in word:
                if not (0 <= d <= p.lam):
                    raise DomainError(f"table key {key!r} has digit outside 0..{p.lam}")
            tbl[word] = float(val)
        self._table = tbl
        self._norm_delta: float | None = None
        self._values: np.ndarray | None = None

    @staticmethod
    def _coerce_key(key) -> Word:
        if isinstance(key, str):
            key = key.strip()
            if not key:
                return ()
            return tuple(int(t) for t in key.split(","))
        if isinstance(key, int):
            return (key,)
        return tuple(int(d) for d in key)

    @classmethod
    def zero(cls, p: Params, rank: int = 1) -> "Potential":
        return cls(p, rank, {})

    @classmethod
    def from_json(cls, p: Params, obj: Mapping) -> "Potential":
        try:
            rank = int(obj["range"])
            table = obj.get("table", {})
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed potential object: {exc}") from exc
        return cls(p, rank, table)

    def value(self, window: Word) -> float:
        return self._table.get(window, 0.0)

    def is_zero(self) -> bool:
        return all(v == 0.0 for v in self._table.values())

    def value_array(self) -> np.ndarray:
        """Values over all (lam+1)^range words, indexed by the big-endian
        digit code; cached."""
        if self._values is None:
            base = self.lam + 1
            arr = np.zeros(base**self.range)
            for word, val in self._table.items():
                code = 0
                for d in word:
                    code = code * base + d
                arr[code] = val
            self._values = arr
        return self._values

    @property
    def norm_delta(self) -> float:
        """Total oscillation: sum over coordinates of the worst value gap
        between words differing at that coordinate only."""
        if self._norm_delta is None:
            base = self.lam + 1
            grid = self.value_array().reshape((base,) * self.range)
            total = 0.0
            for axis in range(self.range):
                total += float((grid.max(axis=axis) - grid.min(axis=axis)).max())
            self._norm_delta = total
        return self._norm_delta


class PressureMethod(enum.Enum):
    EN_SUM = "en_sum"
    RESTRICTED = "restricted"


@dataclass(frozen=True)
class PressureReport:
    n_or_m: int
    value: float
    method: PressureMethod
    term_count: int


@dataclass(frozen=True)
class GibbsReport:
    word: Word
    m: int
    n: int
    nu_hat: float
    birkhoff: float
    pressure_used: float
    K_minus: float
    K_plus: float
    epsilon: float
    within_bounds: bool


def total_oscillation(p: Params, phi: Potential) -> float:
    """Sum of single-coordinate oscillations of phi.

    >>> p = Params.make("2/7", "7/2")
    >>> total_oscillation(p, Potential(p, 1, {(3,): 2.5}))
    2.5
    """
    return phi.norm_delta


def birkhoff_window(
    p: Params, phi: Potential, x: Configuration, frm: int, to: int
) -> float:
    """Sum of phi along shifts frm..to: term j reads coordinates j+1..j+r.

    >>> p = Params.make("2/7", "7/2")
    >>> ind = Potential(p, 1, {(3,): 1.0})
    >>> birkhoff_window(p, ind, sharp(p, (3, 3), 1), 0, 3)
    2.0
    """
    if frm > to:
        raise DomainError("window bounds out of order")
    r = phi.range
    return sum(phi.value(x.window(j + 1, j + r)) for j in range(frm, to + 1))


def build_En(p: Params, n: int) -> Iterator[Configuration]:
    """The canonical configuration set: one element per word of L_{2n+1},
    core on [-n, n], extension letter g of the core, 1-fill outside.
    """
    _require_main_mode(p)
    if n < 0:
        raise DomainError("n must be nonnegative")
    bd = boundary(p)
    for w, v in _language.words_with_vertex(p, 2 * n + 1):
        yield Configuration(-n, w, _g_from_vertex(bd, v))


def _logsumexp(values: np.ndarray) -> float:
    finite = values[np.isfinite(values)]
    if finite.size == 0:
        return -math.inf
    top = float(finite.max())
    return top + math.log(float(np.exp(finite - top).sum()))


def _check_range(phi: Potential, max_range: int) -> None:
    if phi.range > max_range:
        raise DomainError(
            f"potential range {phi.range} exceeds the DP cap {max_range}; "
            "raise max_range explicitly if the state space is affordable"
        )


def _log_window_sum(
    p: Params,
    phi: Potential,
    m: int,
    allowed: Mapping[int, int] | None = None,
    restricted: bool = False,
) -> float:
    """ln of the partition sum over w in L_m (empty-suffix words only if
    restricted) with exponent sum_{j=1..m} phi(sigma^j w-sharp), w-sharp
    the padded configuration with core on [1, m].

    DP over states (vertex, last r-1 digits). Shift terms j=1..m read
    coordinates 2..m+r; those fully inside the core accumulate during
    the sweep, and the ones reading the extension and fill are added per
    final state, whose vertex determines the extension letter.

    ``allowed`` pins core positions (1-based) to fixed digits.
    """
    base = p.lam + 1
    r = phi.range
    S = base ** (r - 1)
    g = _graph.shared_graph(p, m)
    verts = sorted(g.vertices)
    vid = {v: i for i, v in enumerate(verts)}
    nv = len(verts)
    phi_flat = phi.value_array()
    suf = np.arange(S)
    shifted = suf * base

    cur = np.full((nv, S), -np.inf)
    cur[vid[(0, 0)], 0] = 0.0
    for t in range(1, m + 1):
        nxt = np.full((nv, S), -np.inf)
        pin = allowed.get(t) if allowed else None
        add_window = t >= r + 1
        for v in verts:
            row = cur[vid[v]]
            if not np.isfinite(row).any():
                continue
            out = g.edges.get(v)
            if not out:
                continue
            for c, tgt in out.items():
                if pin is not None and c != pin:
                    continue
                vals = row + phi_flat[shifted + c] if add_window else row
                np.logaddexp.at(nxt, (vid[tgt], (shifted + c) % S), vals)
        cur = nxt

    bd = boundary(p)
    pieces = []
    for v in verts:
        if restricted and v != (0, 0):
            continue
        row = cur[vid[v]]
        mask = np.isfinite(row)
        if not mask.any():
            continue
        gdig = _g_from_vertex(bd, v)
        tail = np.zeros(S)
        for s in range(S):
            if not mask[s]:
                continue
            digits = []
            code = s
            for _ in range(r - 1):
                digits.append(code % base)
                code //= base
            digits.reverse()  # core positions m-r+2 .. m (left pad unread)
            ext = digits + [gdig] + [1] * r
            acc = 0.0
            for start in range(max(2, m - r + 2), m + 2):
                widx = start - (m - r + 2)
                wcode = 0
                for d in ext[widx : widx + r]:
                    wcode = wcode * base + d
                acc += float(phi_flat[wcode])
            tail[s] = acc
        pieces.append(row[mask] + tail[mask])
    if not pieces:
        return -math.inf
    return _logsumexp(np.concatenate(pieces))


def _constrained_count(
    p: Params, m: int, allowed: Mapping[int, int] | None = None,
    restricted: bool = False,
) -> int:
    """Exact number of words of L_m under the same pinning/restriction."""
    g = _graph.shared_graph(p, m)
    counts = {(0, 0): 1}
    for t in range(1, m + 1):
        pin = allowed.get(t) if allowed else None
        nxt: dict = {}
        for v, c in counts.items():
            out = g.edges.get(v)
            if not out:
                continue
            for label, tgt in out.items():
                if pin is not None and label != pin:
                    continue
                nxt[tgt] = nxt.get(tgt, 0) + c
        counts = nxt
    if restricted:
        return counts.get((0, 0), 0)
    return sum(counts.values())


def pressure_estimate(
    p: Params, phi: Potential, n: int, max_range: int = 4
) -> PressureReport:
    """Finite-n pressure: (1/(2n+1)) ln of the partition sum over the
    canonical configuration set, computed by the transfer DP.
    """
    _require_main_mode(p)
    if n < 0:
        raise DomainError("n must be nonnegative")
    _check_range(phi, max_range)
    m = 2 * n + 1
    value = _log_window_sum(p, phi, m) / m
    return PressureReport(
        n_or_m=n,
        value=value,
        method=PressureMethod.EN_SUM,
        term_count=_language.count_words(p, m),
    )


def restricted_pressure_estimate(
    p: Params, phi: Potential, m: int, max_range: int = 4
) -> PressureReport:
    """Pressure from the empty-suffix-class words of L_m only."""
    _require_main_mode(p)
    if m < 1:
        raise DomainError("m must be >= 1")
    _check_range(phi, max_range)
    value = _log_window_sum(p, phi, m, restricted=True) / m
    return PressureReport(
        n_or_m=m,
        value=value,
        method=PressureMethod.RESTRICTED,
        term_count=_constrained_count(p, m, restricted=True),
    )


def _validate_cylinder_args(p: Params, u_bar: Word, n: int) -> None:
    _require_main_mode(p)
    m = len(u_bar)
    if m < 1 or m > 2 * n + 1:
        raise DomainError("need 1 <= |u_bar| <= 2n+1")
    if not _language.is_admissible(p, u_bar):
        raise InadmissibleWordError(f"word {u_bar} is not in the language")


def cylinder_estimate_exact(p: Params, u_bar: Word, n: int) -> Fraction:
    """The zero-potential cylinder average as an exact rational: mean
    frequency of u_bar across all core windows of the configuration set.
    """
    _validate_cylinder_args(p, u_bar, n)
    m = len(u_bar)
    mc = 2 * n + 1
    total = _language.count_words(p, mc)
    acc = 0
    for off in range(mc - m + 1):
        allowed = {off + i + 1: u_bar[i] for i in range(m)}
        acc += _constrained_count(p, mc, allowed)
    return Fraction(acc, mc * total)


def cylinder_estimate(
    p: Params, phi: Potential, u_bar: Word, n: int, max_range: int = 4
) -> float:
    """Finite-n estimate of the cylinder mass of u_bar: the average over
    window placements of the window-constrained partition-sum ratio.
    """
    _validate_cylinder_args(p, u_bar, n)
    if phi.is_zero():
        return float(cylinder_estimate_exact(p, u_bar, n))
    _check_range(phi, max_range)
    m = len(u_bar)
    mc = 2 * n + 1
    log_full = _log_window_sum(p, phi, mc)
    acc = 0.0
    for off in range(mc - m + 1):
        allowed = {off + i + 1: u_bar[i] for i in range(m)}
        log_win = _log_window_sum(p, phi, mc, allowed)
        if math.isfinite(log_win):
            acc += math.exp(log_win - log_full)
    return acc / mc


def gibbs_bounds(
    p: Params, phi: Potential, u_bar: Word, m: int, epsilon: float
) -> tuple[float, float]:
    """The two bound constants in the weak-Gibbs sandwich at word length
    m and slack epsilon. Both are fully explicit in p1, z(u_bar), the
    alphabet size, and the total oscillation.

    >>> p = Params.make("2/7", "7/2")
    >>> zero = Potential.zero(p)
    >>> gibbs_bounds(p, zero, (2,), 1, 0.1)[1] == 7 * math.exp(0.5)
    True
    """
    _require_main_mode(p)
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    if m < 1:
        raise DomainError("m must be >= 1")
    nd = phi.norm_delta
    big_m = 2 * _p1(p) + 7
    alpha_size = p.lam + 1
    z_u = z_of_word(p, u_bar)
    k_plus = big_m * math.exp(11.0 * nd) * math.exp(5.0 * m * epsilon)
    k_minus = (
        alpha_size ** (-(z_u + 3))
        * math.exp(-(z_u + 5.0) * nd)
        / (big_m * big_m * math.exp(5.0 * m * epsilon + 8.0 * nd))
    )
    return (k_minus, k_plus)


def gibbs_diagnostic(
    p: Params, phi: Potential, u_bar: Word, n: int, epsilon: float,
    max_range: int = 4,
) -> GibbsReport:
    """Assemble the finite-n weak-Gibbs check for one word: measure
    estimate, Birkhoff sum on the canonical padded point, the pressure
    estimate at the same n, and whether the sandwich held. The boolean
    reports a finite-n surrogate of an asymptotic statement; it is not
    asserted anywhere.
    """
    m = len(u_bar)
    nu_hat = cylinder_estimate(p, phi, u_bar, n, max_range)
    y = sharp(p, u_bar, 1)
    birk = birkhoff_window(p, phi, y, 1, m)
    press = pressure_estimate(p, phi, n, max_range).value
    k_minus, k_plus = gibbs_bounds(p, phi, u_bar, m, epsilon)
    bracket = math.exp(birk - m * press)
    within = k_minus * bracket <= nu_hat <= k_plus * bracket
    return GibbsReport(
        word=tuple(u_bar),
        m=m,
        n=n,
        nu_hat=nu_hat,
        birkhoff=birk,
        pressure_used=press,
        K_minus=k_minus,
        K_plus=k_plus,
        epsilon=epsilon,
        within_bounds=within,
    )


def complete_to_zero(p: Params, v: Word) -> Word:
    """A shortest word c with follower_vertex(v + c) = [0,0], lexicographic
    among shortest; length is asserted to be at most z(v) + 2.
    """
    _require_main_mode(p)
    if not _language.is_admissible(p, v):
        raise InadmissibleWordError(f"word {v} is not in the language")
    bd = boundary(p)
    vertex = _language._k_values_scan(bd, v)
    if vertex == (0, 0):
        return ()
    zbound = z_of_word(p, v) + 2
    frontier: list[tuple[tuple[int, int], Word]] = [(vertex, ())]
    seen = {vertex}
    for _ in range(zbound):
        nxt = []
        for vtx, path in frontier:
            out = _graph.out_edges(p, vtx)
            for c in sorted(out):
                tgt = out[c]
                if tgt == (0, 0):
                    return path + (c,)
                if tgt not in seen:
                    seen.add(tgt)
                    nxt.append((tgt, path + (c,)))
        frontier = nxt
    raise AssertionError(
        f"no completion of {v} to the origin within z(v)+2 = {zbound} steps"
    )


def window_partition_sums(
    p: Params, phi: Potential, n: int, m: int
) -> dict:
    """Naive window partition sums over the full configuration set.

    Returns {(offset, word): [xi, xi_star]} where offset is the 0-based
    core position of the length-m window, xi sums the configuration
    weights with that window content, and xi_star restricts to
    configurations whose part left of the window has an empty suffix.
    Exponential in n; this is the oracle the DP is tested against.
    """
    _require_main_mode(p)
    mc = 2 * n + 1
    if not 1 <= m <= mc:
        raise DomainError("need 1 <= m <= 2n+1")
    g = _graph.shared_graph(p, mc)
    bd = boundary(p)
    out: dict = {}
    for w, vtx in _language.words_with_vertex(p, mc):
        path = _graph.walk(g, w)
        x = Configuration(-n, w, _g_from_vertex(bd, vtx))
        weight = math.exp(birkhoff_window(p, phi, x, -n, n))
        for off in range(mc - m + 1):
            entry = out.setdefault((off, w[off : off + m]), [0.0, 0.0])
            entry[0] += weight
            if path[off] == (0, 0):
                entry[1] += weight
    return out


def tilde_configuration(
    p: Params, x: Configuration, k: int, l: int
) -> Configuration:
    """Window surgery on a configuration: tilde the part of the core left
    of window [k, l] and the window itself, keep the right part, and
    recompute the extension letter from the right part alone.

    The left part is treated as the finite word it shows inside the
    core: the 1-fill beyond cannot start a boundary match in main mode
    (the zero expansion starts 0, the one expansion starts lambda >= 3),
    so the finite slice carries the full suffix statistics.
    """
    _require_main_mode(p)
    s = x.window_start
    e = x.window_end
    if not (s <= k <= l <= e):
        raise DomainError("window must sit inside the core")
    left = x.core[: k - s]
    mid = x.core[k - s : l - s + 1]
    right = x.core[l - s + 1 :]
    new_core = tilde(p, left) + tilde(p, mid) + right
    bd = boundary(p)
    ext = _g_from_vertex(bd, _language._k_values_scan(bd, right))
    return Configuration(s, new_core, ext)
