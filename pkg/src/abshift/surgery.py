"""Word surgery: hatted prefixes, hat/tilde on words, the extension letter g,
padded configurations, and exhaustive verification of the surgery guarantees.

Everything here is specific to the main mode (beta > 3, alpha*beta = 1),
where a = (0,1,1,1,...) and b starts with lambda >= 3. The hat edits a
boundary-prefix suffix into a word that ends at graph vertex [0,0] while
moving at most two letters; tilde is hat twice and moves at most three.
"""

from __future__ import annotations

from array import array
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

from . import graph as _graph
from . import language as _language
from .errors import DomainError, InadmissibleWordError, MainModeError
from .expansion import Boundary, Params, Word, boundary
from .language import SuffixTag, k_values

# A prefix kind is the same three-way tag as a suffix class.
PrefixKind = SuffixTag


def _require_main_mode(p: Params) -> None:
    if not p.main_mode:
        raise MainModeError(
            "surgery is defined only for beta > 3 with alpha*beta = 1"
        )


@dataclass(frozen=True)
class Configuration:
    """A two-sided sequence: ``core`` on positions [window_start, l],
    ``extension`` at l+1, and the constant fill digit 1 everywhere else.
    """

    window_start: int
    core: Word
    extension: int

    @property
    def window_end(self) -> int:
        return self.window_start + len(self.core) - 1

    def digit(self, j: int) -> int:
        off = j - self.window_start
        if 0 <= off < len(self.core):
            return self.core[off]
        if off == len(self.core):
            return self.extension
        return 1

    def window(self, j0: int, j1: int) -> Word:
        if j0 > j1 + 1:
            raise DomainError("empty window bounds out of order")
        return tuple(self.digit(j) for j in range(j0, j1 + 1))

    def shifted(self, delta: int) -> "Configuration":
        return Configuration(self.window_start + delta, self.core, self.extension)

    def check_two_sided(self, p: Params) -> bool:
        """Finite certificate that every factor is admissible.

        Left 1-fill is free: in main mode the label 1 loops at the root,
        so prepending 1s never changes acceptance. It remains to check
        that core + extension is admissible and that the endpoint vertex
        accepts 1s forever. Following 1-edges terminates by three facts:
        from [j, k] with j >= 1 the a-side match a_{j+1} = 1 keeps the
        path alive forever; from [0, k] the digit 1 sits strictly inside
        the bounds whenever b_{k+1} >= 2 and the path drops to the root,
        where it loops; and the remaining case b_{k+1} = 1 walks along
        the upper expansion, whose rational orbit must repeat.
        """
        _require_main_mode(p)
        word = self.core + (self.extension,)
        g = _graph.shared_graph(p, len(word) + 4)
        path = _graph.walk(g, word)
        if path is None:
            return False
        j, k = path[-1]
        bd = boundary(p)
        seen_orbit = set()
        while True:
            if j >= 1:
                return True
            nxt = bd.b_at(k + 1)
            if nxt == 0:
                return False
            if nxt >= 2:
                # strict middle: land on the root, which loops on 1
                return True
            pt = bd.b_orbit_at(k + 1)
            if pt in seen_orbit:
                return True
            seen_orbit.add(pt)
            k += 1


def _k1_of(bd: Boundary, w: Word) -> int:
    """Longest suffix of w equal to a prefix of a (direct scan)."""
    n = len(w)
    a = bd.a_prefix(n)
    for k in range(n, 0, -1):
        if w[n - k :] == a[:k]:
            return k
    return 0


def _hat_a_prefix(bd: Boundary, u: Word) -> Word:
    # Bump the last digit; a-digits are 0 or 1 here, so this stays <= 2.
    return u[:-1] + (u[-1] + 1,)


def _hat_b_prefix(bd: Boundary, lam: int, u: Word) -> Word:
    l = len(u)
    last = u[-1]
    if last >= 3:
        return u[:-1] + (last - 1,)
    # b_1 = lambda >= 3, so the short-digit case cannot happen at l = 1.
    assert l >= 2, "b-prefix hat: b_1 >= 3 rules out a one-letter low digit"
    k1m = _k1_of(bd, u[:-1])
    pos2 = l - k1m - 1  # 0-based index rewritten to lambda-1
    pos1 = pos2 - 1  # 0-based index decremented by one
    assert pos1 >= 0, "k1 of the dropped-letter prefix never reaches l-1"
    out = list(u)
    assert out[pos1] >= 1, "decremented digit must stay a digit"
    out[pos1] -= 1
    out[pos2] = lam - 1
    return tuple(out)


def hat_prefix(p: Params, u: Word, kind: PrefixKind) -> Word:
    """The hatted boundary prefix: same length, at most two letters moved.

    ``kind`` declares which boundary u is a prefix of (EPS for the empty
    word); it is validated, since a string can prefix both boundaries.

    >>> p = Params.make("2/7", "7/2")
    >>> hat_prefix(p, (0, 1), PrefixKind.A)
    (0, 2)
    >>> hat_prefix(p, (3, 3, 0), PrefixKind.B)
    (3, 2, 2)
    """
    _require_main_mode(p)
    bd = boundary(p)
    l = len(u)
    if kind is PrefixKind.EPS:
        if u != ():
            raise DomainError("EPS kind requires the empty word")
        return ()
    if l < 1:
        raise DomainError("A/B prefix kinds require length >= 1")
    if kind is PrefixKind.A:
        if u != bd.a_prefix(l):
            raise DomainError(f"{u} is not a prefix of the zero expansion")
        return _hat_a_prefix(bd, u)
    if u != bd.b_prefix(l):
        raise DomainError(f"{u} is not a prefix of the one expansion")
    return _hat_b_prefix(bd, p.lam, u)


def _hat_with_k(p: Params, w: Word, k1: int, k2: int) -> Word:
    """hat(w) given the suffix statistics; skips revalidation."""
    if k1 == 0 and k2 == 0:
        return w
    bd = boundary(p)
    n = len(w)
    if k1 > k2:
        return w[: n - k1] + _hat_a_prefix(bd, w[n - k1 :])
    return w[: n - k2] + _hat_b_prefix(bd, p.lam, w[n - k2 :])


def hat(p: Params, w: Word) -> Word:
    """head + hatted suffix; identity when the suffix is empty.

    >>> p = Params.make("2/7", "7/2")
    >>> hat(p, (2, 0, 1))
    (2, 0, 2)
    >>> hat(p, (1, 3))
    (1, 2)
    """
    _require_main_mode(p)
    k1, k2 = k_values(p, w)
    return _hat_with_k(p, w, k1, k2)


def tilde(p: Params, w: Word) -> Word:
    """hat applied twice; lands in the empty-suffix class.

    >>> p = Params.make("2/7", "7/2")
    >>> tilde(p, (3,))
    (2,)
    """
    return hat(p, hat(p, w))


def class_of(p: Params, w: Word) -> SuffixTag:
    """Which of the three suffix classes w belongs to.

    >>> class_of(Params.make("2/7", "7/2"), (3, 3)).value
    'b'
    """
    k1, k2 = k_values(p, w)
    if k1 > k2:
        return SuffixTag.A
    if k2 > k1:
        return SuffixTag.B
    return SuffixTag.EPS


def _g_from_vertex(bd: Boundary, v: tuple[int, int]) -> int:
    j, k = v
    if j == 0 and k > 0 and bd.b_at(k + 1) <= 1:
        return 0
    return 1


def g_letter(p: Params, w: Word) -> int:
    """The one-letter extension that keeps w + g + 1-fill in the shift.

    >>> p = Params.make("2/7", "7/2")
    >>> g_letter(p, (3, 3))
    0
    >>> g_letter(p, (2,))
    1
    """
    _require_main_mode(p)
    k1, k2 = k_values(p, w)
    return _g_from_vertex(boundary(p), (k1, k2))


def sharp(p: Params, w: Word, window_start: int) -> Configuration:
    """The padded configuration: w on the window, g(w) next, 1s elsewhere.

    >>> p = Params.make("2/7", "7/2")
    >>> y = sharp(p, (3, 3), 1)
    >>> [y.digit(j) for j in range(0, 5)]
    [1, 3, 3, 0, 1]
    """
    _require_main_mode(p)
    if not _language.is_admissible(p, w):
        raise InadmissibleWordError(f"word {w} is not in the language")
    return Configuration(
        window_start=window_start, core=w, extension=g_letter(p, w)
    )


class MultiplicityProfile(NamedTuple):
    max_tilde: int
    max_hat_on_LB: int
    class_flow_ok: bool


_FAIL_CAP = 20


def _pass_failure(failures: dict, check: str, w: Word) -> None:
    lst = failures.setdefault(check, [])
    if len(lst) < _FAIL_CAP:
        lst.append(list(w))


def _bulk_pass(p: Params, n: int, prefix: Word = ()) -> dict:
    """One exhaustive sweep of L_n (optionally sharded by a fixed prefix).

    Per word: hat and tilde are applied, their images re-walked through
    the graph (independent admissibility + endpoint evidence), Hamming
    and class-flow conditions checked, and packed image codes collected
    for multiplicity counting.
    """
    g = _graph.shared_graph(p, max(n, 1))
    edges = g.edges
    bd = boundary(p)
    lam = p.lam
    base = lam + 1
    pack_ok = base**n < 2**63
    codes_tilde = array("q") if pack_ok else []
    codes_hat_b = array("q") if pack_ok else []
    failures: dict[str, list] = {}
    n_eps = n_a = n_b = 0

    def walk_end(word: Word):
        v = (0, 0)
        for c in word:
            out = edges.get(v)
            if out is None:
                return None
            v = out.get(c)
            if v is None:
                return None
        return v

    def pack(word: Word) -> int:
        code = 0
        for d in word:
            code = code * base + d
        return code

    for w, (k1, k2) in _language.words_with_vertex(p, n, prefix):
        if k1 == 0 and k2 == 0:
            n_eps += 1
            wt = w  # hat and tilde fix the empty-suffix class
        else:
            if k1 > k2:
                n_a += 1
                was_b = False
            else:
                n_b += 1
                was_b = True
            wh = _hat_with_k(p, w, k1, k2)
            vh = walk_end(wh)
            if vh is None:
                _pass_failure(failures, "hat_image_admissible", w)
                continue
            hk1, hk2 = vh
            if was_b:
                if hk1 != 0 or hk2 != 0:
                    _pass_failure(failures, "hat_of_b_class_lands_eps", w)
                codes_hat_b.append(pack(wh) if pack_ok else wh)
                wt = wh
            else:
                # hat of the a-class must land in eps or b, never a.
                if hk1 > hk2:
                    _pass_failure(failures, "hat_of_a_class_avoids_a", w)
                if hk2 > hk1:
                    wt = _hat_with_k(p, wh, hk1, hk2)
                    vt = walk_end(wt)
                    if vt is None:
                        _pass_failure(failures, "tilde_image_admissible", w)
                        continue
                    if vt != (0, 0):
                        _pass_failure(failures, "tilde_lands_at_origin", w)
                else:
                    wt = wh
            if sum(1 for x, y in zip(w, wh) if x != y) > 2:
                _pass_failure(failures, "hat_moves_at_most_two", w)
            if sum(1 for x, y in zip(w, wt) if x != y) > 3:
                _pass_failure(failures, "tilde_moves_at_most_three", w)
        codes_tilde.append(pack(wt) if pack_ok else wt)

    return {
        "n": n,
        "pack_ok": pack_ok,
        "codes_tilde": codes_tilde,
        "codes_hat_b": codes_hat_b,
        "failures": failures,
        "class_counts": (n_eps, n_a, n_b),
    }


def _bulk_shard(args) -> dict:
    p, n, prefix = args
    return _bulk_pass(p, n, prefix)


def _max_preimage(code_arrays: list, pack_ok: bool) -> int:
    if pack_ok:
        import numpy as np

        total = sum(len(a) for a in code_arrays)
        if total == 0:
            return 0
        merged = np.empty(total, dtype=np.int64)
        pos = 0
        for a in code_arrays:
            merged[pos : pos + len(a)] = np.frombuffer(a, dtype=np.int64)
            pos += len(a)
        _, counts = np.unique(merged, return_counts=True)
        return int(counts.max())
    from collections import Counter

    c: Counter = Counter()
    for a in code_arrays:
        c.update(a)
    return max(c.values(), default=0)


def _run_bulk(p: Params, n: int, workers: int = 1) -> list[dict]:
    if workers <= 1 or n < 4:
        return [_bulk_pass(p, n)]
    shards = [(p, n, (d,)) for d in p.alphabet]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_bulk_shard, shards))


def multiplicity_profile(p: Params, n: int, workers: int = 1) -> MultiplicityProfile:
    """Observed worst preimage counts of tilde on L_n and hat on the
    b-class, plus whether every class-flow inclusion held during the
    exhaustive sweep. The proved ceilings are 2*p1+7 and p1+3.
    """
    _require_main_mode(p)
    shards = _run_bulk(p, n, workers)
    pack_ok = shards[0]["pack_ok"]
    max_tilde = _max_preimage([s["codes_tilde"] for s in shards], pack_ok)
    max_hat_b = _max_preimage([s["codes_hat_b"] for s in shards], pack_ok)
    flow_ok = not any(
        key
        for s in shards
        for key in s["failures"]
        if key
        in (
            "hat_image_admissible",
            "hat_of_b_class_lands_eps",
            "hat_of_a_class_avoids_a",
            "tilde_image_admissible",
            "tilde_lands_at_origin",
        )
    )
    return MultiplicityProfile(max_tilde, max_hat_b, flow_ok)


def _prefix_endpoint_check(p: Params, horizon: int) -> dict:
    """Hatted boundary prefixes are admissible and end at the origin."""
    g = _graph.shared_graph(p, horizon + 1)
    bd = boundary(p)
    bad: list = []
    for l in range(1, horizon + 1):
        for kind, u in ((PrefixKind.A, bd.a_prefix(l)), (PrefixKind.B, bd.b_prefix(l))):
            hu = hat_prefix(p, u, kind)
            path = _graph.walk(g, hu)
            if path is None or path[-1] != (0, 0):
                bad.append({"kind": kind.value, "length": l, "hatted": list(hu)})
    return {"ok": not bad, "horizon": horizon, "counterexamples": bad[:_FAIL_CAP]}


def _prefix_concat_check(p: Params, total: int) -> dict:
    """If c, d prefix the same boundary and cd is admissible, cd prefixes it."""
    bd = boundary(p)
    bad: list = []
    for which, pref in (("a", bd.a_prefix), ("b", bd.b_prefix)):
        for i in range(1, total):
            for j in range(1, total - i + 1):
                cd = pref(i) + pref(j)
                if _language.is_admissible(p, cd) and cd != pref(i + j):
                    bad.append({"boundary": which, "word": list(cd)})
    return {"ok": not bad, "total_length": total, "counterexamples": bad[:_FAIL_CAP]}


def surgery_report(
    p: Params,
    max_n: int,
    workers: int = 1,
    prefix_horizon: int = 30,
    concat_total: int = 12,
) -> dict:
    """Check-by-check verification over L_n for n = 0..max_n.

    Returns a JSON-ready dict: each check carries an ``ok`` flag and
    counterexamples when it failed; the multiplicity section reports the
    observed maxima next to the proved ceilings.
    """
    _require_main_mode(p)
    from .criterion import p1 as _p1

    per_word_failures: dict[str, list] = {}
    codes_t: list = []
    codes_h: list = []
    pack_ok = True
    for n in range(max_n + 1):
        for shard in _run_bulk(p, n, workers):
            pack_ok = pack_ok and shard["pack_ok"]
            for key, words in shard["failures"].items():
                for w in words:
                    _pass_failure(per_word_failures, key, tuple(w))
            codes_t.append((n, shard["codes_tilde"]))
            codes_h.append((n, shard["codes_hat_b"]))

    # Preimage counts must merge per length: words of different lengths
    # cannot share an image, so the per-n maximum is the global one.
    max_tilde = 0
    max_hat_b = 0
    for n in range(max_n + 1):
        ok = pack_ok
        max_tilde = max(
            max_tilde, _max_preimage([a for m, a in codes_t if m == n], ok)
        )
        max_hat_b = max(
            max_hat_b, _max_preimage([a for m, a in codes_h if m == n], ok)
        )

    bound = 2 * _p1(p) + 7
    bound_hat = _p1(p) + 3
    checks = {
        "hat_prefix_lands_at_origin": _prefix_endpoint_check(p, prefix_horizon),
        "boundary_prefix_concatenation": _prefix_concat_check(p, concat_total),
        "hat_image_admissible": {"ok": "hat_image_admissible" not in per_word_failures},
        "hat_of_b_class_lands_eps": {
            "ok": "hat_of_b_class_lands_eps" not in per_word_failures
        },
        "hat_of_a_class_avoids_a": {
            "ok": "hat_of_a_class_avoids_a" not in per_word_failures
        },
        "tilde_image_admissible": {
            "ok": "tilde_image_admissible" not in per_word_failures
        },
        "tilde_lands_at_origin": {
            "ok": "tilde_lands_at_origin" not in per_word_failures
        },
        "hat_moves_at_most_two": {
            "ok": "hat_moves_at_most_two" not in per_word_failures
        },
        "tilde_moves_at_most_three": {
            "ok": "tilde_moves_at_most_three" not in per_word_failures
        },
        "tilde_multiplicity": {
            "ok": max_tilde <= bound,
            "observed_max": max_tilde,
            "bound": bound,
        },
        "hat_on_b_multiplicity": {
            "ok": max_hat_b <= bound_hat,
            "observed_max": max_hat_b,
            "bound": bound_hat,
        },
    }
    for key, words in per_word_failures.items():
        checks[key]["counterexamples"] = [list(w) for w in words]
    return {
        "alpha": str(p.alpha),
        "beta": str(p.beta),
        "max_n": max_n,
        "all_ok": all(c["ok"] for c in checks.values()),
        "checks": checks,
    }
