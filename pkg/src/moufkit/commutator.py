"""Congruence commutator of normal subloops via generating quotients, the
centrality/abelianness predicates, derived subloops, and the deciders for
classical solvability, congruence solvability, and central nilpotency.

The commutator [X,Y] is the normal closure of all right-division quotients
f(a)/g(a) where a runs over X and f, g run over inner-mapping generators
whose parameters agree modulo Y.  Membership in a normal subloop is
coset-determined, so it suffices to quotient every f(a) against the value at
the minimal coset representatives; this cuts the scan to O(|X| n^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FiniteLoop, associative_on, commutative_on
from .errors import NotNormal, OrderCapExceeded
from .subloops import (
    QuotientResult,
    SubloopHandle,
    all_normal_subloops,
    cosets,
    distinguished_subloop,
    is_normal,
    normal_closure,
    quotient,
)

SERIES_KINDS = ("classical", "congruence", "central")

_CERTIFICATES = {
    "classical": "factor-commutative-group",
    "congruence": "factor-abelian-in-quotient",
    "central": "factor-central-in-quotient",
}


@dataclass(frozen=True)
class SeriesWitness:
    """A descending chain from the whole loop to the trivial subloop whose
    factors carry the certificate named by ``kind``; re-checkable by verify()."""

    kind: str
    chain: tuple[SubloopHandle, ...]

    @property
    def certificate(self) -> str:
        return _CERTIFICATES[self.kind]

    def __len__(self) -> int:
        return len(self.chain)

    def verify(self, loop: FiniteLoop) -> bool:
        chain = self.chain
        if not chain or len(chain[0]) != loop.order or len(chain[-1]) != 1:
            return False
        for i in range(len(chain) - 1):
            upper, lower = chain[i], chain[i + 1]
            if not set(lower.elements) < set(upper.elements):
                return False
            if self.kind == "classical":
                if not is_normal(loop, lower):
                    return False
                local = upper.as_loop()
                pos = {e: k for k, e in enumerate(upper.elements)}
                sub = SubloopHandle(local, tuple(pos[e] for e in lower.elements))
                factor = quotient(local, sub).quotient
                if not (
                    commutative_on(factor, range(factor.order))
                    and associative_on(factor, range(factor.order))
                ):
                    return False
            else:
                if not is_normal(loop, lower):
                    return False
                qr = quotient(loop, lower)
                img = SubloopHandle(
                    qr.quotient, tuple(sorted({qr.projection[e] for e in upper.elements}))
                )
                if self.kind == "congruence":
                    if not is_abelian_in(qr.quotient, img):
                        return False
                else:
                    if not is_central(qr.quotient, img):
                        return False
        return True


# -- the commutator of normal subloops -------------------------------------------


def _coset_reps(loop: FiniteLoop, y: SubloopHandle) -> np.ndarray:
    rep = np.empty(loop.order, dtype=np.int32)
    for block in cosets(loop, y):
        rep[list(block)] = block[0]
    return rep


def _quotient_families(loop: FiniteLoop, a: int, rep: np.ndarray):
    """For one a, yield (values, values-at-reps) for the T, L, R generator
    families evaluated at a, as arrays over u (resp. (u, v))."""
    t, ld, rd = loop.table, loop.ldiv_table, loop.rdiv_table
    n = loop.order
    ar = np.arange(n, dtype=np.int32)
    tvals = rd[t[:, a], ar]  # T_u(a)
    yield tvals, tvals[rep]
    lvals = ld[t, t[:, t[:, a]]]  # L_{u,v}(a) = (uv) \ (u (v a))
    yield lvals, lvals[np.ix_(rep, rep)]
    rvals = rd[t[t[a]], t]  # R_{u,v}(a) = ((a u) v) / (uv)
    yield rvals, rvals[np.ix_(rep, rep)]


def _generating_quotients(loop: FiniteLoop, x: SubloopHandle, y: SubloopHandle) -> np.ndarray:
    rd = loop.rdiv_table
    rep = _coset_reps(loop, y)
    mask = np.zeros(loop.order, dtype=bool)
    for a in x.elements:
        for vals, base in _quotient_families(loop, a, rep):
            mask[rd[vals, base].ravel()] = True
    mask[0] = False
    return np.nonzero(mask)[0]


def commutator(loop: FiniteLoop, x: SubloopHandle, y: SubloopHandle) -> SubloopHandle:
    """[X, Y]: normal closure of the generating quotients."""
    if not (is_normal(loop, x) and is_normal(loop, y)):
        raise NotNormal("commutator arguments must be normal subloops")
    gens = _generating_quotients(loop, x, y)
    return normal_closure(loop, (int(g) for g in gens))


def _commutator_trivial(loop: FiniteLoop, x: SubloopHandle, y: SubloopHandle) -> bool:
    rep = _coset_reps(loop, y)
    for a in x.elements:
        for vals, base in _quotient_families(loop, a, rep):
            if (vals != base).any():
                return False
    return True


def is_abelian_in(loop: FiniteLoop, x: SubloopHandle) -> bool:
    """Does X induce an abelian congruence, i.e. is [X, X] trivial?"""
    if not is_normal(loop, x):
        raise NotNormal(f"{x.elements} is not normal")
    return _commutator_trivial(loop, x, x)


def is_central(loop: FiniteLoop, x: SubloopHandle) -> bool:
    """Is [X, Q] trivial?  Cross-checked against X <= Z(Q)."""
    if not is_normal(loop, x):
        raise NotNormal(f"{x.elements} is not normal")
    whole = SubloopHandle(loop, tuple(loop.elements()))
    verdict = _commutator_trivial(loop, x, whole)
    in_center = set(x.elements) <= set(distinguished_subloop(loop, "center"))
    assert verdict == in_center, "commutator centrality disagrees with the center scan"
    return verdict


# -- derived subloops and classical solvability ----------------------------------


def _deviation_elements(loop: FiniteLoop) -> np.ndarray:
    """Commutator deviations (xy)/(yx) and associator deviations (x.yz)\\((xy)z)."""
    t, ld, rd = loop.table, loop.ldiv_table, loop.rdiv_table
    mask = np.zeros(loop.order, dtype=bool)
    mask[rd[t, t.T].ravel()] = True
    for x in loop.elements():
        mask[ld[t[x][t], t[t[x]]].ravel()] = True
    mask[0] = False
    return np.nonzero(mask)[0]


def derived_subloop(loop: FiniteLoop) -> SubloopHandle:
    """Smallest normal subloop with a commutative-group quotient."""
    out = normal_closure(loop, (int(v) for v in _deviation_elements(loop)))
    factor = quotient(loop, out).quotient
    assert commutative_on(factor, range(factor.order))
    assert associative_on(factor, range(factor.order))
    return out


def classical_solvable(loop: FiniteLoop) -> SeriesWitness | None:
    """Fastest-descending normal series with commutative-group factors.

    Each step takes the deviation elements of the previous term (as a loop in
    its own right) and closes them normally in the whole loop, so every chain
    term is normal in the ambient loop; the chain reaches 1 iff any normal
    series with commutative-group factors exists."""
    chain = [SubloopHandle(loop, tuple(loop.elements()))]
    while len(chain[-1]) > 1:
        last = chain[-1]
        local = last.as_loop()
        devs = {last.elements[int(d)] for d in _deviation_elements(local)}
        nxt = normal_closure(loop, devs)
        if not set(nxt.elements) <= set(last.elements):
            raise AssertionError("derived term escaped its parent")
        if len(nxt) == len(last):
            return None
        chain.append(nxt)
    witness = SeriesWitness("classical", tuple(chain))
    assert witness.verify(loop)
    return witness


def congruence_derived_series(loop: FiniteLoop) -> list[SubloopHandle]:
    """Fast screen: iterate R -> [R, R] until the chain stabilizes."""
    chain = [SubloopHandle(loop, tuple(loop.elements()))]
    while True:
        nxt = commutator(loop, chain[-1], chain[-1])
        chain.append(nxt)
        if len(nxt) == 1 or nxt.elements == chain[-2].elements:
            return chain


# -- congruence solvability (ground truth per the series definition) -------------


def canonical_table_key(loop: FiniteLoop) -> tuple[bytes, tuple[int, ...]]:
    """Greedy relabeling key: identity first, then discovery order by products,
    falling back to the smallest unlabeled element.  Deterministic; not an
    isomorphism invariant (a miss only costs memo reuse, never correctness)."""
    n = loop.order
    t = loop.table
    label = {0: 0}
    order_list = [0]
    while len(order_list) < n:
        progressed = False
        for a in list(order_list):
            for b in list(order_list):
                c = int(t[a, b])
                if c not in label:
                    label[c] = len(order_list)
                    order_list.append(c)
                    progressed = True
        if not progressed:
            nxt = min(set(range(n)) - label.keys())
            label[nxt] = len(order_list)
            order_list.append(nxt)
    perm = np.empty(n, dtype=np.int32)
    for old, new in label.items():
        perm[old] = new
    canon = np.empty_like(t)
    canon[perm[:, None], perm[None, :]] = perm[t]
    return canon.tobytes(), tuple(int(v) for v in perm)


def congruence_solvable(loop: FiniteLoop, cap: int = 64) -> SeriesWitness | None:
    """Backtracking search for a series whose factors are abelian in the
    corresponding quotients; memoized on canonicalized quotient tables."""
    memo: dict[bytes, list[frozenset[int]] | None] = {}
    chain = _congruence_chain(loop, cap, memo)
    if chain is None:
        return None
    witness = SeriesWitness(
        "congruence", tuple(SubloopHandle(loop, tuple(sorted(s))) for s in chain)
    )
    assert witness.verify(loop)
    return witness


def _congruence_chain(
    loop: FiniteLoop, cap: int, memo: dict
) -> list[frozenset[int]] | None:
    if loop.order == 1:
        return [frozenset({0})]
    if loop.order > cap:
        raise OrderCapExceeded(f"order {loop.order} exceeds cap {cap}")
    key, to_canon = canonical_table_key(loop)
    if key in memo:
        hit = memo[key]
        if hit is None:
            return None
        from_canon = {new: old for old, new in enumerate(to_canon)}
        return [frozenset(from_canon[e] for e in s) for s in hit]
    result: list[frozenset[int]] | None = None
    candidates = sorted(all_normal_subloops(loop, cap=cap), key=lambda h: (-len(h), h.elements))
    for x in candidates:
        if len(x) == 1:
            continue
        if not is_abelian_in(loop, x):
            continue
        qr = quotient(loop, x)
        sub = _congruence_chain(qr.quotient, cap, memo)
        if sub is None:
            continue
        proj = qr.projection
        result = [frozenset(i for i in range(loop.order) if proj[i] in s) for s in sub]
        result.append(frozenset({0}))
        break
    memo[key] = None if result is None else [frozenset(to_canon[e] for e in s) for s in result]
    return result


# -- central nilpotency ------------------------------------------------------------


def _upper_central_series(loop: FiniteLoop) -> list[SubloopHandle]:
    series = [SubloopHandle(loop, (0,))]
    while True:
        z = series[-1]
        if z.is_whole():
            return series
        qr = quotient(loop, z)
        zc = set(distinguished_subloop(qr.quotient, "center"))
        pre = tuple(i for i in loop.elements() if qr.projection[i] in zc)
        if pre == z.elements:
            return series
        series.append(SubloopHandle(loop, pre))


def nilpotent(loop: FiniteLoop) -> SeriesWitness | None:
    """Upper central series; witness when it climbs to the whole loop."""
    series = _upper_central_series(loop)
    if not series[-1].is_whole():
        return None
    witness = SeriesWitness("central", tuple(reversed(series)))
    assert witness.verify(loop)
    return witness


def nilpotency_class(loop: FiniteLoop) -> int | None:
    series = _upper_central_series(loop)
    if not series[-1].is_whole():
        return None
    return len(series) - 1
