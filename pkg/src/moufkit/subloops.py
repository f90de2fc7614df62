"""Subloop machinery: generation, normality, nuclei/center/commutant, cosets,
transversals, quotients, and enumeration of the normal-subloop lattice."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import FiniteLoop, closure_elements, associative_on, commutative_on
from .errors import NotASubloop, NotNormal, NotPartition, OrderCapExceeded

DISTINGUISHED_KINDS = (
    "left-nucleus",
    "middle-nucleus",
    "right-nucleus",
    "nucleus",
    "center",
    "commutant",
)


@dataclass(frozen=True)
class SubloopHandle:
    """A subset of loop elements certified closed under * and both divisions."""

    loop: FiniteLoop
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(int(e) for e in self.elements)))
        object.__setattr__(self, "elements", elems)
        if not elems or elems[0] != 0:
            raise NotASubloop("a subloop must contain the identity 0")
        if elems[-1] >= self.loop.order:
            raise NotASubloop("element index out of range")
        idx = np.asarray(elems, dtype=np.int32)
        member = np.zeros(self.loop.order, dtype=bool)
        member[idx] = True
        for t in (self.loop.table, self.loop.ldiv_table, self.loop.rdiv_table):
            if not member[t[np.ix_(idx, idx)]].all():
                raise NotASubloop(f"set {elems} is not closed")

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item: int) -> bool:
        return item in set(self.elements)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def is_whole(self) -> bool:
        return len(self.elements) == self.loop.order

    def as_loop(self) -> FiniteLoop:
        """The subloop as a standalone loop on local indices (sorted order)."""
        idx = np.asarray(self.elements, dtype=np.int32)
        pos = np.full(self.loop.order, -1, dtype=np.int32)
        pos[idx] = np.arange(len(idx), dtype=np.int32)
        return FiniteLoop(pos[self.loop.table[np.ix_(idx, idx)]])

    def local_index(self, parent_element: int) -> int:
        return self.elements.index(parent_element)

    def is_commutative_group(self) -> bool:
        return commutative_on(self.loop, self.elements) and associative_on(
            self.loop, self.elements
        )


@dataclass(frozen=True)
class QuotientResult:
    """Quotient loop with the natural projection and a minimal-representative section."""

    quotient: FiniteLoop
    projection: tuple[int, ...]
    section: tuple[int, ...]


def generated_subloop(loop: FiniteLoop, seed: Iterable[int]) -> SubloopHandle:
    """Least subloop containing the seed (worklist fixpoint under *, \\, /)."""
    return SubloopHandle(loop, closure_elements(loop, seed))


def _inner_generator_images(loop: FiniteLoop, elems) -> np.ndarray:
    """All values f(s) for f in {T_u, L_{u,v}, R_{u,v}} and s in elems."""
    a, ld, rd = loop.table, loop.ldiv_table, loop.rdiv_table
    n = loop.order
    idx = np.asarray(elems, dtype=np.int32)
    ar = np.arange(n, dtype=np.int32)
    chunks = [rd[a[:, idx], ar[:, None]].ravel()]  # T_u(s) = (u*s)/u
    vs = a[:, idx]  # (v, s) -> v*s
    su = a[idx, :]  # (s, u) -> s*u
    for u in range(n):
        # L_{u,v}(s) = (u*v) \ (u*(v*s))
        chunks.append(ld[a[u][:, None], a[u][vs]].ravel())
        # R_{u,v}(s) = ((s*u)*v) / (u*v)
        chunks.append(rd[a[su[:, u], :], a[u][None, :]].ravel())
    return np.unique(np.concatenate(chunks))


def is_normal(loop: FiniteLoop, x: SubloopHandle) -> bool:
    """Invariance of x under every inner-mapping generator T_u, L_{u,v}, R_{u,v}."""
    member = np.zeros(loop.order, dtype=bool)
    member[list(x.elements)] = True
    return bool(member[_inner_generator_images(loop, x.elements)].all())


def normal_closure(loop: FiniteLoop, seed: Iterable[int]) -> SubloopHandle:
    """Smallest normal subloop containing the seed: alternate operation closure
    with inner-generator closure until stable."""
    elems = np.unique(np.asarray([0, *seed], dtype=np.int32))
    while True:
        elems2 = np.asarray(closure_elements(loop, elems), dtype=np.int32)
        elems3 = np.union1d(elems2, _inner_generator_images(loop, elems2))
        if elems3.size == elems.size:
            return SubloopHandle(loop, tuple(int(v) for v in elems3))
        elems = elems3


def distinguished_subloop(loop: FiniteLoop, kind: str) -> tuple[int, ...]:
    """Membership scan for a distinguished subset.

    The commutant need not be a subloop and is returned as a raw sorted set;
    all other kinds are closed under the loop operations.
    """
    if kind not in DISTINGUISHED_KINDS:
        raise ValueError(f"unknown distinguished subloop kind {kind!r}")
    n = loop.order
    a = loop.table
    if kind == "commutant":
        mask = (a == a.T).all(axis=1)
    elif kind == "left-nucleus":
        mask = np.fromiter(
            ((a[x][a] == a[a[x]]).all() for x in range(n)), dtype=bool, count=n
        )
    elif kind == "middle-nucleus":
        mask = np.fromiter(
            ((a[:, a[x]] == a[a[:, x]]).all() for x in range(n)), dtype=bool, count=n
        )
    elif kind == "right-nucleus":
        mask = np.fromiter(
            ((a[:, a[:, x]] == a[:, x][a]).all() for x in range(n)), dtype=bool, count=n
        )
    else:
        inter = None
        for k in ("left-nucleus", "middle-nucleus", "right-nucleus"):
            m = np.zeros(n, dtype=bool)
            m[list(distinguished_subloop(loop, k))] = True
            inter = m if inter is None else inter & m
        if kind == "center":
            inter = inter & (a == a.T).all(axis=1)
        mask = inter
    return tuple(int(v) for v in np.nonzero(mask)[0])


def cosets(loop: FiniteLoop, x: SubloopHandle) -> list[tuple[int, ...]]:
    """Left cosets uX ordered by minimal representative.

    The blocks are always checked to partition the loop; NotPartition is
    raised otherwise (possible only for non-normal subloops).
    """
    n = loop.order
    idx = np.asarray(x.elements, dtype=np.int32)
    owner = np.full(n, -1, dtype=np.int64)
    blocks: list[tuple[int, ...]] = []
    for u in range(n):
        if owner[u] >= 0:
            continue
        block = np.sort(loop.table[u, idx])
        if (owner[block] >= 0).any():
            raise NotPartition(f"left cosets of {x.elements} overlap at element {u}")
        owner[block] = len(blocks)
        blocks.append(tuple(int(v) for v in block))
    return blocks


def transversal(loop: FiniteLoop, x: SubloopHandle) -> tuple[int, ...]:
    """Minimal-index representative of each left coset; representative of X is 0."""
    return tuple(b[0] for b in cosets(loop, x))


def quotient(loop: FiniteLoop, x: SubloopHandle) -> QuotientResult:
    """Quotient loop Q/X for normal X, classes indexed by minimal representatives."""
    if not is_normal(loop, x):
        raise NotNormal(f"{x.elements} is not normal")
    blocks = cosets(loop, x)
    k = len(blocks)
    proj = np.empty(loop.order, dtype=np.int32)
    for ci, block in enumerate(blocks):
        proj[list(block)] = ci
    reps = np.asarray([b[0] for b in blocks], dtype=np.int32)
    qtable = proj[loop.table[np.ix_(reps, reps)]]
    if not (proj[loop.table] == qtable[np.ix_(proj, proj)]).all():
        raise NotNormal("coset multiplication is not well-defined")
    return QuotientResult(
        FiniteLoop(qtable),
        tuple(int(v) for v in proj),
        tuple(int(v) for v in reps),
    )


def all_normal_subloops(loop: FiniteLoop, cap: int = 64) -> list[SubloopHandle]:
    """Every normal subloop: single-generator normal closures, then join closure.

    Every normal subloop is the join of the normal closures of its elements,
    so closing the seed set under pairwise joins enumerates the whole lattice.
    """
    if loop.order > cap:
        raise OrderCapExceeded(f"order {loop.order} exceeds cap {cap}")
    found: dict[tuple[int, ...], SubloopHandle] = {}

    def add(h: SubloopHandle) -> bool:
        if h.elements in found:
            return False
        found[h.elements] = h
        return True

    add(SubloopHandle(loop, (0,)))
    for a in loop.elements():
        add(normal_closure(loop, (a,)))
    tried: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    grew = True
    while grew:
        grew = False
        keys = sorted(found)
        for i, k1 in enumerate(keys):
            s1 = set(k1)
            for k2 in keys[i + 1 :]:
                if (k1, k2) in tried:
                    continue
                tried.add((k1, k2))
                if s1.issuperset(k2) or s1.issubset(k2):
                    continue
                if add(normal_closure(loop, k1 + k2)):
                    grew = True
    return sorted(found.values(), key=lambda h: (len(h), h.elements))
