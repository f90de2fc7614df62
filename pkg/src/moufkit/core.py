"""Validated finite loops presented by Cayley tables.

Element 0 is the two-sided identity of every validated loop.  FiniteLoop
values are immutable after construction; every operation here is a pure
function of its inputs, so unsynchronized concurrent reads are safe.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InvalidTable,
    LoopFileError,
    NotLatinSquare,
    NoTwoSidedIdentity,
    NotPowerAssociative,
)

#: Identity schemes accepted by satisfies_identity, in canonical order.
IDENTITY_SCHEMES = (
    "moufang-1",
    "moufang-2",
    "moufang-3",
    "moufang-4",
    "extra",
    "flexible",
    "left-inverse",
    "right-inverse",
    "associative",
    "commutative",
    "right-power-alternative",
)

#: Hard cap on loop order imposed by the index representation.
MAX_ORDER = 1 << 16

_NON_ASSOCIATIVE = "non-associative"


def _thread_count() -> int:
    raw = os.environ.get("MOUFKIT_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


class FiniteLoop:
    """A finite loop on elements 0..n-1, element 0 being the identity.

    The constructor expects a table whose identity already sits at index 0;
    use :meth:`from_table` to ingest arbitrary tables (the identity is then
    relabeled to 0 and the relabeling recorded on the instance).
    """

    def __init__(self, table, relabeling: tuple[int, ...] | None = None):
        arr = np.asarray(table, dtype=np.int32)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidTable("table must be square")
        n = arr.shape[0]
        if n == 0:
            raise InvalidTable("table must be nonempty")
        if n > MAX_ORDER:
            raise InvalidTable(f"order {n} exceeds the representation cap {MAX_ORDER}")
        if arr.min() < 0 or arr.max() >= n:
            raise InvalidTable("entries must lie in [0, n-1]")
        _check_latin(arr)
        e = _find_identity(arr)
        if e is None:
            raise NoTwoSidedIdentity("no element acts as a two-sided identity")
        if e != 0:
            raise InvalidTable(f"identity is element {e}, not 0")
        arr.setflags(write=False)
        self.order: int = n
        self.table: np.ndarray = arr
        self.relabeling = relabeling
        self._ldiv: np.ndarray | None = None
        self._rdiv: np.ndarray | None = None
        self._cyclic: dict[int, object] = {}
        self._scan_cache: dict[str, IdentityCheck] = {}
        self._flag_cache: dict[str, bool] = {}

    @classmethod
    def from_table(cls, raw) -> "FiniteLoop":
        """Validate a raw square table, relabeling so that the identity is 0."""
        arr = np.asarray(raw, dtype=np.int32)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidTable("table must be square")
        n = arr.shape[0]
        if n == 0:
            raise InvalidTable("table must be nonempty")
        if arr.min(initial=0) < 0 or arr.max(initial=0) >= n:
            raise InvalidTable("entries must lie in [0, n-1]")
        _check_latin(arr)
        e = _find_identity(arr)
        if e is None:
            raise NoTwoSidedIdentity("no element acts as a two-sided identity")
        if e == 0:
            return cls(arr)
        # swap labels 0 <-> e, leaving all other elements in place
        perm = np.arange(n)
        perm[0], perm[e] = e, 0
        new = perm[arr[np.ix_(perm, perm)]]
        return cls(new, relabeling=tuple(int(v) for v in perm))

    # -- element arithmetic -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def ldiv(self, a: int, b: int) -> int:
        """Left division a\\b: the unique c with a*c = b."""
        return int(self.ldiv_table[a, b])

    def rdiv(self, a: int, b: int) -> int:
        """Right division a/b: the unique c with c*b = a."""
        return int(self.rdiv_table[a, b])

    def divide(self, side: str, a: int, b: int) -> int:
        if side == "left":
            return self.ldiv(a, b)
        if side == "right":
            return self.rdiv(a, b)
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def inv(self, a: int) -> int:
        """a\\1, the right inverse (two-sided in inverse-property loops)."""
        return int(self.ldiv_table[a, 0])

    @property
    def ldiv_table(self) -> np.ndarray:
        if self._ldiv is None:
            n = self.order
            ar = np.arange(n, dtype=np.int32)
            ld = np.empty((n, n), dtype=np.int32)
            ld[ar[:, None], self.table] = ar[None, :]
            ld.setflags(write=False)
            self._ldiv = ld
        return self._ldiv

    @property
    def rdiv_table(self) -> np.ndarray:
        if self._rdiv is None:
            n = self.order
            ar = np.arange(n, dtype=np.int32)
            rd = np.empty((n, n), dtype=np.int32)
            rd[self.table, ar[None, :]] = ar[:, None]
            rd.setflags(write=False)
            self._rdiv = rd
        return self._rdiv

    # -- powers -------------------------------------------------------------

    def _cyclic_closure(self, a: int) -> tuple[int, ...]:
        """Closure of {a} under multiplication, verified associative."""
        cached = self._cyclic.get(a)
        if cached == _NON_ASSOCIATIVE:
            raise NotPowerAssociative(a)
        if cached is not None:
            return cached  # type: ignore[return-value]
        elems = closure_elements(self, (a,), divisions=False)
        if not associative_on(self, elems):
            self._cyclic[a] = _NON_ASSOCIATIVE
            raise NotPowerAssociative(a)
        self._cyclic[a] = elems
        return elems

    def power(self, a: int, k: int) -> int:
        """a**k by repeated squaring inside the (verified associative) cyclic subloop."""
        m = len(self._cyclic_closure(a))
        e = k % m
        acc, base = 0, a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def element_order(self, a: int) -> int:
        return len(self._cyclic_closure(a))

    # -- conveniences ---------------------------------------------------------

    def element(self, index: int) -> "LoopElement":
        return LoopElement(self, index)

    def __getitem__(self, index: int) -> "LoopElement":
        return LoopElement(self, index)

    def elements(self) -> range:
        return range(self.order)

    def rows(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.table]

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteLoop) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.order, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteLoop(order={self.order})"


@dataclass(frozen=True)
class LoopElement:
    """An element of a fixed FiniteLoop, with operator sugar.

    ``a * b`` multiplies, ``a / b`` right-divides (solves ?*b = a) and
    ``a // b`` left-divides (solves a*? = b), matching the division maps.
    """

    loop: FiniteLoop
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.loop.order:
            raise InvalidTable(f"element index {self.index} out of range")

    def _peer(self, other: "LoopElement") -> int:
        if self.loop is not other.loop and self.loop != other.loop:
            raise ValueError("elements belong to different loops")
        return other.index

    def __mul__(self, other: "LoopElement") -> "LoopElement":
        return LoopElement(self.loop, self.loop.mul(self.index, self._peer(other)))

    def __truediv__(self, other: "LoopElement") -> "LoopElement":
        return LoopElement(self.loop, self.loop.rdiv(self.index, self._peer(other)))

    def __floordiv__(self, other: "LoopElement") -> "LoopElement":
        return LoopElement(self.loop, self.loop.ldiv(self.index, self._peer(other)))

    def __pow__(self, k: int) -> "LoopElement":
        return LoopElement(self.loop, self.loop.power(self.index, k))

    @property
    def order(self) -> int:
        return self.loop.element_order(self.index)

    def __int__(self) -> int:
        return self.index

    def __index__(self) -> int:
        return self.index


# -- validation helpers ------------------------------------------------------


def _check_latin(arr: np.ndarray) -> None:
    n = arr.shape[0]
    ar = np.arange(n, dtype=np.int32)
    bad_rows = np.nonzero((np.sort(arr, axis=1) != ar).any(axis=1))[0]
    if bad_rows.size:
        i = int(bad_rows[0])
        raise NotLatinSquare("row", i, _first_repeat(arr[i]))
    bad_cols = np.nonzero((np.sort(arr, axis=0) != ar[:, None]).any(axis=0))[0]
    if bad_cols.size:
        j = int(bad_cols[0])
        raise NotLatinSquare("column", j, _first_repeat(arr[:, j]))


def _first_repeat(vec: np.ndarray) -> int:
    seen = set()
    for v in vec:
        if int(v) in seen:
            return int(v)
        seen.add(int(v))
    return -1


def _find_identity(arr: np.ndarray) -> int | None:
    n = arr.shape[0]
    ar = np.arange(n, dtype=np.int32)
    rows = (arr == ar[None, :]).all(axis=1)
    cols = (arr == ar[:, None]).all(axis=0)
    hits = np.nonzero(rows & cols)[0]
    return int(hits[0]) if hits.size else None


# -- closures and local scans -------------------------------------------------


def closure_elements(
    loop: FiniteLoop, seed: Iterable[int], divisions: bool = True
) -> tuple[int, ...]:
    """Smallest subset containing seed and 0, closed under * (and \\, / if asked)."""
    a = loop.table
    tables = [a, loop.ldiv_table, loop.rdiv_table] if divisions else [a]
    elems = np.unique(np.asarray([0, *seed], dtype=np.int32))
    while True:
        grown = elems
        for t in tables:
            grown = np.union1d(grown, t[np.ix_(elems, elems)].ravel())
        if grown.size == elems.size:
            break
        elems = grown
    return tuple(int(v) for v in elems)


def associative_on(loop: FiniteLoop, elems: Sequence[int]) -> bool:
    """Do all triples from elems associate (products may leave the set)?"""
    a = loop.table
    idx = np.asarray(elems, dtype=np.int32)
    sub = a[np.ix_(idx, idx)]
    lhs = a[sub][:, :, idx]  # (x,y,z) -> (x*y)*z
    rhs = a[idx[:, None, None], sub[None, :, :]]  # (x,y,z) -> x*(y*z)
    return bool((lhs == rhs).all())


def commutative_on(loop: FiniteLoop, elems: Sequence[int]) -> bool:
    idx = np.asarray(elems, dtype=np.int32)
    sub = loop.table[np.ix_(idx, idx)]
    return bool((sub == sub.T).all())


def is_power_associative(loop: FiniteLoop) -> bool:
    cached = loop._flag_cache.get("power-associative")
    if cached is None:
        cached = all(power_associative_at(loop, a) for a in loop.elements())
        loop._flag_cache["power-associative"] = cached
    return cached


def power_associative_at(loop: FiniteLoop, a: int) -> bool:
    try:
        loop._cyclic_closure(a)
        return True
    except NotPowerAssociative:
        return False


def is_diassociative(loop: FiniteLoop) -> bool:
    cached = loop._flag_cache.get("diassociative")
    if cached is None:
        cached = _diassociative(loop)
        loop._flag_cache["diassociative"] = cached
    return cached


def _diassociative(loop: FiniteLoop) -> bool:
    for a in loop.elements():
        for b in range(a, loop.order):
            elems = closure_elements(loop, (a, b))
            if not associative_on(loop, elems):
                return False
    return True


# -- identity-scheme scans -----------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of an exhaustive identity scan."""

    scheme: str
    holds: bool
    witness: tuple[int, ...] | None


def satisfies_identity(loop: FiniteLoop, scheme: str) -> IdentityCheck:
    """Scan all variable tuples for the scheme; report the lexicographically
    first violation.

    Witness shapes: (x, y, z) for three-variable schemes, (x, y) for
    two-variable ones, and (a, b, i) for right-power-alternative, meaning
    (a*b^i)*b != a*b^(i+1).
    """
    if scheme not in IDENTITY_SCHEMES:
        raise ValueError(f"unknown identity scheme {scheme!r}")
    cached = loop._scan_cache.get(scheme)
    if cached is not None:
        return cached
    kernel = _SCANNERS[scheme]
    n = loop.order
    threads = _thread_count()
    if threads <= 1 or n < 2 * threads:
        witness = kernel(loop, range(n))
    else:
        bounds = np.linspace(0, n, threads + 1, dtype=int)
        slices = [range(int(bounds[i]), int(bounds[i + 1])) for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            found = [w for w in pool.map(lambda s: kernel(loop, s), slices) if w is not None]
        witness = min(found) if found else None
    result = IdentityCheck(scheme, witness is None, witness)
    loop._scan_cache[scheme] = result
    return result


def is_moufang(loop: FiniteLoop) -> bool:
    return satisfies_identity(loop, "moufang-1").holds


def _first_flat(bad: np.ndarray) -> tuple[int, int]:
    flat = int(np.argmax(bad))
    return flat // bad.shape[1], flat % bad.shape[1]


def _scan_moufang1(loop, xs):
    a = loop.table
    for x in xs:
        row, col = a[x], a[:, x]
        lhs = a[np.ix_(row, col)]
        rhs = col[row[a]]
        bad = lhs != rhs
        if bad.any():
            y, z = _first_flat(bad)
            return (x, y, z)
    return None


def _scan_moufang2(loop, xs):
    a = loop.table
    for x in xs:
        row, col = a[x], a[:, x]
        lhs = a[np.ix_(row, col)]
        rhs = row[col[a]]
        bad = lhs != rhs
        if bad.any():
            y, z = _first_flat(bad)
            return (x, y, z)
    return None


def _scan_moufang3(loop, xs):
    a = loop.table
    n = loop.order
    ar = np.arange(n)
    inner = a[ar[:, None], a.T]  # (y,z) -> y*(z*y)
    for x in xs:
        row = a[x]
        lhs = row[inner]
        rhs = a[a[row], ar[:, None]]
        bad = lhs != rhs
        if bad.any():
            y, z = _first_flat(bad)
            return (x, y, z)
    return None


def _scan_moufang4(loop, xs):
    a = loop.table
    for x in xs:
        row, col = a[x], a[:, x]
        lhs = row[a[:, row]]
        rhs = a[col[row]]
        bad = lhs != rhs
        if bad.any():
            y, z = _first_flat(bad)
            return (x, y, z)
    return None


def _scan_extra(loop, xs):
    a = loop.table
    for x in xs:
        row, col = a[x], a[:, x]
        lhs = row[a[:, col]]
        rhs = col[a[row]]
        bad = lhs != rhs
        if bad.any():
            y, z = _first_flat(bad)
            return (x, y, z)
    return None


def _scan_flexible(loop, xs):
    a = loop.table
    for x in xs:
        row, col = a[x], a[:, x]
        bad = row[col] != col[row]
        if bad.any():
            return (x, int(np.argmax(bad)))
    return None


def _scan_left_inverse(loop, xs):
    a = loop.table
    ar = np.arange(loop.order)
    for x in xs:
        lx = loop.rdiv(0, x)  # 1/x
        bad = a[lx][a[x]] != ar
        if bad.any():
            return (x, int(np.argmax(bad)))
    return None


def _scan_right_inverse(loop, xs):
    a = loop.table
    ar = np.arange(loop.order)
    for x in xs:
        rx = loop.ldiv(x, 0)  # x\1
        bad = a[:, rx][a[:, x]] != ar
        if bad.any():
            return (x, int(np.argmax(bad)))
    return None


def _scan_associative(loop, xs):
    a = loop.table
    for x in xs:
        row = a[x]
        bad = a[row] != row[a]
        if bad.any():
            y, z = _first_flat(bad)
            return (x, y, z)
    return None


def _scan_commutative(loop, xs):
    a = loop.table
    for x in xs:
        bad = a[x] != a[:, x]
        if bad.any():
            return (x, int(np.argmax(bad)))
    return None


def _scan_rpa(loop, bs):
    # (a*b^i)*b = a*b^(i+1) for all a and all i along the right-power cycle of b;
    # iterating this relation recovers the full (a*b^i)*b^j = a*b^(i+j) law.
    a = loop.table
    best = None
    for b in bs:
        powers = [0]
        nxt = loop.mul(0, b)
        while nxt != 0:
            powers.append(nxt)
            nxt = loop.mul(nxt, b)
        m = len(powers)
        col_b = a[:, b]
        for i in range(m):
            lhs = col_b[a[:, powers[i]]]
            rhs = a[:, powers[(i + 1) % m]]
            bad = lhs != rhs
            if bad.any():
                cand = (int(np.argmax(bad)), b, i)
                if best is None or cand < best:
                    best = cand
                break
    return best


_SCANNERS = {
    "moufang-1": _scan_moufang1,
    "moufang-2": _scan_moufang2,
    "moufang-3": _scan_moufang3,
    "moufang-4": _scan_moufang4,
    "extra": _scan_extra,
    "flexible": _scan_flexible,
    "left-inverse": _scan_left_inverse,
    "right-inverse": _scan_right_inverse,
    "associative": _scan_associative,
    "commutative": _scan_commutative,
    "right-power-alternative": _scan_rpa,
}


# -- .loop file format ---------------------------------------------------------


def dump_loop(loop: FiniteLoop) -> str:
    """Serialize to the .loop text format (bit-exact, trailing newline)."""
    lines = [str(loop.order)]
    lines.extend(" ".join(str(int(v)) for v in row) for row in loop.table)
    return "\n".join(lines) + "\n"


def parse_loop(text: str) -> FiniteLoop:
    """Parse the .loop format: order line, then n table rows; '#' lines are comments."""
    if not text.endswith("\n"):
        raise LoopFileError("missing trailing newline")
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    if not lines:
        raise LoopFileError("empty file")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise LoopFileError(f"bad order line {lines[0]!r}") from None
    if n <= 0:
        raise LoopFileError(f"order must be positive, got {n}")
    if len(lines) != n + 1:
        raise LoopFileError(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for k, ln in enumerate(lines[1:], start=1):
        parts = ln.split()
        if len(parts) != n:
            raise LoopFileError(f"row {k - 1} has {len(parts)} entries, expected {n}")
        try:
            rows.append([int(p) for p in parts])
        except ValueError:
            raise LoopFileError(f"row {k - 1} contains a non-integer entry") from None
    arr = np.asarray(rows, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise LoopFileError("entries must lie in [0, n-1]")
    if _find_identity(arr.astype(np.int32)) != 0:
        if _find_identity(arr.astype(np.int32)) is None:
            raise NoTwoSidedIdentity("no element acts as a two-sided identity")
        raise LoopFileError("element 0 must be the identity")
    return FiniteLoop(arr)


def read_loop(path) -> FiniteLoop:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_loop(fh.read())


def write_loop(loop: FiniteLoop, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_loop(loop))
