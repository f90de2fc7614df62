"""Loop constructions: the quadratic-form generator over GF(2) and the
fixture catalog (cyclic/abelian/dihedral/symmetric/alternating groups, the
order-20 Frobenius group, Chein doubles, and the order-120 simple Moufang
loop built from unit Zorn vector matrices over GF(2))."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

import numpy as np

from .core import FiniteLoop, associative_on, is_moufang
from .errors import NotBilinear, SpecInvalid, UnknownFixture
from .subloops import SubloopHandle

FIXTURE_NAMES = (
    "cyclic",
    "abelian",
    "dihedral",
    "symmetric",
    "alternating",
    "frobenius20",
    "chein-double",
    "paige-M2",
)


# -- quadratic forms over GF(2) ------------------------------------------------


@dataclass(frozen=True)
class QuadraticFormGF2:
    """A quadratic form on GF(2)^dim given by its full value table.

    Vectors are encoded as bitmasks (bit k = coordinate u_{k+1}).  The
    associated pairing h(u, v) = q(u+v) - q(u) - q(v) must be bilinear.
    """

    dim: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        size = 1 << self.dim
        if len(self.values) != size:
            raise NotBilinear(f"value table must have {size} entries")
        if any(v not in (0, 1) for v in self.values):
            raise NotBilinear("values must be bits")
        if self.values[0] != 0:
            raise NotBilinear("a quadratic form must vanish at 0")
        h = self._pairing_array()
        idx = np.arange(size)
        sums = h[idx[:, None, None] ^ idx[None, :, None], idx[None, None, :]]
        parts = h[idx[:, None, None], idx[None, None, :]] ^ h[idx[None, :, None], idx[None, None, :]]
        if not (sums == parts).all():
            raise NotBilinear("associated pairing is not bilinear")

    def _pairing_array(self) -> np.ndarray:
        q = np.asarray(self.values, dtype=np.int32)
        idx = np.arange(1 << self.dim)
        return q[idx[:, None] ^ idx[None, :]] ^ q[idx[:, None]] ^ q[idx[None, :]]

    def __call__(self, u: int) -> int:
        return self.values[u]

    def pairing(self, u: int, v: int) -> int:
        return self.values[u ^ v] ^ self.values[u] ^ self.values[v]


def associated_bilinear(form: QuadraticFormGF2) -> tuple[tuple[int, ...], ...]:
    """Full table of the pairing h(u, v) = q(u+v) - q(u) - q(v)."""
    return tuple(tuple(int(x) for x in row) for row in form._pairing_array())


def is_linear(form: QuadraticFormGF2) -> bool:
    """q is additive, equivalently its associated pairing vanishes."""
    return not form._pairing_array().any()


def enumerate_quadratic_forms(dim: int) -> list[QuadraticFormGF2]:
    """All valid quadratic forms on GF(2)^dim (exhaustive; dim <= 3)."""
    if dim > 3:
        raise ValueError("form enumeration is supported for dim <= 3")
    forms = []
    for bits in itertools.product((0, 1), repeat=(1 << dim)):
        try:
            forms.append(QuadraticFormGF2(dim, bits))
        except NotBilinear:
            continue
    return forms


# -- the central-extension generator from a form -------------------------------


@dataclass(frozen=True)
class QuadraticLoopSpec:
    """A commutative group W (by invariant factors) with a designated chain
    F <= B <= W: F of order two, W/B elementary abelian of exponent two."""

    factors: tuple[int, ...]
    b_generators: tuple[int, ...]
    f_generators: tuple[int, ...]


class _AbelianGroup:
    """Mixed-radix arithmetic for a direct product of cyclic groups."""

    def __init__(self, factors):
        factors = tuple(int(f) for f in factors)
        if not factors or any(f < 1 for f in factors):
            raise SpecInvalid("invariant factors must be positive")
        self.factors = factors
        self.order = prod(factors)
        self.weights = [prod(factors[i + 1 :]) for i in range(len(factors))]

    def coords(self, idx: int) -> tuple[int, ...]:
        out = []
        for f, w in zip(self.factors, self.weights):
            out.append((idx // w) % f)
        return tuple(out)

    def index(self, coords) -> int:
        return sum((c % f) * w for c, f, w in zip(coords, self.factors, self.weights))

    def add(self, i: int, j: int) -> int:
        return self.index(a + b for a, b in zip(self.coords(i), self.coords(j)))

    def table(self) -> np.ndarray:
        n = self.order
        return np.asarray(
            [[self.add(i, j) for j in range(n)] for i in range(n)], dtype=np.int32
        )

    def span(self, gens) -> tuple[int, ...]:
        out = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                for g in gens:
                    s = self.add(e, int(g))
                    if s not in out:
                        out.add(s)
                        nxt.append(s)
            frontier = nxt
        return tuple(sorted(out))


@dataclass(frozen=True)
class QuadraticLoopResult:
    """The constructed loop with handles to its 0 x W and 0 x B subloops."""

    loop: FiniteLoop
    w_part: SubloopHandle
    b_part: SubloopHandle


def loop_from_quadratic_form(
    spec: QuadraticLoopSpec, form: QuadraticFormGF2
) -> QuadraticLoopResult:
    """Loop of order 2|W| on pairs (i, u), i in F = {0,1}, u in W, multiplying as

        (i, u) (j, v) = (i + j,  u + v + j q(u) + i h(u, v)),

    where q and h are lifted from W/B and their bit values are embedded as
    the zero / nonzero element of F inside W."""
    w = _AbelianGroup(spec.factors)
    f_set = w.span(spec.f_generators)
    if len(f_set) != 2:
        raise SpecInvalid(f"F must have exactly two elements, got {len(f_set)}")
    f_elem = f_set[1]
    b_set = w.span(spec.b_generators)
    if not set(f_set) <= set(b_set):
        raise SpecInvalid("F must be contained in B")
    b_members = set(b_set)
    for u in range(w.order):
        if w.add(u, u) not in b_members:
            raise SpecInvalid("W/B must be an elementary abelian 2-group")

    # coset of B containing each element, canonicalized by minimal representative
    coset_rep = [-1] * w.order
    reps = []
    for u in range(w.order):
        if coset_rep[u] >= 0:
            continue
        block = sorted(w.add(u, b) for b in b_set)
        for v in block:
            coset_rep[v] = block[0]
        reps.append(block[0])
    m = len(reps).bit_length() - 1
    if (1 << m) != len(reps) or m != form.dim:
        raise SpecInvalid(
            f"form dimension {form.dim} does not match W/B of size {len(reps)}"
        )

    # greedy GF(2) coordinates on W/B: walk cosets by minimal representative,
    # adjoining each new coset as the next basis vector
    coord_of = {reps[0]: 0}
    basis_used = 0
    for r in reps[1:]:
        if r in coord_of:
            continue
        bit = 1 << basis_used
        basis_used += 1
        for rep, c in list(coord_of.items()):
            coord_of[coset_rep[w.add(rep, r)]] = c | bit
    if basis_used != m:
        raise SpecInvalid("coset coordinates do not span W/B")

    q_of = [form(coord_of[coset_rep[u]]) for u in range(w.order)]

    def h_of(u: int, v: int) -> int:
        return form.pairing(coord_of[coset_rep[u]], coord_of[coset_rep[v]])

    nw = w.order
    n = 2 * nw
    table = np.empty((n, n), dtype=np.int32)
    for i in (0, 1):
        for u in range(nw):
            row = i * nw + u
            for j in (0, 1):
                for v in range(nw):
                    val = w.add(u, v)
                    if j and q_of[u]:
                        val = w.add(val, f_elem)
                    if i and h_of(u, v):
                        val = w.add(val, f_elem)
                    table[row, j * nw + v] = (i ^ j) * nw + val
    loop = FiniteLoop(table)
    w_part = SubloopHandle(loop, tuple(range(nw)))
    b_part = SubloopHandle(loop, b_set)
    return QuadraticLoopResult(loop, w_part, b_part)


# -- fixture catalog -------------------------------------------------------------


def cyclic_group(n: int) -> FiniteLoop:
    if n < 1:
        raise SpecInvalid("cyclic order must be positive")
    ar = np.arange(n, dtype=np.int32)
    return FiniteLoop((ar[:, None] + ar[None, :]) % n)


def abelian_group(factors) -> FiniteLoop:
    return FiniteLoop(_AbelianGroup(factors).table())


def dihedral_group(n: int) -> FiniteLoop:
    """Dihedral group of order 2n; rotations first, then reflections."""
    if n < 1:
        raise SpecInvalid("dihedral parameter must be positive")
    size = 2 * n
    table = np.empty((size, size), dtype=np.int32)
    for e1 in (0, 1):
        for i in range(n):
            for e2 in (0, 1):
                for j in range(n):
                    if e1 == 0 and e2 == 0:
                        r, k = 0, (i + j) % n
                    elif e1 == 0 and e2 == 1:
                        r, k = 1, (j - i) % n
                    elif e1 == 1 and e2 == 0:
                        r, k = 1, (i + j) % n
                    else:
                        r, k = 0, (j - i) % n
                    table[e1 * n + i, e2 * n + j] = r * n + k
    return FiniteLoop(table)


def _perm_table(perms) -> FiniteLoop:
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    table = np.empty((size, size), dtype=np.int32)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[k]] for k in range(len(p)))]
    return FiniteLoop(table)


def symmetric_group(n: int) -> FiniteLoop:
    if not 1 <= n <= 5:
        raise SpecInvalid("symmetric groups are provided for 1 <= n <= 5")
    return _perm_table(sorted(itertools.permutations(range(n))))


def _is_even(p) -> bool:
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            inv += p[i] > p[j]
    return inv % 2 == 0


def alternating_group(n: int) -> FiniteLoop:
    if n not in (4, 5):
        raise SpecInvalid("alternating groups are provided for n in {4, 5}")
    return _perm_table(sorted(p for p in itertools.permutations(range(n)) if _is_even(p)))


def frobenius_group_20() -> FiniteLoop:
    """The Frobenius group of order 20 (C5 acted on faithfully by C4)."""
    table = np.empty((20, 20), dtype=np.int32)
    pw = [1, 2, 4, 3]  # powers of 2 mod 5
    for i in range(5):
        for j in range(4):
            for k in range(5):
                for l in range(4):
                    table[i * 4 + j, k * 4 + l] = ((i + pw[j] * k) % 5) * 4 + (j + l) % 4
    return FiniteLoop(table)


def chein_double(group: FiniteLoop) -> FiniteLoop:
    """The Moufang loop on G u Gu doubling a group G (nonassociative iff G is)."""
    n = group.order
    if not associative_on(group, range(n)):
        raise SpecInvalid("the Chein double is defined over a group")
    inv = [group.inv(g) for g in range(n)]
    table = np.empty((2 * n, 2 * n), dtype=np.int32)
    for g in range(n):
        for h in range(n):
            table[g, h] = group.mul(g, h)
            table[g, n + h] = n + group.mul(h, g)
            table[n + g, h] = n + group.mul(g, inv[h])
            table[n + g, n + h] = group.mul(inv[h], g)
    loop = FiniteLoop(table)
    assert is_moufang(loop)
    return loop


def _dot(v: int, w: int) -> int:
    return bin(v & w).count("1") & 1


def _cross(v: int, w: int) -> int:
    v1, v2, v3 = v & 1, (v >> 1) & 1, (v >> 2) & 1
    w1, w2, w3 = w & 1, (w >> 1) & 1, (w >> 2) & 1
    return ((v2 & w3) ^ (v3 & w2)) | (((v3 & w1) ^ (v1 & w3)) << 1) | (((v1 & w2) ^ (v2 & w1)) << 2)


def paige_loop() -> FiniteLoop:
    """Order-120 simple Moufang loop of unit Zorn vector matrices over GF(2).

    Elements are (a, v, w, b) with a, b scalars and v, w vectors in GF(2)^3,
    subject to ab - v.w = 1; the identity matrix is listed first.
    """
    elems = []
    for a in (0, 1):
        for v in range(8):
            for w in range(8):
                for b in (0, 1):
                    if ((a & b) ^ _dot(v, w)) == 1:
                        elems.append((a, v, w, b))
    ident = (1, 0, 0, 1)
    elems.remove(ident)
    elems = [ident] + sorted(elems)
    index = {e: i for i, e in enumerate(elems)}

    def mul(x, y):
        a1, v1, w1, b1 = x
        a2, v2, w2, b2 = y
        a3 = (a1 & a2) ^ _dot(v1, w2)
        v3 = (v2 if a1 else 0) ^ (v1 if b2 else 0) ^ _cross(w1, w2)
        w3 = (w1 if a2 else 0) ^ (w2 if b1 else 0) ^ _cross(v1, v2)
        b3 = (b1 & b2) ^ _dot(w1, v2)
        return (a3, v3, w3, b3)

    size = len(elems)
    table = np.empty((size, size), dtype=np.int32)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            table[i, j] = index[mul(x, y)]
    loop = FiniteLoop(table)
    assert is_moufang(loop)
    return loop


def fixture(name: str, *args) -> FiniteLoop:
    """Build a catalog loop by name; see FIXTURE_NAMES."""
    if name == "cyclic":
        return cyclic_group(*args)
    if name == "abelian":
        return abelian_group(args[0] if len(args) == 1 and not isinstance(args[0], int) else args)
    if name == "dihedral":
        return dihedral_group(*args)
    if name == "symmetric":
        return symmetric_group(*args)
    if name == "alternating":
        return alternating_group(*args)
    if name == "frobenius20":
        return frobenius_group_20()
    if name == "chein-double":
        base = args[0]
        if isinstance(base, str):
            base = fixture_from_text(base)
        return chein_double(base)
    if name == "paige-M2":
        return paige_loop()
    raise UnknownFixture(f"unknown fixture {name!r}")


def fixture_from_text(text: str) -> FiniteLoop:
    """Parse fixture descriptions like 'cyclic(7)', 'abelian(2,4)', or
    'chein-double(dihedral(5))'."""
    text = text.strip()
    if "(" not in text:
        return fixture(text)
    name, _, rest = text.partition("(")
    if not rest.endswith(")"):
        raise UnknownFixture(f"unbalanced parentheses in {text!r}")
    inner = rest[:-1].strip()
    name = name.strip()
    if name == "chein-double":
        return fixture(name, fixture_from_text(inner))
    try:
        params = [int(p) for p in inner.split(",")] if inner else []
    except ValueError:
        raise UnknownFixture(f"bad parameters in {text!r}") from None
    return fixture(name, *params)
