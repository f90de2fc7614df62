"""Translations, inner mappings, pseudoautomorphisms and their group law,
semiautomorphisms, autotopisms, and the triality condition on the commutant.

Maps compose right-to-left throughout: (f g)(x) = f(g(x)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FiniteLoop, is_diassociative, is_moufang
from .errors import (
    CapExceeded,
    NotAutotopism,
    NotDiassociative,
    NotMoufang,
    NotPseudoautomorphism,
)
from .subloops import distinguished_subloop

TRANSLATION_KINDS = ("L", "R", "T", "M")


class ElementMap:
    """A function on the elements of a loop, stored as an image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(int(v) for v in images)

    @classmethod
    def identity(cls, n: int) -> "ElementMap":
        return cls(range(n))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_permutation(self) -> bool:
        return sorted(self.images) == list(range(len(self.images)))

    def compose(self, other: "ElementMap") -> "ElementMap":
        """self after other: (self compose other)(x) = self(other(x))."""
        return ElementMap(self.images[v] for v in other.images)

    def inverse(self) -> "ElementMap":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return ElementMap(inv)

    def array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int32)

    def __eq__(self, other) -> bool:
        return isinstance(other, ElementMap) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"ElementMap({list(self.images)})"


@dataclass(frozen=True)
class PseudoautomorphismPair:
    """A certified pair (companion, map) satisfying c f(x) * f(y) = c f(xy)."""

    companion: int
    map: ElementMap


@dataclass(frozen=True)
class MapTriple:
    """Three permutations (f, g, h); certified ones satisfy f(x) g(y) = h(xy)."""

    f: ElementMap
    g: ElementMap
    h: ElementMap


# -- translations and inner mappings -------------------------------------------


def translation(loop: FiniteLoop, kind: str, x: int) -> ElementMap:
    """L_x, R_x, the conjugation-like T_x = R_x^-1 L_x, or M_x = R_x L_x."""
    a = loop.table
    if kind == "L":
        return ElementMap(a[x])
    if kind == "R":
        return ElementMap(a[:, x])
    if kind == "T":
        return ElementMap(loop.rdiv_table[a[x], x])
    if kind == "M":
        return ElementMap(a[a[x], x])
    raise ValueError(f"translation kind must be one of {TRANSLATION_KINDS}, got {kind!r}")


def inner_generator(loop: FiniteLoop, kind: str, x: int, y: int) -> ElementMap:
    """L_{x,y} = L_{xy}^-1 L_x L_y or R_{x,y} = R_{xy}^-1 R_y R_x."""
    a, ld, rd = loop.table, loop.ldiv_table, loop.rdiv_table
    if kind == "L":
        return ElementMap(ld[a[x, y], a[x][a[y]]])
    if kind == "R":
        return ElementMap(rd[a[a[:, x], y], a[x, y]])
    raise ValueError(f"inner generator kind must be 'L' or 'R', got {kind!r}")


def inner_mapping_group(loop: FiniteLoop, cap: int = 1 << 20) -> frozenset[ElementMap]:
    """Breadth-first closure of {T_x, L_{x,y}, R_{x,y}} under composition."""
    n = loop.order
    gens: set[tuple[int, ...]] = set()
    for x in range(n):
        gens.add(translation(loop, "T", x).images)
        for y in range(n):
            gens.add(inner_generator(loop, "L", x, y).images)
            gens.add(inner_generator(loop, "R", x, y).images)
    ident = tuple(range(n))
    seen: set[tuple[int, ...]] = {ident} | gens
    if len(seen) > cap:
        raise CapExceeded(len(seen))
    frontier = list(seen)
    gen_list = [np.asarray(g, dtype=np.int32) for g in gens]
    while frontier:
        fresh = []
        for m in frontier:
            marr = np.asarray(m, dtype=np.int32)
            for g in gen_list:
                c = tuple(int(v) for v in g[marr])
                if c not in seen:
                    seen.add(c)
                    if len(seen) > cap:
                        raise CapExceeded(len(seen))
                    fresh.append(c)
        frontier = fresh
    return frozenset(ElementMap(t) for t in seen)


# -- pseudoautomorphisms ---------------------------------------------------------


def is_pseudoautomorphism(loop: FiniteLoop, companion: int, f: ElementMap) -> bool:
    """Full scan of c f(x) * f(y) = c f(xy)."""
    if not f.is_permutation():
        return False
    a = loop.table
    fi = f.array()
    lhs = a[np.ix_(a[companion, fi], fi)]
    rhs = a[companion][fi[a]]
    return bool((lhs == rhs).all())


def pseudoautomorphism(loop: FiniteLoop, companion: int, f: ElementMap) -> PseudoautomorphismPair:
    if not is_pseudoautomorphism(loop, companion, f):
        raise NotPseudoautomorphism(f"companion {companion} fails certification")
    return PseudoautomorphismPair(companion, f)


def lps_compose(
    loop: FiniteLoop, p1: PseudoautomorphismPair, p2: PseudoautomorphismPair
) -> PseudoautomorphismPair:
    """(c, f)(d, g) = (c f(d), f g), re-certified."""
    return pseudoautomorphism(
        loop, loop.mul(p1.companion, p1.map(p2.companion)), p1.map.compose(p2.map)
    )


def lps_inverse(loop: FiniteLoop, p: PseudoautomorphismPair) -> PseudoautomorphismPair:
    """(c, f)^-1 = (f^-1(c \\ 1), f^-1), re-certified."""
    finv = p.map.inverse()
    return pseudoautomorphism(loop, finv(loop.ldiv(p.companion, 0)), finv)


def is_semiautomorphism(loop: FiniteLoop, f: ElementMap) -> bool:
    """f(1) = 1 and f(x * yx) = f(x) * f(y)f(x), scanned over all pairs."""
    if not f.is_permutation() or f(0) != 0:
        return False
    a = loop.table
    n = loop.order
    fi = f.array()
    ar = np.arange(n)
    lhs = fi[a[ar[:, None], a.T]]
    rhs = a[fi[:, None], a[np.ix_(fi, fi)].T]
    return bool((lhs == rhs).all())


# -- autotopisms -----------------------------------------------------------------


def is_autotopism(loop: FiniteLoop, triple: MapTriple) -> bool:
    """Full scan of f(x) g(y) = h(xy)."""
    if not (triple.f.is_permutation() and triple.g.is_permutation() and triple.h.is_permutation()):
        return False
    a = loop.table
    lhs = a[np.ix_(triple.f.array(), triple.g.array())]
    rhs = triple.h.array()[a]
    return bool((lhs == rhs).all())


def autotopism(loop: FiniteLoop, f: ElementMap, g: ElementMap, h: ElementMap) -> MapTriple:
    t = MapTriple(f, g, h)
    if not is_autotopism(loop, t):
        raise NotAutotopism("triple fails certification")
    return t


def atp_compose(t1: MapTriple, t2: MapTriple) -> MapTriple:
    return MapTriple(t1.f.compose(t2.f), t1.g.compose(t2.g), t1.h.compose(t2.h))


def atp_inverse(t: MapTriple) -> MapTriple:
    return MapTriple(t.f.inverse(), t.g.inverse(), t.h.inverse())


def moufang_autotopisms(loop: FiniteLoop, x: int) -> tuple[MapTriple, ...]:
    """The four certified autotopism triples built from L_x, R_x, M_x."""
    if not is_moufang(loop):
        raise NotMoufang("the loop fails the Moufang identities")
    lx = translation(loop, "L", x)
    rx = translation(loop, "R", x)
    mx = translation(loop, "M", x)
    lxi, rxi, mxi = lx.inverse(), rx.inverse(), mx.inverse()
    return (
        autotopism(loop, lx, rx, mx),
        autotopism(loop, lxi, rxi, mxi),
        autotopism(loop, rx, mxi, rxi),
        autotopism(loop, rxi, mx, rx),
    )


# -- triality on the commutant ---------------------------------------------------


@dataclass(frozen=True)
class TrialityReport:
    """Whether every commutant element cubes to the identity, a violating
    element otherwise, and whether the nucleus is trivial."""

    holds: bool
    witness: int | None
    trivial_nucleus: bool


def triality_condition(loop: FiniteLoop) -> TrialityReport:
    if not is_diassociative(loop):
        raise NotDiassociative("triality condition requires a diassociative loop")
    witness = None
    for x in distinguished_subloop(loop, "commutant"):
        if loop.power(x, 3) != 0:
            witness = x
            break
    trivial = distinguished_subloop(loop, "nucleus") == (0,)
    return TrialityReport(witness is None, witness, trivial)


#: Token map swapping translation families: L_x -> R_x, R_x -> M_x^-1 (and
#: inverses accordingly).  Tokens are (kind, x, power) with power +1 or -1.
def triality_token_image(token: tuple[str, int, int]) -> tuple[str, int, int]:
    kind, x, e = token
    if kind == "L":
        return ("R", x, e)
    if kind == "R":
        return ("M", x, -e)
    raise ValueError(f"token kind must be 'L' or 'R', got {kind!r}")


def realize_token(loop: FiniteLoop, token: tuple[str, int, int]) -> ElementMap:
    kind, x, e = token
    m = translation(loop, kind, x)
    return m if e == 1 else m.inverse()


def triality_map_well_defined(loop: FiniteLoop) -> tuple[bool, tuple | None]:
    """Do tokens realizing the same permutation have images realizing the same
    permutation?  Returns (ok, conflicting token pair)."""
    by_perm: dict[tuple[int, ...], tuple] = {}
    for x in loop.elements():
        for kind in ("L", "R"):
            for e in (1, -1):
                token = (kind, x, e)
                key = realize_token(loop, token).images
                other = by_perm.get(key)
                if other is None:
                    by_perm[key] = token
                    continue
                img1 = realize_token(loop, triality_token_image(token)).images
                img2 = realize_token(loop, triality_token_image(other)).images
                if img1 != img2:
                    return False, (other, token)
    return True, None
