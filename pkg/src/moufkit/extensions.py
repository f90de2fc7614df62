"""Central and abelian extensions over a commutative-group kernel.

An extension datum assigns to every factor pair (r, s) two kernel
automorphisms and a kernel element; the loop on factor x kernel multiplies as

    (r, x) (s, y) = (rs,  phi[r][s](x) + psi[r][s](y) + theta[r][s]).

Decomposition forces the datum from the table by specializing y = 1 and
x = 1, then certifies it with a full four-variable scan, so it succeeds
exactly when the kernel induces an abelian congruence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FiniteLoop, associative_on, commutative_on, is_moufang
from .errors import (
    InvalidExtensionData,
    KernelNot2Divisible,
    KernelNotCommutativeGroup,
    LoopError,
    NoCubeRoot,
    Not3Divisible,
    NotALoop,
    NotMoufang,
    NotNormal,
    RestrictionNotAutomorphism,
)
from .subloops import SubloopHandle, cosets, quotient, transversal


@dataclass(frozen=True)
class ExtensionData:
    """Validated (factor, kernel, phi, psi, theta) tables.

    phi[r][s] and psi[r][s] are permutations of the kernel given as image
    tuples; theta[r][s] is a kernel element.  Boundary conditions pin
    phi[r][1] = id = psi[1][r] and theta[1][r] = 0 = theta[r][1].
    """

    factor: FiniteLoop
    kernel: FiniteLoop
    phi: tuple[tuple[tuple[int, ...], ...], ...]
    psi: tuple[tuple[tuple[int, ...], ...], ...]
    theta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k, m = self.factor.order, self.kernel.order
        if not (
            commutative_on(self.kernel, range(m)) and associative_on(self.kernel, range(m))
        ):
            raise InvalidExtensionData("kernel must be a commutative group")

        def norm3(tbl):
            return tuple(tuple(tuple(int(v) for v in cell) for cell in row) for row in tbl)

        object.__setattr__(self, "phi", norm3(self.phi))
        object.__setattr__(self, "psi", norm3(self.psi))
        object.__setattr__(
            self, "theta", tuple(tuple(int(v) for v in row) for row in self.theta)
        )
        if len(self.phi) != k or len(self.psi) != k or len(self.theta) != k:
            raise InvalidExtensionData("tables must be indexed by factor pairs")
        ident = tuple(range(m))
        for r in range(k):
            if len(self.phi[r]) != k or len(self.psi[r]) != k or len(self.theta[r]) != k:
                raise InvalidExtensionData("tables must be square over the factor")
            if self.phi[r][0] != ident:
                raise InvalidExtensionData(f"phi[{r}][identity] must be the identity map")
            if self.psi[0][r] != ident:
                raise InvalidExtensionData(f"psi[identity][{r}] must be the identity map")
            if self.theta[r][0] != 0 or self.theta[0][r] != 0:
                raise InvalidExtensionData("theta must vanish on identity pairs")
        for r in range(k):
            for s in range(k):
                for name, cell in (("phi", self.phi[r][s]), ("psi", self.psi[r][s])):
                    if not _is_automorphism(self.kernel, cell):
                        raise InvalidExtensionData(
                            f"{name}[{r}][{s}] is not an automorphism of the kernel"
                        )

    def to_json_dict(self) -> dict:
        return {
            "factor": [[int(v) for v in row] for row in self.factor.table],
            "kernel": [[int(v) for v in row] for row in self.kernel.table],
            "phi": [[list(cell) for cell in row] for row in self.phi],
            "psi": [[list(cell) for cell in row] for row in self.psi],
            "theta": [list(row) for row in self.theta],
        }


def _is_automorphism(kernel: FiniteLoop, images) -> bool:
    arr = np.asarray(images, dtype=np.int32)
    if sorted(int(v) for v in arr) != list(range(kernel.order)):
        return False
    t = kernel.table
    return bool((arr[t] == t[np.ix_(arr, arr)]).all())


def build_extension(data: ExtensionData) -> FiniteLoop:
    """The loop on factor x kernel defined by the datum; identity is (1, 0)."""
    f, x = data.factor, data.kernel
    k, m = f.order, x.order
    table = np.empty((k * m, k * m), dtype=np.int32)
    xt = x.table
    for r in range(k):
        for s in range(k):
            phi = np.asarray(data.phi[r][s], dtype=np.int32)
            psi = np.asarray(data.psi[r][s], dtype=np.int32)
            combo = xt[:, data.theta[r][s]][xt[np.ix_(phi, psi)]]
            table[r * m : (r + 1) * m, s * m : (s + 1) * m] = f.mul(r, s) * m + combo
    try:
        return FiniteLoop(table)
    except LoopError as exc:  # cannot happen when the invariants hold
        raise NotALoop(str(exc)) from exc


# -- decomposition over a normal abelian subloop -----------------------------------


def _aligned_transversal(loop: FiniteLoop, x: SubloopHandle, u):
    """Representatives indexed by quotient class, validated against the cosets."""
    blocks = cosets(loop, x)
    if u is None:
        return [b[0] for b in blocks]
    u = list(int(v) for v in u)
    if len(u) != len(blocks):
        raise ValueError("transversal size does not match the coset count")
    by_class: list[int | None] = [None] * len(blocks)
    owner = {}
    for ci, block in enumerate(blocks):
        for e in block:
            owner[e] = ci
    for v in u:
        ci = owner[v]
        if by_class[ci] is not None:
            raise ValueError("transversal hits a coset twice")
        by_class[ci] = v
    if by_class[0] != 0:
        raise ValueError("the transversal must contain the identity")
    return by_class


def decompose_detail(
    loop: FiniteLoop,
    x: SubloopHandle,
    u=None,
    central: bool = False,
) -> tuple[ExtensionData | None, str | None]:
    """Force (phi, psi, theta) over the transversal and certify the extension
    law by a full (r, s, x, y) scan; on failure report the first violated
    constraint instead of data."""
    if not x.is_commutative_group():
        raise KernelNotCommutativeGroup(f"{x.elements} is not a commutative group")
    qr = quotient(loop, x)  # raises NotNormal
    reps = _aligned_transversal(loop, x, u)
    a = loop.table
    ld = loop.ldiv_table
    f = qr.quotient
    k = f.order
    xs = np.asarray(x.elements, dtype=np.int32)
    m = xs.size
    pos = np.full(loop.order, -1, dtype=np.int32)
    pos[xs] = np.arange(m, dtype=np.int32)
    kernel = x.as_loop()
    kt = kernel.table
    kinv = kernel.ldiv_table[:, 0]
    ident = tuple(range(m))

    phi = [[ident] * k for _ in range(k)]
    psi = [[ident] * k for _ in range(k)]
    theta = [[0] * k for _ in range(k)]
    for r in range(k):
        ur = reps[r]
        for s in range(k):
            us = reps[s]
            urs = reps[f.mul(r, s)]
            th = pos[ld[urs, a[ur, us]]]
            theta[r][s] = int(th)
            if central:
                continue
            phi_raw = pos[ld[urs, a[a[ur, xs], us]]]
            psi_raw = pos[ld[urs, a[ur, a[us, xs]]]]
            phi_cell = kt[phi_raw, kinv[th]]
            psi_cell = kt[psi_raw, kinv[th]]
            for name, cell in (("phi", phi_cell), ("psi", psi_cell)):
                if not _is_automorphism(kernel, cell):
                    return None, f"{name}[{r}][{s}] is not an automorphism of the kernel"
            phi[r][s] = tuple(int(v) for v in phi_cell)
            psi[r][s] = tuple(int(v) for v in psi_cell)

    for r in range(k):
        ur = reps[r]
        for s in range(k):
            us = reps[s]
            urs = reps[f.mul(r, s)]
            lhs = a[np.ix_(a[ur, xs], a[us, xs])]
            combo = kt[:, theta[r][s]][
                kt[np.ix_(np.asarray(phi[r][s]), np.asarray(psi[r][s]))]
            ]
            rhs = a[urs, xs[combo]]
            if not (lhs == rhs).all():
                bad = np.argwhere(lhs != rhs)[0]
                return None, (
                    f"extension law fails at cell ({r},{s}) on kernel pair "
                    f"({int(bad[0])},{int(bad[1])})"
                )
    data = ExtensionData(f, kernel, tuple(map(tuple, phi)), tuple(map(tuple, psi)), tuple(map(tuple, theta)))
    return data, None


def decompose(loop: FiniteLoop, x: SubloopHandle, u=None) -> ExtensionData | None:
    """Extension datum over the transversal, or None if X is not abelian in Q."""
    data, _ = decompose_detail(loop, x, u)
    return data


def decompose_central(loop: FiniteLoop, x: SubloopHandle, u=None) -> ExtensionData | None:
    """Decompose with phi and psi pinned to the identity; succeeds iff X is central."""
    from .subloops import distinguished_subloop

    data, _ = decompose_detail(loop, x, u, central=True)
    in_center = set(x.elements) <= set(distinguished_subloop(loop, "center"))
    assert (data is not None) == in_center, "central decomposition disagrees with the center"
    return data


# -- constructive maps in divisible Moufang loops -----------------------------------


def is_d_divisible(loop: FiniteLoop, d: int) -> bool:
    return len({loop.power(a, d) for a in loop.elements()}) == loop.order


def cube_root(loop: FiniteLoop, u: int) -> int:
    """Minimal a with a^3 = u."""
    for a in loop.elements():
        if loop.power(a, 3) == u:
            return a
    raise NoCubeRoot(u)


def _restricted_map(xs, pos, images, name: str) -> np.ndarray:
    if (pos[images] < 0).any():
        raise RestrictionNotAutomorphism(f"{name} does not map the kernel to itself")
    return pos[images]


def moufang_extension_maps(
    loop: FiniteLoop, x: SubloopHandle, u, r: int, s: int
) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """The constructive (phi, psi, theta) for one transversal cell of a
    3-divisible Moufang loop over a 2-divisible commutative-group kernel.

    Composites of four restricted translations: with z the kernel part of rs,

        f1 = T_s|_X,  f2 = (L_{s^-1 r}^-1 L_s^-1 L_r)|_X,
        f3 = (L_{rs}^-1 L_r L_s)|_X,  f4 = (L_z^-1 L_u^-1 L_{rs})|_X,

    phi = f4 f3 f1^-1 f2, psi = f4 f3, theta = z.  Each restriction is
    certified to be an automorphism of the kernel."""
    if not is_moufang(loop):
        raise NotMoufang("the loop fails the Moufang identities")
    if not is_d_divisible(loop, 3):
        raise Not3Divisible("some element has no cube root")
    if not x.is_commutative_group():
        raise KernelNotCommutativeGroup(f"{x.elements} is not a commutative group")
    kernel = x.as_loop()
    if not is_d_divisible(kernel, 2):
        raise KernelNot2Divisible("some kernel element has no square root")
    reps = _aligned_transversal(loop, x, u)  # raises via cosets when malformed
    if r not in reps or s not in reps:
        raise ValueError("r and s must be transversal representatives")
    a = loop.table
    ld, rd = loop.ldiv_table, loop.rdiv_table
    xs = np.asarray(x.elements, dtype=np.int32)
    pos = np.full(loop.order, -1, dtype=np.int32)
    pos[xs] = np.arange(xs.size, dtype=np.int32)

    qr = quotient(loop, x)
    rs = loop.mul(r, s)
    u_rs = reps[qr.projection[rs]]
    z = loop.ldiv(u_rs, rs)

    sinv = loop.inv(s)
    sr = loop.mul(sinv, r)
    f1 = _restricted_map(xs, pos, rd[a[s, xs], s], "T_s")
    f2 = _restricted_map(xs, pos, ld[sr, ld[s, a[r, xs]]], "f2")
    f3 = _restricted_map(xs, pos, ld[rs, a[r, a[s, xs]]], "f3")
    f4 = _restricted_map(xs, pos, ld[z, ld[u_rs, a[rs, xs]]], "f4")
    for name, m in (("T_s", f1), ("f2", f2), ("f3", f3), ("f4", f4)):
        if not _is_automorphism(kernel, m):
            raise RestrictionNotAutomorphism(f"{name} is not an automorphism of the kernel")
    f1_inv = np.empty_like(f1)
    f1_inv[f1] = np.arange(f1.size, dtype=f1.dtype)
    phi = f4[f3[f1_inv[f2]]]
    psi = f4[f3]
    return tuple(int(v) for v in phi), tuple(int(v) for v in psi), int(pos[z])


def extension_cell_holds(
    loop: FiniteLoop,
    x: SubloopHandle,
    u,
    r: int,
    s: int,
    phi,
    psi,
    theta: int,
) -> bool:
    """Does rx * sy = u_{r,s} (phi(x) psi(y) theta) hold for all kernel x, y?"""
    reps = _aligned_transversal(loop, x, u)
    qr = quotient(loop, x)
    a = loop.table
    xs = np.asarray(x.elements, dtype=np.int32)
    kernel = x.as_loop()
    kt = kernel.table
    u_rs = reps[qr.projection[loop.mul(r, s)]]
    lhs = a[np.ix_(a[r, xs], a[s, xs])]
    combo = kt[:, int(theta)][kt[np.ix_(np.asarray(phi), np.asarray(psi))]]
    rhs = a[u_rs, xs[combo]]
    return bool((lhs == rhs).all())
