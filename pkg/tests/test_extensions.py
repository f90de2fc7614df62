"""Building and decomposing central/abelian extensions, the constructive
maps for divisible Moufang loops, and cube roots."""

import itertools
import random

import numpy as np
import pytest

import moufkit as mk
from moufkit.core import associative_on, commutative_on
from moufkit.errors import (
    InvalidExtensionData,
    KernelNot2Divisible,
    KernelNotCommutativeGroup,
    NoCubeRoot,
    Not3Divisible,
    NotMoufang,
)

from conftest import (
    MOUFANG_NAMES,
    NON_POWER_ASSOCIATIVE_5,
    build,
    names_with_order_at_most,
    quadratic_example,
    random_transversal,
    whole_handle,
)


def _identity_tables(k: int, m: int):
    ident = tuple(range(m))
    return tuple(tuple(ident for _ in range(k)) for _ in range(k))


def _zero_theta(k: int):
    return tuple(tuple(0 for _ in range(k)) for _ in range(k))


def test_trivial_data_builds_direct_product():
    f, x = build("c2"), build("c3")
    data = mk.ExtensionData(f, x, _identity_tables(2, 3), _identity_tables(2, 3), _zero_theta(2))
    loop = mk.build_extension(data)
    expected = [
        [f.mul(r, s) * 3 + x.mul(a, b) for s in range(2) for b in range(3)]
        for r in range(2)
        for a in range(3)
    ]
    assert np.array_equal(loop.table, np.array(expected))


def test_extension_data_validation():
    f, x = build("c2"), build("c3")
    good_phi = _identity_tables(2, 3)
    with pytest.raises(InvalidExtensionData):  # kernel must be commutative group
        mk.ExtensionData(build("c2"), build("s3"), *(_identity_tables(2, 6),) * 2, _zero_theta(2))
    bad_theta = ((0, 1), (0, 0))
    with pytest.raises(InvalidExtensionData):
        mk.ExtensionData(f, x, good_phi, good_phi, bad_theta)
    swapped = tuple(
        tuple((0, 2, 1) if (r, s) == (1, 0) else tuple(range(3)) for s in range(2))
        for r in range(2)
    )
    with pytest.raises(InvalidExtensionData):  # phi[r][identity] must be id
        mk.ExtensionData(f, x, swapped, good_phi, _zero_theta(2))
    not_perm = tuple(
        tuple((0, 0, 1) if (r, s) == (1, 1) else tuple(range(3)) for s in range(2))
        for r in range(2)
    )
    with pytest.raises(InvalidExtensionData):
        mk.ExtensionData(f, x, not_perm, good_phi, _zero_theta(2))


def test_central_cocycles_over_klein_four_give_all_order8_central_extensions():
    # exhaust all boundary-normalized theta tables with values in C2
    f, x = build("c2xc2"), build("c2")
    ident = _identity_tables(4, 2)
    seen = set()
    for bits in itertools.product((0, 1), repeat=9):
        theta = [[0] * 4 for _ in range(4)]
        it = iter(bits)
        for r in range(1, 4):
            for s in range(1, 4):
                theta[r][s] = next(it)
        data = mk.ExtensionData(f, x, ident, ident, tuple(map(tuple, theta)))
        loop = mk.build_extension(data)
        assert loop.order == 8
        if not associative_on(loop, range(8)):
            continue
        involutions = sum(1 for a in loop.elements() if loop.element_order(a) == 2)
        commutative = commutative_on(loop, range(8))
        seen.add((commutative, involutions))
    # C2^3, C4xC2, D4, Q8 in involution-count signature
    assert (True, 7) in seen
    assert (True, 3) in seen
    assert (False, 5) in seen
    assert (False, 1) in seen


def test_decompose_whole_loop_gives_trivial_factor():
    c6 = build("c6")
    data = mk.decompose(c6, whole_handle(c6))
    assert data is not None
    assert data.factor.order == 1
    assert data.kernel == c6


def test_decompose_rejects_bad_kernel():
    s3 = build("s3")
    with pytest.raises(KernelNotCommutativeGroup):
        mk.decompose(s3, whole_handle(s3))


def test_decompose_quadratic_loop_fails_with_reason():
    res = quadratic_example("a")
    data, reason = mk.decompose_detail(res.loop, res.w_part)
    assert data is None
    assert reason == "phi[0][1] is not an automorphism of the kernel"


def test_decompose_chein_double_over_rotations():
    md5 = build("md5")
    x = mk.generated_subloop(md5, {1})
    assert len(x) == 5
    data = mk.decompose(md5, x)
    assert data is not None
    assert mk.is_abelian_in(md5, x)


def test_round_trip_rebuilds_table():
    f, x = build("c2xc2"), build("c3")
    rng = random.Random(0x5EED)
    auts = _automorphisms(x)
    for _ in range(5):
        data = _random_data(f, x, auts, rng)
        loop = mk.build_extension(data)
        kernel_copy = mk.SubloopHandle(loop, tuple(range(x.order)))
        again = mk.decompose(loop, kernel_copy)
        assert again is not None
        assert mk.build_extension(again) == loop
        assert again.theta == data.theta and again.phi == data.phi and again.psi == data.psi


def _automorphisms(kernel):
    n = kernel.order
    out = []
    for rest in itertools.permutations(range(1, n)):
        images = (0,) + rest
        if all(
            images[kernel.mul(a, b)] == kernel.mul(images[a], images[b])
            for a in range(n)
            for b in range(n)
        ):
            out.append(images)
    return out


def _random_data(f, x, auts, rng):
    k, m = f.order, x.order
    ident = tuple(range(m))
    phi = [[ident] * k for _ in range(k)]
    psi = [[ident] * k for _ in range(k)]
    theta = [[0] * k for _ in range(k)]
    for r in range(k):
        for s in range(k):
            if s:
                phi[r][s] = rng.choice(auts)
            if r:
                psi[r][s] = rng.choice(auts)
            if r and s:
                theta[r][s] = rng.randrange(m)
    return mk.ExtensionData(
        f, x, tuple(map(tuple, phi)), tuple(map(tuple, psi)), tuple(map(tuple, theta))
    )


@pytest.mark.parametrize("name", names_with_order_at_most(24))
def test_decompose_succeeds_iff_abelian_in(name):
    loop = build(name)
    for x in mk.all_normal_subloops(loop, cap=24):
        if not x.is_commutative_group():
            continue
        data = mk.decompose(loop, x)
        assert (data is not None) == mk.is_abelian_in(loop, x)
        if data is not None:
            assert mk.build_extension(data).order == loop.order


@pytest.mark.parametrize("name", names_with_order_at_most(24))
def test_nuclear_abelian_normal_subloops_decompose(name):
    loop = build(name)
    mid = set(mk.distinguished_subloop(loop, "middle-nucleus"))
    right = set(mk.distinguished_subloop(loop, "right-nucleus"))
    for x in mk.all_normal_subloops(loop, cap=24):
        if not x.is_commutative_group():
            continue
        if set(x.elements) <= mid & right:
            assert mk.decompose(loop, x) is not None


@pytest.mark.parametrize("name", names_with_order_at_most(24))
def test_decompose_success_is_transversal_independent(name):
    rng = random.Random(0x5EED)
    loop = build(name)
    for x in mk.all_normal_subloops(loop, cap=24):
        if not x.is_commutative_group():
            continue
        base = mk.decompose(loop, x) is not None
        for _ in range(3):
            u = random_transversal(loop, x, rng)
            assert (mk.decompose(loop, x, u) is not None) == base


def test_decompose_central_examples():
    res = quadratic_example("a")
    data = mk.decompose_central(res.loop, res.b_part)
    assert data is not None
    assert mk.build_extension(data) == res.loop
    s3 = build("s3")
    assert mk.decompose_central(s3, mk.SubloopHandle(s3, (0, 3, 4))) is None
    assert mk.decompose_central(s3, mk.SubloopHandle(s3, (0,))) is not None


def test_central_data_has_identity_maps():
    res = quadratic_example("b")
    data = mk.decompose_central(res.loop, res.b_part)
    ident = tuple(range(len(res.b_part)))
    assert all(cell == ident for row in data.phi for cell in row)
    assert all(cell == ident for row in data.psi for cell in row)


# -- constructive maps for divisible Moufang loops --------------------------------


def _c5_subloop(loop):
    x = next(a for a in loop.elements() if loop.element_order(a) == 5)
    return mk.generated_subloop(loop, {x})


@pytest.mark.parametrize("name", ["f20", "md5"])
def test_constructive_maps_satisfy_extension_law(name):
    loop = build(name)
    x = _c5_subloop(loop)
    u = mk.transversal(loop, x)
    for r in u:
        for s in u:
            phi, psi, theta = mk.moufang_extension_maps(loop, x, u, r, s)
            assert mk.extension_cell_holds(loop, x, u, r, s, phi, psi, theta)
            if r == 0:
                assert psi == tuple(range(5))
            if s == 0:
                assert phi == tuple(range(5)) and theta == 0


@pytest.mark.parametrize("name", ["f20", "md5"])
def test_constructive_maps_agree_with_forced_decomposition(name):
    # the forced datum and the constructive one both satisfy the law cell-wise
    loop = build(name)
    x = _c5_subloop(loop)
    u = mk.transversal(loop, x)
    data = mk.decompose(loop, x, u)
    assert data is not None
    qr = mk.quotient(loop, x)
    for r in u:
        for s in u:
            ri, si = qr.projection[r], qr.projection[s]
            assert mk.extension_cell_holds(
                loop, x, u, r, s, data.phi[ri][si], data.psi[ri][si], data.theta[ri][si]
            )


def test_constructive_maps_preconditions():
    with pytest.raises(NotMoufang):
        mk.moufang_extension_maps(
            mk.FiniteLoop(np.array(NON_POWER_ASSOCIATIVE_5)),
            mk.SubloopHandle(mk.FiniteLoop(np.array(NON_POWER_ASSOCIATIVE_5)), (0,)),
            None,
            0,
            0,
        )
    c3 = build("c3")
    with pytest.raises(Not3Divisible):
        mk.moufang_extension_maps(c3, mk.SubloopHandle(c3, (0,)), None, 0, 0)
    c4 = mk.fixture("cyclic", 4)
    two = mk.SubloopHandle(c4, (0, 2))
    with pytest.raises(KernelNot2Divisible):
        mk.moufang_extension_maps(c4, two, None, 0, 1)
    f20 = build("f20")
    x = _c5_subloop(f20)
    u = mk.transversal(f20, x)
    with pytest.raises(ValueError):
        mk.moufang_extension_maps(f20, x, u, 4, 0)  # 4 lies in the kernel, not U


def test_is_d_divisible():
    assert mk.is_d_divisible(build("c5"), 2)
    assert not mk.is_d_divisible(build("c6"), 3)
    assert mk.is_d_divisible(build("f20"), 3)


def test_cube_root_examples():
    assert mk.cube_root(build("c6"), 0) == 0
    c5 = build("c5")
    assert mk.cube_root(c5, 1) == 2  # (g^2)^3 = g^6 = g
    c3 = build("c3")
    with pytest.raises(NoCubeRoot):
        mk.cube_root(c3, 1)


@pytest.mark.parametrize("name", ["c1", "c5", "c7", "c25"])
def test_six_divisible_moufang_fixtures(name):
    # order coprime to 6: every abelian normal subloop induces an abelian
    # congruence, and the two solvability notions agree
    loop = build(name)
    assert mk.is_d_divisible(loop, 6)
    for x in mk.all_normal_subloops(loop, cap=max(64, loop.order)):
        if x.is_commutative_group():
            assert mk.decompose(loop, x) is not None
    classical = mk.classical_solvable(loop) is not None
    congruence = mk.congruence_solvable(loop, cap=max(64, loop.order)) is not None
    assert classical == congruence
