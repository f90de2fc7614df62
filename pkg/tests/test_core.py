"""Loop validation, element arithmetic, identity scans, and the .loop format."""

import os
import subprocess
import sys

import numpy as np
import pytest

import moufkit as mk
from moufkit.core import power_associative_at
from moufkit.errors import (
    InvalidTable,
    LoopFileError,
    NotLatinSquare,
    NoTwoSidedIdentity,
    NotPowerAssociative,
)

from conftest import (
    ALL_NAMES,
    MOUFANG_NAMES,
    NAME_ORDERS,
    NON_POWER_ASSOCIATIVE_5,
    build,
    names_with_order_at_most,
)


def test_trivial_loop():
    loop = mk.FiniteLoop([[0]])
    assert loop.order == 1
    assert loop.element_order(0) == 1


def test_from_table_cyclic6():
    raw = [[(i + j) % 6 for j in range(6)] for i in range(6)]
    loop = mk.FiniteLoop.from_table(raw)
    assert loop.order == 6
    assert loop.relabeling is None
    assert loop.mul(2, 3) == 5


def test_from_table_rejects_non_latin():
    with pytest.raises(NotLatinSquare) as err:
        mk.FiniteLoop.from_table([[0, 1], [1, 1]])
    assert err.value.axis == "row"
    assert err.value.index == 1


def test_from_table_rejects_no_identity():
    # latin square without a two-sided identity
    with pytest.raises(NoTwoSidedIdentity):
        mk.FiniteLoop.from_table([[1, 0, 2], [0, 2, 1], [2, 1, 0]])


def test_from_table_relabels_identity():
    # identity is element 1; ingestion must relabel it to 0 and say so
    c3 = build("c3")
    perm = [1, 0, 2]
    relabeled = [[perm[c3.mul(perm[i], perm[j])] for j in range(3)] for i in range(3)]
    loop = mk.FiniteLoop.from_table(relabeled)
    assert loop.relabeling is not None
    assert loop.mul(0, 1) == 1
    assert_tables_equal(loop, c3)
    with pytest.raises(InvalidTable):
        mk.FiniteLoop(relabeled)


def assert_tables_equal(a, b):
    assert np.array_equal(a.table, b.table)


def test_table_is_immutable():
    loop = build("c6")
    with pytest.raises(ValueError):
        loop.table[0, 0] = 1


def test_divisions_and_inverses():
    loop = build("d5")
    for a in loop.elements():
        for b in loop.elements():
            assert loop.mul(a, loop.ldiv(a, b)) == b
            assert loop.mul(loop.rdiv(a, b), b) == a
        assert loop.divide("left", a, a) == 0
    with pytest.raises(ValueError):
        loop.divide("sideways", 0, 0)


def test_element_operators():
    loop = build("md5")
    a, b = loop[3], loop[7]
    assert (a * (a // b)).index == b.index
    assert ((a / b) * b).index == a.index
    assert (a ** 2).index == loop.mul(3, 3)
    assert int(a ** -1) == loop.ldiv(3, 0)
    assert loop[2].order == loop.element_order(2)


def test_powers_cyclic():
    c6 = build("c6")
    assert c6.element_order(0) == 1
    assert c6.element_order(1) == 6
    assert c6.power(1, 4) == 4
    assert c6.power(5, -1) == 1  # inverse of 5 is 1 mod 6
    assert c6.power(2, 0) == 0


def test_power_order_in_quadratic_loop():
    # (1,0) squares to (0, 0 + 0 + q(0) + h(0,0)) = (0,0)
    from conftest import quadratic_example

    res = quadratic_example("a")
    idx = res.loop.order // 2  # the element (1, 0)
    assert res.loop.element_order(idx) == 2


def test_non_power_associative_loop():
    loop = mk.FiniteLoop(np.array(NON_POWER_ASSOCIATIVE_5))
    assert not mk.is_power_associative(loop)
    assert not power_associative_at(loop, 2)
    sq = loop.mul(2, 2)
    assert loop.mul(2, sq) != loop.mul(sq, 2)
    with pytest.raises(NotPowerAssociative):
        loop.power(2, 3)
    assert not mk.is_diassociative(loop)


@pytest.mark.parametrize("name", ["c6", "s3", "a4", "f20"])
def test_groups_pass_all_group_schemes(name):
    loop = build(name)
    for scheme in mk.IDENTITY_SCHEMES:
        if scheme == "commutative" and name in ("s3", "a4", "f20"):
            continue
        assert mk.satisfies_identity(loop, scheme).holds, scheme


def test_unknown_scheme_rejected():
    with pytest.raises(ValueError):
        mk.satisfies_identity(build("c2"), "zorro")


def test_associativity_witness_is_lex_first():
    loop = build("md5")
    res = mk.satisfies_identity(loop, "associative")
    assert not res.holds
    first = next(
        (x, y, z)
        for x in loop.elements()
        for y in loop.elements()
        for z in loop.elements()
        if loop.mul(loop.mul(x, y), z) != loop.mul(x, loop.mul(y, z))
    )
    assert res.witness == first


def test_commutative_witness_is_lex_first():
    loop = build("s3")
    res = mk.satisfies_identity(loop, "commutative")
    assert res.witness == (1, 2)


@pytest.mark.parametrize("name", names_with_order_at_most(32, MOUFANG_NAMES))
def test_four_moufang_schemes_agree(name):
    loop = build(name)
    results = [mk.satisfies_identity(loop, f"moufang-{k}").holds for k in (1, 2, 3, 4)]
    assert results[0] and len(set(results)) == 1


@pytest.mark.parametrize("name", names_with_order_at_most(32, MOUFANG_NAMES))
def test_inverse_properties_on_moufang(name):
    loop = build(name)
    assert mk.satisfies_identity(loop, "left-inverse").holds
    assert mk.satisfies_identity(loop, "right-inverse").holds
    assert mk.satisfies_identity(loop, "flexible").holds
    assert mk.satisfies_identity(loop, "right-power-alternative").holds
    for x in loop.elements():
        assert loop.ldiv(x, 0) == loop.rdiv(0, x)  # x\1 = 1/x
        xinv = loop.ldiv(x, 0)
        for y in loop.elements():
            assert loop.mul(xinv, loop.mul(x, y)) == y


@pytest.mark.parametrize("name", names_with_order_at_most(32, MOUFANG_NAMES))
def test_left_right_division_cancellation_scan(name):
    loop = build(name)
    a, ld, rd = loop.table, loop.ldiv_table, loop.rdiv_table
    ar = np.arange(loop.order)
    assert (a[ar[:, None], ld] == ar[None, :]).all()
    assert (a[rd, ar[None, :]] == ar[:, None]).all()


@pytest.mark.parametrize("name", names_with_order_at_most(32, MOUFANG_NAMES))
def test_conjugation_style_identities_on_moufang(name):
    # x^-1(xy.z) = yx^-1.xz and (z.yx)x^-1 = zx.x^-1y, scanned for all x,y,z
    loop = build(name)
    a = loop.table
    for x in loop.elements():
        xinv = loop.inv(x)
        lhs = a[xinv][a[a[x]]]
        rhs = a[np.ix_(a[:, xinv], a[x])]
        assert (lhs == rhs).all()
        lhs2 = a[:, xinv][a[:, a[:, x]].T]
        rhs2 = a[np.ix_(a[:, x], a[xinv])].T
        assert (lhs2 == rhs2).all()


@pytest.mark.parametrize("name", names_with_order_at_most(32, MOUFANG_NAMES) + ("paige",))
def test_cube_conjugation_identity_on_moufang(name):
    # x a^-3 . a^3 y = T_a^-1(T_a(x) T_a(y)) for all a, x, y
    loop = build(name)
    a_tbl = loop.table
    for a in loop.elements():
        a3 = loop.power(a, 3)
        am3 = loop.power(a, -3)
        ta = mk.translation(loop, "T", a).array()
        ta_inv = mk.translation(loop, "T", a).inverse().array()
        lhs = a_tbl[np.ix_(a_tbl[:, am3], a_tbl[a3])]
        rhs = ta_inv[a_tbl[np.ix_(ta, ta)]]
        assert (lhs == rhs).all()


def test_right_power_alternative_counterexample():
    loop = mk.FiniteLoop(np.array(NON_POWER_ASSOCIATIVE_5))
    res = mk.satisfies_identity(loop, "right-power-alternative")
    assert not res.holds
    a, b, i = res.witness
    # recompute the violated instance directly
    powers = [0]
    nxt = loop.mul(0, b)
    while nxt != 0:
        powers.append(nxt)
        nxt = loop.mul(nxt, b)
    lhs = loop.mul(loop.mul(a, powers[i]), b)
    rhs = loop.mul(a, powers[(i + 1) % len(powers)])
    assert lhs != rhs


def test_identity_scan_threads_match_serial():
    env = dict(os.environ, MOUFKIT_THREADS="4")
    code = (
        "import moufkit as mk\n"
        "loop = mk.chein_double(mk.fixture('dihedral', 5))\n"
        "res = mk.satisfies_identity(loop, 'associative')\n"
        "print(res.holds, res.witness)\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    loop = build("md5")
    serial = mk.satisfies_identity(loop, "associative")
    assert out.stdout.strip() == f"{serial.holds} {serial.witness}"


# -- .loop format ---------------------------------------------------------------


def test_loop_format_round_trip():
    for name in ("c6", "md5", "q16a"):
        loop = build(name)
        text = mk.dump_loop(loop)
        assert text.endswith("\n")
        again = mk.parse_loop(text)
        assert again == loop
        assert mk.dump_loop(again) == text


def test_loop_format_comments_and_errors(tmp_path):
    text = "# a comment\n3\n0 1 2\n1 2 0\n# another\n2 0 1\n"
    loop = mk.parse_loop(text)
    assert loop.order == 3
    with pytest.raises(LoopFileError):
        mk.parse_loop("3\n0 1 2\n1 2 0\n2 0 1")  # no trailing newline
    with pytest.raises(LoopFileError):
        mk.parse_loop("2\n0 1\n")  # missing row
    with pytest.raises(LoopFileError):
        mk.parse_loop("2\n0 x\n1 0\n")  # non-integer
    with pytest.raises(NoTwoSidedIdentity):
        mk.parse_loop("3\n1 0 2\n0 2 1\n2 1 0\n")
    # identity exists but is not element 0: rejected as a format violation
    with pytest.raises(LoopFileError):
        mk.parse_loop("2\n1 0\n0 1\n")
    path = tmp_path / "c6.loop"
    mk.write_loop(build("c6"), path)
    assert mk.read_loop(path) == build("c6")


@pytest.mark.parametrize("name", ALL_NAMES)
def test_fixture_loops_validate(name):
    loop = build(name)
    assert loop.order == NAME_ORDERS[name]
    mk.FiniteLoop(loop.table)  # revalidation passes
