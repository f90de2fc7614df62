"""Shared fixture catalog and independent oracles for the test suite."""

from __future__ import annotations

import functools
import random

import numpy as np
import pytest

import moufkit as mk

# static orders so tests can parametrize/filter without building loops
NAME_ORDERS = {
    "c1": 1,
    "c2": 2,
    "c3": 3,
    "c5": 5,
    "c6": 6,
    "c7": 7,
    "c8": 8,
    "c15": 15,
    "c21": 21,
    "c27": 27,
    "c2xc2": 4,
    "c2xc4": 8,
    "c2c2c2": 8,
    "c3xc3": 9,
    "d3": 6,
    "d4": 8,
    "d5": 10,
    "d6": 12,
    "s3": 6,
    "a4": 12,
    "a5": 60,
    "f20": 20,
    "ms3": 12,
    "md5": 20,
    "q16a": 16,
    "q16b": 16,
    "paige": 120,
}

GROUP_NAMES = (
    "c1", "c2", "c3", "c5", "c6", "c7", "c8", "c15", "c21", "c27",
    "c2xc2", "c2xc4", "c2c2c2", "c3xc3",
    "d3", "d4", "d5", "d6", "s3", "a4", "a5", "f20",
)
NONGROUP_MOUFANG_NAMES = ("ms3", "md5", "q16a", "q16b", "paige")
ALL_NAMES = GROUP_NAMES + NONGROUP_MOUFANG_NAMES
# groups are Moufang; these are all the Moufang fixtures
MOUFANG_NAMES = ALL_NAMES
ODD_ORDER_GROUP_NAMES = tuple(n for n in GROUP_NAMES if NAME_ORDERS[n] % 2 == 1)


def names_with_order_at_most(cap: int, names=ALL_NAMES) -> tuple[str, ...]:
    return tuple(n for n in names if NAME_ORDERS[n] <= cap)


@functools.lru_cache(maxsize=None)
def build(name: str) -> mk.FiniteLoop:
    if name.startswith("c") and name[1:].isdigit():
        return mk.fixture("cyclic", int(name[1:]))
    if name == "c2xc2":
        return mk.fixture("abelian", (2, 2))
    if name == "c2xc4":
        return mk.fixture("abelian", (2, 4))
    if name == "c2c2c2":
        return mk.fixture("abelian", (2, 2, 2))
    if name == "c3xc3":
        return mk.fixture("abelian", (3, 3))
    if name.startswith("d") and name[1:].isdigit():
        return mk.fixture("dihedral", int(name[1:]))
    if name == "s3":
        return mk.fixture("symmetric", 3)
    if name == "a4":
        return mk.fixture("alternating", 4)
    if name == "a5":
        return mk.fixture("alternating", 5)
    if name == "f20":
        return mk.fixture("frobenius20")
    if name == "ms3":
        return mk.chein_double(build("s3"))
    if name == "md5":
        return mk.chein_double(build("d5"))
    if name == "q16a":
        return quadratic_example("a").loop
    if name == "q16b":
        return quadratic_example("b").loop
    if name == "paige":
        return mk.paige_loop()
    raise KeyError(name)


@functools.lru_cache(maxsize=None)
def quadratic_example(which: str) -> mk.QuadraticLoopResult:
    """The two order-16 loops from a nonlinear form on a 2-dimensional quotient."""
    form = mk.QuadraticFormGF2(2, (0, 0, 0, 1))  # q(u1,u2) = u1 u2
    if which == "a":
        spec = mk.QuadraticLoopSpec(factors=(2, 4), b_generators=(2,), f_generators=(2,))
    else:
        spec = mk.QuadraticLoopSpec(factors=(2, 2, 2), b_generators=(1,), f_generators=(1,))
    return mk.loop_from_quadratic_form(spec, form)


# the lexicographically first reduced latin square of order 5; element 2
# violates power associativity: 2(22) = 1 but (22)2 = 0
NON_POWER_ASSOCIATIVE_5 = (
    (0, 1, 2, 3, 4),
    (1, 0, 3, 4, 2),
    (2, 3, 4, 0, 1),
    (3, 4, 1, 2, 0),
    (4, 2, 0, 1, 3),
)


def whole_handle(loop: mk.FiniteLoop) -> mk.SubloopHandle:
    return mk.SubloopHandle(loop, tuple(loop.elements()))


# -- independent group-theory oracles (plain python, no library machinery) -------


def oracle_is_group(loop: mk.FiniteLoop) -> bool:
    n = loop.order
    return all(
        loop.mul(loop.mul(x, y), z) == loop.mul(x, loop.mul(y, z))
        for x in range(n)
        for y in range(n)
        for z in range(n)
    )


def oracle_group_commutator(loop: mk.FiniteLoop, xs, ys) -> tuple[int, ...]:
    """Normal closure of {x^-1 y^-1 x y} in a group, by direct fixpoint."""
    inv = [loop.ldiv(a, 0) for a in loop.elements()]
    gens = {
        loop.mul(loop.mul(inv[x], inv[y]), loop.mul(x, y)) for x in xs for y in ys
    }
    out = {0} | gens
    changed = True
    while changed:
        changed = False
        for s in list(out):
            for g in loop.elements():
                conj = loop.mul(loop.mul(g, s), inv[g])
                if conj not in out:
                    out.add(conj)
                    changed = True
            for t in list(out):
                p = loop.mul(s, t)
                if p not in out:
                    out.add(p)
                    changed = True
    return tuple(sorted(out))


def random_transversal(loop: mk.FiniteLoop, x: mk.SubloopHandle, rng: random.Random):
    """A transversal containing the identity, other representatives random."""
    reps = []
    for block in mk.cosets(loop, x):
        reps.append(0 if 0 in block else rng.choice(block))
    return reps


def assert_same_loop(a: mk.FiniteLoop, b: mk.FiniteLoop):
    assert a.order == b.order
    assert np.array_equal(a.table, b.table)
