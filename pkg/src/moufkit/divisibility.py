"""Power maps x -> x^d and the divisibility, Cauchy, and elementwise
Lagrange property checks for power associative loops."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .core import FiniteLoop, is_power_associative, power_associative_at
from .errors import NotPowerAssociative

CAUCHY_HOLDS = "holds"
CAUCHY_FAILS = "fails-with-no-witness"
CAUCHY_NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class DivisibilityReport:
    """Independently computed flags for the power map x -> x^d.

    For finite power associative loops the first four entries are provably
    equivalent; they are computed separately so that equivalence is testable
    rather than assumed."""

    d: int
    surjective: bool
    injective: bool
    order_witness: int | None  # minimal nonidentity element of order dividing d
    prime_order_witness: int | None  # minimal element of prime order dividing d
    coprime: bool


def _require_power_associative(loop: FiniteLoop) -> None:
    if not is_power_associative(loop):
        bad = next(a for a in loop.elements() if not power_associative_at(loop, a))
        raise NotPowerAssociative(bad)


def power_map(loop: FiniteLoop, d: int) -> tuple[int, ...]:
    """The full image table of x -> x^d."""
    _require_power_associative(loop)
    return tuple(loop.power(a, d) for a in loop.elements())


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    q = 2
    while q * q <= p:
        if p % q == 0:
            return False
        q += 1
    return True


def divisibility(loop: FiniteLoop, d: int) -> DivisibilityReport:
    if d <= 1:
        raise ValueError("d must exceed 1")
    _require_power_associative(loop)
    n = loop.order
    image = [loop.power(a, d) for a in loop.elements()]
    fibers = [0] * n
    for v in image:
        fibers[v] += 1
    surjective = all(c > 0 for c in fibers)
    injective = all(c <= 1 for c in fibers)
    orders = [loop.element_order(a) for a in loop.elements()]
    order_witness = next((a for a in range(1, n) if d % orders[a] == 0), None)
    prime_order_witness = next(
        (a for a in range(n) if is_prime(orders[a]) and d % orders[a] == 0), None
    )
    return DivisibilityReport(
        d=d,
        surjective=surjective,
        injective=injective,
        order_witness=order_witness,
        prime_order_witness=prime_order_witness,
        coprime=gcd(n, d) == 1,
    )


def cauchy(loop: FiniteLoop, p: int) -> str:
    """Cauchy property for a prime p: not-applicable when p does not divide
    the order, otherwise holds iff some element has order exactly p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    _require_power_associative(loop)
    if loop.order % p != 0:
        return CAUCHY_NOT_APPLICABLE
    if any(loop.element_order(a) == p for a in loop.elements()):
        return CAUCHY_HOLDS
    return CAUCHY_FAILS


def elementwise_lagrange(loop: FiniteLoop) -> bool:
    """Does every element order divide the loop order?"""
    _require_power_associative(loop)
    return all(loop.order % loop.element_order(a) == 0 for a in loop.elements())
