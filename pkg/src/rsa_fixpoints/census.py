"""Closed-form counting for the fixed points of x -> x**e (mod n).

A residue x modulo n = p*q has a well-defined period under repeated
e-th powering whenever gcd(e, lambda(n)) = 1: splitting x by CRT, each
component is either zero or a unit, and x returns to itself after k
steps iff e**k = 1 modulo the lcm L of the nonzero component orders.
Every count in this module falls out of Mobius inversion over a divisor
lattice built on that observation.

Two counting-formula corrections are baked in (see the docstrings of
``roots_of_unity_count`` and ``exact_quasi_order_count``): the unit
group of Z/2**a is not cyclic for a >= 3, and the minimal-return-time
census must be indexed by r - 1, not r.  Both corrected formulas are
regression-tested against brute force.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from . import arith
from .arith import Factorization

__all__ = [
    "RsaInstance",
    "ExactOrderCensus",
    "make_instance",
    "roots_of_unity_count",
    "cumulative_unit_fixed_count",
    "exact_order_unit_count",
    "exact_order_all_count",
    "per_prime_exact_order_count",
    "elements_of_order_count",
    "poly_fixed_count",
    "exact_quasi_order_count",
    "max_period",
    "full_census",
]


@dataclass(frozen=True)
class RsaInstance:
    """Validated modulus/exponent pair with derived group orders.

    ``gcd_e_phi_ok`` records whether the stricter classical validity
    condition gcd(e, phi(n)) = 1 holds; construction via
    ``make_instance`` only requires gcd(e, lambda(n)) = 1.
    """

    p: int
    q: int
    n: int
    e: int
    phi: int
    lam: int
    gcd_e_phi_ok: bool


@dataclass(frozen=True)
class ExactOrderCensus:
    """Per-period point counts: T_k over units, E_k over all of Z_n.

    Both maps are keyed by every divisor k of ``k_max`` in increasing
    order (counts may be zero).
    """

    k_max: int
    unit_counts: dict[int, int]
    all_counts: dict[int, int]


def make_instance(p: int, q: int, e: int) -> RsaInstance:
    """Build an RsaInstance from two distinct odd primes and an exponent.

    e = 1 is accepted as the degenerate identity map.  Raises ValueError
    on non-prime p/q, p = q, e < 1, or gcd(e, lambda(n)) != 1.
    """
    for name, v in (("p", p), ("q", q)):
        if v < 3 or v % 2 == 0 or not arith.is_prime(v):
            raise ValueError(f"{name} must be an odd prime, got {v}")
    if p == q:
        raise ValueError(f"p and q must be distinct, got {p} twice")
    if e < 1:
        raise ValueError(f"e must be >= 1, got {e}")
    phi = (p - 1) * (q - 1)
    lam = lcm(p - 1, q - 1)
    if gcd(e, lam) != 1:
        raise ValueError(
            f"gcd(e, lambda(n)) = {gcd(e, lam)} != 1; the power map is not a permutation"
        )
    return RsaInstance(
        p=p, q=q, n=p * q, e=e, phi=phi, lam=lam, gcd_e_phi_ok=gcd(e, phi) == 1
    )


def _gcd_pow_minus_one(e: int, k: int, m: int) -> int:
    # gcd(e**k - 1, m) without forming e**k: gcd(x, m) = gcd(x mod m, m).
    if m == 1:
        return 1
    return gcd((pow(e, k, m) - 1) % m, m)


def _unit_root_count_prime_power(r: int, p: int, a: int) -> int:
    # Solutions of x**r = 1 among units mod p**a.  The unit group is
    # cyclic of order phi(p**a) except for 2**a with a >= 3, where it is
    # C2 x C2**(a-2).
    if p == 2 and a >= 3:
        return gcd(r, 2) * gcd(r, 1 << (a - 2))
    return gcd(r, p ** (a - 1) * (p - 1))


def roots_of_unity_count(r: int, f: Factorization) -> int:
    """|{x in Z_n*: x**r = 1}| for n = f.value >= 2.

    Per prime power this is gcd(r, phi(p**a)), except that 2**a with
    a >= 3 contributes gcd(r, 2) * gcd(r, 2**(a-2)): its unit group is
    not cyclic, and the naive cyclic product undercounts (n = 8, r = 2
    has the four roots 1, 3, 5, 7, not two).
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    count = 1
    for p, a in f.factors:
        count *= _unit_root_count_prime_power(r, p, a)
    return count


def cumulative_unit_fixed_count(inst: RsaInstance, k: int) -> int:
    """|{x in Z_n*: x**(e**k) = x}| = gcd(e**k - 1, p-1) * gcd(e**k - 1, q-1).

    Counts units of period dividing k, i.e. the divisor-sum of the exact
    counts; gcd(0, m) = m makes this total at e = 1.
    """
    return _gcd_pow_minus_one(inst.e, k, inst.p - 1) * _gcd_pow_minus_one(
        inst.e, k, inst.q - 1
    )


def exact_order_unit_count(inst: RsaInstance, k: int) -> int:
    """Units of exact period k under x -> x**e; 0 when k does not divide k_max."""
    total = 0
    for d in arith.divisors(arith.factorize(k)):
        total += arith.mobius(k // d) * cumulative_unit_fixed_count(inst, d)
    return total


def exact_order_all_count(inst: RsaInstance, k: int) -> int:
    """Residues in all of Z_n with exact period k.

    Mobius inversion of (gcd(e**d - 1, p-1) + 1)(gcd(e**d - 1, q-1) + 1):
    per prime the solutions of x**(e**d) = x are the units of order
    dividing e**d - 1 plus the single zero residue.
    """
    e = inst.e
    total = 0
    for d in arith.divisors(arith.factorize(k)):
        a = _gcd_pow_minus_one(e, d, inst.p - 1) + 1
        b = _gcd_pow_minus_one(e, d, inst.q - 1) + 1
        total += arith.mobius(k // d) * a * b
    return total


def per_prime_exact_order_count(prime: int, e: int, k: int) -> int:
    """Units mod an odd prime with exact period k under x -> x**e."""
    total = 0
    for d in arith.divisors(arith.factorize(k)):
        total += arith.mobius(k // d) * _gcd_pow_minus_one(e, d, prime - 1)
    return total


def elements_of_order_count(f: Factorization, r: int) -> int:
    """|{x in Z_n*: ord_n(x) = r}| via inversion of the root counts."""
    total = 0
    for d in arith.divisors(arith.factorize(r)):
        total += arith.mobius(r // d) * roots_of_unity_count(d, f)
    return total


def poly_fixed_count(d: int, f: Factorization) -> int:
    """|{x in Z_n: x**d = x}| for d >= 1; d = 1 fixes everything.

    For d >= 2, x(x**(d-1) - 1) = 0 mod p**a forces x to be 0 or a unit
    (any x with 0 < v_p(x) < a leaves x**(d-1) - 1 a unit), so each
    prime power contributes 1 + #(units with x**(d-1) = 1).
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if d == 1:
        return f.value
    count = 1
    for p, a in f.factors:
        count *= 1 + _unit_root_count_prime_power(d - 1, p, a)
    return count


def exact_quasi_order_count(f: Factorization, r: int) -> int:
    """Count of x in Z_n whose smallest s >= 2 with x**s = x is exactly r.

    Such x are exactly those whose CRT components are all zero-or-unit;
    the smallest return exponent is L + 1 where L is the lcm of the unit
    component orders.  Inverting over divisors of r - 1 (not r: the sets
    are indexed by L = r - 1, and inverting over divisors of r produces
    negative values, e.g. -11 at n = 15, r = 2) gives

        sum over L | r-1 of mu((r-1)/L) * poly_fixed_count(L + 1, f).
    """
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    total = 0
    for L in arith.divisors(arith.factorize(r - 1)):
        total += arith.mobius((r - 1) // L) * poly_fixed_count(L + 1, f)
    return total


def max_period(inst: RsaInstance) -> int:
    """Smallest K with e**K = 1 mod lambda(n): every period divides K."""
    if inst.lam == 1:
        return 1
    return arith.multiplicative_order(inst.e, inst.lam)


def full_census(inst: RsaInstance) -> ExactOrderCensus:
    """Evaluate the exact-period counts at every divisor of k_max."""
    k_max = max_period(inst)
    ks = arith.divisors(arith.factorize(k_max))
    return ExactOrderCensus(
        k_max=k_max,
        unit_counts={k: exact_order_unit_count(inst, k) for k in ks},
        all_counts={k: exact_order_all_count(inst, k) for k in ks},
    )
