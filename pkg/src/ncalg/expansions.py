"""Symbolic expansions of the Taylor recursion and of the ordered exponential product.

S_n   solves u_n = (1/n) sum_{p<n} U_p u_{n-1-p} symbolically: u_n = S_n u_0.
B_n   is the weight-n part of exp(U_0 t) exp(U_1 t^2/2) exp(U_2 t^3/3) ...,
      with the U_0 factor leftmost; b_n = B_n u_0.
D_n   = S_n - B_n.

Every word in S_n and B_n has graded weight n, so S_n uses U_0..U_{n-1} only.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from src.ncalg.polynomial import NCPolynomial, format_polynomial


@lru_cache(maxsize=None)
def _recursion_sequence(order: int) -> tuple[NCPolynomial, ...]:
    sequence = [NCPolynomial.identity()]
    for n in range(1, order + 1):
        total = NCPolynomial.zero()
        for p in range(n):
            total = total + NCPolynomial.generator(p) * sequence[n - 1 - p]
        sequence.append(total * Fraction(1, n))
    return tuple(sequence)


def symbolic_S(N: int) -> list[NCPolynomial]:
    """[S_1, ..., S_N]."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return list(_recursion_sequence(N)[1:])


def _exponential_factor(g: int, max_weight: int) -> NCPolynomial:
    """sum_p (U_g / (g+1))^p / p!, truncated at graded weight max_weight."""
    scaled = NCPolynomial.generator(g) * Fraction(1, g + 1)
    factor = NCPolynomial.identity()
    power = NCPolynomial.identity()
    for p in range(1, max_weight // (g + 1) + 1):
        power = power * scaled
        factor = factor + power * Fraction(1, factorial(p))
    return factor


@lru_cache(maxsize=None)
def _exponential_product(order: int) -> NCPolynomial:
    product = NCPolynomial.identity()
    for g in range(order):
        product = (product * _exponential_factor(g, order)).truncate(order)
    return product


def symbolic_B(N: int) -> list[NCPolynomial]:
    """[B_1, ..., B_N]."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    product = _exponential_product(N)
    return [product.homogeneous_part(n) for n in range(1, N + 1)]


def symbolic_diff(N: int) -> list[NCPolynomial]:
    """[S_1 - B_1, ..., S_N - B_N]."""
    return [s - b for s, b in zip(symbolic_S(N), symbolic_B(N))]


def coefficient_sum(p: NCPolynomial) -> Fraction:
    """Image of p under U_g -> 1 for every generator."""
    return sum((coeff for _, coeff in p), Fraction(0))


def term_count(p: NCPolynomial) -> int:
    return len(p)


def render_family(symbol: str, polys: list[NCPolynomial]) -> str:
    """One ``<symbol>_<n> = <text>`` line per polynomial, n starting at 1."""
    return "".join(f"{symbol}_{n} = {format_polynomial(p)}\n" for n, p in enumerate(polys, 1))
