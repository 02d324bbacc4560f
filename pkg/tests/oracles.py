"""Independent numeric oracles.

These never call the shell machinery of the package. The Whittaker oracle
integrates over explicit residue classes of Q_p with the genuine additive
character ``x -> exp(2 pi i {x}_p)``. The Iwasawa torus part comes from the
top row of the matrix: for ``g = p k`` with ``p`` lower triangular, the
top-left entry of ``p`` has valuation ``min(val g_11, val g_12)``.
"""
import cmath
import math


def padic_val(num: int, den: int, p: int) -> float:
    if num == 0:
        return math.inf
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def spherical_section(z: complex, p: int, row) -> complex:
    """``v(g)`` for ``g`` with top row ``row``, each entry given as (val)."""
    m = min(row)
    return (p * z) ** m


def whittaker_brute(p: int, n: int, z: complex, depth: int = 2) -> complex:
    """``int v(u(x) a_n) psi(x)^-1 dx`` over ``|x| <= p^depth``.

    The integrand is constant on cosets of ``p^L Z_p`` with
    ``L = max(2n, 0)``; the coset of 0 has ``val x >= L``.
    """
    L = max(2 * n, 0)
    count = p ** (depth + L)
    acc = 0j
    for k in range(count):
        # x = k / p^depth; coset x + p^L Z_p
        vx = padic_val(k, p**depth, p) if k else math.inf
        if vx >= L:
            vx = math.inf
        # top row of u(x) a_n is (w^n, x w^-n)
        section = spherical_section(z, p, (n, vx - n))
        frac = (k % p**depth) / p**depth
        acc += section * cmath.exp(-2j * math.pi * frac)
    return acc * p ** (-L)


def intertwining_brute(p: int, z: complex, shells: int = 60) -> complex:
    """``int v(u(x)) dx`` summed shell by shell (needs ``|z| > 1``)."""
    total = 0j
    for k in range(-shells, shells + 1):
        vol = p ** (-k) * (1 - 1 / p)
        total += vol * spherical_section(z, p, (0, k))
    return total
