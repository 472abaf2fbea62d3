"""Schubert and key polynomials from divided differences and Demazure operators.

Nothing here touches diagrams; these are the reference values that
``dual_character`` of Rothe and skyline diagrams is checked against.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .diagrams import ExponentVector, check_permutation

XPolynomial = dict[ExponentVector, int]


def _clean(P: XPolynomial) -> XPolynomial:
    return {k: v for k, v in sorted(P.items()) if v}


def _add(P: XPolynomial, k: ExponentVector, v: int) -> None:
    P[k] = P.get(k, 0) + v


def swap_vars(P: XPolynomial, i: int) -> XPolynomial:
    """``s_i f``: exchange ``x_i`` and ``x_{i+1}`` (1-based)."""
    out: XPolynomial = {}
    for k, v in P.items():
        k2 = list(k)
        k2[i - 1], k2[i] = k2[i], k2[i - 1]
        _add(out, tuple(k2), v)
    return _clean(out)


def times_var(P: XPolynomial, i: int) -> XPolynomial:
    out: XPolynomial = {}
    for k, v in P.items():
        k2 = list(k)
        k2[i - 1] += 1
        out[tuple(k2)] = v
    return out


def divide_by_difference(P: XPolynomial, i: int) -> XPolynomial:
    """Exact quotient of ``P`` by ``x_i - x_{i+1}`` by long division in ``x_i``."""
    rem = _clean(P)
    quot: XPolynomial = {}
    while rem:
        # leading term in x_i; ties broken by the full exponent for determinism
        k = max(rem, key=lambda e: (e[i - 1], e))
        if k[i - 1] == 0:
            raise ArithmeticError(f"division by x{i} - x{i + 1} leaves a remainder")
        v = rem[k]
        q = list(k)
        q[i - 1] -= 1
        q = tuple(q)
        _add(quot, q, v)
        # subtract v * x^q * (x_i - x_{i+1})
        _add(rem, k, -v)
        k2 = list(q)
        k2[i] += 1
        _add(rem, tuple(k2), v)
        rem = {e: c for e, c in rem.items() if c}
    return _clean(quot)


def divided_difference(P: XPolynomial, i: int) -> XPolynomial:
    diff = dict(P)
    for k, v in swap_vars(P, i).items():
        _add(diff, k, -v)
    return divide_by_difference(diff, i)


def demazure(P: XPolynomial, i: int) -> XPolynomial:
    return divided_difference(times_var(P, i), i)


@lru_cache(maxsize=None)
def _schubert(w: tuple[int, ...]) -> tuple[tuple[ExponentVector, int], ...]:
    n = len(w)
    for i in range(1, n):
        if w[i - 1] < w[i]:
            # w s_i has a descent at i
            ws = list(w)
            ws[i - 1], ws[i] = ws[i], ws[i - 1]
            return tuple(divided_difference(dict(_schubert(tuple(ws))), i).items())
    return ((tuple(range(n - 1, -1, -1)), 1),)  # w is the longest element


def schubert_poly(w: Sequence[int]) -> XPolynomial:
    """Schubert polynomial of ``w`` in variables ``x_1..x_n`` with ``n = len(w)``."""
    w = check_permutation(w)
    return dict(_schubert(w))


@lru_cache(maxsize=None)
def _key(alpha: tuple[int, ...]) -> tuple[tuple[ExponentVector, int], ...]:
    for i in range(1, len(alpha)):
        if alpha[i - 1] < alpha[i]:
            beta = list(alpha)
            beta[i - 1], beta[i] = beta[i], beta[i - 1]
            return tuple(demazure(dict(_key(tuple(beta))), i).items())
    return ((alpha, 1),)


def key_poly(alpha: Sequence[int]) -> XPolynomial:
    alpha = tuple(alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"composition has a negative part: {alpha}")
    return dict(_key(alpha))
