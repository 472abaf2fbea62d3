"""Dual characters: the coefficient of ``x^a`` is the rank of the bucket of
determinants ``det(Y_D^C)`` with ``x^C = x^a``."""

from __future__ import annotations

from typing import Iterable, Sequence

from .diagrams import Diagram, ExponentVector
from .selection import Selection, group_selections
from .ypoly import YPoly, columns_det, exact_rank

XPolynomial = dict[ExponentVector, int]


def bucket_dets(D: Diagram, bucket: Sequence[Selection]) -> list[YPoly]:
    return [columns_det(C.columns, D.columns) for C in bucket]


def coefficient(D: Diagram, a: Sequence[int]) -> int:
    a = tuple(a)
    if len(a) != D.n:
        raise ValueError(f"exponent vector has length {len(a)}, grid size is {D.n}")
    bucket = group_selections(D).get(a)
    if not bucket:
        return 0
    return exact_rank(bucket_dets(D, bucket))


def dual_character(D: Diagram) -> XPolynomial:
    out: XPolynomial = {}
    for a, bucket in group_selections(D).items():
        out[a] = 1 if len(bucket) == 1 else exact_rank(bucket_dets(D, bucket))
    return out


def _proportional(p: YPoly, q: YPoly) -> bool:
    if len(p.terms) != len(q.terms):
        return False
    k0 = next(iter(p.terms))
    if k0 not in q.terms:
        return False
    a, b = p.terms[k0], q.terms[k0]
    return all(k in q.terms and v * b == q.terms[k] * a for k, v in p.terms.items())


def rank_is_one(dets: Sequence[YPoly]) -> bool:
    """Exact test that non-zero ``dets`` span a line."""
    first = dets[0]
    return all(_proportional(first, d) for d in dets[1:])


def is_zero_one_direct(D: Diagram) -> bool:
    """Every eigenspace has dimension one; singleton buckets are skipped."""
    buckets = [b for b in group_selections(D).values() if len(b) > 1]
    buckets.sort(key=len)
    return all(rank_is_one(bucket_dets(D, b)) for b in buckets)


def first_multiple_bucket(D: Diagram) -> tuple[ExponentVector, int] | None:
    """The lexicographically first exponent with coefficient at least 2, and that coefficient."""
    for a, bucket in group_selections(D).items():
        if len(bucket) > 1:
            dets = bucket_dets(D, bucket)
            if not rank_is_one(dets):
                return a, exact_rank(dets)
    return None


def support(D: Diagram) -> set[ExponentVector]:
    return set(group_selections(D))


# ---------------------------------------------------------------------------
# XPolynomial helpers


def shift(P: XPolynomial, factor: Sequence[int]) -> XPolynomial:
    """Multiply by the monomial ``x^factor``."""
    return {tuple(a + f for a, f in zip(k, factor)): v for k, v in P.items()}


def resize(P: XPolynomial, n: int) -> XPolynomial:
    """Pad or trim exponent vectors to length ``n`` (trimmed slots must be zero)."""
    out: XPolynomial = {}
    for k, v in P.items():
        if any(k[n:]):
            raise ValueError(f"monomial {k} uses a variable beyond x_{n}")
        key = tuple(k[:n]) + (0,) * (n - len(k))
        out[key] = out.get(key, 0) + v
    return {k: v for k, v in sorted(out.items()) if v}


def is_zero_one(P: XPolynomial) -> bool:
    return all(v in (0, 1) for v in P.values())


def xpoly_to_json(P: XPolynomial) -> list[dict]:
    return [{"exp": list(k), "coeff": str(v)} for k, v in sorted(P.items()) if v]


def xpoly_from_json(data: Iterable[dict]) -> XPolynomial:
    return {tuple(d["exp"]): int(d["coeff"]) for d in data}


def format_xpoly(P: XPolynomial) -> str:
    if not P:
        return "0"
    parts = []
    for k, v in sorted(P.items(), reverse=True):
        mono = "*".join(f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(k, start=1) if e)
        if not mono:
            parts.append(str(v))
        else:
            parts.append(mono if v == 1 else f"{v}*{mono}")
    return " + ".join(parts)
