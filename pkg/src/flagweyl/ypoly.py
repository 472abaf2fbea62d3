"""Polynomials in the entries ``y_{rc}`` (``r <= c``) of a generic upper-triangular matrix.

Monomials are packed into a single Python int: variable ``y_{rc}`` owns an
8-bit exponent field at position ``c(c-1)/2 + r - 1``.  Multiplying monomials
is then integer addition.  Exponents must stay below 256, which holds for any
diagram with fewer than 256 boxes.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .diagrams import Column, Diagram
from .selection import Selection, check_below, gale_leq

_BITS = 8
_MASK = (1 << _BITS) - 1

YMonomial = tuple[tuple[int, int, int], ...]


def _slot(r: int, c: int) -> int:
    if not 1 <= r <= c:
        raise ValueError(f"y_{{{r}{c}}} is not an upper-triangular variable")
    return c * (c - 1) // 2 + r - 1


@lru_cache(maxsize=None)
def _slot_var(slot: int) -> tuple[int, int]:
    c = 1
    while c * (c + 1) // 2 <= slot:
        c += 1
    return slot - c * (c - 1) // 2 + 1, c


def pack(monomial: Iterable[tuple[int, int, int]]) -> int:
    key = 0
    for r, c, e in monomial:
        if e < 0:
            raise ValueError("negative exponent")
        key += e << (_BITS * _slot(r, c))
    return key


def unpack(key: int) -> YMonomial:
    """Canonical ``((r, c, e), ...)`` form, sorted by ``(r, c)``."""
    out = []
    slot = 0
    while key:
        e = key & _MASK
        if e:
            r, c = _slot_var(slot)
            out.append((r, c, e))
        key >>= _BITS
        slot += 1
    return tuple(sorted(out))


def var_key(r: int, c: int) -> int:
    return 1 << (_BITS * _slot(r, c))


class YPoly:
    """Sparse polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, value: int) -> "YPoly":
        return cls({0: value})

    @classmethod
    def var(cls, r: int, c: int) -> "YPoly":
        return cls({var_key(r, c): 1})

    @classmethod
    def from_monomials(cls, pairs: Iterable[tuple[Iterable[tuple[int, int, int]], int]]) -> "YPoly":
        terms: dict[int, int] = {}
        for mono, coeff in pairs:
            k = pack(mono)
            terms[k] = terms.get(k, 0) + coeff
        return cls(terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = YPoly.const(other)
        if not isinstance(other, YPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "YPoly":
        return YPoly({k: -v for k, v in self.terms.items()})

    def __add__(self, other: "YPoly") -> "YPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return YPoly(out)

    def __sub__(self, other: "YPoly") -> "YPoly":
        return self + (-other)

    def __mul__(self, other: "YPoly | int") -> "YPoly":
        if isinstance(other, int):
            return YPoly({k: v * other for k, v in self.terms.items()})
        out: dict[int, int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + v1 * v2
        return YPoly(out)

    __rmul__ = __mul__

    def items(self) -> list[tuple[YMonomial, int]]:
        return sorted((unpack(k), v) for k, v in self.terms.items())

    def to_json(self) -> list[dict]:
        return [
            {"monomial": [list(t) for t in mono], "coeff": str(coeff)}
            for mono, coeff in self.items()
        ]

    @classmethod
    def from_json(cls, data: Sequence[dict]) -> "YPoly":
        return cls.from_monomials((tuple(map(tuple, d["monomial"])), int(d["coeff"])) for d in data)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.items():
            body = "*".join(f"y{r}{c}" + (f"^{e}" if e > 1 else "") for r, c, e in mono)
            if not body:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{coeff}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


ONE = YPoly.const(1)


# ---------------------------------------------------------------------------
# minors


@lru_cache(maxsize=None)
def _column_det(C: Column, S: Column) -> YPoly:
    # Expand along the columns of S; a row r may sit in column c only if r <= c.
    k = len(S)
    terms: dict[int, int] = {}
    used = [False] * k
    var = [[var_key(C[a], S[b]) if C[a] <= S[b] else None for b in range(k)] for a in range(k)]

    def rec(b: int, key: int, sign: int) -> None:
        if b == k:
            terms[key] = terms.get(key, 0) + sign
            return
        # the sign of a permutation built column by column: count used rows after the chosen one
        for a in range(k):
            if used[a] or var[a][b] is None:
                continue
            later = sum(1 for t in range(a + 1, k) if used[t])
            used[a] = True
            rec(b + 1, key + var[a][b], -sign if later % 2 else sign)
            used[a] = False

    rec(0, 0, 1)
    return YPoly(terms)


def column_det(C: Iterable[int], S: Iterable[int], n: int | None = None) -> YPoly:
    """Minor of the generic upper-triangular matrix on rows ``C`` and columns ``S``."""
    C, S = tuple(sorted(C)), tuple(sorted(S))
    if len(C) != len(S):
        raise ValueError(f"minor needs equally many rows and columns, got {len(C)} and {len(S)}")
    if n is not None and any(x > n for x in C + S):
        raise ValueError(f"indices exceed the grid size {n}")
    if not gale_leq(C, S):
        return YPoly()
    return _column_det(C, S)


def diagram_det(C: Selection, D: Diagram) -> YPoly:
    """``det(Y_D^C)``: the product of the column minors."""
    check_below(C, D)
    return columns_det(C.columns, D.columns)


def columns_det(C_cols: tuple[Column, ...], D_cols: tuple[Column, ...]) -> YPoly:
    out = ONE
    for c, d in zip(C_cols, D_cols):
        if d:
            out = out * _column_det(c, d)
    return out


# ---------------------------------------------------------------------------
# rank


def exact_rank(polys: Sequence[YPoly]) -> int:
    """Rank over Q of the coefficient matrix, by fraction-free elimination."""
    polys = [p for p in polys if p]
    if not polys:
        return 0
    if len(polys) == 1:
        return 1
    monos = sorted({k for p in polys for k in p.terms}, key=unpack)
    index = {k: t for t, k in enumerate(monos)}
    rows = []
    for p in polys:
        row = [0] * len(monos)
        for k, v in p.terms.items():
            row[index[k]] = v
        rows.append(row)
    return bareiss_rank(rows)


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix; rows are consumed."""
    if not rows:
        return 0
    ncols = len(rows[0])
    nrows = len(rows)
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        pv = prow[col]
        for r in range(rank + 1, nrows):
            row = rows[r]
            f = row[col]
            if f:
                for c in range(col + 1, ncols):
                    row[c] = (pv * row[c] - f * prow[c]) // prev
            else:
                for c in range(col + 1, ncols):
                    row[c] = (pv * row[c]) // prev
            row[col] = 0
        prev = pv
        rank += 1
    return rank
