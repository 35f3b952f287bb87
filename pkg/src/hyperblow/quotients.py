"""Cyclic quotient singularity germs and their discrepancy classification.

A germ ``1/r(a_1, ..., a_n)`` is the quotient of affine n-space by the
cyclic group of order r acting diagonally with the given weights.  All
arithmetic here is exact integer arithmetic; classification follows the
Reid-Tai criterion, and three dimensional terminal germs are matched
against the ``1/r(1, r-1, b)`` normal form to extract basket pairs.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd


class SingularityClass(Enum):
    TERMINAL = "terminal"
    STRICTLY_CANONICAL = "strictly_canonical"
    NONCANONICAL = "noncanonical"

    @property
    def is_canonical(self) -> bool:
        return self is not SingularityClass.NONCANONICAL


class SmallActionError(ValueError):
    """The residues describe an action with quasi-reflections."""


@dataclass(frozen=True)
class QuotientSingularity:
    """Type ``1/index(residues)`` with residues reduced into [0, index)."""

    index: int
    residues: tuple[int, ...]

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"index must be positive, got {self.index}")
        reduced = tuple(a % self.index for a in self.residues)
        object.__setattr__(self, "residues", reduced)
        # No element of the group may fix a hyperplane pointwise: the gcd
        # of the index with all residue entries but one must always be 1.
        if self.index > 1:
            for omit in range(len(reduced)):
                g = self.index
                for t, a in enumerate(reduced):
                    if t != omit:
                        g = gcd(g, a)
                if g != 1:
                    raise SmallActionError(
                        f"1/{self.index}{reduced} is not a small action "
                        f"(omit position {omit})"
                    )

    @property
    def dim(self) -> int:
        return len(self.residues)

    @property
    def is_smooth(self) -> bool:
        return self.index == 1

    def is_isolated(self) -> bool:
        """True when every residue is a unit mod the index."""
        return all(gcd(a, self.index) == 1 for a in self.residues)

    def has_zero_residue(self) -> bool:
        return self.index > 1 and any(a == 0 for a in self.residues)

    def __str__(self) -> str:
        return f"1/{self.index}({','.join(str(a) for a in self.residues)})"


def quotient(index: int, *residues: int) -> QuotientSingularity:
    return QuotientSingularity(index, tuple(residues))


_TYPE_RE = re.compile(r"^1/(\d+)\(([-\d,\s]*)\)$")


def parse_quotient(text: str) -> QuotientSingularity:
    """Inverse of ``str``: accepts ``1/r(a,b,c)``."""
    m = _TYPE_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse quotient singularity {text!r}")
    index = int(m.group(1))
    body = m.group(2).strip()
    residues = tuple(int(p) for p in body.split(",")) if body else ()
    return QuotientSingularity(index, residues)


def _units(r: int) -> tuple[int, ...]:
    return tuple(u for u in range(1, r) if gcd(u, r) == 1)


@lru_cache(maxsize=None)
def _age_sums(r: int, residues: tuple[int, ...]) -> tuple[int, ...]:
    """Sum of ``k * a_i mod r`` over residues, for k = 1..r-1."""
    return tuple(sum(k * a % r for a in residues) for k in range(1, r))


def classify(q: QuotientSingularity) -> SingularityClass:
    """Discrepancy class via the Reid-Tai sums.

    Rejects germs with a residue divisible by the index: those are
    singular along a positive dimensional locus and must be classified
    at the locus level from their transverse type.
    """
    if q.is_smooth:
        return SingularityClass.TERMINAL
    if q.has_zero_residue():
        raise ValueError(f"{q} has a zero residue; classify its transverse type")
    worst = min(_age_sums(q.index, q.residues))
    if worst > q.index:
        return SingularityClass.TERMINAL
    if worst == q.index:
        return SingularityClass.STRICTLY_CANONICAL
    return SingularityClass.NONCANONICAL


def terminality_margin(q: QuotientSingularity) -> int:
    """min_k sum_i mod(k a_i, r) - r; positive iff terminal, zero iff
    strictly canonical."""
    if q.is_smooth:
        raise ValueError("margin undefined for the smooth germ")
    if q.has_zero_residue():
        raise ValueError(f"{q} has a zero residue")
    return min(_age_sums(q.index, q.residues)) - q.index


def transverse_canonical(q: QuotientSingularity) -> bool:
    """Canonicity of a germ that is singular along a curve.

    Expects exactly one zero residue (the direction along the curve);
    the transverse surface quotient is canonical iff it is du Val,
    i.e. the two transverse residues sum to zero mod the index.
    """
    if q.index == 1:
        return True
    zeros = [a for a in q.residues if a == 0]
    if len(zeros) != 1 or q.dim != 3:
        raise ValueError(f"{q} is not a curve-transverse 3-fold germ")
    a, b = (x for x in q.residues if x != 0)
    return (a + b) % q.index == 0


def normalize(q: QuotientSingularity) -> QuotientSingularity:
    """Canonical representative: lexicographically least sorted residue
    vector over all choices of group generator."""
    if q.is_smooth:
        return QuotientSingularity(1, tuple(0 for _ in q.residues))
    best = None
    for u in _units(q.index):
        cand = tuple(sorted(u * a % q.index for a in q.residues))
        if best is None or cand < best:
            best = cand
    return QuotientSingularity(q.index, best)


def same_germ(a: QuotientSingularity, b: QuotientSingularity) -> bool:
    return normalize(a) == normalize(b)


def basket_pair(q: QuotientSingularity) -> tuple[int, int] | None:
    """Pair ``(b, r)`` of the terminal 3-fold germ, read off the unique
    presentation ``1/r(1, r-1, b)`` and reduced so that ``b <= r/2``.

    Returns None for smooth germs and raises on non-terminal input.
    """
    if q.dim != 3:
        raise ValueError("basket pairs are defined for 3-fold germs")
    if q.is_smooth:
        return None
    if classify(q) is not SingularityClass.TERMINAL:
        raise ValueError(f"{q} is not terminal")
    r = q.index
    for u in _units(r):
        scaled = sorted(u * a % r for a in q.residues)
        rest = list(scaled)
        if 1 in rest and r - 1 in rest:
            rest.remove(1)
            rest.remove(r - 1)
            b = rest[0]
            return (min(b, r - b), r)
    raise ValueError(f"{q} admits no presentation 1/r(1,r-1,b)")


Basket = Counter


def format_basket(basket: Counter) -> str:
    """Render ``{(1,2): 7, (1,3): 1}`` as ``[7x(1,2),(1,3)]``."""
    parts = []
    for (b, r), mult in sorted(basket.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        body = f"({b},{r})"
        parts.append(body if mult == 1 else f"{mult}x{body}")
    return "[" + ",".join(parts) + "]"


_PAIR_RE = re.compile(r"^(?:(\d+)x)?\((\d+),(\d+)\)$")


def parse_basket(text: str) -> Counter:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"cannot parse basket {text!r}")
    body = text[1:-1].strip()
    basket: Counter = Counter()
    if not body:
        return basket
    for chunk in re.split(r",(?=(?:\d+x)?\()", body):
        m = _PAIR_RE.match(chunk.strip())
        if not m:
            raise ValueError(f"cannot parse basket entry {chunk!r}")
        mult = int(m.group(1)) if m.group(1) else 1
        basket[(int(m.group(2)), int(m.group(3)))] += mult
    return basket
