"""Weighted projective ambients and quasismooth hypersurfaces inside them.

Weights are positive integers; a hypersurface is the pair (weights,
degree) standing for a general member of the degree-d linear system.
Monomial counting is a small integer dynamic program, quasismoothness is
the classical coordinate-subspace test on a general member, and both are
memoised because searches evaluate them across large weight ranges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod


class DegreeNotTransportable(ValueError):
    """A plane reduction step had to divide the degree by a non-divisor."""


@dataclass(frozen=True)
class WeightedHypersurface:
    """General hypersurface of the given degree in P(weights)."""

    weights: tuple[int, ...]
    degree: int

    def __post_init__(self):
        if any(a < 1 for a in self.weights):
            raise ValueError(f"weights must be positive, got {self.weights}")
        if len(self.weights) < 3:
            raise ValueError("need at least three weights")
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")

    @property
    def dim(self) -> int:
        return len(self.weights) - 2

    @property
    def amplitude(self) -> int:
        """a with K = O(a) by adjunction: degree minus the weight sum."""
        return self.degree - sum(self.weights)

    def __str__(self) -> str:
        return f"X_{self.degree} in P({','.join(map(str, self.weights))})"


def hypersurface(weights, degree: int) -> WeightedHypersurface:
    return WeightedHypersurface(tuple(weights), degree)


def well_formed_space(weights) -> bool:
    """Every n of the n+1 weights must be globally coprime."""
    weights = tuple(weights)
    n = len(weights)
    prefix = [0] * (n + 1)
    suffix = [0] * (n + 1)
    for i in range(n):
        prefix[i + 1] = gcd(prefix[i], weights[i])
    for i in range(n - 1, -1, -1):
        suffix[i] = gcd(suffix[i + 1], weights[i])
    return all(gcd(prefix[i], suffix[i + 1]) == 1 for i in range(n))


def well_formed_hypersurface(h: WeightedHypersurface) -> bool:
    """Well formed ambient, and the gcd of every all-but-two subset of
    weights divides the degree."""
    if not well_formed_space(h.weights):
        return False
    w = h.weights
    n = len(w)
    for i in range(n):
        for j in range(i + 1, n):
            g = 0
            for t in range(n):
                if t != i and t != j:
                    g = gcd(g, w[t])
            if h.degree % g != 0:
                return False
    return True


@lru_cache(maxsize=None)
def _count(weights: tuple[int, ...], m: int) -> int:
    if m < 0:
        return 0
    table = [0] * (m + 1)
    table[0] = 1
    for a in weights:
        for v in range(a, m + 1):
            table[v] += table[v - a]
    return table[m]


def count_monomials(weights, m: int) -> int:
    """Number of exponent vectors e >= 0 with sum_i weights[i]*e[i] = m."""
    return _count(tuple(sorted(weights)), m)


@lru_cache(maxsize=None)
def _reachable(weights: tuple[int, ...], cap: int) -> int:
    """Bitmask whose bit v is set iff degree v is a weighted sum of the
    given weights (v <= cap)."""
    mask = 1
    limit = (1 << (cap + 1)) - 1
    for a in weights:
        shifted = mask
        while True:
            nxt = (shifted | (shifted << a)) & limit
            if nxt == shifted:
                break
            shifted = nxt
        mask = shifted
    return mask


def degree_attainable(weights, m: int) -> bool:
    if m < 0:
        return False
    if m == 0:
        return True
    ws = tuple(sorted(set(weights)))
    if not ws:
        return False
    return bool((_reachable(ws, m) >> m) & 1)


def enumerate_monomials(weights, m: int) -> list[tuple[int, ...]]:
    """All exponent vectors of weighted degree m, descending lexicographic."""
    weights = tuple(weights)
    out: list[tuple[int, ...]] = []
    vec = [0] * len(weights)

    def rec(pos: int, rem: int):
        if pos == len(weights) - 1:
            a = weights[pos]
            if rem % a == 0:
                vec[pos] = rem // a
                out.append(tuple(vec))
                vec[pos] = 0
            return
        a = weights[pos]
        for e in range(rem // a, -1, -1):
            vec[pos] = e
            rec(pos + 1, rem - a * e)
        vec[pos] = 0

    rec(0, m)
    return out


def is_quasismooth(h: WeightedHypersurface) -> bool:
    """General-member quasismoothness test over coordinate subspaces.

    Either some weight equals the degree (a linear cone), or for every
    nonempty index subset I there is a degree-d monomial supported on I,
    or there are at least |I| distinct indices e whose variable times a
    monomial supported on I reaches degree d.  The |I| slots in the last
    clause are interchangeable, so the matching between slots and
    admissible indices degenerates to a cardinality check.
    """
    d = h.degree
    w = h.weights
    if d in w:
        return True
    n = len(w)
    for subset in range(1, 1 << n):
        idx = [i for i in range(n) if subset >> i & 1]
        ws = tuple(sorted({w[i] for i in idx}))
        if degree_attainable(ws, d):
            continue
        admissible = sum(1 for e in range(n) if degree_attainable(ws, d - w[e]))
        if admissible < len(idx):
            return False
    return True


def hyperplane_self_intersection(h: WeightedHypersurface) -> Fraction:
    """Top self-intersection of O(1) on the hypersurface: d / prod(weights)."""
    return Fraction(h.degree, prod(h.weights))


def well_formize_plane(weights, degree: int) -> tuple[tuple[int, int, int], int]:
    """Reduce a weighted plane and the degree of a curve system on it to
    a well formed model.

    Repeatedly: if a pair of weights has gcd q > 1, the quotient by the
    order-q stabiliser divides that pair and the transportable degree by
    q.  Raises DegreeNotTransportable when q does not divide the degree
    (the system then has a forced fixed part and needs manual review).
    """
    a, b, c = weights
    d = degree
    changed = True
    while changed:
        changed = False
        for i, j in ((0, 1), (0, 2), (1, 2)):
            trio = [a, b, c]
            q = gcd(trio[i], trio[j])
            if q > 1:
                if d % q != 0:
                    raise DegreeNotTransportable(
                        f"gcd {q} of weights {trio[i]},{trio[j]} does not divide {d}"
                    )
                trio[i] //= q
                trio[j] //= q
                a, b, c = trio
                d //= q
                changed = True
    return (a, b, c), d
