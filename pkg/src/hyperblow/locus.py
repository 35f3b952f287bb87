"""Singular locus of a general quasismooth hypersurface 3-fold.

The singularities of a general member sit on coordinate strata of the
ambient: vertices whose weight does not divide the degree, and edges
whose weight gcd exceeds one.  An edge contributes finitely many points
when that gcd divides the degree and a whole curve otherwise.  Each
stratum carries a cyclic quotient germ read off from the remaining
coordinates; curve germs keep a zero residue in the direction along the
curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

from .quotients import QuotientSingularity, transverse_canonical
from .weights import WeightedHypersurface


class QuasismoothnessViolated(ValueError):
    """A coordinate stratum admits no eliminating monomial."""


class HypothesisViolated(ValueError):
    """Three weights share a common factor; the stratum analysis does
    not apply."""


class StratumKind(Enum):
    VERTEX_POINT = "vertex_point"
    EDGE_POINTS = "edge_points"
    EDGE_CURVE = "edge_curve"


@dataclass(frozen=True)
class Stratum:
    kind: StratumKind
    positions: tuple[int, ...]
    germ: QuotientSingularity
    count: int | None
    local_indices: tuple[int, ...]
    line_indices: tuple[int, ...]

    @property
    def is_curve(self) -> bool:
        return self.kind is StratumKind.EDGE_CURVE

    def describe(self) -> str:
        where = ",".join(str(p) for p in self.positions)
        if self.is_curve:
            return f"curve on edge ({where}) of transverse type {self.germ}"
        mult = "" if self.count == 1 else f"{self.count} points "
        return f"{mult or '1 point '}at ({where}) of type {self.germ}"


@dataclass(frozen=True)
class SingularLocus:
    hypersurface: WeightedHypersurface
    strata: tuple[Stratum, ...]

    @property
    def point_strata(self) -> tuple[Stratum, ...]:
        return tuple(s for s in self.strata if not s.is_curve)

    @property
    def curve_strata(self) -> tuple[Stratum, ...]:
        return tuple(s for s in self.strata if s.is_curve)

    @property
    def has_curves(self) -> bool:
        return any(s.is_curve for s in self.strata)

    def curves_all_canonical(self) -> bool:
        return all(transverse_canonical(s.germ) for s in self.curve_strata)


def _eliminating_index(h: WeightedHypersurface, modulus: int, excluded: set[int]) -> int:
    """Smallest index j outside ``excluded`` with modulus | degree - w_j.

    Any such j gives the same residue class mod the modulus, so the germ
    does not depend on the tie-break.
    """
    for j, a in enumerate(h.weights):
        if j not in excluded and (h.degree - a) % modulus == 0:
            return j
    raise QuasismoothnessViolated(
        f"no monomial eliminates a coordinate mod {modulus} on {h}"
    )


def vertex_stratum(h: WeightedHypersurface, i: int) -> Stratum | None:
    """Germ at the i-th coordinate point, or None when it avoids the
    hypersurface (weight divides degree, in particular weight one)."""
    r = h.weights[i]
    if h.degree % r == 0:
        return None
    j = _eliminating_index(h, r, {i})
    locals_ = tuple(t for t in range(len(h.weights)) if t not in (i, j))
    germ = QuotientSingularity(r, tuple(h.weights[t] % r for t in locals_))
    return Stratum(
        kind=StratumKind.VERTEX_POINT,
        positions=(i,),
        germ=germ,
        count=1,
        local_indices=locals_,
        line_indices=(j, i),
    )


def edge_stratum(h: WeightedHypersurface, i: int, j: int) -> Stratum | None:
    """Strata supported on the coordinate edge (i, j), or None when the
    two weights are coprime or the edge misses the hypersurface."""
    ai, aj = h.weights[i], h.weights[j]
    e = gcd(ai, aj)
    if e == 1:
        return None
    others = tuple(t for t in range(len(h.weights)) if t not in (i, j))
    if h.degree % e == 0:
        count = e * h.degree // (ai * aj)
        if count == 0:
            return None
        germ = QuotientSingularity(e, tuple(h.weights[t] % e for t in others))
        if germ.has_zero_residue():
            raise HypothesisViolated(f"edge ({i},{j}) of {h} has a non-point germ")
        return Stratum(
            kind=StratumKind.EDGE_POINTS,
            positions=(i, j),
            germ=germ,
            count=count,
            local_indices=others,
            line_indices=(i, j),
        )
    k = _eliminating_index(h, e, {i, j})
    transverse = tuple(t for t in others if t != k)
    germ = QuotientSingularity(
        e, (0,) + tuple(h.weights[t] % e for t in transverse)
    )
    return Stratum(
        kind=StratumKind.EDGE_CURVE,
        positions=(i, j),
        germ=germ,
        count=None,
        local_indices=transverse,
        line_indices=(i, j),
    )


def singular_locus(h: WeightedHypersurface) -> SingularLocus:
    """All singular strata of a general quasismooth member, vertices
    first then edges, in ascending index order.

    Requires every three weights to be coprime.  A vertex germ with a
    zero residue is a generic point of an edge curve and is folded into
    that curve stratum rather than reported twice.
    """
    w = h.weights
    if len(w) != 5:
        raise ValueError("singular locus analysis expects a 3-fold (five weights)")
    n = len(w)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                if gcd(gcd(w[a], w[b]), w[c]) != 1:
                    raise HypothesisViolated(
                        f"weights {w[a]},{w[b]},{w[c]} of {h} share a factor"
                    )
    strata: list[Stratum] = []
    for i in range(n):
        s = vertex_stratum(h, i)
        if s is None:
            continue
        if s.germ.has_zero_residue():
            # lies on an edge curve; the curve stratum covers it
            continue
        strata.append(s)
    for i in range(n):
        for j in range(i + 1, n):
            s = edge_stratum(h, i, j)
            if s is not None:
                strata.append(s)
    return SingularLocus(h, tuple(strata))


def lift_germ(germ: QuotientSingularity, extra_ones: int) -> QuotientSingularity:
    """Germ of the corresponding point after adjoining weight-one
    coordinates to the ambient."""
    return QuotientSingularity(germ.index, (1,) * extra_ones + germ.residues)


def lift_singular_locus(locus: SingularLocus, extra_ones: int) -> tuple[QuotientSingularity, ...]:
    """Point germs of the lifted hypersurface; requires an isolated locus."""
    if locus.has_curves:
        raise ValueError("lifting is only supported for isolated singular loci")
    return tuple(lift_germ(s.germ, extra_ones) for s in locus.point_strata)
