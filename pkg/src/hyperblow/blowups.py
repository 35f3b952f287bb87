"""Weighted blow-ups of cyclic quotient germs and their chart types.

Blowing up the germ 1/r(a_1,...,a_n) with positive weights (e_1,...,e_n)
(gcd one) inserts the ray (e_1,...,e_n)/r into the quotient cone.  Chart
i of the result is the cyclic germ 1/e_i(-e_1,...,r,...,-e_n) with r in
slot i, the exceptional divisor is P(e_1,...,e_n), and the canonical
class picks up the rational multiple (r - sum e_i)/r of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .quotients import QuotientSingularity
from .weights import well_formed_space


@dataclass(frozen=True)
class BlowUp:
    center: QuotientSingularity
    weights: tuple[int, ...]
    charts: tuple[QuotientSingularity, ...]

    @property
    def discrepancy(self) -> Fraction:
        """Coefficient of the exceptional divisor in the pullback
        comparison of canonical classes."""
        return Fraction(self.center.index - sum(self.weights), self.center.index)

    def volume_correction(self) -> Fraction:
        """Drop of the top canonical self-intersection: (r-sum e)^n/(r prod e)."""
        r = self.center.index
        n = len(self.weights)
        return Fraction((r - sum(self.weights)) ** n, r * prod(self.weights))

    def exceptional_well_formed(self) -> bool:
        return well_formed_space(self.weights)


def blow_up(
    center: QuotientSingularity,
    weights: tuple[int, ...] | None = None,
    require_positive_discrepancy: bool = False,
) -> BlowUp:
    """Weighted blow-up of the germ; weights default to its residues.

    The weight vector must be positive with gcd one.  Any unit multiple
    of the residues mod r is a legitimate choice (it rechooses the group
    generator); callers explore those multiples to steer chart types.
    """
    r = center.index
    e = tuple(weights) if weights is not None else center.residues
    if len(e) != center.dim:
        raise ValueError(f"weight vector {e} has wrong length for {center}")
    if any(x <= 0 for x in e):
        raise ValueError(f"blow-up weights must be positive, got {e}")
    if gcd(*e) != 1:
        raise ValueError(f"blow-up weights {e} share a factor")
    if require_positive_discrepancy and sum(e) >= r:
        raise ValueError(f"weights {e} do not give positive discrepancy at index {r}")
    charts = []
    for i, ei in enumerate(e):
        residues = tuple(r % ei if t == i else (-e[t]) % ei for t in range(len(e)))
        charts.append(QuotientSingularity(ei, residues))
    return BlowUp(center=center, weights=e, charts=tuple(charts))


def volume_after_blowups(
    canonical_top_power: Fraction, blowups, dim: int
) -> Fraction:
    """Top power of the canonical class after the given blow-ups."""
    vol = Fraction(canonical_top_power)
    for b in blowups:
        if len(b.weights) != dim:
            raise ValueError("blow-up dimension does not match the variety")
        vol -= b.volume_correction()
    return vol
