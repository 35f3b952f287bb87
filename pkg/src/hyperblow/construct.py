"""End-to-end assembly of minimal models from weighted hypersurfaces.

``run_construction`` drives the whole chain on a 3-fold hypersurface:
input validity, singular locus analysis, a scan over discrepancy-negative
weighted blow-ups of the worst points until the canonical class of the
extraction is nef, singularity control on the exceptional charts, and
exact invariants of the result.  Failures raise ``ConstructionError``
tagged with the stage that rejected the input, so parameter scans can
summarise where candidates die:

  0  input validity (well-formedness, quasismoothness, canonical degree)
  1  singular locus shape (canonical curves, extractable worst points)
  2  no blow-up weight vector certifies a nef canonical class
  3  nef weight vectors exist but all leave a non-canonical chart
  4  invariant assembly (consistency guards; not expected to fire)

All arithmetic is exact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator

from .blowups import BlowUp, blow_up, volume_after_blowups
from .crepant import terminalize
from .locus import (
    HypothesisViolated,
    QuasismoothnessViolated,
    SingularLocus,
    Stratum,
    singular_locus,
)
from .nef import NefCertificate, TwoPointCenter, check_nefness, check_nefness_two_points
from .quotients import (
    QuotientSingularity,
    SingularityClass,
    basket_pair,
    classify,
    format_basket,
    transverse_canonical,
)
from .weights import (
    WeightedHypersurface,
    count_monomials,
    hyperplane_self_intersection,
    is_quasismooth,
    well_formed_hypersurface,
    well_formed_space,
)

STAGE_NAMES = {
    0: "input validity",
    1: "singular locus",
    2: "nef extraction",
    3: "chart singularities",
    4: "invariants",
}


class ConstructionError(Exception):
    """Construction failure, tagged with the stage that rejected the input."""

    def __init__(self, stage: int, reason: str, audit: tuple = ()):
        super().__init__(f"stage {stage} ({STAGE_NAMES[stage]}): {reason}")
        self.stage = stage
        self.reason = reason
        # (unit, why it was rejected) pairs from the blow-up weight scan
        self.audit = tuple(audit)


def format_rational(x) -> str:
    """Lowest-terms ``p/q``; plain integers print without the ``/1``."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class BlowUpRecord:
    """One accepted extraction: where, with which weights, and why.

    ``unit`` is the accepted rescaling of the germ residues;
    ``rejected_units`` keeps the scan history for audit.
    """

    stratum: Stratum
    unit: int
    blowup: BlowUp
    certificate: NefCertificate
    rejected_units: tuple[tuple[int, str], ...]

    @property
    def b_weight(self) -> str:
        body = ",".join(str(x) for x in self.blowup.weights)
        return f"1/{self.blowup.center.index}({body})"


@dataclass(frozen=True)
class MinimalModelReport:
    """Invariants of the minimal model produced by the construction.

    ``picard_rank`` and ``basket`` are None when the singular locus has
    positive-dimensional parts (on the input or on a chart); the
    point-by-point bookkeeping behind them is still exposed through
    ``point_basket`` for regression against published data.
    """

    source: WeightedHypersurface
    locus: SingularLocus
    blowups: tuple[BlowUpRecord, ...]
    volume: Fraction
    genus: int
    second_plurigenus: int
    euler_characteristic: int
    picard_rank: int | None
    basket: Counter | None
    point_basket: Counter
    has_singular_curves: bool

    @property
    def amplitude(self) -> int:
        return self.source.amplitude

    @property
    def numerical_kodaira(self) -> int:
        return self.source.dim - (1 if self.volume == 0 else 0)

    @property
    def kodaira_class(self) -> str:
        return "numerically_zero_volume" if self.volume == 0 else "general_type"

    def noether_distance(self) -> Fraction:
        return noether_delta(self.volume, self.genus)

    def as_row(self) -> dict:
        """Flat record in the shared table schema."""
        return {
            "alpha": self.amplitude,
            "deg": self.source.degree,
            "weights": list(self.source.weights),
            "b_weight": self.blowups[0].b_weight if self.blowups else "",
            "vol": format_rational(self.volume),
            "P2": self.second_plurigenus,
            "chi": self.euler_characteristic,
            "rho": self.picard_rank,
            "basket": format_basket(self.point_basket),
            "delta": format_rational(self.noether_distance()),
        }


def noether_delta(volume, p_g: int) -> Fraction:
    """Height of a volume above the classical line vol = (4/3)p_g - 10/3."""
    if p_g < 0:
        raise ValueError("geometric genus cannot be negative")
    return Fraction(volume) - Fraction(4, 3) * p_g + Fraction(10, 3)


def run_construction(h: WeightedHypersurface) -> MinimalModelReport:
    """Build the minimal model over ``h`` or explain why none is found.

    Raises ``ConstructionError`` carrying the failing stage.
    """
    if len(h.weights) != 5:
        raise ConstructionError(0, "the construction expects a 3-fold (five weights)")
    if not well_formed_space(h.weights):
        raise ConstructionError(0, f"ambient P{h.weights} is not well-formed")
    if not well_formed_hypersurface(h):
        raise ConstructionError(0, f"{h} is not well-formed")
    if h.amplitude <= 0:
        raise ConstructionError(0, f"{h} has non-positive canonical degree")
    if not is_quasismooth(h):
        raise ConstructionError(0, f"the general {h} is not quasismooth")

    try:
        locus = singular_locus(h)
    except (HypothesisViolated, QuasismoothnessViolated) as exc:
        raise ConstructionError(1, str(exc)) from exc
    if not locus.curves_all_canonical():
        raise ConstructionError(1, "a singular curve is worse than canonical")
    centers = [s for s in locus.point_strata if not classify(s.germ).is_canonical]
    if not centers:
        raise ConstructionError(1, "every point is already canonical; nothing to extract")
    for s in centers:
        if s.count != 1:
            raise ConstructionError(
                1, f"{s.describe()} bundles several points needing extraction"
            )
    if len(centers) == 1:
        records = (_extract_single(h, centers[0]),)
    elif len(centers) == 2:
        records = _extract_pair(h, centers[0], centers[1])
    else:
        raise ConstructionError(
            1, f"{len(centers)} separate points need extracting; at most two are handled"
        )
    return _assemble(h, locus, centers, records)


def _scaled(residues, u: int, r: int) -> tuple[int, ...]:
    return tuple(u * a % r for a in residues)


def _units(r: int) -> Iterator[int]:
    return (u for u in range(1, r) if gcd(u, r) == 1)


def _chart_problems(bl: BlowUp) -> tuple[str, ...]:
    """Reasons the chart singularities disqualify an extraction."""
    problems = []
    for q in bl.charts:
        if q.is_smooth:
            continue
        zeros = sum(1 for a in q.residues if a == 0)
        if zeros >= 2:
            problems.append(f"chart {q} is singular in codimension one")
        elif zeros == 1:
            if not transverse_canonical(q):
                problems.append(f"chart curve of type {q} is not canonical")
        elif classify(q) is SingularityClass.NONCANONICAL:
            problems.append(f"chart {q} is not canonical")
    return tuple(problems)


def _extract_single(h: WeightedHypersurface, stratum: Stratum) -> BlowUpRecord:
    germ = stratum.germ
    r = germ.index
    rejected: list[tuple[int, str]] = []
    nef_seen = False
    fallback: BlowUpRecord | None = None
    for u in _units(r):
        e = _scaled(germ.residues, u, r)
        cert = check_nefness(h, stratum.local_indices, r, e)
        if not cert.nef_up_to_exceptional_form:
            rejected.append((u, "; ".join(cert.failures)))
            continue
        nef_seen = True
        bl = blow_up(germ, e)
        problems = _chart_problems(bl)
        if problems:
            rejected.append((u, "; ".join(problems)))
            continue
        if cert.nef:
            return BlowUpRecord(stratum, u, bl, cert, tuple(rejected))
        # the inequalities and the plane-curve test carry the nefness
        # argument on their own; a non-well-formed exceptional space
        # only loses its presentation, so keep this as a fallback
        if fallback is None:
            fallback = BlowUpRecord(stratum, u, bl, cert, tuple(rejected))
    if fallback is not None:
        return fallback
    where = ",".join(str(p) for p in stratum.positions)
    raise ConstructionError(
        3 if nef_seen else 2,
        f"no rescaling of {germ} at ({where}) gives a nef extraction with canonical charts",
        audit=tuple(rejected),
    )


def _extract_pair(
    h: WeightedHypersurface, s1: Stratum, s2: Stratum
) -> tuple[BlowUpRecord, BlowUpRecord]:
    """Simultaneous extraction of two points on lines through a common vertex."""
    l1, l2 = set(s1.line_indices), set(s2.line_indices)
    if len(l1 & l2) != 1:
        raise ConstructionError(
            1, "two extraction points must sit on coordinate lines through a common vertex"
        )
    shared = tuple(p for p in range(len(h.weights)) if p not in l1 | l2)
    own1 = next(iter(l2 - l1))
    own2 = next(iter(l1 - l2))
    res1 = dict(zip(s1.local_indices, s1.germ.residues))
    res2 = dict(zip(s2.local_indices, s2.germ.residues))
    if set(res1) != set(shared) | {own1} or set(res2) != set(shared) | {own2}:
        raise ConstructionError(
            1, "the two extraction points do not share their transverse coordinates"
        )
    r1, r2 = s1.germ.index, s2.germ.index
    base1 = tuple(res1[p] for p in shared) + (res1[own1],)
    base2 = tuple(res2[p] for p in shared) + (res2[own2],)
    rejected: list[tuple[tuple[int, int], str]] = []
    nef_seen = False
    for u1 in _units(r1):
        e1 = _scaled(base1, u1, r1)
        for u2 in _units(r2):
            e2 = _scaled(base2, u2, r2)
            cert = check_nefness_two_points(
                h,
                shared,
                TwoPointCenter(own1, r1, e1),
                TwoPointCenter(own2, r2, e2),
            )
            if not cert.nef:
                rejected.append(((u1, u2), "; ".join(cert.failures)))
                continue
            nef_seen = True
            b1 = blow_up(QuotientSingularity(r1, base1), e1)
            b2 = blow_up(QuotientSingularity(r2, base2), e2)
            problems = _chart_problems(b1) + _chart_problems(b2)
            if problems:
                rejected.append(((u1, u2), "; ".join(problems)))
                continue
            audit = tuple(rejected)
            return (
                BlowUpRecord(s1, u1, b1, cert, audit),
                BlowUpRecord(s2, u2, b2, cert, audit),
            )
    raise ConstructionError(
        3 if nef_seen else 2,
        "no pair of rescalings extracts both points nef with canonical charts",
        audit=tuple(rejected),
    )


def _point_contribution(germ: QuotientSingularity) -> tuple[int, Counter]:
    """(added Picard rank, basket) of one isolated quotient point."""
    if classify(germ) is SingularityClass.TERMINAL:
        pair = basket_pair(germ)
        return 0, Counter([pair] if pair else [])
    term = terminalize(germ)
    return term.rho_contribution, Counter(term.basket)


def _assemble(
    h: WeightedHypersurface,
    locus: SingularLocus,
    centers: list[Stratum],
    records: tuple[BlowUpRecord, ...],
) -> MinimalModelReport:
    vol = volume_after_blowups(
        Fraction(h.amplitude**3) * hyperplane_self_intersection(h),
        [rec.blowup for rec in records],
        h.dim,
    )
    if vol < 0:
        raise ConstructionError(4, f"nef extraction left negative volume {vol}")

    genus = count_monomials(h.weights, h.amplitude)
    p2 = count_monomials(h.weights, 2 * h.amplitude)

    has_curves = locus.has_curves
    rho_total = 0
    point_basket: Counter = Counter()
    for s in locus.point_strata:
        if s in centers:
            continue
        rho_c, basket_c = _point_contribution(s.germ)
        rho_total += s.count * rho_c
        for pair, mult in basket_c.items():
            point_basket[pair] += s.count * mult
    for rec in records:
        for q in rec.blowup.charts:
            if q.is_smooth:
                continue
            if q.has_zero_residue():
                has_curves = True
                continue
            rho_c, basket_c = _point_contribution(q)
            rho_total += rho_c
            point_basket.update(basket_c)

    rho = None if has_curves else 1 + len(records) + rho_total
    return MinimalModelReport(
        source=h,
        locus=locus,
        blowups=records,
        volume=vol,
        genus=genus,
        second_plurigenus=p2,
        euler_characteristic=1 - genus,
        picard_rank=rho,
        basket=None if has_curves else Counter(point_basket),
        point_basket=point_basket,
        has_singular_curves=has_curves,
    )

