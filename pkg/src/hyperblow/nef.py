"""Nefness certificates for weighted blow-ups of hypersurface germs.

A weighted blow-up of a quotient point on a general hypersurface keeps
its canonical class nef when a short list of integer inequalities holds
together with the irreducibility of one auxiliary plane curve.  All
conditions are evaluated in exact arithmetic and every violation is
reported by name, so a failed certificate explains itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .weights import (
    DegreeNotTransportable,
    WeightedHypersurface,
    count_monomials,
    enumerate_monomials,
    well_formed_space,
    well_formize_plane,
)


@dataclass(frozen=True)
class PlaneCurveCheck:
    """Irreducibility report for a general degree-d curve in P(a,b,c)."""

    weights: tuple[int, int, int]
    degree: int
    irreducible: bool
    reason: str


def _pencil_power(monomials, degree: int) -> bool:
    """True when the monomial set is {g1^i g2^(k-i)} for some k > 1."""
    k = len(monomials) - 1
    if k <= 1 or degree % k != 0:
        return False
    lo, hi = min(monomials), max(monomials)
    if any(x % k for x in lo) or any(x % k for x in hi):
        return False
    g1 = tuple(x // k for x in lo)
    g2 = tuple(x // k for x in hi)
    powers = {
        tuple(i * a + (k - i) * b for a, b in zip(g1, g2)) for i in range(k + 1)
    }
    return powers == set(monomials)


def plane_curve_irreducible(weights, degree: int) -> PlaneCurveCheck:
    """Decide irreducibility of a general degree-d curve in a
    well-formed weighted projective plane.

    The general member is irreducible exactly when the degree-d
    monomials are at least two, share no common variable, and do not
    form the powers of a pencil of lower degree.
    """
    weights = tuple(weights)
    if len(weights) != 3:
        raise ValueError("expected a weighted projective plane")
    if not well_formed_space(weights):
        raise ValueError(f"P{weights} is not well-formed")
    mons = enumerate_monomials(weights, degree)
    if len(mons) < 2:
        return PlaneCurveCheck(
            weights, degree, False, "fewer than two monomials"
        )
    if any(min(m[i] for m in mons) > 0 for i in range(3)):
        return PlaneCurveCheck(
            weights, degree, False, "all monomials share a variable"
        )
    if _pencil_power(mons, degree):
        return PlaneCurveCheck(
            weights, degree, False, "monomials are powers of a pencil"
        )
    return PlaneCurveCheck(weights, degree, True, "irreducible")


@dataclass(frozen=True)
class NefCertificate:
    """Outcome of the nefness test for one blow-up configuration.

    ``pivot_position`` is the index of the local coordinate that was
    exempted from the slope inequalities, when a valid choice exists.
    ``failures`` lists every condition that broke, tagged by the pivot
    tried, so the certificate doubles as a diagnosis.

    ``exceptional_well_formed`` records whether the blow-up weights
    form a well-formed exceptional space.  A full certificate requires
    it, but the inequalities and the plane-curve test do not depend on
    it, so ``nef_up_to_exceptional_form`` exposes the weaker verdict.
    """

    hypersurface: WeightedHypersurface
    center_positions: tuple[int, ...]
    line_positions: tuple[int, ...]
    center_index: int
    blowup_weights: tuple[int, ...]
    nef: bool
    pivot_position: int | None
    plane: PlaneCurveCheck | None
    failures: tuple[str, ...]
    exceptional_well_formed: bool = True

    @property
    def nef_up_to_exceptional_form(self) -> bool:
        """True when every condition except possibly the well-formed
        exceptional space holds."""
        return self.nef or (
            self.pivot_position is not None and not self.exceptional_well_formed
        )


def _preconditions(h, center_positions, center_index, blowup_weights):
    problems = []
    n = h.dim
    if len(center_positions) != n:
        raise ValueError("center must have one local coordinate per dimension")
    if sorted(set(center_positions)) != sorted(center_positions):
        raise ValueError("duplicate local coordinate positions")
    if len(blowup_weights) != n:
        raise ValueError("one blow-up weight per local coordinate")
    if h.amplitude <= 0:
        problems.append("amplitude is not positive")
    if any(e <= 0 for e in blowup_weights):
        problems.append("blow-up weight has a non-positive entry")
    elif gcd(*blowup_weights) != 1:
        problems.append("blow-up weights are not primitive")
    if sum(blowup_weights) >= center_index:
        problems.append("blow-up is not discrepancy-negative for the germ")
    line = tuple(p for p in range(len(h.weights)) if p not in center_positions)
    line_weights = tuple(h.weights[p] for p in line)
    if count_monomials(line_weights, h.degree) == 0:
        problems.append("hypersurface contains the center's coordinate line")
    return line, problems


def check_nefness(
    h: WeightedHypersurface,
    center_positions,
    center_index: int,
    blowup_weights,
) -> NefCertificate:
    """Test the blow-up of one quotient point against the criterion.

    The germ at the center is 1/center_index(blowup_weights) in the
    local coordinates listed by ``center_positions`` (entries index into
    the ambient weight vector, in the same order as the blow-up
    weights).  The two remaining coordinates span the line that the
    center lies on.
    """
    center_positions = tuple(center_positions)
    blowup_weights = tuple(blowup_weights)
    line, problems = _preconditions(
        h, center_positions, center_index, blowup_weights
    )

    exc_ok = all(e > 0 for e in blowup_weights) and well_formed_space(
        blowup_weights
    )
    exc_note = "exceptional space is not well-formed"

    def fail(extra):
        return NefCertificate(
            hypersurface=h,
            center_positions=center_positions,
            line_positions=line,
            center_index=center_index,
            blowup_weights=blowup_weights,
            nef=False,
            pivot_position=None,
            plane=None,
            failures=tuple(problems + extra),
            exceptional_well_formed=exc_ok,
        )

    if problems:
        return fail([])
    alpha = h.amplitude
    d = h.degree
    r = center_index
    drop = r - sum(blowup_weights)
    b_line = prod(h.weights[p] for p in line)
    attempts = [] if exc_ok else [exc_note]
    for k, pos_k in enumerate(center_positions):
        slope_bad = [
            pos
            for t, pos in enumerate(center_positions)
            if t != k
            and alpha * blowup_weights[t] < h.weights[pos] * drop
        ]
        if slope_bad:
            attempts.append(
                f"pivot {pos_k}: slope fails at positions {slope_bad}"
            )
            continue
        lhs = alpha * d * r * blowup_weights[k]
        rhs = h.weights[pos_k] * b_line * drop
        if lhs < rhs:
            attempts.append(f"pivot {pos_k}: degree inequality fails")
            continue
        plane_raw = (h.weights[pos_k],) + tuple(h.weights[p] for p in line)
        try:
            plane_w, plane_d = well_formize_plane(plane_raw, d)
        except DegreeNotTransportable:
            attempts.append(f"pivot {pos_k}: plane cannot be well-formized")
            continue
        plane = plane_curve_irreducible(plane_w, plane_d)
        if not plane.irreducible:
            attempts.append(f"pivot {pos_k}: plane curve {plane.reason}")
            continue
        return NefCertificate(
            hypersurface=h,
            center_positions=center_positions,
            line_positions=line,
            center_index=center_index,
            blowup_weights=blowup_weights,
            nef=exc_ok,
            pivot_position=pos_k,
            plane=plane,
            failures=() if exc_ok else (exc_note,),
            exceptional_well_formed=exc_ok,
        )
    return fail(attempts)


@dataclass(frozen=True)
class TwoPointCenter:
    """One of the two centers for the simultaneous blow-up test.

    ``own_position`` is the local coordinate this center does not share
    with the other one; its blow-up weight is the last entry of
    ``blowup_weights``.
    """

    own_position: int
    index: int
    blowup_weights: tuple[int, ...]


def check_nefness_two_points(
    h: WeightedHypersurface,
    shared_positions,
    first: TwoPointCenter,
    second: TwoPointCenter,
) -> NefCertificate:
    """Test the simultaneous blow-up of two quotient points.

    The centers lie on coordinate lines that share all local coordinates
    except one: both use ``shared_positions`` (matching the leading
    blow-up weights in order) and each adds its ``own_position``.  Nef
    here means the canonical class of the double blow-up.
    """
    shared_positions = tuple(shared_positions)
    n = h.dim
    if len(shared_positions) != n - 1:
        raise ValueError("two-point centers must share all but one local")
    for c in (first, second):
        if len(c.blowup_weights) != n:
            raise ValueError("one blow-up weight per local coordinate")
    pos_n = first.own_position
    pos_n1 = second.own_position
    used = set(shared_positions) | {pos_n, pos_n1}
    if len(used) != n + 1:
        raise ValueError("center coordinate positions overlap illegally")
    (pos_last,) = [p for p in range(len(h.weights)) if p not in used]

    problems = []
    exc_ok = True
    if h.amplitude <= 0:
        problems.append("amplitude is not positive")
    for tag, c in (("first", first), ("second", second)):
        e = c.blowup_weights
        if any(x <= 0 for x in e):
            problems.append(f"{tag} blow-up weight has a non-positive entry")
            continue
        if gcd(*e) != 1:
            problems.append(f"{tag} blow-up weights are not primitive")
        if sum(e) >= c.index:
            problems.append(f"{tag} blow-up is not discrepancy-negative")
        if not well_formed_space(e):
            exc_ok = False
            problems.append(f"{tag} exceptional space is not well-formed")
    for tag, line in (
        ("first", (pos_n1, pos_last)),
        ("second", (pos_n, pos_last)),
    ):
        lw = tuple(h.weights[p] for p in line)
        if count_monomials(lw, h.degree) == 0:
            problems.append(f"hypersurface contains the {tag} center's line")

    alpha = h.amplitude
    d = h.degree
    center_positions = shared_positions + (pos_n, pos_n1)

    def fail(extra):
        return NefCertificate(
            hypersurface=h,
            center_positions=center_positions,
            line_positions=(pos_last,),
            center_index=first.index,
            blowup_weights=first.blowup_weights + second.blowup_weights,
            nef=False,
            pivot_position=None,
            plane=None,
            failures=tuple(problems + extra),
            exceptional_well_formed=exc_ok,
        )

    if problems:
        return fail([])
    reasons = []
    for tag, c in (("first", first), ("second", second)):
        drop = c.index - sum(c.blowup_weights)
        bad = [
            pos
            for t, pos in enumerate(shared_positions)
            if alpha * c.blowup_weights[t] < h.weights[pos] * drop
        ]
        if bad:
            reasons.append(f"{tag} center: slope fails at positions {bad}")
    drop1 = first.index - sum(first.blowup_weights)
    drop2 = second.index - sum(second.blowup_weights)
    lhs = Fraction(
        alpha * d,
        h.weights[pos_n] * h.weights[pos_n1] * h.weights[pos_last],
    )
    rhs = Fraction(drop1, first.index * first.blowup_weights[-1]) + Fraction(
        drop2, second.index * second.blowup_weights[-1]
    )
    if lhs < rhs:
        reasons.append("joint degree inequality fails")
    plane_raw = (h.weights[pos_n], h.weights[pos_n1], h.weights[pos_last])
    plane = None
    try:
        plane_w, plane_d = well_formize_plane(plane_raw, d)
    except DegreeNotTransportable:
        reasons.append("plane cannot be well-formized")
    else:
        plane = plane_curve_irreducible(plane_w, plane_d)
        if not plane.irreducible:
            reasons.append(f"plane curve {plane.reason}")
    if reasons:
        return fail(reasons)
    return NefCertificate(
        hypersurface=h,
        center_positions=center_positions,
        line_positions=(pos_last,),
        center_index=first.index,
        blowup_weights=first.blowup_weights + second.blowup_weights,
        nef=True,
        pivot_position=None,
        plane=plane,
        failures=(),
    )
