"""Infinite families with vanishing volume, dimension lifts, and the
volume lower-bound formulas.

Three one-parameter shapes of hypersurface produce, for every index r
passing a table of residue conditions, a model whose extraction has
numerically trivial canonical class:

  6r      X_{6r}      in P(a, b, c, 2r, 3r)      center 1/r(a, b, c)
  3r+3k   X_{3r+3k}   in P(a, b, r+k, 3k, r)     center 1/r(a, b, k)
  4r+2k   X_{4r+2k}   in P(a, b, 2r+k, 2k, r)    center 1/r(a, b, k)

The lifting operations trade a 3-fold for an n-fold: either by padding
the ambient space with weight-one coordinates (``lift_hypersurface``),
or by doing that once while keeping track of the blow-up
(``add_one_weight``).  The bound functions evaluate the sharp lower
bounds for volumes of minimal n-folds whose canonical image has
dimension n-1 or n-2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import ceil, prod

from .construct import ConstructionError, MinimalModelReport, run_construction
from .locus import Stratum, singular_locus
from .nef import NefCertificate, check_nefness
from .quotients import QuotientSingularity, same_germ, terminality_margin
from .weights import WeightedHypersurface, count_monomials, hyperplane_self_intersection


@dataclass(frozen=True)
class FamilySpec:
    """One row of the family tables: a shape plus residue conditions on r."""

    kind: str
    params: tuple[int, ...]
    k: int
    r_min: int
    conditions: tuple[tuple[int, tuple[int, ...]], ...]

    def admits(self, r: int) -> bool:
        if r < self.r_min:
            return False
        return all(r % m in allowed for m, allowed in self.conditions)

    def describe(self) -> str:
        body = ",".join(str(p) for p in self.params)
        if self.kind == "6r":
            return f"6r({body})"
        return f"{self.kind}({body})@k={self.k}"


@dataclass(frozen=True)
class FamilyInstance:
    spec: FamilySpec
    r: int
    hypersurface: WeightedHypersurface
    center: QuotientSingularity


def load_families(path=None) -> tuple[FamilySpec, ...]:
    """Family table from the packaged JSON file (or an override path)."""
    if path is None:
        text = resources.files("hyperblow.data").joinpath("families.json").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    raw = json.loads(text)
    specs = []
    for row in raw["families"]:
        specs.append(
            FamilySpec(
                kind=row["kind"],
                params=tuple(row["params"]),
                k=row.get("k", 1),
                r_min=row["r_gt"] + 1,
                conditions=tuple((m, tuple(res)) for m, res in row["conditions"]),
            )
        )
    return tuple(specs)


def family_instance(spec: FamilySpec, r: int) -> FamilyInstance | None:
    """Instantiate the family at index r, or None when r fails the conditions."""
    if not spec.admits(r):
        return None
    if spec.kind == "6r":
        a, b, c = spec.params
        h = WeightedHypersurface((a, b, c, 2 * r, 3 * r), 6 * r)
        center = QuotientSingularity(r, (a, b, c))
    elif spec.kind == "3r+3k":
        a, b = spec.params
        k = spec.k
        h = WeightedHypersurface((a, b, r + k, 3 * k, r), 3 * r + 3 * k)
        center = QuotientSingularity(r, (a, b, k))
    elif spec.kind == "4r+2k":
        a, b = spec.params
        k = spec.k
        h = WeightedHypersurface((a, b, 2 * r + k, 2 * k, r), 4 * r + 2 * k)
        center = QuotientSingularity(r, (a, b, k))
    else:
        raise ValueError(f"unknown family kind {spec.kind!r}")
    return FamilyInstance(spec=spec, r=r, hypersurface=h, center=center)


def verify_family_member(spec: FamilySpec, r: int) -> MinimalModelReport:
    """Run the full construction on the family member and require that
    the outcome has volume zero over the designated center."""
    inst = family_instance(spec, r)
    if inst is None:
        raise ValueError(f"r={r} fails the conditions of family {spec.describe()}")
    report = run_construction(inst.hypersurface)
    if report.volume != 0:
        raise ConstructionError(
            4, f"family member {inst.hypersurface} has volume {report.volume}, expected 0"
        )
    if len(report.blowups) != 1 or not same_germ(
        report.blowups[0].blowup.center, inst.center
    ):
        raise ConstructionError(
            4, f"extraction center differs from the designated {inst.center}"
        )
    return report


@dataclass(frozen=True)
class LiftedModel:
    """A 3-fold re-embedded as an n-fold by padding with weight-one
    coordinates; the canonical class becomes the hyperplane class."""

    base: WeightedHypersurface
    hypersurface: WeightedHypersurface
    classification: str
    volume: Fraction
    genus: int
    genus_lower_bound: int

    @property
    def dim(self) -> int:
        return self.hypersurface.dim

    @property
    def canonical_dimension(self) -> int:
        return self.genus - 1


def lift_hypersurface(h3: WeightedHypersurface) -> LiftedModel:
    """Pad the ambient with amplitude-1 weight-one coordinates.

    The singularity class of the result follows from the margins of the
    3-fold germs: with m = min over singular points of (amplitude +
    margin), m > 1 forces terminal, m = 1 forces canonical, and below
    that nothing is guaranteed.
    """
    alpha = h3.amplitude
    if alpha <= 1:
        raise ValueError(f"lifting needs amplitude at least 2, got {alpha}")
    locus = singular_locus(h3)
    if locus.has_curves:
        raise ValueError("lifting is only supported for isolated singular loci")
    margins = [terminality_margin(s.germ) for s in locus.point_strata if not s.germ.is_smooth]
    worst = min((alpha + m for m in margins), default=alpha + 1)
    if worst > 1:
        classification = "terminal"
    elif worst == 1:
        classification = "canonical"
    else:
        classification = "not_guaranteed"
    lifted = WeightedHypersurface((1,) * (alpha - 1) + h3.weights, h3.degree)
    assert lifted.amplitude == 1
    return LiftedModel(
        base=h3,
        hypersurface=lifted,
        classification=classification,
        volume=Fraction(h3.degree, prod(h3.weights)),
        genus=count_monomials(lifted.weights, 1),
        genus_lower_bound=alpha - 1,
    )


@dataclass(frozen=True)
class OneWeightLift:
    """A blown-up 3-fold re-embedded one dimension up, blow-up included."""

    base: WeightedHypersurface
    hypersurface: WeightedHypersurface
    center: QuotientSingularity
    blowup_weights: tuple[int, ...]
    volume: Fraction
    numerical_kodaira: int
    genus: int
    certificate: NefCertificate

    @property
    def dim(self) -> int:
        return self.hypersurface.dim

    @property
    def canonical_dimension(self) -> int:
        return self.genus - 1


def add_one_weight(
    h: WeightedHypersurface, center: Stratum, blowup_weights
) -> OneWeightLift:
    """Adjoin one weight-one coordinate to a nef extraction.

    Requires the blow-up weights to be the plain residues of the ambient
    weights at the center (no rescaling) and the discrepancy gap
    r - sum(e) to sit in (1, amplitude].  The lifted extraction with
    weights (1, e) is then nef again; this is asserted, not assumed.
    The canonical class of the lift is numerically trivial exactly when
    the base extraction was and the gap equals the amplitude.
    """
    e = tuple(blowup_weights)
    germ = center.germ
    r = germ.index
    if e != germ.residues:
        raise ValueError(f"blow-up weights {e} are not the residues of {germ}")
    for pos, ei in zip(center.local_indices, e):
        if h.weights[pos] % r != ei:
            raise ValueError(
                f"weight {h.weights[pos]} at position {pos} does not reduce to {ei} mod {r}"
            )
    gap = r - sum(e)
    alpha = h.amplitude
    if not 1 < gap <= alpha:
        raise ValueError(
            f"need amplitude >= index - sum(weights) > 1, got {alpha} and {gap}"
        )
    base_cert = check_nefness(h, center.local_indices, r, e)
    if not base_cert.nef:
        raise ValueError(
            "the base extraction is not nef: " + "; ".join(base_cert.failures)
        )
    lifted = WeightedHypersurface((1,) + h.weights, h.degree)
    lifted_positions = (0,) + tuple(p + 1 for p in center.local_indices)
    lifted_e = (1,) + e
    cert = check_nefness(lifted, lifted_positions, r, lifted_e)
    assert cert.nef, f"lifted extraction lost nefness: {cert.failures}"

    n = lifted.dim
    vol = Fraction(lifted.amplitude**n) * hyperplane_self_intersection(lifted)
    vol -= Fraction((r - sum(lifted_e)) ** n, r * prod(lifted_e))
    base_vol = Fraction(alpha**h.dim) * hyperplane_self_intersection(h)
    base_vol -= Fraction(gap**h.dim, r * prod(e))
    nu = h.dim if (base_vol == 0 and gap == alpha) else h.dim + 1
    assert (vol == 0) == (nu == h.dim), (vol, nu)
    return OneWeightLift(
        base=h,
        hypersurface=lifted,
        center=QuotientSingularity(r, lifted_e),
        blowup_weights=lifted_e,
        volume=vol,
        numerical_kodaira=nu,
        genus=count_monomials(lifted.weights, lifted.amplitude),
        certificate=cert,
    )


def bound_nm1(n: int, p_g: int) -> Fraction:
    """Sharp volume lower bound when the canonical image has dimension n-1."""
    if n < 3:
        raise ValueError("defined for dimension at least 3")
    if p_g < n:
        raise ValueError(f"canonical image of dimension {n - 1} needs p_g >= {n}")
    linear = Fraction(2 * (p_g - n + 1), n - 1)
    rounded = Fraction(ceil(Fraction(8, 3) * ((n - 1) * (p_g - n + 1) - 1)), (n - 1) ** 2)
    return max(linear, rounded)


def bound_nm2(n: int, p_g: int) -> Fraction:
    """Volume lower bound when the canonical image has dimension n-2."""
    if n < 3:
        raise ValueError("defined for dimension at least 3")
    if p_g < n - 1:
        raise ValueError(f"canonical image of dimension {n - 2} needs p_g >= {n - 1}")
    if n == 3:
        return Fraction(1, 3)
    s = p_g - n + 2
    if n <= 11:
        return Fraction(s * s, (n - 2) * (s * (n - 2) + 1))
    return Fraction(2 * (2 * (n - 2) * s - 3), 3 * (n - 2) ** 3)


@dataclass(frozen=True)
class VStarMember:
    """One member of the small-volume series with canonical image of
    dimension n-1."""

    n: int
    hypersurface: WeightedHypersurface
    volume: Fraction
    lower_bound: Fraction

    @property
    def ratio(self) -> Fraction:
        return self.volume / self.lower_bound


def v_star_series(n: int) -> VStarMember:
    """Series member of dimension n (defined for n >= 4 not divisible by 3).

    The volume is computed from the weights and degree and cross-checked
    against the closed forms 3/(n+1) and 6/(2n+1); the bound slot holds
    the dimension-(n-1) lower bound at p_g = n.
    """
    if n < 4:
        raise ValueError("the series starts in dimension 4")
    if n % 3 == 0:
        raise ValueError("no member is defined when 3 divides the dimension")
    if n % 3 == 2:
        k = (n - 2) // 3
        h = WeightedHypersurface((1,) * n + (2 * (k + 1), 5 * (k + 1)), 10 * (k + 1))
        closed = Fraction(3, n + 1)
    else:
        k = (n - 1) // 3
        h = WeightedHypersurface((1,) * n + (2 * k + 1, 5 * k + 3), 10 * k + 6)
        closed = Fraction(6, 2 * n + 1)
    assert h.amplitude == 1
    vol = Fraction(h.degree, prod(h.weights))
    assert vol == closed, (vol, closed)
    return VStarMember(n=n, hypersurface=h, volume=vol, lower_bound=bound_nm1(n, n))
