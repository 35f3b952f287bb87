"""
Infinite families, dimension lifts, and volume lower bounds
===========================================================

Beyond single models the library packages three kinds of infinite
families whose members all have volume zero, two ways of re-embedding
a 3-fold construction in higher dimension, and the closed-form lower
bounds that the lifted volumes are measured against.
"""

from hyperblow.construct import format_rational
from hyperblow.families import (
    add_one_weight,
    bound_nm1,
    bound_nm2,
    family_instance,
    lift_hypersurface,
    load_families,
    v_star_series,
    verify_family_member,
)
from hyperblow.locus import singular_locus
from hyperblow.quotients import SingularityClass, classify
from hyperblow.weights import WeightedHypersurface

# The packaged family catalogue: each spec fixes a germ shape and an
# arithmetic admission condition on the index r.
specs = load_families()
print(len(specs), "family specifications, kinds:",
      sorted({s.kind for s in specs}))

# One spec in action.  Members exist only at admitted indices; every
# member runs the full construction and must come out at volume zero.
spec = next(s for s in specs if s.kind == "6r" and s.params == (3, 4, 5))
print()
print(spec.describe())
for r in range(13, 44):
    instance = family_instance(spec, r)
    if instance is None:
        continue
    report = verify_family_member(spec, r)
    print(f"  r={r}: {instance.hypersurface}, volume "
          f"{format_rational(report.volume)}, P2={report.second_plurigenus}")

# Lift one: pad with weight-one coordinates until the amplitude drops
# to one.  The 3-fold with the smallest known positive volume becomes
# an 11-fold of general type with K^11 = 1/70.
base = WeightedHypersurface((1, 1, 10, 14, 35), 70)
model = lift_hypersurface(base)
print()
print(base, "->", model.hypersurface)
print("dimension:", model.dim, "volume:", format_rational(model.volume))
print("classification:", model.classification)

# Lift two: adjoin a single weight-one coordinate over a model whose
# blown-up 3-fold is already known; the center must be the unique
# non-canonical point.
base = WeightedHypersurface((1, 1, 2, 3, 7), 16)
stratum = next(
    s for s in singular_locus(base).point_strata
    if classify(s.germ) is SingularityClass.NONCANONICAL
)
lifted = add_one_weight(base, stratum, stratum.germ.residues)
print()
print(base, "->", lifted.hypersurface)
print("dimension:", lifted.dim, "volume:", format_rational(lifted.volume))

# The lower bounds on the volume of an n-fold of general type whose
# canonical image has dimension n-1 or n-2, at the smallest admissible
# genus.
print()
print(" n  bound(n-1)  bound(n-2)")
for n in (3, 4, 5, 8, 12, 19):
    print(f"{n:3}  {format_rational(bound_nm1(n, n)):>9}  "
          f"{format_rational(bound_nm2(n, n - 1)):>9}")

# The series of n-folds tracking the dimension-(n-1) bound: equality
# holds at n = 4 and 5, and the ratio tends to 9/8 afterwards.
print()
print(" n  volume      bound       ratio")
for n in (4, 5, 7, 10, 25, 50, 100):
    if n % 3 == 0:
        continue
    member = v_star_series(n)
    print(f"{n:3}  {format_rational(member.volume):>9}  "
          f"{format_rational(member.lower_bound):>9}  {float(member.ratio):.4f}")
