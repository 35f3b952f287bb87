"""
Cyclic quotient points: classification and crepant terminalization
==================================================================

A germ 1/r(a,b,c) is classified by the minimal age of the group
elements: terminal above one, strictly canonical at one, worse below.
Strictly canonical points admit a crepant partial resolution obtained
by star subdividing the toric cone at its age-one lattice points; the
subdivision order never changes the answer.
"""

from hyperblow.crepant import age_one_points, terminalize
from hyperblow.quotients import (
    QuotientSingularity,
    basket_pair,
    classify,
    normalize,
    terminality_margin,
)

# Classification examples.  The margin is the integer slack in the age
# condition: positive margins are terminal, zero strictly canonical.
for germ in (
    QuotientSingularity(2, (1, 1, 1)),
    QuotientSingularity(5, (1, 4, 2)),
    QuotientSingularity(7, (1, 2, 4)),
    QuotientSingularity(13, (3, 4, 5)),
):
    print(
        germ,
        classify(germ).name.lower(),
        "margin", terminality_margin(germ),
        "normal form", normalize(germ),
    )

# Terminal germs contribute a single basket pair (b, r).
print()
print("basket pair of 1/5(1,4,2):", basket_pair(QuotientSingularity(5, (1, 4, 2))))

# A strictly canonical germ: the age-one points are the rays any
# crepant subdivision must insert, one Picard rank each.
q = QuotientSingularity(7, (1, 2, 4))
print()
print(q, "age-one points:", age_one_points(q))
result = terminalize(q)
print("rays inserted:", result.rho_contribution)
print("resolves smoothly:", result.resolves_smoothly)

# Here the subdivision stops at two terminal index-2 cones instead.
q = QuotientSingularity(4, (1, 2, 3))
result = terminalize(q)
print()
print(q, "-> rays", result.rho_contribution, "basket", dict(result.basket))
for leaf in result.leaves:
    print("  leaf cone", leaf.generators, "index", leaf.index, "germ", leaf.germ)

# Lattice volume is conserved: leaf indices always sum to r.
print("leaf indices sum to", sum(leaf.index for leaf in result.leaves))

# The choice of subdivision point is free.  Handing terminalize a
# different chooser exercises another order and lands on the same
# basket and ray count.
q = QuotientSingularity(9, (1, 1, 7))
first = terminalize(q)
last = terminalize(q, chooser=lambda cands: cands[-1])
print()
print(q, "default order:  rays", first.rho_contribution, "basket", dict(first.basket))
print(q, "reversed order: rays", last.rho_contribution, "basket", dict(last.basket))
