"""
Weighted hypersurfaces: grading, quasismoothness, singular locus
================================================================

A degree-d hypersurface inside a weighted projective space is described
by its weight tuple and degree alone; everything downstream (monomial
counts, smoothness tests, the list of quotient singularities) is exact
integer arithmetic on that pair.
"""

from hyperblow.locus import singular_locus
from hyperblow.weights import (
    WeightedHypersurface,
    count_monomials,
    enumerate_monomials,
    hyperplane_self_intersection,
    is_quasismooth,
    well_formed_space,
)

# A compact example used throughout these demos: degree 33 in weights
# (3,4,5,7,13).  The amplitude alpha = d - sum(weights) is 1, so the
# canonical class is the hyperplane class.
h = WeightedHypersurface((3, 4, 5, 7, 13), 33)
print(h)
print("dimension:", h.dim)
print("amplitude:", h.amplitude)

# Well-formedness asks that no four of the five weights share a factor.
print("ambient space well-formed:", well_formed_space(h.weights))

# Quasismoothness is a combinatorial condition on which monomials of
# degree d exist; a general member is then smooth away from the
# singularities of the ambient space.
print("quasismooth:", is_quasismooth(h))

# The monomials themselves are available when a certificate needs them.
print("degree-33 monomials in the first three weights:")
for exponents in enumerate_monomials((3, 4, 5), 33):
    print("  ", exponents)

# Monomial counts drive every plurigenus computed later: sections of
# O(m) correspond to weighted monomials of degree m.
for m in (1, 33, 66):
    print(f"sections of O({m}):", count_monomials(h.weights, m))

# The top self-intersection of O(1) is d over the product of weights.
print("O(1)^3 =", hyperplane_self_intersection(h))

# The singular locus of a general member: one cyclic quotient germ per
# weight not dividing the degree, plus curves where two weights share a
# factor.  Here all four singular points are isolated.
locus = singular_locus(h)
for stratum in locus.point_strata:
    print(stratum.describe())
print("singular curves:", len(locus.curve_strata))

# A second example where two weights do share factors: the locus picks
# up points in pairs and a curve of transverse quotient singularities.
g = WeightedHypersurface((1, 2, 4, 5, 7), 21)
print()
print(g)
for stratum in singular_locus(g).strata:
    print(stratum.describe())
