"""
From hypersurface to minimal model, step by step
================================================

The construction pipeline takes a quasismooth hypersurface whose
canonical class is a positive multiple of the hyperplane class, blows
up one cyclic quotient point with carefully chosen weights, certifies
that the resulting canonical class is nef, terminalizes what is left,
and reports the invariants of the outcome.
"""

from hyperblow.construct import (
    ConstructionError,
    format_rational,
    run_construction,
)
from hyperblow.weights import WeightedHypersurface

# The walkthrough example again: one blow-up of the index-13 point.
h = WeightedHypersurface((3, 4, 5, 7, 13), 33)
report = run_construction(h)

print(report.source)
print("volume K^3 =", format_rational(report.volume))
print("genus p_g  =", report.genus)
print("P_2        =", report.second_plurigenus)
print("chi(O)     =", report.euler_characteristic)
print("rho        =", report.picard_rank)
print("basket     =", dict(report.basket))
print("kodaira    =", report.kodaira_class)

# Each blow-up record carries its full nefness certificate.
record = report.blowups[0]
print()
print("extracted center:", record.stratum.describe())
print("blow-up weight:", record.b_weight)
cert = record.certificate
print("nef:", cert.nef, "- pivot coordinate:", cert.pivot_position)
print("exceptional space well-formed:", cert.exceptional_well_formed)
print("plane curve check:", cert.plane.reason or "irreducible")

# Units rejected before the certified one, with the reason each failed.
if record.rejected_units:
    for unit, reason in record.rejected_units:
        print("rejected unit", unit, "->", reason)
else:
    print("certified with unit", record.unit, "on the first try")

# A volume-zero outcome: the canonical class stops being big and the
# numerical Kodaira dimension drops to 2.
flat = run_construction(WeightedHypersurface((3, 4, 5, 26, 39), 78))
print()
print(flat.source)
print("volume:", format_rational(flat.volume))
print("numerical kodaira dimension:", flat.numerical_kodaira)
print("kodaira class:", flat.kodaira_class)

# Distance above the boundary line relating volume and genus; zero
# means the model sits exactly on the line.
boundary = run_construction(WeightedHypersurface((1, 1, 10, 14, 35), 70))
print()
print(boundary.source)
print("volume:", format_rational(boundary.volume), "genus:", boundary.genus)
print("distance above the volume-genus line:", boundary.noether_distance())

# Failures are staged errors, not silent skips: stage 0 rejects bad
# input, stage 2 reports when no unit certifies a nef extraction.
try:
    run_construction(WeightedHypersurface((1, 1, 1, 6, 9), 18))
except ConstructionError as ex:
    print()
    print("stage", ex.stage, "failure:", ex.reason)
