"""Holes, decompositions, and minimal semigroup certificates.

A hole of the k-th dilate is a lattice point of kP that is not a sum of k
lattice points of P.  The higashitani:3,h member has exactly h holes, all at
k = 2.  At each vertex v, minimal-length representations over the generators
P∩M - v certify semigroup membership; an infeasible pair certifies that the
polytope is not very ample.
"""

from polynorm import (
    decompose_point,
    full_report,
    generator_set,
    higashitani,
    reeve_like,
    scan_normality,
    sigma,
)

# -- holes of the higashitani family ------------------------------------------

for h in (1, 2, 3):
    p = higashitani(3, h)
    scan = scan_normality(p)
    print(f"{p.name}: d_P={scan.d_P}  k_P={scan.k_P}")
    for k, (flag, holes) in sorted(scan.per_k.items()):
        print(f"  k={k}: {'normal' if flag else f'{len(holes)} hole(s): {sorted(holes)}'}")
print()

# -- decomposing a deep dilate point -------------------------------------------

p = higashitani(3, 2)
u = (2, 3, 5)
x, units = decompose_point(p, u, k=4, d_P=2)
print(f"{u} in 4P splits as {x} (in 2P) + {' + '.join(map(str, units))}")
print()

# -- minimal certificates and a non-very-ample witness -------------------------

gs = generator_set(p, (0, 0, 0))
cert = sigma(gs, (1, 1, 3))
print(f"sigma((1,1,3), origin of {p.name}) = {cert.length} via parts {cert.parts}")

r = full_report(reeve_like())
print(f"\n{r.name}: very_ample={r.very_ample}")
print(f"non-saturation witness: {r.witnesses['non_saturation']}")
print("(every generator sum at the origin has even coordinate sum, so the")
print(" cone point (1,1,1) can never be reached: k_P is undefined)")
