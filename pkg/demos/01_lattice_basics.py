"""Tour of the divisor-class lattice.

The blowup of the plane at r general points has divisor classes
a*l - sum(b_i * e_i), stored as integer vectors (a; b_1..b_r) with the
intersection form diag(1, -1, ..., -1).
"""

from delpezzo import (
    PicardClass,
    adjoint,
    canonical_class,
    degree,
    intersect,
    line,
    point_class,
    sectional_genus,
    type_pattern,
)

r = 6  # the cubic surface
l = line(r)
e1 = point_class(r, 1)
K = canonical_class(r)

print("basis classes on the cubic surface (r = 6):")
print(f"  l   = {l}      l.l   = {intersect(l, l)}")
print(f"  e_1 = {e1}  e_1^2 = {degree(e1)}")
print(f"  K   = {K},  (-K)^2 = {degree(-K)}  (the degree of the surface)")
print()

# the anticanonical degree 9 - r across all ranks
print("surface degrees (-K)^2 for r = 1..8:")
print(" ", [degree(-canonical_class(s)) for s in range(1, 9)])
print()

# sectional genus: 2g - 2 = L.L + K.L
conic = PicardClass(2, (1, 1, 1, 1, 1, 0))  # conic through five of the six points
print(f"conic through five points: {conic}")
print(f"  degree {degree(conic)}, sectional genus {sectional_genus(conic)}")
print(f"  type pattern {type_pattern(conic)}")
print()

# adjoint classes shift every coefficient down by (3; 1, ..., 1)
L = PicardClass(6, (2, 2, 2, 2, 2, 2))  # -2K on the cubic surface
print(f"L = {L}")
print(f"  K + L = {adjoint(L)}")
print(f"  K + (K + L) = {adjoint(adjoint(L))}  (equals L + 2K)")
