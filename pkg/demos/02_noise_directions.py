"""Noise systems are directional, and their components need not be closed
under direct sums.

Two stories:
 1. a module supported on a union of two axis bands is small diagonal
    noise but is not small noise in either single-axis direction;
 2. two modules that each sit inside a two-generator cone component at
    level 1 while their direct sum does not.
"""
from fractions import Fraction as Q

from pnoise import noise as ns
from pnoise.gallery import band_union, two_bar_modules
from pnoise.grid import direct_sum

G = band_union()

diag = ns.ConeNoise(((Q(1), Q(1)),))
e1 = ns.ConeNoise(((Q(1), Q(0)),))
e2 = ns.ConeNoise(((Q(0), Q(1)),))

print("band union, diagonal direction:", ns.noise_size(diag, G))
for name, spec in (("e1", e1), ("e2", e2)):
    sizes = [eps for eps in range(G.box + 1)
             if ns.contains(spec, G, Q(eps))]
    print(f"band union, {name} direction: member at eps in {sizes}")

# why membership can fail to pass to sums: the cone below is not closed
# under direct sums at level 1
A, B = two_bar_modules()
spec = ns.ConeNoise(((Q(1), Q(0), Q(1)), (Q(1, 2), Q(1), Q(0))))
print("A in cone at 1:", ns.contains(spec, A, Q(1)))
print("B in cone at 1:", ns.contains(spec, B, Q(1)))
print("A+B in cone at 1:", ns.contains(spec, direct_sum(A, B), Q(1)))
print("A+B noise size:", ns.noise_size(spec, direct_sum(A, B)))
print("closed under sums at 1:", ns.closed_under_sums(spec, Q(1)))
