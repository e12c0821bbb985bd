"""One-parameter module: barcode, counting function, denoising.

The running example: a rank-4 module over F_3 on the grid {0..4} with
dimension vector (3, 2, 2, 1, 1).  Its barcode has bars [0,1), [0,2),
[2,3) and one infinite class.
"""
from fractions import Fraction as Q

from pnoise import barcode, fcf, denoise, structure as st
from pnoise.gallery import line_module
from pnoise.noise import ConeNoise

F = line_module()
print("dims:", [F.dims[(k,)] for k in range(F.box + 1)])
print("rank:", st.rank(F))

bars = barcode.decompose(F)
print("barcode:")
for b in bars:
    end = "inf" if b.end is None else b.end[0]
    print(f"  [{b.start[0]}, {end})")

# the feature counting function: how many bars survive t units of noise
ray = ConeNoise(((Q(1),),))
f = fcf.bar_r1(ray, F)
print("bar(F):")
for t in (Q(0), Q(1), Q(3, 2), Q(2), Q(5, 2)):
    print(f"  t={t}: {f.value(t)}")

# quotient denoising picks an actual module realizing each count
for t in (Q(3, 2), Q(5, 2)):
    d = denoise.quotient_denoise(ray, F, t)
    print(f"denoise at t={t}: rank {d.rank}, certified={d.certified}, "
          f"dims {[d.module.dims[(k,)] for k in range(F.box + 1)]}")
