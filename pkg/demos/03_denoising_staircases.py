"""Denoising planar staircase modules.

The 4-generator staircase has bar value 2 at t=2; the subfunctor search
finds the certified rank-2 submodule and shrinks it to an inclusion-minimal
one.  The wider staircase shows the minimal denoising is not unique.
"""
from fractions import Fraction as Q

from pnoise import denoise, fcf, structure as st
from pnoise.gallery import staircase_module, wide_staircase_module
from pnoise.noise import ConeNoise

diag = ConeNoise(((Q(1), Q(1)),))


def grades(M):
    return sorted(tuple(int(c) for c in g) for g in st.betti0(M))


F = staircase_module()
print("staircase generators:", grades(F))
print("bar(F)_2 =", fcf.bar_search(diag, F, [Q(2)]).value(Q(2)))

d = denoise.subfunctor_denoise(diag, F, Q(2))
print("denoised rank:", d.rank, "certified:", d.certified)
print("denoised generators:", grades(d.module))

# quotient mode on the same module can overshoot: compare
q = denoise.quotient_denoise(diag, F, Q(2))
print("quotient-mode rank:", q.rank, "certified:", q.certified)

W = wide_staircase_module()
print("\nwide staircase generators:", grades(W))
dw = denoise.subfunctor_denoise(diag, W, Q(2), engine="orbit")
print("denoised rank:", dw.rank,
      "generators:", grades(dw.module))
# two incomparable denoisings exist here; check both span valid ones
for alt in ([(1, 3), (3, 1)], [(1, 2), (5, 1)]):
    S = st.span_submodule(W, [(g, (1,)) for g in alt])
    C, _ = st.quotient_by_submodule(W, S)
    from pnoise import noise as ns
    print(f"  span{alt}: coker noise size {ns.noise_size(diag, C)}")
