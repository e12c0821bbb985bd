"""Minimal denoisings need not be spanned by any subset of the minimal
generators.

In both modules below, every single minimal generator spans a submodule
whose cokernel has noise size 2, but the sum of the generator images
(pushed to a common grade) spans one with noise size 1.
"""
from fractions import Fraction as Q

from pnoise import noise as ns, structure as st
from pnoise.gallery import (generator_sum_seed, plane_example_module,
                            space_example_module)


def survey(F, spec, sum_seed):
    print(f"  rank {st.rank(F)}, generators at "
          f"{sorted(g for g, _ in st.minimal_generators(F))}")
    for v, x in st.minimal_generators(F):
        S = st.span_submodule(F, [(v, x)])
        C, _ = st.quotient_by_submodule(F, S)
        print(f"  <gen at {v}>: coker size {ns.noise_size(spec, C)}")
    S = st.span_submodule(F, [sum_seed])
    C, _ = st.quotient_by_submodule(F, S)
    print(f"  <sum at {sum_seed[0]}>: coker size {ns.noise_size(spec, C)}")


print("planar example (F_2):")
survey(plane_example_module(), ns.ConeNoise(((Q(1), Q(1)),)),
       ((1, 1), (1, 0)))

print("\nthree-parameter example (F_3):")
F = space_example_module()
survey(F, ns.ConeNoise(((Q(1), Q(1), Q(1)),)), generator_sum_seed(F))
