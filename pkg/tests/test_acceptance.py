"""Acceptance checks: the worked examples and the randomized guarantees,
each with a hard runtime cap and one printed PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction as Q

from pnoise import barcode as bc
from pnoise import denoise as dn
from pnoise import fcf as fc
from pnoise import gallery as ga
from pnoise import noise as ns
from pnoise import structure as st
from pnoise.grid import (Bar, direct_sum, make_bar, make_free,
                         modules_iso_rankwise)
from pnoise.noise import INFINITE, ConeNoise

from conftest import random_line_module

RAY1 = ConeNoise(((Q(1),),))
DIAG2 = ConeNoise(((Q(1), Q(1)),))
DIAG3 = ConeNoise(((Q(1), Q(1), Q(1)),))


@contextmanager
def criterion(n, cap_seconds, desc):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"\ncriterion {n:2d}: FAIL - {desc}")
        raise
    dt = time.perf_counter() - t0
    ok = dt < cap_seconds
    print(f"\ncriterion {n:2d}: {'PASS' if ok else 'FAIL'} "
          f"({dt:.2f}s / cap {cap_seconds}s) - {desc}")
    assert ok, f"runtime {dt:.2f}s exceeded the {cap_seconds}s cap"


def test_criterion_1_hook_bar_exhaustive():
    with criterion(1, 5, "hook module bar: 2 on [0,1], 1 above"):
        F = ga.hook_module()
        res = fc.bar_search(DIAG2, F, [Q(0), Q(1, 2), Q(1), Q(3, 2), Q(2)],
                            engine="exhaustive")
        for t in (Q(0), Q(1, 2), Q(1)):
            assert res.value(t) == 2, t
        for t in (Q(3, 2), Q(2)):
            assert res.value(t) == 1, t
        assert all(exact for _, exact in res.flags)


def test_criterion_2_line_bar_and_quotient_denoise():
    with criterion(2, 1, "r=1 example: bar 4/2/1 and quotient diagrams"):
        F = ga.line_module()
        f = fc.bar_r1(RAY1, F)
        for t in (Q(0), Q(1, 2), Q(1)):
            assert f.value(t) == 4, t
        for t in (Q(3, 2), Q(2)):
            assert f.value(t) == 2, t
        for t in (Q(5, 2), Q(4), Q(100)):
            assert f.value(t) == 1, t
        mid = dn.quotient_denoise(RAY1, F, Q(3, 2))
        want_mid = direct_sum(make_bar(Bar((0,), (1,)), 4, Q(1), 3),
                              make_free((0,), 4, Q(1), 3))
        assert mid.certified and modules_iso_rankwise(mid.module, want_mid)
        late = dn.quotient_denoise(RAY1, F, Q(5, 2))
        assert late.certified and modules_iso_rankwise(
            late.module, make_free((0,), 4, Q(1), 3))


def test_criterion_3_staircase_denoise():
    with criterion(3, 5, "staircase: bar_2 = 2, certified rank-2 denoise"):
        F = ga.staircase_module()
        assert fc.bar_search(DIAG2, F, [Q(2)]).value(Q(2)) == 2
        d = dn.subfunctor_denoise(DIAG2, F, Q(2))
        assert d.certified and d.rank == 2
        seeds = [(tuple(int(c) for c in g), (1,))
                 for g in st.betti0(d.module)]
        _, incl = st.submodule_to_module(st.span_submodule(F, seeds))
        assert fc.equivalence_budget(DIAG2, incl).total() <= Q(2) - F.alpha


def test_criterion_4_no_generator_subset_is_close():
    with criterion(4, 10, "sum-of-generators beats every single generator"):
        for F, spec, sum_seed in (
                (ga.space_example_module(), DIAG3, None),
                (ga.plane_example_module(), DIAG2, ((1, 1), (1, 0)))):
            if sum_seed is None:
                sum_seed = ga.generator_sum_seed(F)
            S = st.span_submodule(F, [sum_seed])
            C, _ = st.quotient_by_submodule(F, S)
            assert ns.noise_size(spec, C) <= 1
            for v, x in st.minimal_generators(F):
                Sg = st.span_submodule(F, [(v, x)])
                Cg, _ = st.quotient_by_submodule(F, Sg)
                assert ns.noise_size(spec, Cg) > 1, (v, x)


def test_criterion_5_quotient_vs_bar():
    with criterion(5, 5, "hook quotient denoise overshoots the bar"):
        F = ga.hook_module()
        d = dn.quotient_denoise(DIAG2, F, Q(2))
        assert d.rank == 2 and not d.certified
        assert fc.bar_search(DIAG2, F, [Q(2)]).value(Q(2)) == 1


def test_criterion_6_bar_oracle_equivalence():
    with criterion(6, 60, "bar_r1 == exhaustive search on 200 random "
                          "r=1 modules"):
        rng = random.Random(42)
        for _ in range(200):
            box = rng.randrange(1, 7)
            F = random_line_module(rng, box=box, p=2, maxdim=3, total_cap=7)
            f1 = fc.bar_r1(RAY1, F)
            f2 = fc.bar_search(RAY1, F, [], engine="exhaustive").fcf
            cands = {bp[0] for bp in f1.breakpoints} | \
                {bp[0] for bp in f2.breakpoints}
            for c in sorted(cands):
                for t in (c, c + Q(1, 2)):
                    assert f1.value(t) == f2.value(t), (F.dims, t)


def _random_ses(rng, box=3, p=2):
    B = random_line_module(rng, box=box, p=p, maxdim=2)
    seeds = []
    for v in B.points():
        if B.dims[v] and rng.random() < 0.5:
            seeds.append((v, tuple(rng.randrange(p)
                                   for _ in range(B.dims[v]))))
    S = st.span_submodule(B, seeds)
    A, _ = st.submodule_to_module(S)
    C, _ = st.quotient_by_submodule(B, S)
    return A, B, C


def test_criterion_7_noise_axioms():
    with criterion(7, 60, "noise-system axioms on random exact sequences"):
        specs = [
            RAY1,
            ns.VNormNoise(((Q(1),),)),
            ns.DimensionNoise(((Q(0), 0), (Q(1), 2), (Q(2), 4))),
            ns.DomainNoise(((Q(1), (((0,), (2,)),)),
                            (Q(2), (((0,), (None,)),)))),
            ns.Intersection((RAY1, ns.VNormNoise(((Q(1),),)))),
        ]
        rng = random.Random(7)
        from pnoise.grid import zero_module
        for spec in specs:
            assert ns.noise_size(spec, zero_module(1, Q(1), 3, 2)) == 0
            for _ in range(21):
                A, B, C = _random_ses(rng)
                sa = ns.noise_size(spec, A)
                sb = ns.noise_size(spec, B)
                sc = ns.noise_size(spec, C)
                # subfunctors and quotients are at most as loud
                assert sa <= sb and sc <= sb
                # additivity across the extension
                if sa != INFINITE and sc != INFINITE:
                    assert sb <= sa + sc
                # monotone: membership persists upward through candidates
                if sb != INFINITE:
                    assert ns.contains(spec, B, sb + 1)


def test_criterion_8_lipschitz():
    with criterion(8, 60, "fcf distance bounded by certified closeness"):
        rng = random.Random(88)
        checked = 0
        while checked < 50:
            F = random_line_module(rng, box=3, p=2, maxdim=2, total_cap=5)
            start = rng.randrange(3)
            B = make_bar(Bar((start,), (start + rng.randrange(1, 3),)),
                         3, Q(1), 2)
            G = direct_sum(F, B)
            eps, wit = fc.closeness_upper_bound(RAY1, F, G)
            if eps == INFINITE or wit is None:
                continue
            d = fc.fcf_interleaving_distance(fc.bar_r1(RAY1, F),
                                             fc.bar_r1(RAY1, G))
            assert d <= eps, (F.dims, B, eps, d)
            checked += 1


def test_criterion_9_barcode_round_trip():
    with criterion(9, 60, "barcode decompose/reconstruct round trips"):
        rng = random.Random(99)
        for _ in range(200):
            box = rng.randrange(1, 5)
            bars = []
            for _ in range(rng.randrange(1, 5)):
                s = rng.randrange(box + 1)
                if s == box or rng.random() < 0.3:
                    bars.append(Bar((s,), None))
                else:
                    bars.append(Bar((s,), (rng.randrange(s + 1, box + 1),)))
            M = bc.reconstruct(bars, box, Q(1), 2)
            got = bc.decompose(M)
            assert sorted(got, key=_bar_key) == sorted(bars, key=_bar_key)
        for _ in range(200):
            F = random_line_module(rng, box=4, p=2, maxdim=3)
            R = bc.reconstruct(bc.decompose(F), F.box, F.alpha, F.p)
            assert modules_iso_rankwise(F, R)


def _bar_key(b):
    return (b.start, b.end is None, b.end)


def test_criterion_10_cone_direction_counterexamples():
    with criterion(10, 5, "axis cones and the non-additive two-bar sum"):
        G = ga.band_union()
        for axis_cone in (ConeNoise(((Q(1), Q(0)),)),
                          ConeNoise(((Q(0), Q(1)),))):
            for eps in range(G.box + 1):
                assert not ns.contains(axis_cone, G, Q(eps)), (axis_cone, eps)
        A, B = ga.two_bar_modules()
        spec = ConeNoise(((Q(1), Q(0), Q(1)), (Q(1, 2), Q(1), Q(0))))
        assert ns.contains(spec, A, Q(1))
        assert ns.contains(spec, B, Q(1))
        assert not ns.contains(spec, direct_sum(A, B), Q(1))
