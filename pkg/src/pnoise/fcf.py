"""Feature counting: step functions Q -> N, their interleaving distance,
equivalence budgets of natural maps, and the minimal-rank invariant bar(F).

bar(F)_t asks for the smallest rank among subfunctors whose inclusion
cokernel is quieter than t. Two engines answer it: an exhaustive walk over
all closed submodules (exact, capped), and a generator-orbit search over
spans of shifted minimal generators (upper bound). The one-parameter case
has a closed form through the barcode.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import barcode as bc
from . import field as fp
from . import noise as ns
from . import structure as st
from .errors import (NotClosedUnderSums, NotOneDimensional,
                     SearchSpaceTooLarge, UnsupportedNoise)
from .field import Mat
from .grid import GridModule, add, clip, evaluate_map, leq
from .noise import INFINITE

EXHAUSTIVE_DIM_CAP = 24
ORBIT_COMBO_CAP = 2 ** 12


# -- step functions --------------------------------------------------------


@dataclass(frozen=True)
class FeatureCountingFunction:
    """Non-increasing step function. Each breakpoint is (t, value,
    drop_after); with drop_after the new value only applies strictly after
    t, which lets e.g. a bar count keep its old value AT the drop point."""
    breakpoints: tuple

    def __post_init__(self):
        bps = self.breakpoints
        if not bps or bps[0][0] != 0:
            raise ValueError("need an initial breakpoint at t=0")
        ts = [b[0] for b in bps]
        if ts != sorted(ts) or len(set(ts)) != len(ts):
            raise ValueError("breakpoints must be strictly increasing in t")
        vals = [b[1] for b in bps]
        if any(v < 0 for v in vals):
            raise ValueError("values must be >= 0")
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise ValueError("values must be non-increasing")

    def value(self, t):
        t = Fraction(t)
        out = self.breakpoints[0][1]
        for s, val, da in self.breakpoints:
            if s < t or (s == t and not da):
                out = val
        return out

    def terminal(self):
        return self.breakpoints[-1][1]

    def segments(self):
        """(start_t, value) pairs; boundary attribution is irrelevant for
        the interleaving distance, which is an infimum."""
        return [(b[0], b[1]) for b in self.breakpoints]


def make_fcf(pairs, drops_after=False):
    """Build from (t, value) pairs; drops_after marks every later
    breakpoint as taking effect only strictly after its t."""
    pairs = sorted((Fraction(t), int(v)) for t, v in pairs)
    bps = []
    for i, (t, v) in enumerate(pairs):
        if bps and bps[-1][1] == v:
            continue
        bps.append((t, v, drops_after and i > 0))
    return FeatureCountingFunction(tuple(bps))


def constant_fcf(value):
    return FeatureCountingFunction(((Fraction(0), int(value), False),))


def _first_time_leq(f: FeatureCountingFunction, y):
    """inf{t : f(t) <= y}; None when f stays above y forever."""
    for t, v in f.segments():
        if v <= y:
            return t
    return None


def fcf_interleaving_distance(f: FeatureCountingFunction,
                              g: FeatureCountingFunction):
    """inf{eps : f_t >= g_{t+eps} and g_t >= f_{t+eps} for all t}."""
    if f.terminal() != g.terminal():
        return INFINITE

    def one_sided(a, b):
        # need b_{t+eps} <= a_t for all t; worst case at segment starts
        worst = Fraction(0)
        for t, v in a.segments():
            first = _first_time_leq(b, v)
            if first is None:
                return INFINITE
            worst = max(worst, first - t)
        return worst

    d = max(one_sided(f, g), one_sided(g, f))
    return d if d == INFINITE else max(Fraction(0), d)


# -- equivalence budgets ---------------------------------------------------


@dataclass(frozen=True)
class EquivalenceBudget:
    tau: object  # Fraction or INFINITE; noise size of the kernel
    mu: object   # noise size of the cokernel

    def total(self):
        if INFINITE in (self.tau, self.mu):
            return INFINITE
        return self.tau + self.mu


def equivalence_budget(spec, phi: st.NatMap) -> EquivalenceBudget:
    ker_mod, _ = st.submodule_to_module(st.kernel(phi))
    coker_mod, _ = st.cokernel(phi)
    return EquivalenceBudget(ns.noise_size(spec, ker_mod),
                             ns.noise_size(spec, coker_mod))


# -- bar through the barcode (one parameter) -------------------------------


def bar_r1(spec, F: GridModule) -> FeatureCountingFunction:
    if F.r != 1:
        raise NotOneDimensional(f"r={F.r}")
    bars = bc.decompose(F)
    sizes = []
    for b in bars:
        piece = bc.reconstruct([b], F.box, F.alpha, F.p)
        sizes.append(ns.noise_size(spec, piece))
    if isinstance(spec, (ns.ConeNoise, ns.VNormNoise)):
        for s in sizes:
            if s != INFINITE and s > 0 and not ns.closed_under_sums(spec, s):
                raise NotClosedUnderSums(f"level {s}")
    finite = sorted({s for s in sizes if s != INFINITE})
    bps = [(Fraction(0), len(sizes), False)]
    for s in finite:
        remaining = sum(1 for x in sizes if x == INFINITE or x > s)
        if remaining != bps[-1][1]:
            bps.append((s, remaining, True))
    return FeatureCountingFunction(tuple(bps))


def bar_zero_check(spec, F: GridModule, t) -> bool:
    return ns.noise_size(spec, F) < Fraction(t)


# -- exhaustive submodule search -------------------------------------------


@lru_cache(maxsize=None)
def _all_subspaces(p, d):
    """Canonical (column-reduced) bases of every subspace of F_p^d."""
    zero = fp.column_reduce(Mat.zeros(d, 0, p))
    seen = {zero.data: zero}
    frontier = [zero]
    vectors = [v for v in itertools.product(range(p), repeat=d) if any(v)]
    while frontier:
        nxt = []
        for s in frontier:
            for v in vectors:
                if fp.in_span(s, v):
                    continue
                bigger = fp.column_reduce(
                    s.hstack(Mat.from_cols([v], d, p)))
                if bigger.data not in seen:
                    seen[bigger.data] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return tuple(seen.values())


def _contains_cols(space: Mat, other: Mat) -> bool:
    if other.cols == 0:
        return True
    return fp.rank(space.hstack(other)) == fp.rank(space)


def _enumerate_submodules(F: GridModule):
    """Yield every closed submodule as a dict point -> canonical basis."""
    pts = st.order(F.points())
    preds = {v: [] for v in pts}
    for v in pts:
        for i in range(F.r):
            if v[i] > 0:
                u = tuple(c - 1 if k == i else c for k, c in enumerate(v))
                preds[v].append((u, F.edge(u, i)))
    choices = {v: _all_subspaces(F.p, F.dims[v]) for v in pts}

    def walk(k, assign):
        if k == len(pts):
            yield dict(assign)
            return
        v = pts[k]
        pushed = Mat.zeros(F.dims[v], 0, F.p)
        for u, e in preds[v]:
            pushed = pushed.hstack(e @ assign[u])
        for s in choices[v]:
            if _contains_cols(s, pushed):
                assign[v] = s
                yield from walk(k + 1, assign)

    yield from walk(0, {})


def _rank_sigma_pairs(spec, F: GridModule):
    """(rank, cokernel noise size) for every closed submodule of F."""
    if F.total_dim() > EXHAUSTIVE_DIM_CAP:
        raise SearchSpaceTooLarge(
            f"total dimension {F.total_dim()} exceeds {EXHAUSTIVE_DIM_CAP}")
    pairs = []
    for basis in _enumerate_submodules(F):
        S = st.Submodule(F, basis)
        C, _ = st.quotient_by_submodule(F, S)
        sigma = ns.noise_size(spec, C)
        if sigma == INFINITE:
            continue
        M, _ = st.submodule_to_module(S)
        pairs.append((st.rank(M), sigma))
    return pairs


# -- generator orbit search ------------------------------------------------


def _orbit_pool(spec, F: GridModule, t):
    """Candidate elements: F_p-combinations (capped) of forward shifts of
    the minimal generators by offsets quieter than t."""
    costs = {m: ns.offset_cost(spec, m, F.alpha)
             for m in itertools.product(range(F.box + 1), repeat=F.r)}
    offsets = [m for m, c in costs.items() if c is not None and c < t]
    gens = st.minimal_generators(F)
    at_point = {}
    for v, x in gens:
        for m in offsets:
            w = clip(add(v, m), F.box)
            img = evaluate_map(F, v, w).apply(x)
            if not any(img):
                continue
            at_point.setdefault(w, set()).add(img)
    pool = []
    for w, vecs in at_point.items():
        vecs = sorted(vecs)
        combos = set()
        n = len(vecs)
        total = F.p ** n
        if total > ORBIT_COMBO_CAP:
            combos.update(vecs)
        else:
            for coeffs in itertools.product(range(F.p), repeat=n):
                if not any(coeffs):
                    continue
                acc = [0] * F.dims[w]
                for c, vec in zip(coeffs, vecs):
                    if c:
                        acc = [(a + c * b) % F.p for a, b in zip(acc, vec)]
                if any(acc):
                    combos.add(tuple(acc))
        pool.extend((w, vec) for vec in sorted(combos))
    return pool


def _sigma_of_span(spec, F, seeds):
    S = st.span_submodule(F, seeds)
    C, _ = st.quotient_by_submodule(F, S)
    sigma = ns.noise_size(spec, C)
    rank = st.rank(st.submodule_to_module(S)[0]) if seeds else 0
    return rank, sigma, S


def _orbit_value(spec, F: GridModule, t):
    """Upper bound on bar(F)_t by growing spans of pool elements."""
    full_rank = st.rank(F)
    if ns.noise_size(spec, F) < t:
        return 0, None
    pool = _orbit_pool(spec, F, t)
    budget = ORBIT_COMBO_CAP
    for k in range(1, full_rank):
        tried = 0
        for subset in itertools.combinations(range(len(pool)), k):
            tried += 1
            if tried > budget:
                break
            seeds = [pool[i] for i in subset]
            rank, sigma, S = _sigma_of_span(spec, F, seeds)
            if sigma != INFINITE and sigma < t and rank <= k:
                return rank, S
    return full_rank, st.full_submodule(F)


# -- the public search -----------------------------------------------------


@dataclass(frozen=True)
class BarFunction:
    fcf: FeatureCountingFunction
    flags: tuple  # ((t, exact_bool), ...) at the requested sample points
    engine: str

    def value(self, t):
        return self.fcf.value(t)


def _check_cone(spec):
    if isinstance(spec, (ns.ConeNoise, ns.VNormNoise)):
        return
    raise UnsupportedNoise(
        "bar search is proved for cone-shaped noise only")


def bar_search(spec, F: GridModule, t_values, engine="exhaustive") \
        -> BarFunction:
    _check_cone(spec)
    t_values = sorted({Fraction(t) for t in t_values})
    full_rank = st.rank(F)
    if engine == "exhaustive":
        pairs = _rank_sigma_pairs(spec, F)
        cands = sorted({sigma for _, sigma in pairs})
        bps = [(Fraction(0), full_rank, False)]
        for c in cands:
            best = min((rk for rk, sg in pairs if sg <= c),
                       default=full_rank)
            if best != bps[-1][1]:
                bps.append((c, best, True))
        fcf = FeatureCountingFunction(tuple(bps))
        flags = tuple((t, True) for t in t_values)
        return BarFunction(fcf, flags, "exhaustive")
    if engine == "orbit":
        samples, flags = [(Fraction(0), full_rank)], []
        for t in t_values:
            if t <= 0:
                flags.append((t, True))
                continue
            val, _ = _orbit_value(spec, F, t)
            samples.append((t, val))
            flags.append((t, val == 0))  # only bar=0 is certain here
        vals = []
        floor = 0
        for t, v in sorted(samples, reverse=True):
            floor = max(floor, v)
            vals.append((t, floor))
        # a value found at sample t already holds at t (budget < t is strict)
        fcf = make_fcf(vals, drops_after=False)
        return BarFunction(fcf, tuple(flags), "orbit")
    raise ValueError(f"unknown engine {engine!r}")


def minimal_rank_submodule(spec, F: GridModule, t, engine="exhaustive"):
    """A submodule of minimal rank whose inclusion is quieter than t,
    together with the rank and an exactness flag."""
    _check_cone(spec)
    t = Fraction(t)
    if engine == "exhaustive":
        if F.total_dim() > EXHAUSTIVE_DIM_CAP:
            raise SearchSpaceTooLarge(
                f"total dimension {F.total_dim()} exceeds "
                f"{EXHAUSTIVE_DIM_CAP}")
        best = None
        for basis in _enumerate_submodules(F):
            S = st.Submodule(F, basis)
            C, _ = st.quotient_by_submodule(F, S)
            sigma = ns.noise_size(spec, C)
            if sigma == INFINITE or sigma >= t:
                continue
            rk = st.rank(st.submodule_to_module(S)[0])
            if best is None or rk < best[0]:
                best = (rk, S)
        if best is None:
            return st.rank(F), st.full_submodule(F), True
        return best[0], best[1], True
    if engine == "orbit":
        val, S = _orbit_value(spec, F, t)
        if S is None:
            S = st.zero_submodule(F)
        return val, S, val in (0, st.rank(F))
    raise ValueError(f"unknown engine {engine!r}")


# -- natural transformation spaces and distance bounds ---------------------


def natural_map_space(F: GridModule, G: GridModule):
    """Basis of the F_p-vector space of natural transformations F -> G."""
    pts = list(F.points())
    offs, total = {}, 0
    for v in pts:
        offs[v] = total
        total += G.dims[v] * F.dims[v]
    if total == 0:
        return [st.NatMap(F, G, {v: Mat.zeros(G.dims[v], F.dims[v], F.p)
                                 for v in pts})]
    rows = []
    for v in pts:
        for i in range(F.r):
            if v[i] == F.box:
                continue
            w = add(v, tuple(1 if j == i else 0 for j in range(F.r)))
            a, b = F.edge(v, i), G.edge(v, i)
            # entries of (phi_w @ a - b @ phi_v) == 0
            for rr in range(G.dims[w]):
                for cc in range(F.dims[v]):
                    row = [0] * total
                    for k in range(F.dims[w]):
                        row[offs[w] + rr * F.dims[w] + k] = \
                            (row[offs[w] + rr * F.dims[w] + k]
                             + a.data[k][cc]) % F.p
                    for k in range(G.dims[v]):
                        row[offs[v] + k * F.dims[v] + cc] = \
                            (row[offs[v] + k * F.dims[v] + cc]
                             - b.data[rr][k]) % F.p
                    rows.append(row)
    big = Mat.from_rows(rows, F.p) if rows else Mat.zeros(0, total, F.p)
    ker = fp.kernel_basis(big)
    maps = []
    for j in range(ker.cols):
        vec = ker.col(j)
        mats = {}
        for v in pts:
            data = []
            for rr in range(G.dims[v]):
                base = offs[v] + rr * F.dims[v]
                data.append(list(vec[base:base + F.dims[v]]))
            mats[v] = Mat.from_rows(data, F.p) if G.dims[v] else \
                Mat.zeros(0, F.dims[v], F.p)
        maps.append(st.NatMap(F, G, mats))
    return maps


def _combinations_of_maps(basis, F, G, cap=ORBIT_COMBO_CAP):
    n = len(basis)
    if F.p ** n > cap:
        yield from basis
        return
    for coeffs in itertools.product(range(F.p), repeat=n):
        mats = {v: Mat.zeros(G.dims[v], F.dims[v], F.p) for v in F.points()}
        for c, bmap in zip(coeffs, basis):
            if c:
                for v in F.points():
                    mats[v] = mats[v] + bmap.mats[v].scale(c)
        yield st.NatMap(F, G, mats)


def closeness_upper_bound(spec, F: GridModule, G: GridModule):
    """Certified upper bound on the closeness pseudometric: the best
    equivalence budget among all natural maps F->G and G->F. Returns
    (bound, witness NatMap or None)."""
    from .grid import modules_equal
    if modules_equal(F, G):
        return Fraction(0), st.identity_map(F)
    best, wit = INFINITE, None
    for (src, dst) in ((F, G), (G, F)):
        basis = natural_map_space(src, dst)
        if not any(d for d in src.dims.values()):
            basis = [st.zero_map(src, dst)]
        for phi in _combinations_of_maps(basis, src, dst):
            b = equivalence_budget(spec, phi).total()
            if b < best:
                best, wit = b, phi
    return best, wit


# -- interleavings ---------------------------------------------------------


def is_interleaved(F: GridModule, G: GridModule, tau,
                   cap=ORBIT_COMBO_CAP) -> bool:
    """Existence of tau-shifted maps both ways whose composites are the
    internal 2*tau shifts. tau is in lattice steps of the common grid."""
    tau = tuple(int(c) for c in tau)
    two = tuple(2 * c for c in tau)

    shiftedG = _shift_module(G, tau)
    shiftedF = _shift_module(F, tau)
    phis = natural_map_space(F, shiftedG)
    combos = list(_combinations_of_maps(phis, F, shiftedG, cap))
    if not combos:
        combos = [st.zero_map(F, shiftedG)]
    for phi in combos:
        if _psi_exists(F, G, phi, tau, two, shiftedF):
            return True
    return False


def _shift_module(G: GridModule, tau):
    """v -> G(v + tau) on the same box (clipped)."""
    dims = {v: G.dims[clip(add(v, tau), G.box)] for v in G.points()}
    edges = {}
    for v in G.points():
        for i in range(G.r):
            if v[i] == G.box:
                continue
            w = add(v, tuple(1 if j == i else 0 for j in range(G.r)))
            edges[(v, i)] = evaluate_map(G, add(v, tau), add(w, tau))
    return GridModule(G.r, G.alpha, G.box, G.p, dims, edges)


def _psi_exists(F, G, phi, tau, two, shiftedF):
    """Solve the linear system for psi: G -> F(-+tau) given phi."""
    pts = list(G.points())
    offs, total = {}, 0
    for v in pts:
        offs[v] = total
        total += shiftedF.dims[v] * G.dims[v]
    rows, rhs = [], []

    def add_entry(row, v, rr, cc, val, src_dims):
        row[offs[v] + rr * src_dims + cc] = \
            (row[offs[v] + rr * src_dims + cc] + val) % F.p

    # naturality of psi
    for v in pts:
        for i in range(G.r):
            if v[i] == G.box:
                continue
            w = add(v, tuple(1 if j == i else 0 for j in range(G.r)))
            a, b = G.edge(v, i), shiftedF.edge(v, i)
            for rr in range(shiftedF.dims[w]):
                for cc in range(G.dims[v]):
                    row = [0] * total
                    for k in range(G.dims[w]):
                        add_entry(row, w, rr, k, a.data[k][cc], G.dims[w])
                    for k in range(shiftedF.dims[v]):
                        add_entry(row, v, k, cc, -b.data[rr][k], G.dims[v])
                    rows.append(row)
                    rhs.append(0)
    # psi_{v+tau} phi_v == F(v <= v+2 tau)
    for v in F.points():
        vt = clip(add(v, tau), F.box)
        target = evaluate_map(F, v, add(v, two))
        pv = phi.mats[v]
        gdim = G.dims[vt]
        for rr in range(target.rows):
            for cc in range(F.dims[v]):
                row = [0] * total
                for k in range(gdim):
                    add_entry(row, vt, rr, k, pv.data[k][cc], gdim)
                rows.append(row)
                rhs.append(target.data[rr][cc])
    # phi_{v+tau} psi_v == G(v <= v+2 tau)
    for v in pts:
        vt = clip(add(v, tau), G.box)
        target = evaluate_map(G, v, add(v, two))
        pm = phi.mats[vt]
        fdim = shiftedF.dims[v]
        for rr in range(target.rows):
            for cc in range(G.dims[v]):
                row = [0] * total
                for k in range(fdim):
                    add_entry(row, v, k, cc, pm.data[rr][k], G.dims[v])
                rows.append(row)
                rhs.append(target.data[rr][cc])
    if total == 0:
        return all(x % F.p == 0 for x in rhs)
    big = Mat.from_rows(rows, F.p) if rows else Mat.zeros(0, total, F.p)
    b = Mat.from_cols([tuple(x % F.p for x in rhs)], big.rows, F.p)
    return fp.solvable(big, b)


# -- CSV form --------------------------------------------------------------


def fcf_to_csv(f: FeatureCountingFunction) -> str:
    lines = ["t,value"]
    for t, v, _ in f.breakpoints:
        lines.append(f"{t},{v}")
    return "\n".join(lines) + "\n"


def fcf_from_csv(text: str) -> FeatureCountingFunction:
    pairs = []
    for k, line in enumerate(text.strip().splitlines()):
        line = line.strip()
        if not line or line.lower().startswith("t,"):
            continue
        parts = line.split(",")
        if len(parts) != 2:
            from .errors import ParseError
            raise ParseError(k + 1, f"expected t,value got {line!r}")
        pairs.append((Fraction(parts[0]), int(parts[1])))
    return make_fcf(pairs, drops_after=True)
