"""Ext, Tor, grade, depth, deficiency and canonical modules, CM and Gorenstein tests."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .groebner import GroebnerBasis
from .modules import (INFINITE, FPModule, PolyRing, ambient_ring, annihilator, dual_images,
                      from_ambient, hilbert_series, hom_blocks, homology_module, krull_dim,
                      quotient_by_ideal, tensor_images, tensor_presentation, to_ambient,
                      HilbertSeries)
from .poly import Polynomial
from .resolve import module_depth, projective_dimension, resolution, ring_depth


def _keyed_cache(M: FPModule, key, N, fn):
    """Cache on M keyed by the identity of N (the pair is stored to pin N alive)."""
    slot = M._cache.setdefault(key, [])
    for other, val in slot:
        if other is N:
            return val
    val = fn()
    slot.append((N, val))
    return val


def ext(i: int, M: FPModule, N: FPModule) -> FPModule:
    """Ext^i_R(M, N) as the cohomology of Hom(F_*, N) at F_i."""
    if M.ring != N.ring:
        raise ValueError("ring mismatch")
    R = M.ring
    if i < 0:
        return FPModule.zero(R)

    def build():
        res = resolution(M, i + 1)
        Fi = res.free(i)
        if not Fi or not N.rank:
            return FPModule.zero(R)
        q, p = N.rank, R.field.p
        mid_deg, mid_rel = hom_blocks(N, Fi)
        Fn = res.free(i + 1)
        psi, tgt_deg, tgt_rel = None, (), ()
        if Fn:
            psi = dual_images(res.differential(i + 1), len(Fi), q, p)
            tgt_deg, tgt_rel = hom_blocks(N, Fn)
        phi = ()
        if i >= 1:
            phi = dual_images(res.differential(i), len(res.free(i - 1)), q, p)
        return homology_module(R, mid_deg, mid_rel, psi, tgt_deg, tgt_rel, phi)
    return _keyed_cache(M, ("ext", i), N, build)


def tor(i: int, M: FPModule, N: FPModule) -> FPModule:
    """Tor_i^R(M, N) as the homology of F_* (x) N at F_i."""
    if M.ring != N.ring:
        raise ValueError("ring mismatch")
    R = M.ring
    if i < 0:
        return FPModule.zero(R)

    def build():
        res = resolution(M, i + 1)
        Fi = res.free(i)
        if not Fi or not N.rank:
            return FPModule.zero(R)
        q = N.rank

        def blocks(F):
            degs = [a + b for a in F for b in N.degrees]
            rels = []
            for l in range(len(F)):
                for w in N.relations:
                    rels.append({(l * q + c, e): x for (c, e), x in w.items()})
            return degs, rels

        mid_deg, mid_rel = blocks(Fi)
        psi, tgt_deg, tgt_rel = None, (), ()
        if i >= 1:
            psi = tensor_images(res.differential(i), q)
            tgt_deg, tgt_rel = blocks(res.free(i - 1))
        phi = tensor_images(res.differential(i + 1), q) if res.free(i + 1) else ()
        return homology_module(R, mid_deg, mid_rel, psi, tgt_deg, tgt_rel, phi)
    return _keyed_cache(M, ("tor", i), N, build)


def _ideal_gens(R: PolyRing, c):
    if isinstance(c, FPModule):
        return list(annihilator(c).generators)
    if isinstance(c, GroebnerBasis):
        return list(c.generators)
    return [R(g) if not isinstance(g, Polynomial) else g for g in c]


def ideal_module(R: PolyRing, c) -> FPModule:
    """R/c for an ideal (list of generators, a GroebnerBasis, or Ann of a module)."""
    return FPModule.cyclic(R, _ideal_gens(R, c))


def grade(c, M: FPModule):
    """inf{i : Ext^i(R/c, M) != 0}; math.inf when cM = M."""
    R = M.ring
    if M.is_zero():
        raise ValueError("grade undefined for the zero module")
    gens = _ideal_gens(R, c)
    if quotient_by_ideal(M, gens).is_zero():
        return INFINITE
    Q = ideal_module(R, gens)
    for i in range(0, R.n + 1):
        if not ext(i, Q, M).is_zero():
            return i
    raise AssertionError("no nonvanishing Ext below the ambient dimension")


def _random_element(R: PolyRing, gens, rng: random.Random):
    gens = [g for g in gens if g]
    degs = [g.degree() for g in gens]
    D = math.lcm(*degs)
    p = R.field.p
    f = R.S.zero()
    for g, d in zip(gens, degs):
        a = rng.randrange(1, p) if p else rng.choice([x for x in range(-9, 10) if x])
        f = f + (g ** (D // d)) * a
    return R.reduce(f)


def is_regular_element(x: Polynomial, M: FPModule) -> bool:
    """x is M-regular iff HS(M/xM) = (1 - t^deg x) HS(M) and M/xM != 0."""
    if not x:
        return False
    Q = quotient_by_ideal(M, [x])
    if Q.is_zero():
        return False
    H = hilbert_series(M)
    d = x.degree()
    num = dict(H.numerator)
    for k, v in H.numerator.items():
        num[k + d] = num.get(k + d, 0) - v
    return hilbert_series(Q) == HilbertSeries(num, H.n)


def regular_sequence(c, M: FPModule, seed: int = 0, retries: int = 5):
    """Greedy maximal M-regular sequence of generic elements of c."""
    R = M.ring
    gens = [g for g in _ideal_gens(R, c) if g]
    rng = random.Random(seed)
    seq = []
    Q = M
    if not gens or quotient_by_ideal(M, gens).is_zero():
        return seq
    while True:
        found = None
        for _ in range(retries):
            x = _random_element(R, gens, rng)
            if is_regular_element(x, Q):
                found = x
                break
        if found is None:
            return seq
        seq.append(found)
        Q = quotient_by_ideal(Q, [found])


def grade_by_regular_sequence(c, M: FPModule, seed: int = 0):
    R = M.ring
    gens = _ideal_gens(R, c)
    if quotient_by_ideal(M, gens).is_zero():
        return INFINITE
    return len(regular_sequence(gens, M, seed))


def depth(M: FPModule) -> int:
    """grade of the irrelevant maximal ideal on M."""
    return M.cache("depth", lambda: grade(M.ring.maximal_ideal(), M))


def omega_ambient(R: PolyRing) -> FPModule:
    """S(-n), the graded canonical module of the polynomial ring S."""
    S = ambient_ring(R)
    return FPModule.free(S, [R.n])


def deficiency(i: int, M: FPModule) -> FPModule:
    """K^i(M) = Ext_S^{n-i}(M, S(-n)), an R-module."""
    R = M.ring
    n = R.n
    if i < 0 or i > n:
        return FPModule.zero(R)
    MS = to_ambient(M)
    return from_ambient(ext(n - i, MS, omega_ambient(R)), R)


def deficiency_table(M: FPModule):
    """[K^0(M), ..., K^{dim M}(M)]; the entries above dim M are checked to vanish."""
    if M.is_zero():
        return []
    d = krull_dim(M)
    table = [deficiency(i, M) for i in range(d + 1)]
    for i in range(d + 1, M.ring.n + 1):
        if not deficiency(i, M).is_zero():
            raise AssertionError(f"K^{i} nonzero above dim M = {d}")
    return table


def canonical_module(M: FPModule) -> FPModule:
    if M.is_zero():
        raise ValueError("canonical module undefined for the zero module")
    return deficiency(krull_dim(M), M)


def ring_module(R: PolyRing) -> FPModule:
    if "self" not in R._cache:
        R._cache["self"] = FPModule.free(R, [0])
    return R._cache["self"]


def ring_canonical(R: PolyRing) -> FPModule:
    if "omega" not in R._cache:
        R._cache["omega"] = canonical_module(ring_module(R))
    return R._cache["omega"]


def cm_defect(M: FPModule) -> int:
    return krull_dim(M) - depth(M)


def is_cohen_macaulay(M) -> bool:
    if isinstance(M, PolyRing):
        M = ring_module(M)
    if M.is_zero():
        raise ValueError("CM undefined for the zero module")
    return cm_defect(M) == 0


def is_gorenstein(R: PolyRing) -> bool:
    """CM and type 1: the last Betti number of R over S equals 1."""
    if "gorenstein" not in R._cache:
        if not is_cohen_macaulay(R):
            R._cache["gorenstein"] = False
        else:
            res = resolution(to_ambient(ring_module(R)), R.n + 1)
            R._cache["gorenstein"] = len(res.F[-1]) == 1
    return R._cache["gorenstein"]


def canonical_generator_degree(R: PolyRing) -> int:
    """The g with K(R) = R(-g) for a Gorenstein R."""
    if not is_gorenstein(R):
        raise ValueError("ring is not Gorenstein")
    K = ring_canonical(R)
    if K.rank != 1:
        raise AssertionError("canonical module of a Gorenstein ring must be cyclic")
    return K.degrees[0]


@dataclass
class InvariantReport:
    dim: object
    depth: int
    pd: object
    id: object
    cm_defect: int
    is_cm: bool
    is_gorenstein: object = None

    def as_dict(self):
        def enc(v):
            return "infinite" if v == INFINITE else v
        return {"dim": self.dim, "depth": self.depth, "pd": enc(self.pd), "id": enc(self.id),
                "cm_defect": self.cm_defect, "is_cm": self.is_cm,
                "is_gorenstein": self.is_gorenstein}


def invariants(M: FPModule, ring_level: bool = False) -> InvariantReport:
    from .resolve import injective_dimension
    d = krull_dim(M)
    dp = depth(M)
    return InvariantReport(d, dp, projective_dimension(M), injective_dimension(M), d - dp,
                           d == dp, is_gorenstein(M.ring) if ring_level else None)
