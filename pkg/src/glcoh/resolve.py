"""Minimal graded free resolutions, Koszul complexes, Betti tables, pd and id."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from . import linalg
from .modules import (INFINITE, FPModule, FreeModule, PolyMatrix, PolyRing, ambient_ring,
                      hilbert_series, ideal_base, kernel_vectors, krull_dim, mingens, prune,
                      reduce_mod_ideal, to_ambient, vec_add_scaled, vec_deg, HilbertSeries)
from .poly import monomials_of_degree


class ChainComplex:
    """Free modules F_lo..F_hi with maps d_i: F_i -> F_{i-1} given by their columns."""

    def __init__(self, ring: PolyRing, modules: dict, maps: dict):
        self.ring = ring
        self.modules = dict(modules)  # i -> tuple of generator degrees
        self.maps = dict(maps)        # i -> list of column vectors in F_{i-1}

    @property
    def lo(self):
        return min(self.modules) if self.modules else 0

    @property
    def hi(self):
        return max(self.modules) if self.modules else -1

    def rank(self, i) -> int:
        return len(self.modules.get(i, ()))

    def matrix(self, i) -> PolyMatrix:
        R = self.ring
        return PolyMatrix(FreeModule(R, self.modules.get(i, ())),
                          FreeModule(R, self.modules.get(i - 1, ())), self.maps.get(i, []))

    def d_squared_zero(self) -> bool:
        """d_{i} o d_{i+1} = 0 exactly (modulo the quotient ideal)."""
        p = self.ring.field.p
        for i in self.maps:
            if i + 1 not in self.maps:
                continue
            for v in self.maps[i + 1]:
                out = {}
                for (c, e), a in v.items():
                    vec_add_scaled(out, self.maps[i][c], {e: a}, p)
                if reduce_mod_ideal(self.ring, out):
                    return False
        return True

    def degree_rank(self, i, j) -> int:
        """Rank of d_i on internal degree j (as a map of R-modules)."""
        cols = self.maps.get(i)
        if not cols:
            return 0
        tgt = FPModule(self.ring, self.modules[i - 1])
        src = FPModule(self.ring, self.modules[i])
        from .modules import piece_matrix
        return linalg.rank(piece_matrix(src, tgt, cols, j), self.ring.field)

    def degree_dim(self, i, j) -> int:
        from .modules import standard_basis
        return len(standard_basis(FPModule(self.ring, self.modules.get(i, ())), j))

    def homology_dim(self, i, j) -> int:
        """dim_k H_i in internal degree j."""
        return self.degree_dim(i, j) - self.degree_rank(i, j) - self.degree_rank(i + 1, j)


@dataclass
class BettiTable:
    entries: dict = field(default_factory=dict)  # (i, j) -> beta_{i,j}

    def total(self, i) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    def totals(self):
        if not self.entries:
            return []
        top = max(i for i, _ in self.entries)
        return [self.total(i) for i in range(top + 1)]

    def __str__(self):
        if not self.entries:
            return "0"
        cols = max(i for i, _ in self.entries) + 1
        rows = sorted({j - i for i, j in self.entries})
        lines = ["      " + " ".join(f"{i:>3}" for i in range(cols))]
        for r in rows:
            vals = [self.entries.get((i, i + r), 0) for i in range(cols)]
            lines.append(f"{r:>4}: " + " ".join(f"{v or '-':>3}" for v in vals))
        lines.append("total " + " ".join(f"{t:>3}" for t in self.totals()))
        return "\n".join(lines)


class Resolution:
    """Minimal graded free resolution F_0 <- F_1 <- ... of ``module``, extended on demand."""

    def __init__(self, M: FPModule):
        P = prune(M)
        self.module = M
        self.pruned = P
        self.ring = M.ring
        self.F = [tuple(P.degrees)]
        self.d = [None, list(P.relations)]
        self.finished = not P.relations
        if P.relations:
            self.F.append(tuple(vec_deg(v, P.degrees) for v in P.relations))
        self.minimal = True

    def extend_to(self, length: int):
        R = self.ring
        while len(self.F) - 1 < length and not self.finished:
            k = len(self.F) - 1
            ker = kernel_vectors(R, self.d[k], self.F[k - 1], [])
            gens = mingens(R, ker, self.F[k])
            if not gens:
                self.finished = True
                break
            self.d.append(gens)
            self.F.append(tuple(vec_deg(v, self.F[k]) for v in gens))
        return self

    @property
    def length(self) -> int:
        return len(self.F) - 1

    def free(self, i):
        """Generator degrees of F_i (empty past the end)."""
        if 0 <= i < len(self.F):
            return self.F[i]
        if i >= len(self.F) and not self.finished:
            raise ValueError(f"resolution not computed to degree {i}")
        return ()

    def differential(self, i):
        """Columns of d_i: F_i -> F_{i-1}."""
        if 1 <= i < len(self.d):
            return self.d[i]
        if i >= len(self.d) and not self.finished:
            raise ValueError(f"resolution not computed to degree {i}")
        return []

    def complex(self, length=None) -> ChainComplex:
        length = self.length if length is None else min(length, self.length)
        mods = {i: self.F[i] for i in range(length + 1)}
        maps = {i: self.d[i] for i in range(1, length + 1)}
        return ChainComplex(self.ring, mods, maps)

    @property
    def betti(self) -> BettiTable:
        t = {}
        for i, degs in enumerate(self.F):
            for d in degs:
                t[(i, d)] = t.get((i, d), 0) + 1
        return BettiTable(t)

    def is_minimal(self) -> bool:
        """No differential has an entry with nonzero constant term."""
        return not any(not any(e) for cols in self.d[1:] for v in cols for (_, e) in v)

    def hilbert_certificate(self) -> bool:
        """Alternating sum of the free modules' series equals the module's.

        For an unfinished resolution the comparison is made degreewise on the
        audit window, correcting by the kernel of the last computed map.
        """
        if not self.finished:
            lo = min(self.F[0]) if self.F[0] else 0
            return self.truncated_certificate(lo, lo + int(max(self.ring.krull_dim, 0))
                                              + self.length)
        unit = hilbert_series(FPModule.free(self.ring, [0]))
        num = {}
        for i, degs in enumerate(self.F):
            for d in degs:
                for k, v in unit.numerator.items():
                    num[k + d] = num.get(k + d, 0) + (-1) ** i * v
        return HilbertSeries(num, unit.n) == hilbert_series(self.module)

    def truncated_certificate(self, lo, hi) -> bool:
        """Degreewise Euler characteristic check for j in [lo, hi] (any length).

        sum_i (-1)^i dim (F_i)_j over the computed range must equal
        dim M_j + (-1)^L dim (image of d_{L+1})_j, where the last term is read
        off as dim ker (d_L)_j.
        """
        C = self.complex()
        L = self.length
        for j in range(lo, hi + 1):
            chi = sum((-1) ** i * C.degree_dim(i, j) for i in range(L + 1))
            ker_top = C.degree_dim(L, j) - C.degree_rank(L, j)
            if chi - (-1) ** L * ker_top != hilbert_series(self.module).coefficient(j):
                return False
        return True

    def exactness_audit(self, window=None) -> bool:
        """Ranks agree degreewise: im d_{k+1} = ker d_k and coker d_1 = M."""
        C = self.complex()
        R = self.ring
        if window is None:
            lo = min(self.F[0]) if self.F[0] else 0
            window = (lo, lo + int(max(R.krull_dim, 0)) + self.length)
        H = hilbert_series(self.module)
        for j in range(window[0], window[1] + 1):
            if C.degree_dim(0, j) - C.degree_rank(1, j) != H.coefficient(j):
                return False
            for k in range(1, self.length):
                if C.degree_dim(k, j) - C.degree_rank(k, j) != C.degree_rank(k + 1, j):
                    return False
            if self.finished and self.length >= 1:
                k = self.length
                if C.degree_dim(k, j) != C.degree_rank(k, j):
                    return False
        return True


def resolution(M: FPModule, length: int) -> Resolution:
    """Cached minimal resolution of M, computed at least to ``length``."""
    res = M.cache("resolution", lambda: Resolution(M))
    return res.extend_to(length)


def minimal_free_resolution(M: FPModule, length: int) -> Resolution:
    return resolution(M, length)


def ring_depth(R: PolyRing) -> int:
    """depth R = n - pd_S(R) (Auslander-Buchsbaum over the polynomial ring S)."""
    if "depth" not in R._cache:
        R._cache["depth"] = module_depth(FPModule.free(R, [0]))
    return R._cache["depth"]


def module_depth(M: FPModule) -> int:
    """depth M computed as n - pd_S(M) over the ambient polynomial ring."""
    if M.is_zero():
        raise ValueError("depth undefined for the zero module")
    MS = to_ambient(M)
    n = M.ring.n
    res = resolution(MS, n + 1)
    return n - res.length


def projective_dimension(M: FPModule):
    """pd_R M, or math.inf when F_{depth R + 1} is nonzero."""
    if M.is_zero():
        raise ValueError("projective dimension undefined for zero module")
    r = ring_depth(M.ring)
    res = resolution(M, r + 1)
    if res.length > r:
        return INFINITE
    return res.length


def koszul_complex(elems, R: PolyRing) -> ChainComplex:
    """K_*(x) with basis e_T (T a subset) and d(e_T) = sum (-1)^k x_{t_k} e_{T - t_k}."""
    elems = [R(f) for f in elems]
    m = len(elems)
    degs = [f.degree() if f else 0 for f in elems]
    subsets = {k: list(combinations(range(m), k)) for k in range(m + 1)}
    index = {k: {T: i for i, T in enumerate(subsets[k])} for k in subsets}
    mods = {k: tuple(sum(degs[t] for t in T) for T in subsets[k]) for k in subsets}
    p = R.field.p
    maps = {}
    for k in range(1, m + 1):
        cols = []
        for T in subsets[k]:
            v = {}
            for pos, t in enumerate(T):
                sign = 1 if pos % 2 == 0 else -1
                target = index[k - 1][T[:pos] + T[pos + 1:]]
                for e, c in elems[t].terms.items():
                    val = (sign * c) % p if p else sign * c
                    if val:
                        v[(target, e)] = val
            cols.append(v)
        maps[k] = cols
    return ChainComplex(R, mods, maps)


def koszul_acyclic(K: ChainComplex, window) -> bool:
    """Higher homology of K vanishes on each internal degree of ``window``."""
    for i in range(1, K.hi + 1):
        for j in range(window[0], window[1] + 1):
            if K.homology_dim(i, j):
                return False
    return True


def injective_dimension(N: FPModule):
    """sup{i : Ext^i(k, N) != 0}; math.inf when Ext^{dim R + 1}(k, N) != 0."""
    from .homology import ext
    if N.is_zero():
        raise ValueError("injective dimension undefined for zero module")
    R = N.ring
    k = FPModule.residue_field(R)
    t = R.krull_dim
    if not ext(t + 1, k, N).is_zero():
        return INFINITE
    for i in range(t, -1, -1):
        if not ext(i, k, N).is_zero():
            return i
    raise AssertionError("Ext^i(k, N) vanishes for all i on a nonzero module")
