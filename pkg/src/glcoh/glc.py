"""Generalized local cohomology H^i_a(M, N) and its duals.

Three independent routes are provided:

* the dual side, a finitely generated module whose graded piece in degree j
  has the dimension of H^i_m(M, N) in degree -j (canonical-module route on
  CM rings, hyper-Ext against the dualizing complex otherwise);
* truncated direct limits of Ext^i(M/a^n M, N) with explicit transition maps;
* a Čech-type oracle: colimits of Koszul cochain complexes on powers of the
  elements, tensored with Hom(F_*, N), computed one internal degree at a time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from . import linalg
from .groebner import ModuleOrder, solve_linear
from .homology import (canonical_generator_degree, ext, grade, ideal_module, is_cohen_macaulay,
                       is_gorenstein, omega_ambient, ring_canonical, ring_module, tor)
from .modules import (INFINITE, FPModule, PolyRing, ambient_ring, annihilator, coordinates,
                      dual_images, from_ambient, hom_blocks, homology_module, ideal_base,
                      kernel_vectors, krull_dim, mingens, module_order, power_ideal,
                      quotient_by_ideal, standard_basis, tensor_presentation, to_ambient,
                      vec_add_scaled, vec_deg)
from .poly import Polynomial
from .resolve import projective_dimension, resolution


class HypothesisError(ValueError):
    """A precondition of the requested construction does not hold."""


# ---------------------------------------------------------------------------
# generalized deficiency and canonical modules


def _require_gorenstein_finite_pd(M: FPModule):
    R = M.ring
    if not is_gorenstein(R):
        raise HypothesisError("ring is not Gorenstein")
    if projective_dimension(M) == INFINITE:
        raise HypothesisError("M has infinite projective dimension")


def generalized_deficiency(i: int, N: FPModule, M: FPModule) -> FPModule:
    """K^i(N, M) = Ext^{t-i}(N, M) twisted by the canonical degree of R.

    With K(R) = R(-g) the twist makes K^{dim N}(N, R) agree with K(N) as a
    graded module; for the polynomial ring g = n.
    """
    if i < 0:
        raise ValueError("deficiency index must be non-negative")
    _require_gorenstein_finite_pd(M)
    R = M.ring
    t = R.krull_dim
    if i > t:
        return FPModule.zero(R)
    g = canonical_generator_degree(R)
    return ext(t - i, N, M).twist(-g)


@dataclass
class GenDeficiencyTable:
    entries: list
    g: object
    s: object

    def nonzero(self):
        return [i for i, K in enumerate(self.entries) if not K.is_zero()]


def generalized_deficiency_table(N: FPModule, M: FPModule) -> GenDeficiencyTable:
    t = M.ring.krull_dim
    entries = [generalized_deficiency(i, N, M) for i in range(t + 1)]
    g = grade(N, M)
    return GenDeficiencyTable(entries, g, t - g if g != INFINITE else None)


def generalized_canonical(N: FPModule, M: FPModule):
    """(s, K^s(N, M)) with s = t - grade(N, M)."""
    if N.is_zero() or M.is_zero():
        raise ValueError("modules must be nonzero")
    _require_gorenstein_finite_pd(M)
    g = grade(N, M)
    if g == INFINITE:
        raise HypothesisError("grade infinite, no canonical module")
    s = M.ring.krull_dim - g
    return s, generalized_deficiency(s, N, M)


# ---------------------------------------------------------------------------
# hyper-Ext against the dualizing complex


class SemifreeModel:
    """S-free model P -> C of a bounded complex of f.p. modules, built from the top.

    ``terms[a] = (degrees, relations)`` describes C^a as a quotient of a free
    S-module L_a (relations include the quotient ideal) and ``maps[a]`` lists
    S-lifts of the images of the basis of L_a in L_{a+1}.  At each step the
    cocycles of the mapping cone in the current degree are computed and new
    free generators are added to kill them, so the cone is exact there.
    """

    def __init__(self, S: PolyRing, terms: dict, maps: dict):
        self.S = S
        self.terms = terms
        self.maps = maps
        self.top = max(terms) if terms else 0
        self.P = {self.top + 1: ()}
        self.dP = {self.top + 1: []}
        self.pi = {self.top + 1: []}
        self.low = self.top + 1

    def _L(self, m):
        return self.terms.get(m, ((), []))

    def extend_to(self, m_low: int):
        S = self.S
        while self.low > m_low:
            m = self.low - 1
            Pm1 = self.P[m + 1]
            Pm2 = self.P.get(m + 2, ())
            L, rel = self._L(m)
            L1, rel1 = self._L(m + 1)
            a2 = len(Pm2)
            a = len(Pm1)
            tgt_deg = list(Pm2) + list(L1)
            images = []
            for u in range(a):
                v = dict(self.dP[m + 1][u])
                for (c, e), x in self.pi[m + 1][u].items():
                    v[(c + a2, e)] = x
                images.append(v)
            for col in self.maps.get(m, [{} for _ in L]):
                images.append({(c + a2, e): x for (c, e), x in col.items()})
            base = [{(c + a2, e): x for (c, e), x in v.items()} for v in rel1]
            src_deg = list(Pm1) + list(L)
            if images:
                syz = kernel_vectors(S, images, tgt_deg, base, with_ideal=False)
            else:
                syz = []
            sbase = [{(c + a, e): x for (c, e), x in v.items()} for v in rel]
            for col in self.maps.get(m - 1, []):
                if col:
                    sbase.append({(c + a, e): x for (c, e), x in col.items()})
            gens = mingens(S, syz, src_deg, sbase, with_ideal=False)
            p = S.field.p
            P, dP, pi = [], [], []
            for z in gens:
                P.append(vec_deg(z, src_deg))
                q = {(c, e): (-x) % p if p else -x for (c, e), x in z.items() if c < a}
                ell = {(c - a, e): x for (c, e), x in z.items() if c >= a}
                dP.append(q)
                pi.append(ell)
            self.P[m] = tuple(P)
            self.dP[m] = dP
            self.pi[m] = pi
            self.low = m
        return self

    def dual_cohomology(self, k: int, twist_degree: int) -> FPModule:
        """H^k(Hom_S(P, S(-twist_degree)))."""
        S = self.S
        self.extend_to(-k - 1)
        omega = FPModule.free(S, [twist_degree])
        p = S.field.p
        Pk = self.P.get(-k, ())
        if not Pk:
            return FPModule.zero(S)
        mid_deg, mid_rel = hom_blocks(omega, Pk)
        below = self.P.get(-k - 1, ())
        psi, tgt_deg = None, ()
        if below:
            psi = dual_images(self.dP[-k - 1], len(Pk), 1, p)
            tgt_deg, _ = hom_blocks(omega, below)
        phi = ()
        above = self.P.get(-k + 1, ())
        if above and -k + 1 <= self.top:
            phi = dual_images(self.dP[-k], len(above), 1, p)
        return homology_module(S, mid_deg, mid_rel, psi, tgt_deg, (), phi)


def hom_complex_terms(res, N: FPModule, top: int):
    """Hom_R(F_*, N) as S-data: C^a = Hom(F_a, N) for a = 0..top."""
    R = N.ring
    p = R.field.p
    q = N.rank
    terms, maps = {}, {}
    for a in range(top + 1):
        Fa = res.free(a)
        degs, rels = hom_blocks(N, Fa)
        rels = list(rels) + ideal_base(R, len(degs))
        terms[a] = (tuple(degs), rels)
        if a < top:
            maps[a] = dual_images(res.differential(a + 1), len(Fa), q, p)
    return terms, maps


def _model(N: FPModule, M: FPModule) -> SemifreeModel:
    key = ("semifree", id(M))

    def build():
        pd = projective_dimension(M)
        if pd == INFINITE:
            raise HypothesisError("M has infinite projective dimension")
        res = resolution(M, pd)
        terms, maps = hom_complex_terms(res, N, pd)
        return SemifreeModel(ambient_ring(N.ring), terms, maps)
    slot = N._cache.setdefault(key, [])
    for other, val in slot:
        if other is M:
            return val
    val = build()
    slot.append((M, val))
    return val


def hyperext_dualizing(j: int, N: FPModule, M: FPModule) -> FPModule:
    """Ext^j_R(N, M (x)^L D) computed as H^{n - t + j}(Hom_S(P, S(-n))).

    P is an S-free model of the complex Hom_R(F_*, N) for a finite free
    resolution F_* of M.
    """
    if M.ring != N.ring:
        raise ValueError("ring mismatch")
    R = M.ring
    if projective_dimension(M) == INFINITE:
        raise HypothesisError("M has infinite projective dimension")
    n, t = R.n, R.krull_dim
    k = n - t + j
    model = _model(N, M)
    if k < -model.top:
        return FPModule.zero(R)
    return from_ambient(model.dual_cohomology(k, n), R)


# ---------------------------------------------------------------------------
# dual side


@dataclass
class DualSideModule:
    module: FPModule
    i: int
    route: str

    def piece_dim(self, j: int) -> int:
        """dim_k H^i_m(M, N) in degree j."""
        from .modules import graded_piece_dim
        return graded_piece_dim(self.module, -j)


def tor_vanishing_against_canonical(M: FPModule) -> bool:
    K = ring_canonical(M.ring)
    pd = projective_dimension(M)
    if pd == INFINITE:
        return False
    return all(tor(k, M, K).is_zero() for k in range(1, pd + 1))


def glc_dual_side(i: int, M: FPModule, N: FPModule, route: str = None) -> DualSideModule:
    """The module whose graded Matlis dual is H^i_m(M, N)."""
    R = M.ring
    if projective_dimension(M) == INFINITE:
        raise HypothesisError("M has infinite projective dimension")
    t = R.krull_dim
    if route is None:
        route = "CM-canonical" if is_cohen_macaulay(R) else "hyperext-dualizing"
    if route == "CM-canonical":
        if not is_cohen_macaulay(R):
            raise HypothesisError("canonical route needs a Cohen-Macaulay ring")
        if i > t:
            return DualSideModule(FPModule.zero(R), i, route)
        if not tor_vanishing_against_canonical(M):
            raise AssertionError("Tor_{>0}(M, K(R)) does not vanish")
        MK = M.cache("tensor_canonical", lambda: tensor_presentation(M, ring_canonical(R)))
        return DualSideModule(ext(t - i, N, MK), i, route)
    return DualSideModule(hyperext_dualizing(t - i, N, M), i, route)


def top_nonvanishing(M: FPModule, N: FPModule) -> int:
    """sup{i : H^i_m(M, N) != 0} = dim R - grade(Ann N, M) over a Gorenstein ring."""
    R = M.ring
    if not is_gorenstein(R):
        raise HypothesisError("ring is not Gorenstein")
    if projective_dimension(M) == INFINITE and projective_dimension(N) == INFINITE:
        raise HypothesisError("neither M nor N has finite projective dimension")
    g = grade(N, M)
    if g == INFINITE:
        raise HypothesisError("grade infinite")
    return R.krull_dim - g


def cohomological_dimension_at_m(N: FPModule) -> int:
    if N.is_zero():
        raise ValueError("zero module")
    return krull_dim(N)


def max_presentation_degree(*mods) -> int:
    d = 0
    for M in mods:
        for x in M.degrees:
            d = max(d, abs(x))
        for v in M.relations:
            d = max(d, abs(vec_deg(v, M.degrees)))
    return d


def default_window(M: FPModule, N: FPModule):
    n = M.ring.n
    md = max_presentation_degree(M, N)
    return (-(n + md) - 4, md + 4)


# ---------------------------------------------------------------------------
# degreewise cohomology helpers


def _cohomology_data(cols_in, cols_out, dim, F):
    """Kernel basis of d_out and the image of d_in inside a space of size ``dim``."""
    Z = linalg.kernel(cols_out, F) if cols_out is not None else [{c: 1} for c in range(dim)]
    if cols_out is not None and len(cols_out) != dim:
        raise AssertionError("dimension mismatch")
    return Z, [v for v in (cols_in or []) if v]


def _induced_rank(Z, B_tgt, transfer, F):
    """rank of the map Z -> T'/B' given by ``transfer`` (a function on vectors)."""
    E = linalg.Echelon(F)
    for b in B_tgt:
        E.add(b)
    base = len(E)
    for z in Z:
        E.add(transfer(z))
    return len(E) - base


def _cohom_dim(Z, B, F):
    return len(Z) - linalg.rank(B, F)


# ---------------------------------------------------------------------------
# truncated limits


@dataclass
class TruncatedLimit:
    """Initial segment n = 1..n_max of the system Ext^i(M/a^n M, N).

    ``transitions[(n, j)] = (rank, (h_n, h_{n+1}))`` records the rank of the
    stage-n to stage-(n+1) map in internal degree j together with the two
    stage dimensions.  ``image_ranks[(n, j)]`` is the rank of the composite
    from stage n into the last stage.  The segment counts as stabilized when
    the images of the last three stages in the last stage coincide and the
    map from stage N-2 to N-1 loses nothing on them, on every window degree.
    """
    i: int
    a: list
    stages: list
    transitions: dict
    window: tuple
    stabilized: bool
    limit_hilbert: dict
    image_ranks: dict = field(default_factory=dict)

    def stage_dims(self, n):
        """Window dimensions of stage n (1-based)."""
        out = {}
        for j in range(self.window[0], self.window[1] + 1):
            if (n, j) in self.transitions:
                out[j] = self.transitions[(n, j)][1][0]
            else:
                out[j] = self.transitions[(n - 1, j)][1][1]
        return out

    def injective_at(self, n) -> bool:
        """The map stage n -> stage n+1 is injective on the window."""
        return all(self.transitions[(n, j)][0] == self.transitions[(n, j)][1][0]
                   for j in range(self.window[0], self.window[1] + 1))


def _lift_chain_map(R: PolyRing, src, tgt, length: int):
    """Comparison map src -> tgt of resolutions lifting the identity on F_0."""
    alpha = {0: [{(c, R.S.zero_exp): 1} for c in range(len(src.free(0)))]}
    p = R.field.p
    for k in range(1, length + 1):
        cols = src.differential(k)
        if not src.free(k):
            alpha[k] = []
            continue
        targets = []
        for v in cols:
            out = {}
            for (c, e), x in v.items():
                vec_add_scaled(out, alpha[k - 1][c], {e: x}, p)
            targets.append(out)
        tcols = tgt.differential(k)
        tdeg = tgt.free(k - 1)
        if not tgt.free(k):
            alpha[k] = [{} for _ in cols]
            continue
        sol = solve_linear(tcols, targets, module_order(R, tdeg), R.field, R.n,
                           base=ideal_base(R, len(tdeg)))
        if any(s is None for s in sol):
            raise AssertionError("comparison lift failed: target outside the image")
        alpha[k] = sol
    return alpha


class _ExtPieces:
    """Degreewise cocycles and coboundaries of Hom(F_*, N) at spot i."""

    def __init__(self, res, N: FPModule, i: int):
        R = N.ring
        self.R, self.res, self.N, self.i = R, res, N, i
        p = R.field.p
        q = N.rank
        self.mod = {}
        for a in (i - 1, i, i + 1):
            if a >= 0:
                degs, rels = hom_blocks(N, res.free(a))
                self.mod[a] = FPModule(R, degs, rels)
        self.psi = dual_images(res.differential(i + 1), len(res.free(i)), q, p) \
            if res.free(i + 1) else None
        self.phi = dual_images(res.differential(i), len(res.free(i - 1)), q, p) \
            if i >= 1 and res.free(i - 1) else None

    def data(self, j):
        from .modules import piece_matrix
        F = self.R.field
        Hi = self.mod[self.i]
        dim = len(standard_basis(Hi, j))
        out = piece_matrix(Hi, self.mod[self.i + 1], self.psi, j) if self.psi else None
        inn = piece_matrix(self.mod[self.i - 1], Hi, self.phi, j) if self.phi else None
        Z, B = _cohomology_data(inn, out, dim, F)
        return Z, B


def glc_truncated_limit(i: int, a, M: FPModule, N: FPModule, n_max: int = 6,
                        window=None) -> TruncatedLimit:
    """Stages Ext^i(M/a^n M, N), n = 1..n_max, with the induced transition maps."""
    from .modules import prune
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    R = M.ring
    a = [R(g) if not isinstance(g, Polynomial) else g for g in a]
    window = window or default_window(M, N)
    P = prune(M)
    F = R.field
    quotients = [quotient_by_ideal(P, power_ideal(a, n)) for n in range(1, n_max + 1)]
    ress = [resolution(Q, i + 1) for Q in quotients]
    stages = [ext(i, Q, N) for Q in quotients]
    pieces = [_ExtPieces(r, N, i) for r in ress]
    transitions = {}
    p = F.p
    q = N.rank
    lows = [{j: pieces[n].data(j) for j in range(window[0], window[1] + 1)}
            for n in range(n_max)]
    step = {}
    from .modules import piece_matrix
    for n in range(n_max - 1):
        alpha = _lift_chain_map(R, ress[n + 1], ress[n], i)
        # Hom(G^n_i, N) -> Hom(G^{n+1}_i, N) is precomposition with alpha_i
        images = dual_images(alpha[i], len(ress[n].free(i)), q, p)
        src, tgt = pieces[n].mod[i], pieces[n + 1].mod[i]
        for j in range(window[0], window[1] + 1):
            step[(n, j)] = piece_matrix(src, tgt, images, j)

    def push(z, n0, n1, j):
        for m in range(n0, n1):
            z = linalg.apply(step[(m, j)], z, F)
        return z

    def rank_between(n0, n1, j):
        Z0 = lows[n0][j][0]
        B1 = lows[n1][j][1]
        return _induced_rank(Z0, B1, lambda z: push(z, n0, n1, j), F)

    dims = {(n, j): _cohom_dim(*lows[n][j], F) for n in range(n_max)
            for j in range(window[0], window[1] + 1)}
    for n in range(n_max - 1):
        for j in range(window[0], window[1] + 1):
            transitions[(n + 1, j)] = (rank_between(n, n + 1, j),
                                       (dims[(n, j)], dims[(n + 1, j)]))
    last = n_max - 1
    image_ranks = {}
    for n in range(n_max - 1):
        for j in range(window[0], window[1] + 1):
            image_ranks[(n + 1, j)] = rank_between(n, last, j)
    stabilized = n_max >= 3
    for j in range(window[0], window[1] + 1):
        r_far = image_ranks[(last - 1, j)]
        r_near = image_ranks[(last, j)]
        r_prev = transitions[(last - 1, j)][0]
        if not (r_far == r_near == r_prev):
            stabilized = False
    limit = {j: image_ranks[(last, j)] for j in range(window[0], window[1] + 1)}
    return TruncatedLimit(i, a, stages, transitions, window, stabilized, limit, image_ranks)


# ---------------------------------------------------------------------------
# Čech oracle


INCONCLUSIVE = "inconclusive"


def _regularity(M: FPModule) -> int:
    """Castelnuovo-Mumford regularity over S from the Betti table."""
    if M.is_zero():
        return -10 ** 6
    MS = to_ambient(M)
    res = resolution(MS, M.ring.n + 1)
    return max(d - i for i, degs in enumerate(res.F) for d in degs)


def parameter_elements(R: PolyRing, seed: int = 0):
    """Linear forms generating the maximal ideal up to radical, as few as found.

    Variables are dropped greedily while the remaining ones still cut R down
    to dimension zero; when that leaves more than dim R elements, seeded
    random linear combinations of the variables are tried first.
    """
    gens = list(R.S.gens)
    t = R.krull_dim

    def ok(elems):
        return krull_dim(quotient_by_ideal(ring_module(R), elems)) <= 0

    if t <= 0:
        return []
    rng = random.Random(seed)
    p = R.field.p
    for _ in range(5):
        cand = []
        for _ in range(t):
            f = R.S.zero()
            for x in gens:
                f = f + x * (rng.randrange(1, p) if p else rng.randrange(1, 10))
            cand.append(f)
        if ok(cand):
            return cand
    keep = list(gens)
    for x in list(gens):
        trial = [y for y in keep if y != x]
        if trial and ok(trial):
            keep = trial
    return keep


@dataclass
class CechResult:
    i: int
    window: tuple
    values: dict            # j -> dim or INCONCLUSIVE
    levels: dict = field(default_factory=dict)   # j -> level k at which it stabilized

    @property
    def conclusive(self) -> bool:
        return all(v != INCONCLUSIVE for v in self.values.values())


class _CechDegree:
    """Total complex of K^*(x^k) (x) Hom(F_*, N) in one internal degree."""

    def __init__(self, i, elems, C, psi, F, p):
        self.i, self.elems, self.C, self.psi, self.F, self.p = i, elems, C, psi, F, p
        self.m = len(elems)
        self.edeg = [f.degree() for f in elems]
        self.subsets = {s: list(combinations(range(self.m), s)) for s in range(self.m + 1)}

    def components(self, total):
        out = []
        for s in range(self.m + 1):
            a = total - s
            if a in self.C:
                for sig in self.subsets[s]:
                    out.append((a, sig))
        return out

    def layout(self, total, j, k):
        comps = self.components(total)
        offs, pos = {}, 0
        for a, sig in comps:
            D = j + k * sum(self.edeg[l] for l in sig)
            basis = standard_basis(self.C[a], D)
            offs[(a, sig)] = (pos, D, basis)
            pos += len(basis)
        return offs, pos

    def differential(self, total, j, k):
        """Columns of d: T^total -> T^{total+1}."""
        src, _ = self.layout(total, j, k)
        tgt, dim_t = self.layout(total + 1, j, k)
        p = self.p
        cols = []
        powers = [self.elems[l] ** k for l in range(self.m)]
        for (a, sig), (off, D, basis) in src.items():
            for (c, e) in basis:
                col = {}
                unit = {(c, e): 1}
                for l in range(self.m):
                    if l in sig:
                        continue
                    tau = tuple(sorted(sig + (l,)))
                    if (a, tau) not in tgt:
                        continue
                    sign = -1 if tau.index(l) % 2 else 1
                    toff, TD, _ = tgt[(a, tau)]
                    v = vec_add_scaled({}, unit, powers[l].terms, p)
                    for idx, x in coordinates(self.C[a], v, TD).items():
                        y = (col.get(toff + idx, 0) + sign * x)
                        y = y % p if p else y
                        if y:
                            col[toff + idx] = y
                        else:
                            col.pop(toff + idx, None)
                if (a + 1, sig) in tgt and self.psi.get(a) is not None:
                    toff, TD, _ = tgt[(a + 1, sig)]
                    sign = -1 if len(sig) % 2 else 1
                    v = vec_add_scaled({}, self.psi[a][c], {e: 1}, p)
                    for idx, x in coordinates(self.C[a + 1], v, TD).items():
                        y = (col.get(toff + idx, 0) + sign * x)
                        y = y % p if p else y
                        if y:
                            col[toff + idx] = y
                        else:
                            col.pop(toff + idx, None)
                cols.append(col)
        return cols, dim_t

    def level(self, j, k):
        i = self.i
        _, dim = self.layout(i, j, k)
        out, _ = self.differential(i, j, k)
        inn, _ = self.differential(i - 1, j, k)
        Z = linalg.kernel(out, self.F) if out else []
        if not out:
            Z = [{c: 1} for c in range(dim)]
        return Z, [v for v in inn if v]

    def transfer(self, j, k):
        """Map T^i at level k to level k+1: multiplication by x_sigma on each component."""
        src, _ = self.layout(self.i, j, k)
        tgt, _ = self.layout(self.i, j, k + 1)
        p = self.p
        cols = []
        for (a, sig), (off, D, basis) in src.items():
            mult = self.C[a].ring.S.one()
            for l in sig:
                mult = mult * self.elems[l]
            toff, TD, _ = tgt[(a, sig)]
            for (c, e) in basis:
                v = vec_add_scaled({}, {(c, e): 1}, mult.terms, p)
                cols.append({toff + idx: x for idx, x in coordinates(self.C[a], v, TD).items()})
        return cols


def graded_cech_cohomology(i: int, elems, M: FPModule, N: FPModule, window=None,
                           max_steps: int = 10, start=None) -> CechResult:
    """dim_k H^i of the Čech-Hom total complex on each degree of ``window``.

    Each degree is computed as a colimit over k of Koszul cochain complexes on
    x^k; the value is accepted after two consecutive isomorphic transition
    steps, starting at a level past the regularity of the modules involved.
    A degree that does not settle within ``max_steps`` steps is reported as
    inconclusive.
    """
    R = M.ring
    window = window or default_window(M, N)
    elems = [R(f) if not isinstance(f, Polynomial) else R.reduce(f) for f in elems]
    elems = [f for f in elems if f]
    F = R.field
    p = F.p
    q = N.rank
    res = resolution(M, i + 1)
    C, psi = {}, {}
    for a in range(0, i + 2):
        Fa = res.free(a)
        if not Fa:
            continue
        degs, rels = hom_blocks(N, Fa)
        C[a] = FPModule(R, degs, rels)
    for a in range(0, i + 1):
        if a in C and (a + 1) in C:
            psi[a] = dual_images(res.differential(a + 1), len(res.free(a)), q, p)
    values, levels = {}, {}
    if i not in C and not any(i - s in C for s in range(len(elems) + 1)):
        return CechResult(i, window, {j: 0 for j in range(window[0], window[1] + 1)})
    reg = _regularity(N) - min((min(res.free(a)) for a in C), default=0)
    cd = _CechDegree(i, elems, C, psi, F, p)
    mindeg = min((f.degree() for f in elems), default=1)
    for j in range(window[0], window[1] + 1):
        k = start if start is not None else max(1, -(-(reg - j + 2) // mindeg))
        prev = cd.level(j, k)
        streak, value = 0, INCONCLUSIVE
        for step in range(max_steps):
            cur = cd.level(j, k + 1)
            cols = cd.transfer(j, k)
            h0 = _cohom_dim(*prev, F)
            h1 = _cohom_dim(*cur, F)
            r = _induced_rank(prev[0], cur[1], lambda z: linalg.apply(cols, z, F), F)
            if r == h0 == h1:
                streak += 1
                if streak == 2:
                    value = h1
                    levels[j] = k + 1
                    break
            else:
                streak = 0
            prev, k = cur, k + 1
        values[j] = value
    return CechResult(i, window, values, levels)
