"""Buchberger's algorithm for submodules of graded free modules.

Vectors are dicts ``{(component, exponent): coefficient}``; a polynomial is a
vector supported on component 0.  One engine serves ideals, modules, syzygies
(via tracked representations), lifting, and minimal generating sets.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .poly import (FieldSpec, MonomialOrder, Polynomial, PolynomialRing, mono_div,
                   mono_divides, mono_lcm, mono_mul)


class ModuleOrder:
    """Term order on ``(component, exponent)`` pairs.

    For graded monomial orders this is term-over-position with generator
    degrees: twisted degree first, then the monomial order, then lower
    component index wins.
    """

    __slots__ = ("mono", "degrees", "_key", "_nkey")

    def __init__(self, mono: MonomialOrder, degrees=()):
        self.mono = mono
        self.degrees = tuple(degrees)
        self._key = {}
        self._nkey = {}

    def degree(self, term) -> int:
        c, e = term
        return sum(e) + (self.degrees[c] if c < len(self.degrees) else 0)

    def key(self, term):
        k = self._key.get(term)
        if k is None:
            c, e = term
            if self.mono.graded:
                k = (self.degree(term),) + self.mono.key(e) + (-c,)
            else:
                k = self.mono.key(e) + (-c,)
            self._key[term] = k
        return k

    def nkey(self, term):
        k = self._nkey.get(term)
        if k is None:
            k = tuple(-x for x in self.key(term))
            self._nkey[term] = k
        return k

    def leading(self, vec):
        return max(vec, key=self.key)


def vec_degree(vec, order: ModuleOrder) -> int:
    return max(order.degree(t) for t in vec)


def vec_is_homogeneous(vec, order: ModuleOrder) -> bool:
    return len({order.degree(t) for t in vec}) <= 1


class Entry:
    __slots__ = ("lt", "vec", "track", "deg")

    def __init__(self, lt, vec, track, deg):
        self.lt = lt
        self.vec = vec
        self.track = track
        self.deg = deg


def _axpy(f, g, m, c, p, heap=None, order=None):
    """f -= c * x^m * g in place; new terms are pushed on ``heap``."""
    for (gc, ge), gv in g.items():
        t = (gc, mono_mul(ge, m))
        old = f.get(t)
        if old is None:
            v = -c * gv
            if p:
                v %= p
            if v:
                f[t] = v
                if heap is not None:
                    heapq.heappush(heap, (order.nkey(t), t))
        else:
            v = old - c * gv
            if p:
                v %= p
            if v:
                f[t] = v
            else:
                del f[t]


def _find_reducer(by_comp, term):
    c, e = term
    for g in by_comp.get(c, ()):
        if mono_divides(g.lt[1], e):
            return g
    return None


def reduce_vector(vec, by_comp, order: ModuleOrder, F: FieldSpec, track=None,
                  full=True):
    """Normal form of ``vec`` with respect to monic entries grouped by component.

    Returns ``(remainder, track)``; ``track`` is updated with the same
    operations when given.
    """
    p = F.p
    f = dict(vec)
    tr = dict(track) if track is not None else None
    heap = [(order.nkey(t), t) for t in f]
    heapq.heapify(heap)
    r = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = f.get(t)
        if c is None:
            continue
        g = _find_reducer(by_comp, t)
        if g is None:
            r[t] = f.pop(t)
            if not full:
                r.update(f)
                return r, tr
            continue
        m = mono_div(t[1], g.lt[1])
        _axpy(f, g.vec, m, c, p, heap, order)
        if tr is not None and g.track:
            _axpy(tr, g.track, m, c, p)
    return r, tr


def _scale(vec, c, p):
    if p:
        return {t: v * c % p for t, v in vec.items()}
    return {t: v * c for t, v in vec.items()}


@dataclass
class GBResult:
    basis: list
    minimal: list = field(default_factory=list)
    syzygies: list = field(default_factory=list)

    def by_component(self):
        out = {}
        for g in self.basis:
            out.setdefault(g.lt[0], []).append(g)
        return out


class _Buchberger:
    def __init__(self, order: ModuleOrder, F: FieldSpec, ideal_mode: bool):
        self.order = order
        self.F = F
        self.ideal_mode = ideal_mode
        self.G = []
        self.by_comp = {}
        self.active = {}
        self.pairs = {}
        self.heap = []
        self.syz = []

    def make_entry(self, vec, track):
        order, p = self.order, self.F.p
        lt = order.leading(vec)
        c = vec[lt]
        if c != 1:
            inv = self.F.inv(c)
            vec = _scale(vec, inv, p)
            if track:
                track = _scale(track, inv, p)
        return Entry(lt, vec, track, order.degree(lt))

    def add(self, entry):
        h = len(self.G)
        self.G.append(entry)
        self.by_comp.setdefault(entry.lt[0], []).append(entry)
        self._update(h)

    def _coprime(self, a, b):
        return self.ideal_mode and all(x == 0 or y == 0 for x, y in zip(a, b))

    def _update(self, h):
        G = self.G
        comp, eh = G[h].lt
        act = self.active.get(comp, [])
        lcms = {i: mono_lcm(G[i].lt[1], eh) for i in act}
        C = list(act)
        D = []
        while C:
            i = C.pop()
            Li = lcms[i]
            if self._coprime(G[i].lt[1], eh) or (
                    not any(mono_divides(lcms[k], Li) for k in C)
                    and not any(mono_divides(lcms[k], Li) for k in D)):
                D.append(i)
        for key in list(self.pairs):
            i, j = key
            L = self.pairs[key]
            if G[i].lt[0] != comp or not mono_divides(eh, L):
                continue
            if mono_lcm(G[i].lt[1], eh) != L and mono_lcm(G[j].lt[1], eh) != L:
                del self.pairs[key]
        for i in D:
            if self._coprime(G[i].lt[1], eh):
                continue
            L = lcms[i]
            self.pairs[(i, h)] = L
            term = (comp, L)
            heapq.heappush(self.heap, (self.order.degree(term), self.order.key(term), i, h))
        self.active[comp] = [i for i in act if not mono_divides(eh, G[i].lt[1])] + [h]

    def next_pair_degree(self):
        while self.heap:
            d, _, i, j = self.heap[0]
            if (i, j) in self.pairs:
                return d
            heapq.heappop(self.heap)
        return None

    def process_pair(self):
        _, _, i, j = heapq.heappop(self.heap)
        L = self.pairs.pop((i, j))
        gi, gj = self.G[i], self.G[j]
        p = self.F.p
        mi = mono_div(L, gi.lt[1])
        mj = mono_div(L, gj.lt[1])
        s = {}
        _axpy(s, gi.vec, mi, p - 1 if p else -1, p)
        _axpy(s, gj.vec, mj, 1, p)
        tr = None
        if gi.track is not None or gj.track is not None:
            tr = {}
            if gi.track:
                _axpy(tr, gi.track, mi, p - 1 if p else -1, p)
            if gj.track:
                _axpy(tr, gj.track, mj, 1, p)
        self.reduce_and_add(s, tr)

    def reduce_and_add(self, vec, track):
        r, tr = reduce_vector(vec, self.by_comp, self.order, self.F, track)
        if r:
            self.add(self.make_entry(r, tr))
            return True
        if tr:
            self.syz.append(tr)
        return False

    def interreduce(self):
        order = self.order
        G = sorted(self.G, key=lambda g: order.key(g.lt))
        kept = []
        by_comp = {}
        for g in G:
            if _find_reducer(by_comp, g.lt) is None:
                kept.append(g)
                by_comp.setdefault(g.lt[0], []).append(g)
        out = []
        for g in kept:
            others = {c: [h for h in lst if h is not g] for c, lst in by_comp.items()}
            tail = dict(g.vec)
            del tail[g.lt]
            r, tr = reduce_vector(tail, others, order, self.F, g.track)
            r[g.lt] = 1
            out.append(Entry(g.lt, r, tr, g.deg))
        return out


def compute_gb(cands, order: ModuleOrder, F: FieldSpec, base=(), tracks=None,
               reduced=True, ideal_mode=False) -> GBResult:
    """Gröbner basis of the submodule generated by ``base`` and ``cands``.

    Processing is degree by degree, so for homogeneous input the candidates
    recorded in ``minimal`` form a minimal generating set of the submodule
    modulo the one generated by ``base``.  When ``tracks`` is given (one
    vector per candidate) every basis element carries its representation,
    and ``syzygies`` collects representations of zero, which generate the
    module of relations among the candidates modulo ``base``.
    """
    eng = _Buchberger(order, F, ideal_mode)
    items = []
    base_track = None if tracks is None else {}
    for v in base:
        if v:
            items.append((vec_degree(v, order), 0, len(items), v, base_track, None))
    for idx, v in enumerate(cands):
        tr = None if tracks is None else tracks[idx]
        if v:
            items.append((vec_degree(v, order), 1, len(items), v, tr, idx))
        elif tr:
            eng.syz.append(dict(tr))
    items.sort(key=lambda it: it[:3])
    minimal = []
    pos = 0
    while True:
        dp = eng.next_pair_degree()
        dc = items[pos][0] if pos < len(items) else None
        if dp is None and dc is None:
            break
        if dp is not None and (dc is None or dp <= dc):
            eng.process_pair()
            continue
        _, _, _, v, tr, idx = items[pos]
        pos += 1
        if eng.reduce_and_add(v, tr) and idx is not None:
            minimal.append(idx)
    basis = eng.interreduce() if reduced else list(eng.G)
    return GBResult(basis, sorted(minimal), eng.syz)


def group_by_component(entries):
    out = {}
    for g in entries:
        out.setdefault(g.lt[0], []).append(g)
    return out


def solve_linear(cols, targets, order, F, nvars, base=()):
    """For each target b find x with sum_l x_l cols[l] = b modulo ``base``.

    Returns a list of coefficient vectors (dicts over ``(l, exp)``), with
    None for targets outside the image.
    """
    z = (0,) * nvars
    tracks = [{(l, z): 1} for l in range(len(cols))]
    res = compute_gb(cols, order, F, base=base, tracks=tracks, reduced=False)
    by_comp = res.by_component()
    out = []
    p = F.p
    for b in targets:
        r, tr = reduce_vector(b, by_comp, order, F, track={})
        if r:
            out.append(None)
        else:
            out.append({t: (-v) % p if p else -v for t, v in tr.items()})
    return out


# ---------------------------------------------------------------------------
# ideal-level API


class GroebnerBasis:
    """Reduced Gröbner basis of an ideal of a :class:`PolynomialRing`."""

    def __init__(self, ring: PolynomialRing, generators=(), order: MonomialOrder = None):
        self.ring = ring
        self.order = order or ring.order
        self.generators = tuple(generators)
        self._morder = ModuleOrder(self.order)
        self._entries = [Entry((0, g.leading_monomial), {(0, e): c for e, c in g.terms.items()},
                               None, g.degree()) for g in self.generators]
        self._by_comp = group_by_component(self._entries)

    @classmethod
    def _from_entries(cls, ring, order, entries):
        gens = [Polynomial(ring, {e: c for (_, e), c in g.vec.items()}) for g in entries]
        gens.sort(key=lambda f: order.key(f.leading_monomial), reverse=True)
        return cls(ring, gens, order)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.order == other.order
                and set(self.generators) == set(other.generators))

    def __hash__(self):
        return hash((self.ring, frozenset(self.generators)))

    @property
    def leading_monomials(self):
        return [g.leading_monomial for g in self.generators]

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __repr__(self):
        return "GroebnerBasis([" + ", ".join(map(str, self.generators)) + "])"


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Unique remainder of ``f`` modulo the reduced basis ``G``."""
    if f.ring.nvars != G.ring.nvars:
        raise ValueError("variable-count mismatch between polynomial and basis")
    vec = {(0, e): c for e, c in f.terms.items()}
    r, _ = reduce_vector(vec, G._by_comp, G._morder, f.ring.field)
    return Polynomial(f.ring, {e: c for (_, e), c in r.items()})


def buchberger(gens, ring: PolynomialRing = None, order: MonomialOrder = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    order = order or ring.order
    if ring.nvars == 0 and not gens:
        return GroebnerBasis(ring, (), order)
    mo = ModuleOrder(order)
    vecs = [{(0, e): c for e, c in g.terms.items()} for g in gens if g]
    res = compute_gb(vecs, mo, ring.field, ideal_mode=True)
    G = GroebnerBasis._from_entries(ring, order, res.basis)
    for g in gens:
        assert normal_form(g, G).is_zero()
    return G


def syzygy_matrix(A, ring: PolynomialRing):
    """Generators of ker(A) for a polynomial matrix given as a list of rows.

    Returns a list of rows (len(A[0]) rows) whose columns generate the kernel.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if any(len(r) != cols for r in A):
        raise ValueError("ragged matrix")
    z = ring.zero_exp
    vecs = []
    for j in range(cols):
        v = {}
        for i in range(rows):
            for e, c in A[i][j].terms.items():
                v[(i, e)] = c
        vecs.append(v)
    tracks = [{(j, z): 1} for j in range(cols)]
    res = compute_gb(vecs, ModuleOrder(ring.order), ring.field, tracks=tracks)
    # minimalize the kernel generators themselves
    syz = [s for s in res.syzygies if s]
    if syz:
        mres = compute_gb(syz, ModuleOrder(ring.order), ring.field)
        syz = [syz[i] for i in mres.minimal]
    out = [[ring.zero() for _ in syz] for _ in range(cols)]
    for k, s in enumerate(syz):
        entries = {}
        for (j, e), c in s.items():
            entries.setdefault(j, {})[e] = c
        for j, t in entries.items():
            out[j][k] = Polynomial(ring, t)
    return out
