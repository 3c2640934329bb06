"""Quotient rings R = S/I and finitely presented graded R-modules.

Every module is a cokernel ``F0 / (relations + I*F0)`` where F0 is a graded
free module given by its generator degrees.  All computations happen over the
polynomial ambient S; the quotient ideal is added as extra relations.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations

from . import linalg
from .groebner import (GroebnerBasis, ModuleOrder, buchberger, compute_gb, group_by_component,
                       reduce_vector, vec_degree, vec_is_homogeneous)
from .poly import (FieldSpec, MonomialOrder, Polynomial, PolynomialRing, mono_divides,
                   mono_gcd, mono_mul, mono_div, monomials_of_degree)

ZERO_MODULE_DIM = -math.inf
INFINITE = math.inf


class PolyRing:
    """A standard graded ring k[x_1..x_n]/I with I homogeneous."""

    def __init__(self, field: FieldSpec = None, variables=("x", "y"), order="grevlex",
                 ideal=()):
        field = field or FieldSpec(101)
        if isinstance(order, str):
            order = MonomialOrder(order)
        self.S = PolynomialRing(field, tuple(variables), order)
        gens = [self.S(g) for g in ideal]
        for g in gens:
            if not g.is_homogeneous():
                raise ValueError(f"quotient ideal generator {g} is not homogeneous")
        self.quotient_ideal = buchberger(gens, self.S)
        if self.quotient_ideal.is_unit():
            raise ValueError("quotient by the unit ideal")
        self._ideal_by_comp = group_by_component(self.quotient_ideal._entries)
        self._cache = {}

    field = property(lambda self: self.S.field)
    variables = property(lambda self: self.S.names)
    order = property(lambda self: self.S.order)
    n = property(lambda self: self.S.nvars)

    @property
    def ambient_dim(self) -> int:
        return self.S.nvars

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.S == other.S
                and self.quotient_ideal == other.quotient_ideal)

    def __hash__(self):
        return hash((self.S, self.quotient_ideal))

    def __call__(self, x) -> Polynomial:
        return self.reduce(self.S(x))

    @property
    def gens(self):
        return tuple(self.reduce(g) for g in self.S.gens)

    def reduce(self, f: Polynomial) -> Polynomial:
        if not self.quotient_ideal.generators:
            return f
        from .groebner import normal_form
        return normal_form(f, self.quotient_ideal)

    def is_polynomial_ring(self) -> bool:
        return not self.quotient_ideal.generators

    @property
    def krull_dim(self) -> int:
        if "dim" not in self._cache:
            self._cache["dim"] = krull_dim(FPModule.free(self, [0]))
        return self._cache["dim"]

    def maximal_ideal(self):
        return list(self.S.gens)

    def __repr__(self):
        s = f"{self.S.field}[{', '.join(self.variables)}]"
        if self.quotient_ideal.generators:
            s += "/(" + ", ".join(map(str, self.quotient_ideal.generators)) + ")"
        return s


# ---------------------------------------------------------------------------
# vector helpers (vectors are dicts {(component, exponent): coeff})


def poly_to_vec(f: Polynomial, comp: int = 0):
    return {(comp, e): c for e, c in f.terms.items()}


def vec_component(vec, comp: int, S: PolynomialRing) -> Polynomial:
    return Polynomial(S, {e: c for (k, e), c in vec.items() if k == comp})


def vec_add_scaled(out, vec, poly_terms, p, comp_map=None):
    """out += poly * vec, optionally relabelling components."""
    for (c, e), a in vec.items():
        cc = c if comp_map is None else comp_map(c)
        for pe, pc in poly_terms.items():
            t = (cc, mono_mul(e, pe))
            v = out.get(t, 0) + a * pc
            if p:
                v %= p
            if v:
                out[t] = v
            else:
                out.pop(t, None)
    return out


def reduce_mod_ideal(R: PolyRing, vec):
    if not R.quotient_ideal.generators or not vec:
        return dict(vec)
    by_comp = {}
    for (c, e), a in vec.items():
        by_comp.setdefault(c, {})[(0, e)] = a
    out = {}
    mo = R.quotient_ideal._morder
    for c, v in by_comp.items():
        r, _ = reduce_vector(v, R._ideal_by_comp, mo, R.field)
        for (_, e), a in r.items():
            out[(c, e)] = a
    return out


def ideal_base(R: PolyRing, ncomp: int):
    """The relations I * e_c for every component c."""
    out = []
    for g in R.quotient_ideal.generators:
        for c in range(ncomp):
            out.append(poly_to_vec(g, c))
    return out


def module_order(R: PolyRing, degrees) -> ModuleOrder:
    return ModuleOrder(R.order, degrees)


def kernel_vectors(R: PolyRing, images, tgt_degrees, tgt_base, with_ideal=True):
    """Generators of {x : sum_l x_l images[l] in <tgt_base> (+ I*target)}.

    Returned vectors live in the free module indexed by ``images`` and are
    reduced modulo I when ``with_ideal`` is set.
    """
    z = R.S.zero_exp
    base = list(tgt_base)
    if with_ideal:
        base += ideal_base(R, len(tgt_degrees))
    tracks = [{(l, z): 1} for l in range(len(images))]
    res = compute_gb(images, module_order(R, tgt_degrees), R.field, base=base,
                     tracks=tracks, reduced=False)
    out = []
    for s in res.syzygies:
        if with_ideal:
            s = reduce_mod_ideal(R, s)
        if s:
            out.append(s)
    return out


def mingens(R: PolyRing, vecs, degrees, base=(), with_ideal=True):
    """A minimal generating subset of ``vecs`` modulo ``base`` (+ I*F)."""
    base = list(base)
    if with_ideal:
        base += ideal_base(R, len(degrees))
    vecs = [v for v in vecs if v]
    if not vecs:
        return []
    res = compute_gb(vecs, module_order(R, degrees), R.field, base=base, reduced=False)
    return [vecs[i] for i in res.minimal]


def vec_deg(vec, degrees) -> int:
    c, e = next(iter(vec))
    return sum(e) + degrees[c]


# ---------------------------------------------------------------------------
# free modules, matrices, modules


class FreeModule:
    """Graded free module; ``degrees`` are the generator degrees (twist = -degree)."""

    def __init__(self, ring: PolyRing, degrees):
        self.ring = ring
        self.degrees = tuple(int(d) for d in degrees)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def twists(self):
        return tuple(-d for d in self.degrees)

    def __eq__(self, other):
        return (isinstance(other, FreeModule) and self.ring == other.ring
                and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.ring, self.degrees))

    def __repr__(self):
        if not self.degrees:
            return "0"
        return " + ".join(f"R({-d})" for d in self.degrees)


class PolyMatrix:
    """Graded map ``domain -> codomain``; ``columns[j]`` is the image of basis vector j."""

    def __init__(self, domain: FreeModule, codomain: FreeModule, columns):
        self.domain = domain
        self.codomain = codomain
        self.columns = tuple(columns)
        if len(self.columns) != domain.rank:
            raise ValueError("column count does not match the domain rank")

    @classmethod
    def from_rows(cls, ring: PolyRing, rows, row_degrees=None):
        rows = [[ring(x) for x in r] for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        row_degrees = list(row_degrees) if row_degrees is not None else [0] * nrows
        cols, col_deg = [], []
        for j in range(ncols):
            v = {}
            d = None
            for i in range(nrows):
                f = rows[i][j]
                if not f:
                    continue
                if not f.is_homogeneous():
                    raise ValueError(f"entry ({i},{j}) = {f} is not homogeneous")
                di = f.degree() + row_degrees[i]
                if d is not None and di != d:
                    raise ValueError(f"column {j} is not homogeneous for the given degrees")
                d = di
                v.update(poly_to_vec(f, i))
            cols.append(v)
            col_deg.append(d if d is not None else 0)
        return cls(FreeModule(ring, col_deg), FreeModule(ring, row_degrees), cols)

    @property
    def ring(self):
        return self.codomain.ring

    @property
    def shape(self):
        return self.codomain.rank, self.domain.rank

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return vec_component(self.columns[j], i, self.ring.S)

    def rows(self):
        m, k = self.shape
        return [[self[i, j] for j in range(k)] for i in range(m)]

    def is_zero(self) -> bool:
        return not any(self.columns)

    def compose(self, other: "PolyMatrix") -> "PolyMatrix":
        """self o other."""
        R = self.ring
        p = R.field.p
        cols = []
        for v in other.columns:
            out = {}
            for (c, e), a in v.items():
                vec_add_scaled(out, self.columns[c], {e: a}, p)
            cols.append(reduce_mod_ideal(R, out))
        return PolyMatrix(other.domain, self.codomain, cols)

    def has_unit_entry(self) -> bool:
        return any(not any(e) for v in self.columns for (_, e) in v)

    def __repr__(self):
        return "PolyMatrix(" + repr([[str(x) for x in r] for r in self.rows()]) + ")"


class FPModule:
    """Cokernel of a graded presentation ``relations -> F0`` over a :class:`PolyRing`."""

    def __init__(self, ring: PolyRing, degrees, relations=()):
        self.ring = ring
        self.degrees = tuple(int(d) for d in degrees)
        rels = []
        for v in relations:
            v = reduce_mod_ideal(ring, v)
            if v:
                rels.append(v)
        self.relations = tuple(rels)
        self._cache = {}

    # constructors -------------------------------------------------------
    @classmethod
    def free(cls, ring: PolyRing, degrees=(0,)):
        return cls(ring, degrees, ())

    @classmethod
    def zero(cls, ring: PolyRing):
        return cls(ring, (), ())

    @classmethod
    def cyclic(cls, ring: PolyRing, ideal_gens, degree: int = 0):
        """R/(ideal_gens), generated in ``degree``."""
        gens = [ring.S(g) for g in ideal_gens]
        return cls(ring, (degree,), [poly_to_vec(g, 0) for g in gens if g])

    @classmethod
    def residue_field(cls, ring: PolyRing):
        return cls.cyclic(ring, ring.S.gens)

    @classmethod
    def from_matrix(cls, ring: PolyRing, rows, degrees=None):
        pm = PolyMatrix.from_rows(ring, rows, degrees)
        return cls(ring, pm.codomain.degrees, pm.columns)

    # structure -----------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def presentation(self) -> PolyMatrix:
        cols = list(self.relations)
        cdeg = [vec_deg(v, self.degrees) for v in cols]
        return PolyMatrix(FreeModule(self.ring, cdeg), FreeModule(self.ring, self.degrees), cols)

    def __eq__(self, other):
        """Structural equality of presentations (not isomorphism)."""
        return (isinstance(other, FPModule) and self.ring == other.ring
                and self.degrees == other.degrees
                and list(map(_vkey, self.relations)) == list(map(_vkey, other.relations)))

    def __hash__(self):
        return id(self)

    def cache(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def gb(self):
        """Gröbner basis entries of relations + I*F0."""
        def build():
            base = ideal_base(self.ring, self.rank)
            res = compute_gb(list(self.relations), module_order(self.ring, self.degrees),
                             self.ring.field, base=base)
            return res.basis
        return self.cache("gb", build)

    def gb_by_component(self):
        return self.cache("gbc", lambda: group_by_component(self.gb()))

    def normal_form(self, vec):
        r, _ = reduce_vector(vec, self.gb_by_component(), module_order(self.ring, self.degrees),
                             self.ring.field)
        return r

    def is_zero(self) -> bool:
        return hilbert_series(self).is_zero()

    def twist(self, shift: int) -> "FPModule":
        """M(shift): generator degrees decrease by ``shift``."""
        return FPModule(self.ring, [d - shift for d in self.degrees], self.relations)

    def __repr__(self):
        if not self.degrees:
            return "FPModule(0)"
        if not self.relations:
            return f"FPModule(free, degrees={list(self.degrees)})"
        rows = self.presentation.rows()
        return (f"FPModule(degrees={list(self.degrees)}, "
                f"relations={[[str(x) for x in r] for r in rows]})")


def _vkey(v):
    return tuple(sorted(v.items()))


def direct_sum(*mods) -> FPModule:
    R = mods[0].ring
    degrees, rels, off = [], [], 0
    for M in mods:
        degrees += M.degrees
        rels += [{(c + off, e): a for (c, e), a in v.items()} for v in M.relations]
        off += M.rank
    return FPModule(R, degrees, rels)


def prune(M: FPModule) -> FPModule:
    """Minimal presentation: units eliminated, relations minimalized."""
    R = M.ring
    p = R.field.p
    degrees = list(M.degrees)
    rels = [dict(v) for v in M.relations]
    while True:
        hit = None
        for j, v in enumerate(rels):
            for (c, e), a in v.items():
                if not any(e):
                    hit = (j, c, a)
                    break
            if hit:
                break
        if hit is None:
            break
        j, r, u = hit
        col = rels.pop(j)
        uinv = R.field.inv(u)
        new = []
        for v in rels:
            coef = {e: a for (c, e), a in v.items() if c == r}
            if coef:
                scaled = {e: (-a * uinv) % p if p else -a * uinv for e, a in coef.items()}
                v = vec_add_scaled(dict(v), col, scaled, p)
            new.append(v)
        rels = []
        for v in new:
            v = {((c if c < r else c - 1), e): a for (c, e), a in v.items() if c != r}
            v = reduce_mod_ideal(R, v)
            if v:
                rels.append(v)
        degrees.pop(r)
    rels = [_monic(v, R, degrees) for v in mingens(R, rels, degrees)]
    out = FPModule(R, degrees, rels)
    for k in ("hilbert", "dim", "ann"):
        if k in M._cache:
            out._cache[k] = M._cache[k]
    return out


def _monic(v, R: PolyRing, degrees):
    lt = module_order(R, degrees).leading(v)
    c = v[lt]
    if c == 1:
        return v
    inv = R.field.inv(c)
    p = R.field.p
    return {t: (a * inv) % p if p else a * inv for t, a in v.items()}


def quotient_by_ideal(M: FPModule, gens) -> FPModule:
    """M / aM."""
    S = M.ring.S
    gens = [S(g) for g in gens]
    p = M.ring.field.p
    extra = []
    for g in gens:
        for c in range(M.rank):
            extra.append(vec_add_scaled({}, {(c, S.zero_exp): 1}, g.terms, p))
    return FPModule(M.ring, M.degrees, list(M.relations) + extra)


def power_ideal(gens, k: int):
    """Generators of (gens)^k."""
    gens = list(gens)
    if k == 0:
        return [gens[0].ring.one()] if gens else []
    out = set()
    from itertools import combinations_with_replacement
    for combo in combinations_with_replacement(range(len(gens)), k):
        f = gens[0].ring.one()
        for i in combo:
            f = f * gens[i]
        if f:
            out.add(f)
    return sorted(out, key=lambda f: str(f))


# ---------------------------------------------------------------------------
# Hilbert series


class HilbertSeries:
    """numerator(t) / (1 - t)^n with an integer Laurent numerator."""

    def __init__(self, numerator: dict, n: int):
        self.numerator = {k: v for k, v in numerator.items() if v}
        self.n = n

    def is_zero(self) -> bool:
        return not self.numerator

    def reduced(self):
        """Cancel common factors (1 - t); returns (numerator, exponent)."""
        num, n = dict(self.numerator), self.n
        while n > 0 and num and sum(num.values()) == 0:
            # divide by (1 - t): q_k = sum_{i <= k} num_i
            lo, hi = min(num), max(num)
            q, acc = {}, 0
            for k in range(lo, hi):
                acc += num.get(k, 0)
                if acc:
                    q[k] = acc
            num, n = q, n - 1
        return num, n

    @property
    def dimension(self):
        """Order of the pole at t = 1 (Krull dimension)."""
        if self.is_zero():
            return ZERO_MODULE_DIM
        return self.reduced()[1]

    def coefficient(self, j: int) -> int:
        """dim_k of the degree-j piece."""
        if self.n == 0:
            return self.numerator.get(j, 0)
        total = 0
        for k, a in self.numerator.items():
            if j - k >= 0:
                total += a * math.comb(j - k + self.n - 1, self.n - 1)
        return total

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        return self.reduced() == other.reduced()

    def __hash__(self):
        num, n = self.reduced()
        return hash((tuple(sorted(num.items())), n))

    def shift(self, s: int) -> "HilbertSeries":
        return HilbertSeries({k + s: v for k, v in self.numerator.items()}, self.n)

    def __str__(self):
        num, n = self.reduced()
        if not num:
            return "0"
        terms = []
        for k in sorted(num):
            a = num[k]
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                body = str(abs(a))
            else:
                body = mono if abs(a) == 1 else f"{abs(a)}*{mono}"
            terms.append(("-" if a < 0 else "+", body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        if n == 0:
            return s
        den = "(1 - t)" if n == 1 else f"(1 - t)^{n}"
        return f"({s})/{den}" if len(terms) > 1 else f"{s}/{den}"

    __repr__ = __str__


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


@lru_cache(maxsize=100000)
def _monomial_numerator(gens: tuple) -> tuple:
    """Numerator of the Hilbert series of S/(gens) over (1-t)^n, as sorted items."""
    if not gens:
        return ((0, 1),)
    if any(not any(g) for g in gens):
        return ()
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    if all(supports[i].isdisjoint(supports[j]) for i in range(len(gens))
           for j in range(i)):
        num = {0: 1}
        for g in gens:
            d = sum(g)
            new = dict(num)
            for k, a in num.items():
                new[k + d] = new.get(k + d, 0) - a
            num = new
        return tuple(sorted((k, v) for k, v in num.items() if v))
    m = max(gens, key=lambda g: (sum(g), g))
    rest = tuple(g for g in gens if g != m)
    colon = _minimalize(tuple(mono_div(g, mono_gcd(g, m)) for g in rest))
    a = dict(_monomial_numerator(rest))
    d = sum(m)
    for k, v in _monomial_numerator(colon):
        a[k + d] = a.get(k + d, 0) - v
    return tuple(sorted((k, v) for k, v in a.items() if v))


def leading_monomial_ideals(M: FPModule):
    """For each generator c the minimal leading monomials in component c."""
    lts = {c: [] for c in range(M.rank)}
    for g in M.gb():
        lts[g.lt[0]].append(g.lt[1])
    return {c: _minimalize(tuple(v)) for c, v in lts.items()}


def hilbert_series(M: FPModule) -> HilbertSeries:
    """Exact Hilbert series via the initial module of the presentation."""
    def build():
        n = M.ring.n
        num = {}
        for c, gens in leading_monomial_ideals(M).items():
            for k, v in _monomial_numerator(gens):
                key = k + M.degrees[c]
                num[key] = num.get(key, 0) + v
        return HilbertSeries(num, n)
    return M.cache("hilbert", build)


def _monomial_dim(gens: tuple, n: int) -> int:
    if any(not any(g) for g in gens):
        return ZERO_MODULE_DIM
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


def krull_dim(M: FPModule):
    """Krull dimension; ZERO_MODULE_DIM (-inf) for the zero module."""
    def build():
        best = ZERO_MODULE_DIM
        for gens in leading_monomial_ideals(M).values():
            best = max(best, _monomial_dim(gens, M.ring.n))
        return best
    return M.cache("dim", build)


def graded_piece_dim(M: FPModule, j: int) -> int:
    """dim_k M_j by linear algebra on the presentation in degree j."""
    R = M.ring
    n = R.n
    index = {}
    for c, d in enumerate(M.degrees):
        for e in monomials_of_degree(n, j - d):
            index[(c, e)] = len(index)
    if not index:
        return 0
    rels = list(M.relations) + ideal_base(R, M.rank)
    spans = []
    for v in rels:
        dv = vec_deg(v, M.degrees)
        for m in monomials_of_degree(n, j - dv):
            spans.append({index[(c, mono_mul(e, m))]: a for (c, e), a in v.items()})
    return len(index) - linalg.rank(spans, R.field)


# ---------------------------------------------------------------------------
# annihilator, Hom, tensor


def annihilator(M: FPModule) -> GroebnerBasis:
    """Ann_R M as an ideal of S containing the quotient ideal."""
    def build():
        R = M.ring
        r = M.rank
        S = R.S
        if r == 0:
            return buchberger([S.one()], S)
        degrees, base = [], []
        for k in range(r):
            degrees += [d - M.degrees[k] for d in M.degrees]
            for v in M.relations:
                base.append({(c + k * r, e): a for (c, e), a in v.items()})
        z = S.zero_exp
        image = {(k * r + k, z): 1 for k in range(r)}
        syz = kernel_vectors(R, [image], degrees, base, with_ideal=True)
        gens = [vec_component(s, 0, S) for s in syz]
        return buchberger(gens + list(R.quotient_ideal.generators), S)
    return M.cache("ann", build)


def hom_blocks(N: FPModule, shifts):
    """Free module and relations of Hom(F, N) for F free with generator degrees ``shifts``."""
    q = N.rank
    degrees, rels = [], []
    for j, a in enumerate(shifts):
        degrees += [d - a for d in N.degrees]
        for v in N.relations:
            rels.append({(c + j * q, e): x for (c, e), x in v.items()})
    return degrees, rels


def dual_images(columns, n_target_rank: int, q: int, p: int):
    """Images of Hom(F, N) basis under precomposition with d: F' -> F.

    ``columns[l]`` is d(e'_l) in F; the result lists, for each (j, c) with j a
    basis index of F and c a generator of N, the vector sum_l d[j][l] e_{l,c}.
    """
    ncols = len(columns)
    images = [dict() for _ in range(n_target_rank * q)]
    for l, v in enumerate(columns):
        for (j, e), a in v.items():
            for c in range(q):
                out = images[j * q + c]
                t = (l * q + c, e)
                y = out.get(t, 0) + a
                if p:
                    y %= p
                if y:
                    out[t] = y
                else:
                    out.pop(t, None)
    return images


def tensor_images(columns, q: int):
    """Images of F' (x) N generators under d (x) id_N, with d: F' -> F."""
    out = []
    for v in columns:
        for c in range(q):
            out.append({(j * q + c, e): a for (j, e), a in v.items()})
    return out


def homology_module(R: PolyRing, mid_degrees, mid_rel, psi_images=None, tgt_degrees=(),
                    tgt_rel=(), phi_images=()) -> FPModule:
    """ker(psi: X -> Y) / im(phi) for X = L/mid_rel, Y = L'/tgt_rel (mod I)."""
    mid_degrees = list(mid_degrees)
    if psi_images is None:
        K = [{(c, R.S.zero_exp): 1} for c in range(len(mid_degrees))]
    else:
        K = kernel_vectors(R, psi_images, tgt_degrees, tgt_rel)
    base = [reduce_mod_ideal(R, v) for v in phi_images] + list(mid_rel)
    base = [v for v in base if v]
    K = mingens(R, K, mid_degrees, base)
    if not K:
        return FPModule.zero(R)
    kdeg = [vec_deg(v, mid_degrees) for v in K]
    rels = kernel_vectors(R, K, mid_degrees, base)
    return prune(FPModule(R, kdeg, rels))


def hom_presentation(M: FPModule, N: FPModule) -> FPModule:
    """Hom_R(M, N) as the kernel of Hom(F0, N) -> Hom(F1, N)."""
    if M.ring != N.ring:
        raise ValueError("ring mismatch")
    R = M.ring
    pres = M.presentation
    q = N.rank
    mid_deg, mid_rel = hom_blocks(N, M.degrees)
    tgt_deg, tgt_rel = hom_blocks(N, pres.domain.degrees)
    psi = dual_images(pres.columns, M.rank, q, R.field.p)
    return homology_module(R, mid_deg, mid_rel, psi, tgt_deg, tgt_rel)


def tensor_presentation(M: FPModule, N: FPModule) -> FPModule:
    """M (x)_R N by block-concatenated presentations."""
    if M.ring != N.ring:
        raise ValueError("ring mismatch")
    q = N.rank
    degrees = [a + b for a in M.degrees for b in N.degrees]
    rels = tensor_images(M.relations, q)
    for i in range(M.rank):
        for w in N.relations:
            rels.append({(i * q + c, e): a for (c, e), a in w.items()})
    return prune(FPModule(M.ring, degrees, rels))


def submodule_quotient_by_maximal(R: PolyRing, degrees, rels):
    """Generators of (U : m) for U = <rels> + I*F."""
    S = R.S
    n = R.n
    r = len(degrees)
    z = S.zero_exp
    tdeg = []
    for i in range(n):
        tdeg += list(degrees)
    base = []
    for i in range(n):
        for v in rels:
            base.append({(c + i * r, e): a for (c, e), a in v.items()})
    images = []
    for c in range(r):
        img = {}
        for i, x in enumerate(S.gens):
            (e, _), = x.terms.items()
            img[(c + i * r, e)] = 1
        images.append(img)
    tdeg = [d - 1 for d in tdeg]
    return kernel_vectors(R, images, tdeg, base)


def saturation(M: FPModule):
    """Relations of F0 / (U : m^infinity), iterating U <- U : m until stable."""
    R = M.ring
    rels = list(M.relations)
    cur = M
    while True:
        new = mingens(R, submodule_quotient_by_maximal(R, M.degrees, rels) + rels, M.degrees)
        nxt = FPModule(R, M.degrees, new)
        if hilbert_series(nxt) == hilbert_series(cur):
            return nxt
        rels, cur = new, nxt


def torsion_submodule(M: FPModule) -> FPModule:
    """H^0_m(M) = (U : m^infinity) / U, presented on the saturation generators."""
    R = M.ring
    sat = saturation(M)
    gens = mingens(R, list(sat.relations), M.degrees, list(M.relations))
    if not gens:
        return FPModule.zero(R)
    gdeg = [vec_deg(v, M.degrees) for v in gens]
    rels = kernel_vectors(R, gens, M.degrees, list(M.relations))
    return prune(FPModule(R, gdeg, rels))


def same_by_proxy(M: FPModule, N: FPModule) -> bool:
    """Isomorphism proxy: equal Hilbert series and equal annihilators."""
    return hilbert_series(M) == hilbert_series(N) and annihilator(M) == annihilator(N)


def is_homogeneous_module(M: FPModule) -> bool:
    mo = module_order(M.ring, M.degrees)
    return all(vec_is_homogeneous(v, mo) for v in M.relations)


# ---------------------------------------------------------------------------
# graded pieces as explicit vector spaces


def standard_basis(M: FPModule, j: int):
    """Standard terms (c, e) of M in degree j, i.e. those outside the initial module."""
    def build():
        lts = leading_monomial_ideals(M)
        out = []
        for c, d in enumerate(M.degrees):
            gens = lts[c]
            for e in monomials_of_degree(M.ring.n, j - d):
                if not any(mono_divides(g, e) for g in gens):
                    out.append((c, e))
        return out
    return M.cache(("basis", j), build)


def basis_index(M: FPModule, j: int):
    return M.cache(("index", j), lambda: {t: k for k, t in enumerate(standard_basis(M, j))})


def coordinates(M: FPModule, vec, j: int):
    """Coordinates of the class of a degree-j vector on the standard basis of M_j."""
    idx = basis_index(M, j)
    r = M.normal_form(vec)
    return {idx[t]: a for t, a in r.items()}


def piece_matrix(src: FPModule, tgt: FPModule, images, j: int):
    """Columns of the degree-j component of the map sending generator c to images[c]."""
    p = src.ring.field.p
    cols = []
    for c, e in standard_basis(src, j):
        v = vec_add_scaled({}, images[c], {e: 1}, p)
        cols.append(coordinates(tgt, v, j))
    return cols


def ambient_ring(R: PolyRing) -> PolyRing:
    """The polynomial ring S covering R."""
    if R.is_polynomial_ring():
        return R
    if "ambient" not in R._cache:
        R._cache["ambient"] = PolyRing(R.field, R.variables, R.order.kind)
    return R._cache["ambient"]


def to_ambient(M: FPModule) -> FPModule:
    """M viewed as an S-module."""
    S = ambient_ring(M.ring)
    if S is M.ring:
        return M
    return M.cache("ambient", lambda: FPModule(S, M.degrees, list(M.relations)
                                               + ideal_base(M.ring, M.rank)))


def from_ambient(M: FPModule, R: PolyRing) -> FPModule:
    """An S-module annihilated by I, viewed over R."""
    return FPModule(R, M.degrees, M.relations)
