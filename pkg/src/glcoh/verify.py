"""Theorem checkers over graded instances, instance generators and a suite runner.

Every checker first tests the preconditions of the statement it encodes and
returns ``hypothesis-not-met`` when one of them fails; only then is the
conclusion evaluated.  Local cohomology at the maximal ideal is compared
through graded pieces on a finite window, with the degree flip j -> -j for
the Matlis dual side.  Isomorphisms of finitely generated modules are tested
by the (Hilbert series, annihilator) proxy, and reports that rely on it carry
``proxy=True``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .glc import (INCONCLUSIVE, HypothesisError, default_window, generalized_canonical,
                  generalized_deficiency, glc_dual_side, glc_truncated_limit,
                  graded_cech_cohomology, hyperext_dualizing, parameter_elements,
                  top_nonvanishing)
from .homology import (canonical_generator_degree, canonical_module, cm_defect, deficiency,
                       depth, ext, grade, is_cohen_macaulay, is_gorenstein, omega_ambient,
                       ring_canonical, ring_module, tor)
from .modules import (INFINITE, FPModule, PolyRing, annihilator, graded_piece_dim,
                      hilbert_series, hom_presentation, krull_dim, power_ideal,
                      quotient_by_ideal, saturation, tensor_presentation, to_ambient)
from .poly import Polynomial, monomials_of_degree
from .resolve import injective_dimension, koszul_acyclic, koszul_complex, projective_dimension
from .resolve import ring_depth, resolution

VERIFIED = "verified"
NOT_MET = "hypothesis-not-met"
FAILED = "FAILED"
STATUSES = (VERIFIED, NOT_MET, FAILED, INCONCLUSIVE)


@dataclass
class Instance:
    """A ring with two modules and an ideal (None meaning the maximal ideal)."""
    name: str
    R: PolyRing
    M: FPModule
    N: FPModule
    a: list = None
    provenance: str = "builtin"
    params: dict = field(default_factory=dict)
    window: tuple = None

    def ideal(self):
        return list(self.R.S.gens) if self.a is None else [self.R(g) if isinstance(g, str)
                                                            else g for g in self.a]

    def describe(self) -> dict:
        return {"name": self.name, "ring": repr(self.R), "M": repr(self.M), "N": repr(self.N),
                "a": None if self.a is None else [str(g) for g in self.ideal()],
                "provenance": self.provenance}


@dataclass
class TheoremReport:
    theorem_id: str
    instance: str
    status: str
    witnesses: dict = field(default_factory=dict)
    runtime: float = 0.0
    proxy: bool = False
    detail: str = ""

    def as_dict(self) -> dict:
        return {"theorem_id": self.theorem_id, "instance": self.instance, "status": self.status,
                "witnesses": self.witnesses, "proxy": self.proxy, "detail": self.detail}


class _Outcome(Exception):
    """Early exit from a checker carrying its final status."""

    def __init__(self, status, detail=""):
        super().__init__(detail)
        self.status = status
        self.detail = detail


def _not_met(why):
    raise _Outcome(NOT_MET, why)


def _enc(v):
    if v == INFINITE:
        return "infinite"
    if isinstance(v, float) and v == -INFINITE:
        return "-infinite"
    return v


def _hs(M: FPModule) -> str:
    return str(hilbert_series(M))


def _flip(M: FPModule, window) -> dict:
    """Window Hilbert function of the graded Matlis dual of M."""
    return {j: graded_piece_dim(M, -j) for j in range(window[0], window[1] + 1)}


def _zero_window(window) -> dict:
    return {j: 0 for j in range(window[0], window[1] + 1)}


class _Ctx:
    """Shared per-check state: witnesses, windows, and the failure list."""

    def __init__(self, inst: Instance, seed: int = 0):
        self.inst = inst
        self.seed = seed
        self.w = {}
        self.bad = []
        self.inconclusive = []
        self.proxy = False
        self.window = inst.window or default_window(inst.M, inst.N)

    def cech(self, i, M, N, window=None, elems=None):
        """Window values of H^i_m(M, N) from the Čech oracle, or None if inconclusive."""
        window = window or self.window
        if elems is None:
            elems = parameter_elements(M.ring, self.seed)
        res = graded_cech_cohomology(i, elems, M, N, window)
        if not res.conclusive:
            self.inconclusive.append(f"Čech H^{i} did not settle")
            return None
        return dict(res.values)

    def expect(self, label, got, want):
        self.w[label] = {"got": _jsonable(got), "want": _jsonable(want)}
        if got != want:
            self.bad.append(label)

    def expect_same(self, label, A: FPModule, B: FPModule):
        """Proxy comparison; a mismatch keeps both Hilbert series as witnesses."""
        self.proxy = True
        same_h = hilbert_series(A) == hilbert_series(B)
        same_a = same_h and annihilator(A) == annihilator(B)
        self.w[label] = {"left": _hs(A), "right": _hs(B), "same_annihilator": same_a}
        if not (same_h and same_a):
            self.bad.append(label)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return _enc(v)


def _pd(M):
    return projective_dimension(M)


def _require_finite_pd(M, label="M"):
    pdM = _pd(M)
    if pdM == INFINITE:
        _not_met(f"pd {label} is infinite")
    return pdM


def _tensor_dim(M, N):
    return krull_dim(tensor_presentation(M, N))


# ---------------------------------------------------------------------------
# truncated limits


def check_P1_2(c: _Ctx):
    inst = c.inst
    R, M, N = inst.R, inst.M, inst.N
    a = inst.ideal()
    if M.is_zero() or N.is_zero():
        _not_met("zero module")
    gens = a + list(annihilator(M).generators)
    s = grade(gens, N)
    c.w["s"] = _enc(s)
    if s == INFINITE:
        _not_met("(a + Ann M) N = N, so every H^i vanishes trivially")
    n_max = inst.params.get("n_max", 6)
    P = M
    quotients = [quotient_by_ideal(P, power_ideal(a, n)) for n in range(1, n_max + 1)]
    below = {}
    for i in range(s):
        below[i] = [0 if ext(i, Q, N).is_zero() else 1 for Q in quotients]
        if any(below[i]):
            c.bad.append(f"stage nonzero below s at i={i}")
    c.w["stages_below_s_nonzero"] = _jsonable(below)
    at_s = [not ext(s, Q, N).is_zero() for Q in quotients]
    c.w["stages_at_s_nonzero"] = at_s
    if not all(at_s):
        c.bad.append("a stage at s vanishes")
    L = glc_truncated_limit(s, a, M, N, n_max, c.window)
    inj = [L.injective_at(n) for n in range(1, n_max)]
    c.w["transitions_at_s_injective"] = inj
    if not all(inj):
        c.bad.append("a transition at s is not injective")


def _nilpotency(M: FPModule, a, bound=10):
    """Least k with a^k M = 0, or None within the bound."""
    if M.is_zero():
        return 0
    H = hilbert_series(M)
    for k in range(1, bound + 1):
        if hilbert_series(quotient_by_ideal(M, power_ideal(a, k))) == H:
            return k
    return None




def _stable_limit(i, a, M, N, window, start=6):
    """Truncated limit, lengthened until it stabilizes or reaches |lo| + 6 stages.

    In internal degree j the system usually needs about |j| stages before
    the images settle, so the cap is tied to the low end of the window.
    """
    cap = max(start, -window[0] + 6)
    n = start
    while True:
        L = glc_truncated_limit(i, a, M, N, n, window)
        if L.stabilized or n >= cap:
            return L
        n = min(cap, n + 4)


def check_C1_5(c: _Ctx):
    """Finite-support regime, alternating-sum form: 0 -> K -> F0 -> N -> 0 with Supp M inside V(a)."""
    inst = c.inst
    R, M, N = inst.R, inst.M, inst.N
    a = inst.ideal()
    k = _nilpotency(M, a)
    if k is None:
        _not_met("no power of a found to kill M (Supp M inside V(a) not certified)")
    if M.is_zero() or N.is_zero():
        _not_met("zero module")
    pdM = _require_finite_pd(M)
    res = resolution(N, 2)
    F0 = FPModule.free(R, res.free(0))
    K = FPModule(R, res.free(1), res.differential(2)) if res.free(1) else FPModule.zero(R)
    n_max = max(6, k + 2)
    c.w.update({"nilpotency": k, "pd_M": pdM, "n_max": n_max})
    sums = {j: 0 for j in range(c.window[0], c.window[1] + 1)}
    top = pdM + 1
    for i in range(0, top + 1):
        for sign, X in ((1, K), (-1, F0), (1, N)):
            if X.is_zero():
                continue
            L = _stable_limit(i, a, M, X, c.window, n_max)
            if not L.stabilized:
                c.inconclusive.append(f"limit H^{i} not stabilized")
                return
            for j, v in L.limit_hilbert.items():
                sums[j] += (-1) ** i * sign * v
            if i == top and any(L.limit_hilbert.values()):
                c.bad.append(f"limit nonzero at i = pd M + 1 = {top}")
    c.expect("alternating_sum", sums, _zero_window(c.window))


def _support_inside(M, N, a):
    T = tensor_presentation(M, N)
    return _nilpotency(T, a)


def check_C1_6(c: _Ctx):
    inst = c.inst
    R, M, N = inst.R, inst.M, inst.N
    a = inst.ideal()
    if M.is_zero() or N.is_zero():
        _not_met("zero module")
    k = _support_inside(M, N, a)
    if k is None:
        _not_met("Supp M ∩ Supp N inside V(a) not certified")
    pdM = _pd(M)
    t = R.krull_dim
    bound = inst.params.get("imax", t + (pdM if pdM != INFINITE else ring_depth(R) + 1))
    n_max = inst.params.get("n_max", 6)
    c.w.update({"power_killing_tensor": k, "imax": bound, "n_max": n_max})
    for i in range(0, bound + 1):
        L = _stable_limit(i, a, M, N, c.window, n_max)
        if not L.stabilized:
            c.inconclusive.append(f"limit H^{i} not stabilized")
            return
        c.w[f"stages used for H^{i}"] = len(L.stages)
        E = ext(i, M, N)
        want = {j: graded_piece_dim(E, j) for j in L.limit_hilbert}
        c.expect(f"H^{i}", L.limit_hilbert, want)


# ---------------------------------------------------------------------------
# degenerate spectral sequences at the maximal ideal


def _glc_values(c: _Ctx, i, M, N):
    """Window of H^i_m(M, N): dual side when pd M is finite, else the Čech oracle."""
    if _pd(M) != INFINITE:
        return _flip(glc_dual_side(i, M, N).module, c.window)
    return c.cech(i, M, N)


def check_C2_3(c: _Ctx):
    inst = c.inst
    R, M, N = inst.R, inst.M, inst.N
    if M.is_zero() or N.is_zero():
        _not_met("zero module")
    pdM = _pd(M)
    bound = pdM if pdM != INFINITE else injective_dimension(N)
    if bound == INFINITE:
        _not_met("vanishing of Ext^i(M, N) for large i is not certified (pd M = id N = inf)")
    nz = [i for i in range(bound + 1) if not ext(i, M, N).is_zero()]
    d = _tensor_dim(M, N)
    t = R.krull_dim
    c.w.update({"d": _enc(d), "ext_nonzero": nz})
    if not nz:
        for i in range(0, bound + t + 1):
            got = _glc_values(c, i, M, N)
            if got is None:
                return
            c.expect(f"H^{i}", got, _zero_window(c.window))
        return
    p = max(nz)
    c.w["p"] = p
    E = ext(p, M, N)
    got = _glc_values(c, p + d, M, N)
    if got is None:
        return
    c.expect(f"H^{p + d}", got, _flip(deficiency(d, E), c.window))
    for i in range(p + d + 1, p + t + 1):
        got = _glc_values(c, i, M, N)
        if got is None:
            return
        c.expect(f"H^{i}", got, _zero_window(c.window))


def check_C2_4(c: _Ctx):
    inst = c.inst
    R, M, N = inst.R, inst.M, inst.N
    if M.is_zero() or N.is_zero():
        _not_met("zero module")
    p = _require_finite_pd(M)
    n = krull_dim(N)
    t = R.krull_dim
    c.w.update({"p": p, "cd": n})
    rhs = hom_presentation(ext(p, M, ring_module(R)), deficiency(n, N))
    got = c.cech(p + n, M, N)
    if got is None:
        return
    c.expect(f"H^{p + n}", got, _flip(rhs, c.window))
    for i in range(p + n + 1, p + t + 1):
        c.expect(f"H^{i}", _flip(glc_dual_side(i, M, N).module, c.window),
                 _zero_window(c.window))


def check_R2_5(c: _Ctx):
    inst = c.inst
    R, M = inst.R, inst.M
    if M.is_zero():
        _not_met("zero module")
    t = R.krull_dim
    pdM = _pd(M)
    c.w["pd_M"] = _enc(pdM)
    if pdM != INFINITE:
        N = inst.N
        top = pdM + t
        got = c.cech(top + 1, M, N)
        if got is None:
            return
        c.expect(f"cech H^{top + 1}", got, _zero_window(c.window))
        for i in (top + 1, top + 2):
            c.expect(f"dual H^{i}", glc_dual_side(i, M, N).module.is_zero(), True)
        return
    k = FPModule.residue_field(R)
    r = ring_depth(R)
    nonzero = {i: not ext(i, M, k).is_zero() for i in range(r + 3)}
    c.expect("Ext^i(M,k) nonzero", nonzero, {i: True for i in nonzero})
    got = c.cech(r + 1, M, k)
    if got is None:
        return
    E = ext(r + 1, M, k)
    c.expect(f"H^{r + 1}(M,k)", got, {j: graded_piece_dim(E, j) for j in got})


def _cm_module(N):
    if N.is_zero():
        _not_met("zero module")
    if not is_cohen_macaulay(N):
        _not_met("N is not Cohen-Macaulay")


def _i_range(M, q):
    pdM = _pd(M)
    return range(0, q + (pdM if pdM != INFINITE else 1) + 1)


def check_C2_6(c: _Ctx):
    inst = c.inst
    M, N = inst.M, inst.N
    if M.is_zero():
        _not_met("zero module")
    _cm_module(N)
    q = krull_dim(N)
    KN = canonical_module(N)
    c.w["q"] = q
    for i in _i_range(M, q):
        got = c.cech(i, M, N)
        if got is None:
            return
        c.expect(f"H^{i}", got, _flip(tor(i - q, M, KN), c.window))


def check_C3_1(c: _Ctx):
    inst = c.inst
    M, N = inst.M, inst.N
    if M.is_zero():
        _not_met("zero module")
    _cm_module(N)
    t = krull_dim(N)
    KN = canonical_module(N)
    c.w["t"] = t
    for i in _i_range(M, t):
        got = c.cech(i, M, KN)
        if got is None:
            return
        c.expect(f"H^{i}(M,K(N))", got, _flip(tor(i - t, M, N), c.window))


# ---------------------------------------------------------------------------
# duality


def _require_cm_ring(R):
    if not is_cohen_macaulay(R):
        _not_met("ring is not Cohen-Macaulay")


def check_C3_2(c: _Ctx):
    inst = c.inst
    R, M = inst.R, inst.M
    if M.is_zero():
        _not_met("zero module")
    _require_cm_ring(R)
    t = R.krull_dim
    K = ring_canonical(R)
    for i in range(0, t + 2):
        got = c.cech(i, M, K)
        if got is None:
            return
        want = {j: graded_piece_dim(M, -j) for j in got} if i == t else _zero_window(c.window)
        c.expect(f"H^{i}(M,K(R))", got, want)
    if _pd(M) == INFINITE:
        c.w["part_b"] = "skipped: pd M infinite"
        return
    MK = tensor_presentation(M, K)
    for i in range(0, t + 2):
        got = c.cech(i, M, ring_module(R))
        if got is None:
            return
        want = _flip(MK, c.window) if i == t else _zero_window(c.window)
        c.expect(f"H^{i}(M,R)", got, want)


def _dualizing_values(c: _Ctx, i, M):
    """Window of H^i_m(M, D) computed over S as H^{i+n-t}_m(M, S(-n))."""
    R = M.ring
    MS = to_ambient(M)
    W = omega_ambient(R)
    k = i + R.n - R.krull_dim
    if k < 0:
        return _zero_window(c.window)
    return c.cech(k, MS, W, elems=list(MS.ring.S.gens))


def check_T3_5(c: _Ctx):
    inst = c.inst
    R, M = inst.R, inst.M
    if M.is_zero():
        _not_met("zero module")
    p = _require_finite_pd(M)
    d = krull_dim(M)
    t = R.krull_dim
    c.w.update({"p": p, "d": d, "cm_defect_M": cm_defect(M),
                "cm_defect_R": cm_defect(ring_module(R))})
    top = c.cech_top = _dualizing_values(c, t, M)
    if top is None:
        return
    c.expect("H^t(M,D)", top, {j: graded_piece_dim(M, -j) for j in top})
    at = _dualizing_values(c, p + d, M)
    if at is None:
        return
    lhs = any(at.values())
    rhs = cm_defect(M) == cm_defect(ring_module(R))
    c.w["H^{p+d}(M,D) window"] = _jsonable(at)
    c.expect("nonvanishing iff equal defects", lhs, rhs)


def check_C3_6(c: _Ctx):
    inst = c.inst
    R, M = inst.R, inst.M
    if M.is_zero():
        _not_met("zero module")
    _require_cm_ring(R)
    p = _require_finite_pd(M)
    d = krull_dim(M)
    K = ring_canonical(R)
    a = is_cohen_macaulay(M)
    b = not glc_dual_side(p + d, M, K).module.is_zero()
    vals = _dualizing_values(c, p + d, M)
    if vals is None:
        return
    cc = any(vals.values())
    c.w.update({"p": p, "d": d})
    c.expect("(a) M CM", a, a)
    c.expect("(b) H^{p+d}(M,K(R)) != 0", b, a)
    c.expect("(c) H^{p+d}(M,D) != 0", cc, a)


def check_T3_7(c: _Ctx):
    inst = c.inst
    R, M, N = inst.R, inst.M, inst.N
    p = _require_finite_pd(M)
    t = R.krull_dim
    for i in range(0, p + t + 1):
        got = c.cech(i, M, N)
        if got is None:
            return
        D = glc_dual_side(i, M, N, route="hyperext-dualizing")
        c.expect(f"H^{i}", got, _flip(D.module, c.window))


def check_C3_8(c: _Ctx):
    inst = c.inst
    R, M, N = inst.R, inst.M, inst.N
    _require_cm_ring(R)
    _require_finite_pd(M)
    t = R.krull_dim
    for i in range(0, t + 2):
        A = glc_dual_side(i, M, N, route="CM-canonical").module
        B = glc_dual_side(i, M, N, route="hyperext-dualizing").module
        c.expect_same(f"i={i}", A, B)


def check_P3_9(c: _Ctx):
    inst = c.inst
    R, M, N = inst.R, inst.M, inst.N
    _require_cm_ring(R)
    if N.is_zero():
        _not_met("zero module")
    idN = injective_dimension(N)
    c.w["id_N"] = _enc(idN)
    if idN == INFINITE:
        _not_met("id N is infinite")
    t = R.krull_dim
    HK = hom_presentation(ring_canonical(R), N)
    for i in range(0, t + 2):
        got = c.cech(i, M, N)
        if got is None:
            return
        c.expect(f"H^{i}", got, _flip(ext(t - i, HK, M), c.window))


def check_C3_10(c: _Ctx):
    inst = c.inst
    R, M, N = inst.R, inst.M, inst.N
    if M.is_zero() or N.is_zero():
        _not_met("zero module")
    if not is_gorenstein(R):
        _not_met("ring is not Gorenstein")
    if _pd(M) == INFINITE and _pd(N) == INFINITE:
        _not_met("neither pd M nor pd N is finite")
    t = R.krull_dim
    g = canonical_generator_degree(R)
    nonzero = []
    for i in range(0, t + 1):
        E = ext(t - i, N, M)
        if not E.is_zero():
            nonzero.append(i)
        got = c.cech(i, M, N)
        if got is None:
            return
        c.expect(f"H^{i}", got, _flip(E.twist(-g), c.window))
    top = top_nonvanishing(M, N)
    c.expect("sup", max(nonzero) if nonzero else None, top)


# ---------------------------------------------------------------------------
# generalized deficiency


def _gorenstein_setup(c: _Ctx, need_pd=True):
    inst = c.inst
    R, M, N = inst.R, inst.M, inst.N
    if M.is_zero() or N.is_zero():
        _not_met("zero module")
    if not is_gorenstein(R):
        _not_met("ring is not Gorenstein")
    pdM = _require_finite_pd(M) if need_pd else _pd(M)
    g = grade(N, M)
    if g == INFINITE:
        _not_met("grade infinite")
    s = R.krull_dim - g
    c.w.update({"g": g, "s": s, "pd_M": _enc(pdM)})
    return s, pdM


def check_D4_3(c: _Ctx):
    inst = c.inst
    R, N = inst.R, inst.N
    if N.is_zero():
        _not_met("zero module")
    if not is_gorenstein(R):
        _not_met("ring is not Gorenstein")
    s, K = generalized_canonical(N, ring_module(R))
    c.expect("s = dim N", s, krull_dim(N))
    c.expect_same("K^s(N,R) vs K(N)", K, canonical_module(N))


def check_P4_5b(c: _Ctx):
    s, _ = _gorenstein_setup(c)
    inst = c.inst
    K = generalized_deficiency(s, inst.N, inst.M)
    c.expect("dim K^s", krull_dim(K), _tensor_dim(inst.M, inst.N))


def check_P4_5c(c: _Ctx):
    s, pdM = _gorenstein_setup(c)
    inst = c.inst
    K = generalized_deficiency(s, inst.N, inst.M)
    dK = depth(K)
    c.w["depth_K"] = dK
    c.expect("depth>0 iff s>pd", dK > 0, s > pdM)


def check_P4_6(c: _Ctx):
    s, pdM = _gorenstein_setup(c)
    if not s > pdM:
        _not_met("s <= pd M")
    inst = c.inst
    Np = saturation(inst.N)
    c.w["H0_m(N) removed"] = _hs(inst.N) != _hs(Np)
    c.expect("grade(N',M)", grade(Np, inst.M), c.w["g"])
    c.expect_same("K^s(N,M) vs K^s(N',M)", generalized_deficiency(s, inst.N, inst.M),
                  generalized_deficiency(s, Np, inst.M))


def check_P4_7m(c: _Ctx):
    s, pdM = _gorenstein_setup(c)
    if not s > pdM + 1:
        _not_met("s <= pd M + 1")
    inst = c.inst
    K = generalized_deficiency(s, inst.N, inst.M)
    dK, dimK = depth(K), krull_dim(K)
    c.w.update({"depth_K": dK, "dim_K": dimK})
    c.expect("depth >= min(2, dim)", dK >= min(2, dimK), True)


# ---------------------------------------------------------------------------
# bounds for projective dimension


def _pd_setup(c: _Ctx):
    inst = c.inst
    R, N = inst.R, inst.N
    r = ring_depth(R)
    c.w["depth_R"] = r
    if r < 1:
        _not_met("depth R = 0")
    if N.is_zero():
        _not_met("zero module")
    pdN = _require_finite_pd(N, "N")
    c.w["pd_N"] = pdN
    return r, pdN


def _vanishing_indices(c: _Ctx, N, M, r, only=None):
    """The i in 1..r whose hypothesis Ext^j(N, M (x)^L D) = 0, j = t-r+i..t, holds."""
    t = M.ring.krull_dim
    cand = range(1, r + 1) if only is None else [only]
    zero = {j: hyperext_dualizing(j, N, M).is_zero() for j in range(t - r + 1, t + 1)}
    return [i for i in cand if all(zero[j] for j in range(t - r + i, t + 1))], zero


def _pd_conclusion(c: _Ctx, label, M, r, pdN, only=None):
    good, zero = _vanishing_indices(c, c.inst.N, M, r, only)
    c.w[f"{label}: vanishing"] = _jsonable(zero)
    c.w[f"{label}: admissible i"] = good
    for i in good:
        c.expect(f"{label}: pd N < {i}", pdN < i, True)
    return bool(good)


def check_T5_1(c: _Ctx):
    r, pdN = _pd_setup(c)
    M = c.inst.M
    if M.is_zero():
        _not_met("zero module")
    _require_finite_pd(M)
    if not _pd_conclusion(c, "thm", M, r, pdN, c.inst.params.get("i")):
        _not_met("Ext vanishing hypothesis fails for every admissible i")


def check_C5_2(c: _Ctx):
    r, pdN = _pd_setup(c)
    R, N = c.inst.R, c.inst.N
    used = _pd_conclusion(c, "(a)", ring_module(R), r, pdN)
    used = _pd_conclusion(c, "(b)", N, r, pdN) or used
    if not used:
        _not_met("Ext vanishing hypothesis fails in both forms")


def check_C5_4(c: _Ctx):
    r, pdN = _pd_setup(c)
    R, M, N = c.inst.R, c.inst.M, c.inst.N
    used = False
    if not M.is_zero() and _pd(M) != INFINITE:
        used = _pd_conclusion(c, "5.4", M, r, pdN, only=1)
    used = _pd_conclusion(c, "5.5(a)", ring_module(R), r, pdN, only=1) or used
    used = _pd_conclusion(c, "5.5(b)", N, r, pdN, only=1) or used
    if not used:
        _not_met("no freeness hypothesis holds")


def check_EX5(c: _Ctx):
    inst = c.inst
    R, N = inst.R, inst.N
    if N.is_zero():
        _not_met("zero module")
    e1 = ext(1, N, ring_module(R)).is_zero()
    e2 = ext(1, N, N).is_zero()
    pdN = _pd(N)
    c.w.update({"Ext1(N,R)=0": e1, "Ext1(N,N)=0": e2, "pd_N": _enc(pdN)})
    if not (e1 and e2 and pdN == INFINITE):
        _not_met("not an instance of the example (needs Ext^1 vanishing and pd N infinite)")
    sub = check("C5.4/C5.5", inst)
    c.w["C5.4/C5.5 status"] = sub.status
    c.expect("freeness verdict withheld", sub.status, NOT_MET)


CHECKERS = {
    "P1.2": check_P1_2, "C1.5": check_C1_5, "C1.6": check_C1_6,
    "C2.3": check_C2_3, "C2.4": check_C2_4, "R2.5": check_R2_5, "C2.6": check_C2_6,
    "C3.1": check_C3_1, "C3.2": check_C3_2, "T3.5": check_T3_5, "C3.6": check_C3_6,
    "T3.7": check_T3_7, "C3.8": check_C3_8, "P3.9": check_P3_9, "C3.10": check_C3_10,
    "D4.3": check_D4_3, "P4.5b": check_P4_5b, "P4.5c": check_P4_5c, "P4.6": check_P4_6,
    "P4.7m": check_P4_7m, "T5.1": check_T5_1, "C5.2": check_C5_2, "C5.4/C5.5": check_C5_4,
    "EX5": check_EX5,
}
THEOREM_IDS = tuple(CHECKERS)


def check(theorem_id: str, inst: Instance, seed: int = 0) -> TheoremReport:
    """Run one checker on one instance."""
    if theorem_id not in CHECKERS:
        raise KeyError(f"unknown theorem id {theorem_id!r}")
    c = _Ctx(inst, seed)
    t0 = time.perf_counter()
    status, detail = VERIFIED, ""
    try:
        if inst.M.is_zero() or inst.N.is_zero():
            _not_met("zero module (the invariants involved are undefined)")
        CHECKERS[theorem_id](c)
        if c.bad:
            status, detail = FAILED, "; ".join(c.bad)
        elif c.inconclusive:
            status, detail = INCONCLUSIVE, "; ".join(c.inconclusive)
    except _Outcome as out:
        status, detail = out.status, out.detail
    except HypothesisError as err:
        status, detail = NOT_MET, str(err)
    return TheoremReport(theorem_id, inst.name, status, _jsonable(c.w),
                         time.perf_counter() - t0, c.proxy, detail)


def run_suite(ids, instances, seed: int = 0, on_report=None):
    """All (id, instance) pairs in order; ``on_report`` sees each report as it lands."""
    out = []
    for inst in instances:
        for tid in ids:
            rep = check(tid, inst, seed)
            out.append(rep)
            if on_report:
                on_report(rep)
    return out


def suite_failed(reports) -> bool:
    return any(r.status == FAILED for r in reports)


# ---------------------------------------------------------------------------
# instances


VARS = ("x", "y", "z", "w")
FAMILIES = ("monomial", "binomial-hypersurface", "ci", "random-matrix")


def builtin_instances(field_spec=None):
    """The named instances every generated list starts with."""
    out = []
    R = PolyRing(field_spec, ["x", "y"], ideal=["x*y"])
    out.append(Instance("EX5", R, ring_module(R), FPModule.cyclic(R, ["x"])))
    out.append(Instance("EX5-free", R, ring_module(R), ring_module(R), params={"i": 1}))
    A = PolyRing(field_spec, ["x"], ideal=["x^2"])
    kA = FPModule.residue_field(A)
    out.append(Instance("dual-numbers-k", A, kA, kA))
    B = PolyRing(field_spec, ["x"])
    kB = FPModule.residue_field(B)
    out.append(Instance("line-k", B, kB, kB))
    C = PolyRing(field_spec, ["x", "y", "z"], ideal=["x*z", "y*z"])
    out.append(Instance("non-CM", C, ring_module(C), ring_module(C)))
    P = PolyRing(field_spec, ["x", "y"])
    out.append(Instance("poly-k", P, ring_module(P), FPModule.residue_field(P)))
    out.append(Instance("poly-line", P, FPModule.cyclic(P, ["x"]), ring_module(P)))
    G = PolyRing(field_spec, ["x", "y"], ideal=["x^2", "y^2"])
    out.append(Instance("artinian-ci", G, ring_module(G), FPModule.cyclic(G, ["x"])))
    D = PolyRing(field_spec, ["x", "y", "z"], ideal=["x^2", "x*y", "y^2"])
    out.append(Instance("CM-non-Gorenstein", D, FPModule.cyclic(D, ["z"]), ring_canonical(D)))
    return out


def _rand_coeff(rng, p):
    return rng.randrange(1, p) if p else rng.choice([1, 2, 3, -1, -2])


def _rand_poly(rng, S, degree, max_terms=3):
    mons = monomials_of_degree(S.nvars, degree)
    chosen = rng.sample(mons, min(len(mons), rng.randint(1, max_terms)))
    p = S.field.p
    f = S.zero()
    for e in chosen:
        f = f + S.monomial(e, _rand_coeff(rng, p))
    return f


def _rand_monomial(rng, S, degree):
    return S.monomial(rng.choice(monomials_of_degree(S.nvars, degree)))


def _rand_ideal_subset(rng, R):
    gens = list(R.S.gens)
    k = rng.randint(1, len(gens))
    return rng.sample(gens, k)


def _is_regular_sequence(S: PolyRing, fs) -> bool:
    """Homogeneous fs are S-regular iff HS(S/(fs)) = prod(1 - t^d)/(1 - t)^n."""
    from .modules import HilbertSeries
    num = {0: 1}
    for f in fs:
        d = f.degree()
        nxt = dict(num)
        for k, v in num.items():
            nxt[k + d] = nxt.get(k + d, 0) - v
        num = nxt
    Q = FPModule.cyclic(S, fs)
    return hilbert_series(Q) == HilbertSeries(num, S.n)


def _cyclic(rng, R, monomial, maxdeg):
    """R/J for a random homogeneous J with one or two generators."""
    gens = []
    for _ in range(rng.randint(1, 2)):
        d = rng.randint(1, maxdeg)
        f = _rand_monomial(rng, R.S, d) if monomial else _rand_poly(rng, R.S, d)
        f = R.reduce(f)
        if f:
            gens.append(f)
    return FPModule.cyclic(R, gens)


def _random_matrix_module(rng, R, maxdeg):
    """coker of a random homogeneous 1x2 or 2x2 matrix with entries of <= 3 terms."""
    rows = rng.choice([1, 2])
    cols = rng.choice([1, 2])
    row_deg = [0] * rows
    col_deg = [rng.randint(1, maxdeg) for _ in range(cols)]
    if rows == 2:
        row_deg[1] = rng.randint(0, 1)
    mat = []
    for r in range(rows):
        row = []
        for c in range(cols):
            d = col_deg[c] - row_deg[r]
            row.append(R.reduce(_rand_poly(rng, R.S, d)) if d >= 1 and rng.random() < 0.8
                       else R.S.zero())
        mat.append(row)
    return FPModule.from_matrix(R, mat, row_deg)


def _base_ring(rng, field_spec, nvars, family, maxdeg):
    names = list(VARS[:nvars])
    S = PolyRing(field_spec, names)
    if family == "monomial":
        if rng.random() < 0.3:
            return S, {"ideal": []}
        gens = [_rand_monomial(rng, S.S, rng.randint(2, min(3, maxdeg)))
                for _ in range(rng.randint(1, 2))]
        return PolyRing(field_spec, names, ideal=gens), {"ideal": [str(g) for g in gens]}
    if family == "binomial-hypersurface":
        for _ in range(20):
            d = rng.randint(2, min(3, maxdeg))
            m1, m2 = _rand_monomial(rng, S.S, d), _rand_monomial(rng, S.S, d)
            f = m1 - m2 * _rand_coeff(rng, S.field.p) if m1 != m2 and rng.random() < 0.7 else m1
            return PolyRing(field_spec, names, ideal=[f]), {"ideal": [str(f)]}
    if family == "ci":
        for _ in range(40):
            c = rng.randint(1, max(1, nvars - 1))
            fs = [_rand_poly(rng, S.S, rng.randint(2, min(3, maxdeg)), 2) for _ in range(c)]
            if _is_regular_sequence(S, fs):
                K = koszul_complex(fs, S)
                top = sum(f.degree() for f in fs) + 2
                return PolyRing(field_spec, names, ideal=fs), {
                    "ideal": [str(f) for f in fs], "koszul_acyclic": koszul_acyclic(K, (0, top))}
        return S, {"ideal": []}
    return (S, {"ideal": []}) if rng.random() < 0.5 else \
        _base_ring(rng, field_spec, nvars, "binomial-hypersurface", maxdeg)


def gen_instances(family: str, params=None, seed: int = 0, field_spec=None,
                  include_builtins: bool = True):
    """A reproducible list of instances from one family, builtins first.

    params: nvars (<= 4, default 2), maxdeg (<= 4, default 2), count (default 5),
    finite_support (default 0): when nonzero, N is cut down to N / m^k N with
    k in 1..2, so that M (x) N has finite length.
    """
    params = dict(params or {})
    nvars = params.get("nvars", 2)
    maxdeg = params.get("maxdeg", 2)
    count = params.get("count", 5)
    finite = bool(params.get("finite_support", 0))
    if not 1 <= nvars <= 4 or not 1 <= maxdeg <= 4:
        raise ValueError("instance parameters out of bounds (nvars <= 4, maxdeg <= 4)")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    rng = random.Random(f"{family}:{nvars}:{maxdeg}:{seed}")
    out = builtin_instances(field_spec) if include_builtins else []
    for k in range(count):
        R, info = _base_ring(rng, field_spec, nvars, family, maxdeg)
        if family == "random-matrix":
            M = _random_matrix_module(rng, R, maxdeg)
            N = _random_matrix_module(rng, R, maxdeg)
        else:
            mono = family == "monomial"
            M = _cyclic(rng, R, mono, maxdeg) if rng.random() < 0.7 else ring_module(R)
            N = _cyclic(rng, R, mono, maxdeg) if rng.random() < 0.8 else ring_module(R)
        if finite:
            N = quotient_by_ideal(N, power_ideal(list(R.S.gens), rng.randint(1, 2)))
        a = None if rng.random() < 0.5 else _rand_ideal_subset(rng, R)
        out.append(Instance(f"{family}-{seed}-{k}", R, M, N, a, f"{family}:seed={seed}",
                            {"ring": info}))
    return out
