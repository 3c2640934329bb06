"""Acceptance criteria 1-8, each with its runtime budget.

The terminal summary prints one PASS/FAIL line per criterion (see conftest).
"""

import time
from collections import Counter

import pytest

from glcoh.glc import hyperext_dualizing
from glcoh.homology import (deficiency, depth, ext, grade, grade_by_regular_sequence,
                            is_gorenstein, ring_module)
from glcoh.modules import (INFINITE, FPModule, PolyRing, annihilator, hilbert_series,
                           same_by_proxy)
from glcoh.poly import FieldSpec
from glcoh.resolve import projective_dimension, resolution, ring_depth
from glcoh.verify import (FAILED, INCONCLUSIVE, NOT_MET, VERIFIED, Instance,
                          builtin_instances, check, gen_instances)

GF101 = FieldSpec(101)
BUILTIN = {inst.name: inst for inst in builtin_instances()}


class Clock:
    def __init__(self, budget):
        self.budget = budget
        self.t0 = time.perf_counter()

    def check(self):
        elapsed = time.perf_counter() - self.t0
        assert elapsed < self.budget, f"took {elapsed:.1f}s, budget {self.budget}s"


def tally(tid, instances):
    reports = [check(tid, inst) for inst in instances]
    return reports, Counter(r.status for r in reports)


def bad(reports):
    return [(r.instance, r.theorem_id, r.status, r.detail) for r in reports
            if r.status in (FAILED, INCONCLUSIVE)]


def single_degree(M):
    """{degree: dim} for a finite-length module."""
    num, n = hilbert_series(M).reduced()
    assert n == 0
    return num


@pytest.mark.criterion(1, "hypersurface xy example: Ext vanishing, pd infinite, EX5", 5)
def test_criterion_1_example_instance():
    clock = Clock(5)
    R = PolyRing(GF101, ["x", "y"], ideal=["x*y"])
    N = FPModule.cyclic(R, ["x"])
    assert ext(1, N, ring_module(R)).is_zero()
    assert ext(1, N, N).is_zero()
    assert projective_dimension(N) == INFINITE
    assert check("EX5", BUILTIN["EX5"]).status == VERIFIED
    clock.check()


@pytest.mark.criterion(2, "Ext(k,k) over k[x]/(x^2) and k[x]", 5)
def test_criterion_2_residue_field_ext():
    clock = Clock(5)
    A = PolyRing(GF101, ["x"], ideal=["x^2"])
    kA = FPModule.residue_field(A)
    for i in range(7):
        # one copy of k, sitting in internal degree -i
        assert single_degree(ext(i, kA, kA)) == {-i: 1}
    assert projective_dimension(kA) == INFINITE
    L = PolyRing(GF101, ["x"])
    kL = FPModule.residue_field(L)
    for i in range(7):
        E = ext(i, kL, kL)
        if i <= 1:
            assert single_degree(E) == {-i: 1}
        else:
            assert E.is_zero()
    clock.check()


def gorenstein_instances():
    out = [inst for inst in builtin_instances() if is_gorenstein(inst.R)]
    for family in ("binomial-hypersurface", "ci"):
        for nvars in (2, 3):
            for maxdeg in (2, 3):
                for seed in (0, 1):
                    out += gen_instances(family, {"count": 3, "nvars": nvars, "maxdeg": maxdeg},
                                         seed=seed, include_builtins=False)
    return out


@pytest.mark.criterion(3, "duality: Čech window vs flipped Ext^{t-i}(N,M) on Gorenstein rings",
                       600)
def test_criterion_3_duality():
    clock = Clock(600)
    instances = gorenstein_instances()
    assert all(inst.R.n <= 3 for inst in instances)
    reports, counts = tally("C3.10", instances)
    assert bad(reports) == []
    assert counts[VERIFIED] >= 20, counts
    for rep in reports:
        if rep.status != VERIFIED:
            continue
        for key, val in rep.witnesses.items():
            if key.startswith("H^"):
                assert len(val["got"]) >= 8
    clock.check()


@pytest.mark.criterion(4, "truncated stages vanish below s and not at s, n <= 6", 600)
def test_criterion_4_grade_of_truncated_system():
    clock = Clock(600)
    instances = []
    for family in ("monomial", "random-matrix", "binomial-hypersurface", "ci"):
        for seed in (0, 1):
            instances += gen_instances(family, {"count": 5, "nvars": 2}, seed=seed,
                                       include_builtins=False)
        instances += gen_instances(family, {"count": 3, "nvars": 3}, seed=0,
                                   include_builtins=False)
    for inst in instances:
        inst.params["n_max"] = 6
    reports, counts = tally("P1.2", instances)
    assert bad(reports) == []
    assert counts[VERIFIED] >= 50, counts
    for rep in reports:
        if rep.status == VERIFIED:
            assert len(rep.witnesses["stages_at_s_nonzero"]) == 6
    clock.check()


@pytest.mark.criterion(5, "finite common support: stabilized limit equals Ext", 300)
def test_criterion_5_finite_support_limits():
    clock = Clock(300)
    instances = []
    for family in ("monomial", "random-matrix", "binomial-hypersurface"):
        for seed in (0, 1):
            instances += gen_instances(family, {"count": 4, "finite_support": 1}, seed=seed,
                                       include_builtins=False)
    reports, counts = tally("C1.6", instances)
    assert bad(reports) == []
    assert counts[VERIFIED] >= 20, counts
    clock.check()


def mixed_instances():
    out = list(builtin_instances())
    for family in ("monomial", "random-matrix", "binomial-hypersurface", "ci"):
        for seed in (0, 1):
            out += gen_instances(family, {"count": 5, "nvars": 2}, seed=seed,
                                 include_builtins=False)
        out += gen_instances(family, {"count": 3, "nvars": 3}, seed=0, include_builtins=False)
    return out


@pytest.mark.criterion(6, "Ext vanishing forces pd N < i; EX5 gets no freeness verdict", 600)
def test_criterion_6_projective_dimension_bounds():
    clock = Clock(600)
    instances = mixed_instances()
    for tid in ("T5.1", "C5.2", "C5.4/C5.5"):
        reports, counts = tally(tid, instances)
        assert bad(reports) == []
        assert counts[VERIFIED] >= 1, (tid, counts)
        example = next(r for r in reports if r.instance == "EX5")
        assert example.status == NOT_MET
    clock.check()


@pytest.mark.criterion(7, "top dualizing cohomology detects Cohen-Macaulay M", 600)
def test_criterion_7_cohen_macaulay_detection():
    clock = Clock(600)
    P = PolyRing(GF101, ["x", "y"])
    non_cm_module = Instance("non-CM-module", P, FPModule.cyclic(P, ["x^2", "x*y"]),
                             ring_module(P))
    instances = mixed_instances() + [non_cm_module]
    reports, counts = tally("C3.6", instances)
    assert bad(reports) == []
    assert counts[VERIFIED] >= 20, counts
    by_name = {r.instance: r for r in reports}
    assert by_name["non-CM"].status == NOT_MET
    rep = by_name["non-CM-module"]
    assert rep.status == VERIFIED and rep.witnesses["(a) M CM"]["got"] is False
    reports, counts = tally("T3.5", instances)
    assert bad(reports) == []
    assert counts[VERIFIED] >= 20, counts
    clock.check()


def modules_of(inst):
    return [inst.M, inst.N]


@pytest.mark.criterion(8, "cross-oracle invariants on the builtin matrix", 900)
def test_criterion_8_cross_oracle_invariants():
    clock = Clock(900)
    checked_ab = 0
    for inst in builtin_instances():
        R = inst.R
        for X in modules_of(inst):
            if X.is_zero():
                continue
            res = resolution(X, R.n + 2)
            assert res.complex().d_squared_zero()
            assert res.hilbert_certificate()
            pd = projective_dimension(X)
            if pd != INFINITE:
                assert pd + depth(X) == ring_depth(R)
                checked_ab += 1
            m = list(R.S.gens)
            assert grade(m, X) == grade_by_regular_sequence(m, X)
            for Y in modules_of(inst):
                if Y.is_zero():
                    continue
                ann = list(annihilator(Y).generators)
                assert grade(ann, X) == grade_by_regular_sequence(ann, X)
        Rm = ring_module(R)
        t = R.krull_dim
        for j in range(0, t + 2):
            assert same_by_proxy(hyperext_dualizing(j, Rm, Rm), deficiency(t - j, Rm)), \
                (inst.name, j)
    assert checked_ab >= 5
    clock.check()
