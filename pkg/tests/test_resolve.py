import pytest
from hypothesis import given, strategies as st

from glcoh.homology import depth, is_regular_element
from glcoh.modules import INFINITE, FPModule, PolyRing, hilbert_series, quotient_by_ideal
from glcoh.resolve import (injective_dimension, koszul_acyclic, koszul_complex,
                           minimal_free_resolution, projective_dimension, resolution, ring_depth)

from strategies import cyclic_module, homogeneous, small_ring

P = PolyRing(variables=["x", "y"])
H = PolyRing(variables=["x", "y"], ideal=["x*y"])
A = PolyRing(variables=["x"], ideal=["x^2"])
L = PolyRing(variables=["x"])


def _entry_polys(res, i):
    """The single entry of a 1x1 differential, as a polynomial."""
    (col,) = res.differential(i)
    ((c, e), a), = col.items()
    return res.ring.S.monomial(e, a)


def test_koszul_resolution_of_residue_field():
    res = minimal_free_resolution(FPModule.residue_field(P), 3)
    assert res.betti.totals() == [1, 2, 1]
    assert res.betti.entries == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    assert res.finished and res.is_minimal() and res.hilbert_certificate()


def test_free_module_resolution_has_length_zero():
    res = resolution(FPModule.free(P, [0, 3]), 3)
    assert res.length == 0 and res.betti.totals() == [2]


def test_hypersurface_periodic_resolution():
    res = resolution(FPModule.cyclic(H, ["x"]), 4)
    assert res.betti.totals() == [1, 1, 1, 1, 1]
    x, y = H.S.gens
    maps = [_entry_polys(res, i) for i in range(1, 5)]
    for got, want in zip(maps, [x, y, x, y]):
        assert got.leading_monomial == want.leading_monomial
    assert not res.finished
    assert res.exactness_audit() and res.truncated_certificate(0, 6)


@pytest.mark.parametrize("R, M, pd", [
    (P, FPModule.residue_field(P), 2),
    (H, FPModule.cyclic(H, ["x"]), INFINITE),
    (H, FPModule.free(H), 0),
    (P, FPModule.cyclic(P, ["x^2", "x*y"]), 2),
    (A, FPModule.residue_field(A), INFINITE),
])
def test_projective_dimension_examples(R, M, pd):
    assert projective_dimension(M) == pd


def test_projective_dimension_of_zero_module():
    with pytest.raises(ValueError):
        projective_dimension(FPModule.zero(P))


@pytest.mark.parametrize("M, idim", [
    (FPModule.free(P), 2),
    (FPModule.residue_field(A), INFINITE),
    (FPModule.free(PolyRing(variables=[])), 0),
    (FPModule.free(H), 1),
])
def test_injective_dimension_examples(M, idim):
    assert injective_dimension(M) == idim


def test_koszul_examples():
    K1 = koszul_complex(["x"], L)
    assert K1.modules == {0: (0,), 1: (1,)}
    K2 = koszul_complex(["x", "y"], P)
    assert [K2.rank(i) for i in range(3)] == [1, 2, 1]
    (col,) = K2.maps[2]
    x, y = P.S.gens
    entries = {c: P.S.monomial(e, a) for (c, e), a in col.items()}
    assert {entries[0], entries[1]} in ({-y, x}, {y, -x})
    assert entries[0] * x + entries[1] * y == P.S.zero()
    K0 = koszul_complex([], P)
    assert K0.modules == {0: (0,)} and K0.maps == {}
    assert K2.d_squared_zero()


def test_koszul_acyclicity_detects_non_regular_sequences():
    assert koszul_acyclic(koszul_complex(["x", "y"], P), (0, 4))
    assert not koszul_acyclic(koszul_complex(["x", "x"], P), (0, 4))
    assert not koszul_acyclic(koszul_complex(["x", "y"], H), (0, 4))


def test_ring_depth():
    assert ring_depth(P) == 2 and ring_depth(H) == 1 and ring_depth(A) == 0


# ---------------------------------------------------------------------------
# properties


@given(data=st.data())
def test_resolution_certificates(data):
    R = data.draw(small_ring())
    M = data.draw(cyclic_module(R))
    if M.is_zero():
        return
    res = resolution(M, R.n + 2)
    C = res.complex()
    assert C.d_squared_zero()
    assert res.is_minimal()
    assert res.hilbert_certificate()
    assert res.exactness_audit()
    assert sum(res.betti.entries.get((0, j), 0) for j in range(-2, 6)) == len(res.free(0))


@given(data=st.data())
def test_auslander_buchsbaum(data):
    R = data.draw(small_ring())
    M = data.draw(cyclic_module(R))
    if M.is_zero():
        return
    pd = projective_dimension(M)
    if pd != INFINITE:
        assert pd + depth(M) == ring_depth(R)
    else:
        assert resolution(M, ring_depth(R) + 1).length > ring_depth(R)


@given(data=st.data())
def test_koszul_complex_of_a_sequence(data):
    R = PolyRing(variables=["x", "y", "z"])
    seq = data.draw(st.lists(homogeneous(R.S, min_degree=1, max_degree=2, max_terms=2),
                             min_size=1, max_size=3))
    K = koszul_complex(seq, R)
    assert K.d_squared_zero()
    # regularity by the nonzerodivisor definition, one element at a time
    Q = FPModule.free(R)
    regular = True
    for f in seq:
        if not is_regular_element(f, Q):
            regular = False
            break
        Q = quotient_by_ideal(Q, [f])
    top = sum(f.degree() for f in seq) + 1
    assert koszul_acyclic(K, (0, top)) == regular
