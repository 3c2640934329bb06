import random

import pytest
from hypothesis import given, strategies as st

from glcoh import linalg
from glcoh.groebner import GroebnerBasis, buchberger, normal_form, syzygy_matrix
from glcoh.poly import FieldSpec, MonomialOrder, PolynomialRing, mono_divides, monomials_of_degree

from strategies import F101, ORDERS, ambient, homogeneous, ideal_gens, polynomial

S = ambient(2)
x, y = S.gens


# ---------------------------------------------------------------------------
# independent oracles: degreewise linear algebra, no Gröbner bases


def _coeff_vector(f, index):
    return {index[e]: c for e, c in f.terms.items()}


def linear_membership(f, gens):
    """Homogeneous f lies in (gens) iff it is in the span of the degree-d multiples."""
    if not f:
        return True
    d = f.degree()
    R = f.ring
    mons = monomials_of_degree(R.nvars, d)
    index = {e: i for i, e in enumerate(mons)}
    span = []
    for g in gens:
        if not g or g.degree() > d:
            continue
        for e in monomials_of_degree(R.nvars, d - g.degree()):
            span.append(_coeff_vector(R.monomial(e) * g, index))
    E = linalg.Echelon(R.field)
    for v in span:
        E.add(v)
    return E.contains(_coeff_vector(f, index))


def kernel_dim_brute(row, d):
    """dim of {v : sum v_j a_j = 0} in degree d, v_j homogeneous of degree d - deg a_j."""
    R = row[0].ring
    target = {e: i for i, e in enumerate(monomials_of_degree(R.nvars, d))}
    cols = []
    for a in row:
        if a.degree() > d:
            continue
        for e in monomials_of_degree(R.nvars, d - a.degree()):
            cols.append(_coeff_vector(R.monomial(e) * a, target))
    return len(cols) - linalg.rank(cols, R.field)


def syzygy_span_dim(row, syz, d):
    """dim of the degree-d part of the submodule generated by the syzygy columns."""
    R = row[0].ring
    m = len(row)
    shifts = [a.degree() for a in row]
    index = {}
    for j in range(m):
        for e in (monomials_of_degree(R.nvars, d - shifts[j]) if d >= shifts[j] else ()):
            index[(j, e)] = len(index)
    vecs = []
    for c in range(len(syz[0]) if syz else 0):
        col = [syz[j][c] for j in range(m)]
        deg = max(col[j].degree() + shifts[j] for j in range(m) if col[j])
        if deg > d:
            continue
        for e in monomials_of_degree(R.nvars, d - deg):
            v = {}
            for j in range(m):
                for ee, cc in (R.monomial(e) * col[j]).terms.items():
                    v[index[(j, ee)]] = cc
            vecs.append(v)
    return linalg.rank(vecs, R.field)


# ---------------------------------------------------------------------------
# examples


def test_normal_form_examples():
    assert normal_form(x ** 2 * y, buchberger([x ** 2])) == S.zero()
    assert normal_form(x, GroebnerBasis(S)) == x
    assert normal_form(x * y + y ** 2, buchberger([x * y])) == y ** 2


def test_normal_form_variable_mismatch():
    T = ambient(3)
    with pytest.raises(ValueError):
        normal_form(T.gens[0], buchberger([x]))


@pytest.mark.parametrize("gens, expected", [
    (["x^2", "x*y"], ["x^2", "x*y"]),
    (["x - y", "y"], ["x", "y"]),
    ([], []),
])
def test_buchberger_examples(gens, expected):
    G = buchberger([S(g) for g in gens], S)
    assert set(G.generators) == {S(g) for g in expected}


def test_buchberger_twisted_cubic():
    T = PolynomialRing(F101, ("x", "y", "z", "w"), MonomialOrder("grevlex"))
    gens = [T("x*z - y^2"), T("y*w - z^2"), T("x*w - y*z")]
    G = buchberger(gens)
    assert len(G) == 3
    assert G.is_homogeneous()


def test_syzygy_examples():
    K = syzygy_matrix([[x, y]], S)
    assert len(K) == 2 and len(K[0]) == 1
    col = (K[0][0], K[1][0])
    assert col in [(y, -x), (-y, x)]
    assert syzygy_matrix([[S.one(), S.zero()], [S.zero(), S.one()]], S) == [[], []]
    E = syzygy_matrix([[x, x]], S)
    assert [E[0][0], E[1][0]] in [[S.one(), -S.one()], [-S.one(), S.one()]]


def test_syzygy_dimension_mismatch():
    with pytest.raises(ValueError):
        syzygy_matrix([[x, y], [x]], S)


# ---------------------------------------------------------------------------
# properties


def _reduced(G):
    lms = G.leading_monomials
    for g in G.generators:
        if g.leading_coefficient != 1:
            return False
        for h in G.generators:
            if h is g:
                continue
            if any(mono_divides(h.leading_monomial, e) for e in g.terms):
                return False
    return len(set(lms)) == len(lms)


def _spoly(f, g):
    R = f.ring
    a, b = f.leading_monomial, g.leading_monomial
    l = tuple(max(p, q) for p, q in zip(a, b))
    ua = R.monomial(tuple(p - q for p, q in zip(l, a)))
    ub = R.monomial(tuple(p - q for p, q in zip(l, b)))
    return ua * f - ub * g


@pytest.mark.parametrize("order", ORDERS)
@given(data=st.data())
def test_buchberger_properties(order, data):
    R = ambient(3, order)
    gens = data.draw(ideal_gens(R, max_size=3, max_degree=2))
    G = buchberger(gens, R)
    assert _reduced(G)
    for g in gens:
        assert normal_form(g, G).is_zero()
    for f in G.generators:
        for g in G.generators:
            assert normal_form(_spoly(f, g), G).is_zero()


@given(data=st.data())
def test_buchberger_shuffle_invariance(data):
    R = ambient(3)
    gens = data.draw(ideal_gens(R, max_size=4, max_degree=2))
    seed = data.draw(st.integers(0, 1000))
    shuffled = list(gens)
    random.Random(seed).shuffle(shuffled)
    shuffled = [g * 7 for g in shuffled] + gens[:1]
    assert set(buchberger(gens, R).generators) == set(buchberger(shuffled, R).generators)


@given(data=st.data())
def test_normal_form_idempotent_and_canonical(data):
    R = ambient(3)
    G = buchberger(data.draw(ideal_gens(R, max_size=3, max_degree=2)), R)
    f = data.draw(polynomial(R))
    r = normal_form(f, G)
    assert normal_form(r, G) == r
    assert normal_form(f - r, G).is_zero()
    lms = G.leading_monomials
    assert not any(mono_divides(m, e) for e in r.terms for m in lms)


@given(data=st.data())
def test_membership_agrees_with_linear_algebra(data):
    R = ambient(3)
    gens = data.draw(ideal_gens(R, max_size=3, max_degree=2))
    G = buchberger(gens, R)
    # a member built from the generators and a random homogeneous element
    d = data.draw(st.integers(2, 4))
    member = R.zero()
    for g in gens:
        if g.degree() <= d:
            member = member + data.draw(homogeneous(R, degree=d - g.degree())) * g
    other = data.draw(homogeneous(R, degree=d))
    for f in (member, other, member + other):
        assert G.contains(f) == linear_membership(f, gens)


@given(data=st.data())
def test_syzygy_correct_and_complete(data):
    R = ambient(data.draw(st.integers(2, 3)))
    row = data.draw(st.lists(homogeneous(R, min_degree=1, max_degree=2, max_terms=2),
                             min_size=1, max_size=3))
    K = syzygy_matrix([row], R)
    ncols = len(K[0]) if K else 0
    for c in range(ncols):
        assert sum((row[j] * K[j][c] for j in range(len(row))), R.zero()).is_zero()
    for d in range(0, 5):
        assert syzygy_span_dim(row, K, d) == kernel_dim_brute(row, d)
