from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from eostrata import dieudonne as dd
from eostrata import fields as la
from eostrata import strata
from eostrata.dieudonne import (
    BT1Module,
    SemilinearMap,
    Subspace,
    canonical_filtration,
    final_type,
    semilinear_image,
    semilinear_preimage,
    standard_module,
    validate,
)
from eostrata.fields import gf

F2 = gf(2)


def _ordinary_g1(K=F2):
    P = dd._reduce(K, dd.standard_pairing(1))
    return BT1Module(K, ((1, 0), (0, 0)), ((0, 0), (0, 1)), P)


def _vectors(K, S: Subspace):
    out = set()
    for coeffs in product(K.elements(), repeat=S.dim):
        v = (0,) * S.n
        for c, b in zip(coeffs, S.basis):
            v = tuple(K.add(x, K.mul(c, y)) for x, y in zip(v, b))
        out.add(v)
    return out


# ---------------------------------------------------------------- validate


def test_validate_identity_maps_fail():
    m = BT1Module(F2, ((1,),), ((1,),))
    rules = {v.rule for v in validate(m)}
    assert "F∘V=0" in rules


def test_validate_trivial_module_valid():
    assert validate(BT1Module(F2, ((0,),), ((1,),))) == []


def test_validate_ordinary_g1():
    assert validate(_ordinary_g1()) == []
    assert validate(_ordinary_g1(gf(3))) == []


def test_validate_flipped_adjointness():
    K = gf(3)
    m = _ordinary_g1(K)
    flipped = BT1Module(K, m.F, tuple(tuple(K.neg(x) for x in r) for r in m.V), m.pairing)
    bad = validate(flipped)
    assert any(v.rule == "adjointness" for v in bad)
    assert all(v.witness for v in bad)


def test_validate_pairing_checks():
    K = gf(3)
    m = _ordinary_g1(K)
    sym = BT1Module(K, m.F, m.V, ((0, 1), (1, 0)))
    assert any(v.rule == "alternating" for v in validate(sym))
    degenerate = BT1Module(K, m.F, m.V, ((0, 0), (0, 0)))
    assert any(v.rule == "nondegenerate" for v in validate(degenerate))


def test_validate_rank_condition():
    # F = V = 0 on k^1: compositions vanish but ker F = k != 0 = im V
    bad = validate(BT1Module(F2, ((0,),), ((0,),)))
    assert [v.rule for v in bad] == ["rank F + rank V = n"]
    assert bad[0].witness == (1,)


# ---------------------------------------------------------------- semilinear maps


def test_semilinear_trivial_cases():
    K = gf(3)
    T = SemilinearMap(((1, 2), (0, 1)), 1)
    N = Subspace.full(2)
    assert semilinear_image(K, T, N) == N
    S = SemilinearMap(((1, 1), (1, 1)), -1)
    assert semilinear_preimage(K, S, Subspace.zero(2)) == Subspace.span(K, 2, [(1, 2)])
    with pytest.raises(ValueError):
        semilinear_image(K, T, Subspace.full(3))


def test_semilinear_image_over_f4():
    K = gf(2, 2)
    w = K.from_coeffs([0, 1])
    T = SemilinearMap(((w, 0), (0, 1)), 1)
    M = Subspace.span(K, 2, [(w, 0)])
    img = semilinear_image(K, T, M)
    pointwise = {T(K, v) for v in _vectors(K, M)}
    assert _vectors(K, img) == pointwise
    # omega * sigma(omega) = omega^3 = 1
    assert img == Subspace.span(K, 2, [(1, 0)])


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([gf(2), gf(3), gf(2, 2), gf(3, 2), gf(2, 3)]), st.data())
def test_semilinear_against_pointwise(K, data):
    n = data.draw(st.integers(1, 3 if K.q > 4 else 4))
    el = st.integers(0, K.q - 1)
    A = tuple(tuple(data.draw(el) for _ in range(n)) for _ in range(n))
    twist = data.draw(st.sampled_from([1, -1, 2]))
    T = SemilinearMap(A, twist)
    k = data.draw(st.integers(0, min(n, 2)))
    M = Subspace.span(K, n, [tuple(data.draw(el) for _ in range(n)) for _ in range(k)])
    assert _vectors(K, semilinear_image(K, T, M)) == {T(K, v) for v in _vectors(K, M)}
    Mset = _vectors(K, M)
    pre = {x for x in product(K.elements(), repeat=n) if T(K, x) in Mset}
    assert _vectors(K, semilinear_preimage(K, T, M)) == pre


# ---------------------------------------------------------------- standard modules


def test_standard_module_ordinary_g1():
    m = standard_module((1,), F2)
    assert m.F == ((1, 0), (0, 0))
    assert m.V == ((0, 0), (0, 1))
    assert validate(m) == []


def test_standard_module_superspecial_g1():
    m = standard_module((0,), gf(5))
    assert m.F == ((0, 1), (0, 0))
    kerF = dd.kernel(m.field, m.Fmap)
    assert kerF == semilinear_image(m.field, m.Fmap, Subspace.full(2))
    assert dd.kraft_decomposition(final_type(m)) == (strata.KraftWord("FV"),)


def test_standard_module_ffvv():
    m = standard_module((0, 1), gf(3, 2))
    assert validate(m) == []
    assert dd.kraft_decomposition(final_type(m)) == (strata.KraftWord("FFVV"),)


def test_filtration_examples():
    flag = canonical_filtration(standard_module((1,), F2))
    assert [M.basis for M in flag.members] == [(), ((1, 0),), ((1, 0), (0, 1))]
    ss = standard_module((0,), F2)
    flag = canonical_filtration(ss)
    assert flag.dims == (0, 1, 2)
    assert flag.members[1] == semilinear_image(F2, ss.Fmap, Subspace.full(2)) == dd.kernel(F2, ss.Fmap)


def test_final_type_examples():
    t = final_type(standard_module((1,), F2))
    assert (t.psi.psi, t.phi.phi, t.f_dims) == ((1, 1), (1,), (0, 1, 1))
    t = final_type(standard_module((0,), F2))
    assert (t.psi.psi, t.phi.phi, t.f_dims) == ((0, 1), (0,), (0, 0, 1))


def test_unpolarized_final_type_has_no_phi():
    m = BT1Module(gf(5), ((0, 1, 0), (0, 0, 0), (0, 0, 1)), ((0, 1, 0), (0, 0, 0), (0, 0, 0)))
    assert validate(m) == []
    t = final_type(m)
    assert t.phi is None and t.psi.psi == (1, 1, 2)


def test_module_invariants_examples():
    m = standard_module((1,), F2)
    assert (dd.a_number(m), dd.p_rank(m)) == (0, 1)
    m = standard_module((0,), F2)
    assert (dd.a_number(m), dd.p_rank(m)) == (1, 0)


FIELDS = [gf(p, a) for p in (2, 3, 5) for a in (1, 2)]


@pytest.mark.parametrize("K", FIELDS, ids=repr)
@pytest.mark.parametrize("g", [1, 2, 3])
def test_round_trip(K, g):
    for phi in strata.enumerate_elementary(g):
        m = standard_module(phi, K)
        assert validate(m) == []
        flag = canonical_filtration(m)
        t = final_type(m, flag)
        assert t.phi == phi
        assert t.psi.is_self_dual()
        assert dd.a_number(m) == g - phi(g) == strata.a_number(phi)
        assert dd.p_rank(m) == strata.p_rank(phi)
        for M in flag.members:
            assert semilinear_image(K, m.Fmap, M) in flag.members
            assert semilinear_preimage(K, m.Vmap, M) in flag.members


def test_change_of_basis_keeps_final_type():
    # conjugate by a symplectic matrix over F_3: g = (standard basis) -> shear
    K = gf(3)
    m = standard_module((0, 1), K)
    S = ((1, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0), (0, 0, 2, 1))  # preserves the standard pairing
    P = m.pairing
    assert la.matmul(K, la.matmul(K, la.transpose(S), P), S) == P
    Si = la.inverse(K, S)
    F2_ = la.matmul(K, la.matmul(K, S, m.F), Si)
    conj = BT1Module.polarized(K, F2_)
    assert validate(conj) == []
    assert final_type(conj).phi == strata.ElementarySequence((0, 1))


# ---------------------------------------------------------------- census


def test_census_f2_g1():
    rep = dd.brute_force_census(2, 1)
    assert rep.candidates == 16
    assert rep.realized == set(strata.enumerate_elementary(1))
    assert not rep.failures


def test_census_f3_g1():
    rep = dd.brute_force_census(3, 1)
    assert rep.candidates == 81
    assert rep.realized == set(strata.enumerate_elementary(1))


def test_census_parallel_matches_serial():
    serial = dd.brute_force_census(3, 1)
    par = dd.brute_force_census(3, 1, jobs=2)
    assert (par.candidates, par.valid, par.counts) == (serial.candidates, serial.valid, serial.counts)


def test_census_budget():
    with pytest.raises(ValueError, match="budget"):
        dd.brute_force_census(2, 2, budget=1000)
