import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from twyb import cochain as cc
from twyb.cochain import (Cochain, CoefficientModule, FormalChain, TwistMode,
                          TwistParams, Variant)
from twyb.families import (affine_map, cyclic_biquandle, dihedral_quandle,
                           fixture_corpus, from_quandle)
from helpers import random_equivariant
from twyb.yb import Twist, TwistedYBSet, YBOperator, make_twisted

CORPUS = fixture_corpus()
SMALL = [(n, tw) for n, tw in CORPUS if tw.size <= 3]
COORD, SCALAR = TwistMode.COORDINATE, TwistMode.SCALAR


def cyc3(shift=1):
    return make_twisted(cyclic_biquandle(3), affine_map(3, 1, shift))


# ---------------------------------------------------------------- faces

def test_face_examples():
    tw = cyc3()
    R = tw.op
    p = TwistParams()
    x1, x2, x3 = 0, 1, 2
    assert cc.face_left(tw, p, 1, (x1, x2)) == (x2,)
    assert cc.face_left(tw, TwistParams(0, 1, 0), 1, (x1, x2)) == (tw.f(x2),)
    assert cc.face_left(tw, p, 3, (x1, x2, x3)) == (R.r2[x1, R.r1[x2, x3]], R.r2[x2, x3])
    assert cc.face_left(tw, p, 2, (x1, x2, x3)) == (R.r2[x1, x2], x3)
    pm = TwistParams(0, 0, 2)
    f2 = tw.twist.power(2)
    assert cc.face_right(tw, pm, 2, (x1, x2)) == (f2[x1],)
    assert cc.face_right(tw, pm, 1, (x1, x2)) == (f2[R.r1[x1, x2]],)
    assert cc.face_right(tw, pm, 1, (x1, x2, x3)) == (
        f2[R.r1[x1, x2]], f2[R.r1[R.r2[x1, x2], x3]])
    with pytest.raises(IndexError):
        cc.face_left(tw, p, 3, (0, 1))


def test_boundary_degree_two_matches_one_cocycle_terms():
    tw = cyc3()
    p = TwistParams(0, 0, 1)
    f = tw.twist.power(1)
    R = tw.op
    x1, x2 = 2, 0
    expect = FormalChain(1)
    expect.add((x2,), -1)
    expect.add((f[R.r1[x1, x2]],), 1)
    expect.add((R.r2[x1, x2],), 1)
    expect.add((f[x1],), -1)
    assert cc.boundary(tw, p, (x1, x2)) == expect


def test_untwisted_boundary_is_special_case():
    op = from_quandle(dihedral_quandle(3))
    tw = make_twisted(op)
    for x in itertools.product(range(3), repeat=3):
        a = cc.boundary(tw, TwistParams(0, 0, 0), x)
        b = cc.boundary(tw, TwistParams(0, 0, 0, mode=SCALAR), x)
        assert a == b


# ---------------------------------------------------------------- anchor

@pytest.mark.parametrize("m", [1, 2, -3])
@pytest.mark.parametrize("mode", [COORD, SCALAR])
def test_symbolic_anchor(m, mode):
    p = TwistParams(0, 0, m, mode=mode)
    assert cc.symbolic_boundary(2, p) == O.instantiate_terms(O.ONE_COCYCLE, m)
    assert cc.symbolic_boundary(3, p) == O.instantiate_terms(O.TWO_COCYCLE, m)


def test_symbolic_coordinates_form():
    got = cc.symbolic_boundary_coordinates(2, 0, 1)
    assert got == sorted([(-1, ("x2",)), (1, ("f^1(R1(x1,x2))",)),
                          (1, ("R2(x1,x2)",)), (-1, ("f^1(x1)",))])


# ---------------------------------------------------------------- cocycle checks

@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SMALL), st.integers(-2, 2), st.sampled_from([(2, 1), (3, 1), (3, 2), (5, 2)]),
       st.integers(0, 2**31 - 1))
def test_cocycle_check_matches_formula(item, m, Nu, seed):
    _, tw = item
    M = CoefficientModule(*Nu)
    rng = np.random.default_rng(seed)
    r1, r2, f = tw.op.r1.tolist(), tw.op.r2.tolist(), tw.twist.perm.tolist()
    # COORDINATE: equivariant cochains, f^m on coordinates
    phi = random_equivariant(tw, 2, M, rng)
    table = phi.values.reshape(tw.size, tw.size).tolist()
    got = cc.cocycle_check(tw, TwistParams(0, 0, m), phi, M).ok
    assert got == O.two_cocycle_coord(r1, r2, f, m, table, M.modulus)
    assert got == O.two_cocycle_scalar(r1, r2, m, table, M.modulus, M.unit)
    # SCALAR: arbitrary cochains, T^m on values
    raw = Cochain(2, tw.size, M.modulus, rng.integers(0, M.modulus, tw.size ** 2))
    table = raw.values.reshape(tw.size, tw.size).tolist()
    got = cc.cocycle_check(tw, TwistParams(0, 0, m, mode=SCALAR), raw, M).ok
    assert got == O.two_cocycle_scalar(r1, r2, m, table, M.modulus, M.unit)


def test_one_cocycles_match_formula():
    M = CoefficientModule(3, 1)
    for _, tw in SMALL:
        r1, r2, f = tw.op.r1.tolist(), tw.op.r2.tolist(), tw.twist.perm.tolist()
        for vals in itertools.product(range(3), repeat=tw.size):
            eta = Cochain(1, tw.size, 3, vals)
            if cc.equivariance_witness(tw, eta, M) is not None:
                continue
            got = cc.cocycle_check(tw, TwistParams(0, 0, 1), eta, M).ok
            assert got == O.one_cocycle_coord(r1, r2, f, 1, vals, 3)


def test_coboundaries_are_cocycles():
    rng = np.random.default_rng(0)
    for _, tw in SMALL:
        for Nu in ((3, 1), (5, 2), (4, 3)):
            M = CoefficientModule(*Nu)
            for m in (0, 1):
                for mode in (COORD, SCALAR):
                    p = TwistParams(0, 0, m, mode=mode)
                    eta = random_equivariant(tw, 1, M, rng)
                    assert cc.cocycle_check(tw, p, cc.coboundary(tw, p, eta, M), M).ok
                    eta2 = random_equivariant(tw, 2, M, rng)
                    assert cc.cocycle_check(tw, p, cc.coboundary(tw, p, eta2, M), M).ok


def test_non_cocycle_witness_and_degeneracy():
    tw = make_twisted(cyclic_biquandle(3))
    M = CoefficientModule(3, 1)
    p = TwistParams()
    rng = np.random.default_rng(1)
    res = cc.cohomology(tw, p, 2, M)
    assert res.dim_cocycles < 9
    while True:
        c = Cochain(2, 3, 3, rng.integers(0, 3, 9))
        chk = cc.cocycle_check(tw, p, c, M)
        if not chk.ok:
            break
    assert len(chk.witness) == 3 and chk.reason == "coboundary is nonzero"
    const = Cochain(2, 3, 3, np.ones(9, dtype=int))
    chk = cc.cocycle_check(tw, TwistParams(variant=Variant.TBQ), const, M)
    assert not chk.ok and "degenerate" in chk.reason
    assert tw.op.fixed_pairs[chk.witness]


def test_coboundary_requires_equivariance_in_coordinate_mode():
    tw = cyc3()
    M = CoefficientModule(3, 1)
    eta = Cochain(1, 3, 3, [1, 0, 0])
    with pytest.raises(ValueError):
        cc.coboundary(tw, TwistParams(), eta, M)
    chk = cc.cocycle_check(tw, TwistParams(), Cochain(2, 3, 3, np.arange(9) % 2), M)
    assert not chk.ok and chk.reason == "not T-equivariant"


# ---------------------------------------------------------------- complexes

@pytest.mark.parametrize("name,tw", SMALL[::2], ids=[n for n, _ in SMALL[::2]])
def test_boundary_squared_zero_small(name, tw):
    for m1, m2 in itertools.product((-1, 0, 1), repeat=2):
        for mode in (COORD, SCALAR):
            if mode is SCALAR and m1:
                continue
            p = TwistParams(1, m1, m2, mode=mode)
            for n in (3, 4):
                assert cc.boundary_squared_is_zero(tw, p, n)
                assert cc.boundary_squared_is_zero(tw, p, n, lifted=True)
                assert cc.boundary_squared_is_zero(tw, p, n, variant=Variant.TBQ)
            assert cc.precubical_check(tw, p, 3)


def test_formal_double_boundary_vanishes():
    tw = cyc3()
    p = TwistParams(0, 1, -1)
    for x in itertools.product(range(3), repeat=3):
        chain = cc.boundary(tw, p, x, lifted=True)
        assert cc.boundary_of_chain(tw, p, chain, lifted=True).is_zero()


def test_precubical_negative_control():
    r1 = cyclic_biquandle(3).r1.copy()
    r1[0, [0, 1]] = r1[0, [1, 0]]
    bad = TwistedYBSet(YBOperator(r1, cyclic_biquandle(3).r2), Twist.identity(3))
    res = cc.precubical_check(bad, TwistParams(), 3)
    assert not res.ok
    tup, i, j, k, l = res.witness
    assert len(tup) == 3 and i < j


def test_precubical_cyclic3_shift():
    assert cc.precubical_check(cyc3(), TwistParams(0, 0, 1), 3).ok


def test_degenerate_subcomplex_closed():
    for _, tw in SMALL:
        for p in (TwistParams(), TwistParams(0, 0, 1), TwistParams(0, 1, 1, mode=COORD)):
            for n in (2, 3):
                assert cc.degenerate_subcomplex_witness(tw, p, n) is None


@pytest.mark.parametrize("k", [1, 2, -1])
def test_shift_matrices(k):
    M = CoefficientModule(5, 2)
    for _, tw in SMALL[::3]:
        for m1, m2 in ((0, 0), (0, 1), (1, -1)):
            a = cc.coboundary_matrix(tw, TwistParams(0, m1, m2), 2, M)
            b = cc.coboundary_matrix(tw, TwistParams(0, m1 + k, m2 + k), 2, M)
            assert np.array_equal(b, (M.power(k) * a) % 5)
            ra = cc.cohomology(tw, TwistParams(0, m1, m2), 2, M)
            rb = cc.cohomology(tw, TwistParams(0, m1 + k, m2 + k), 2, M)
            assert ra.cycle_orders == rb.cycle_orders


def test_scalar_mode_identity_twist_is_untwisted():
    M = CoefficientModule(3, 2)
    tw = make_twisted(from_quandle(dihedral_quandle(3)))
    a = cc.coboundary_matrix(tw, TwistParams(mode=SCALAR), 2, M)
    b = cc.coboundary_matrix(tw, TwistParams(), 2, M)
    assert np.array_equal(a, b)


def test_tbq_cocycles_extend_to_tyb():
    M = CoefficientModule(3, 1)
    for _, tw in SMALL[::2]:
        p = TwistParams(0, 0, 1, variant=Variant.TBQ)
        res = cc.cohomology(tw, p, 2, M)
        for c in res.basis:
            assert cc.cocycle_check(tw, p, c, M).ok
            assert cc.cocycle_check(tw, TwistParams(0, 0, 1), c, M).ok


# ---------------------------------------------------------------- (co)homology

def test_cocycle_counts_against_brute_force():
    # |X| = 2, degree 2, every module small enough to enumerate
    for _, tw in [(n, t) for n, t in CORPUS if t.size == 2]:
        r1, r2, f = tw.op.r1.tolist(), tw.op.r2.tolist(), tw.twist.perm.tolist()
        for N, u in ((2, 1), (4, 1), (4, 3), (6, 5)):
            for m in (0, 1):
                for mode in ("coord", "scalar"):
                    p = TwistParams(0, 0, m, Variant.TBQ, TwistMode(mode))
                    res = cc.cohomology(tw, p, 2, CoefficientModule(N, u))
                    assert res.cocycle_group_order == O.brute_force_cocycle_count(
                        r1, r2, f, m, N, u, mode)


def test_degree_one_orders_brute_force():
    for _, tw in SMALL:
        for N, u in ((4, 1), (4, 3), (3, 2)):
            M = CoefficientModule(N, u)
            p = TwistParams(0, 0, 1)
            res = cc.cohomology(tw, p, 1, M)
            count = 0
            for vals in itertools.product(range(N), repeat=tw.size):
                eta = Cochain(1, tw.size, N, vals)
                count += cc.cocycle_check(tw, p, eta, M).ok
            assert res.cocycle_group_order == count


def test_betti_cyclic2_tyb_oracle():
    # H^2 of the Z_2 cyclic biquandle over F_2: dim Z^2 - dim B^2 by enumeration
    op = cyclic_biquandle(2)
    tw = make_twisted(op)
    r1, r2 = op.r1.tolist(), op.r2.tolist()
    z = sum(O.two_cocycle_coord(r1, r2, [0, 1], 0, phi, 2) for phi in O.all_maps(2, 2))
    images = set()
    for eta in itertools.product(range(2), repeat=2):
        images.add(tuple((-eta[x2] + eta[r1[x1][x2]] + eta[r2[x1][x2]] - eta[x1]) % 2
                         for x1 in range(2) for x2 in range(2)))
    expect = int(np.log2(z)) - int(np.log2(len(images)))
    res = cc.cohomology(tw, TwistParams(), 2, CoefficientModule(2, 1))
    assert res.betti == expect == 3


def test_composite_modulus_dims_raise():
    res = cc.cohomology(cyc3(), TwistParams(), 2, CoefficientModule(4, 1))
    with pytest.raises(cc.NonPrimeModulusError):
        res.betti
    assert res.order == int(np.prod(res.homology_orders))


@pytest.mark.parametrize("N,u", [(2, 1), (3, 2), (4, 3), (5, 2)])
def test_homology_cohomology_duality(N, u):
    M, Minv = CoefficientModule(N, u), CoefficientModule(N, pow(u, -1, N))
    for _, tw in SMALL[::4]:
        for variant in (Variant.TYB, Variant.TBQ):
            p = TwistParams(0, 0, 1, variant)
            for n in (1, 2):
                coh = cc.cohomology(tw, p, n, M)
                hom = cc.homology(tw, p, n, Minv)
                assert sorted(coh.homology_orders) == sorted(hom.homology_orders)


def test_homology_dims_td_and_degree_zero():
    tw = cyc3()
    M = CoefficientModule(3, 1)
    hom, coh = cc.homology_dims(tw, TwistParams(variant=Variant.TD), 2, M)
    assert coh is None and hom.kind
    h0, _ = cc.homology_dims(tw, TwistParams(), 0, M)
    assert h0.homology_orders == []


def test_size_guard():
    tw = make_twisted(cyclic_biquandle(40))
    with pytest.raises(cc.SizeGuardError):
        cc.coboundary_matrix(tw, TwistParams(), 3, CoefficientModule(2, 1))


def test_coefficient_module():
    M = CoefficientModule(5, 2)
    assert M.t_order == 4 and M.power(-1) == 3 and M.act(1, 2) == 4
    with pytest.raises(ValueError):
        CoefficientModule(4, 2)
    with pytest.raises(ValueError):
        TwistParams(0, 1, 0, mode=SCALAR)


def test_formal_chain_algebra():
    a = FormalChain(2, {((0, 1), 0): 2, ((1, 1), 1): -1})
    assert (a - a).is_zero()
    c = Cochain.from_function(2, 2, 5, lambda x, y: x + 2 * y)
    assert a.evaluate(c, CoefficientModule(5, 2)) == (2 * 2 - 2 * 3) % 5
