import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import compose_ybe, fpow, twisted_pair
from twyb.families import (affine_map, alexander_biquandle, cyclic_biquandle,
                           dihedral_quandle, fixture_corpus, from_quandle,
                           symmetric_group, trivial_quandle, wada)
from twyb.yb import (EquivarianceError, Structure, StructureError, Twist,
                     TwistedYBSet, YBOperator, classify, component_equations_hold,
                     is_homomorphism, make_twisted, twisted_inverse_tables,
                     twisted_operator, verify_ybe, ybe_witness)

CORPUS = fixture_corpus()


def swap(n):
    return YBOperator.from_function(n, lambda x, y: (y, x))


def test_cyclic3_is_yb_biquandle():
    op = cyclic_biquandle(3)
    assert op(0, 0) == (1, 2)
    assert verify_ybe(op)
    assert classify(op).kind is Structure.BIQUANDLE


def test_identity_operator_is_yb():
    op = YBOperator.from_function(3, lambda x, y: (x, y))
    assert verify_ybe(op)


def test_z2_y_xplus1_is_birack_not_biquandle():
    op = YBOperator.from_function(2, lambda x, y: (y, (x + 1) % 2))
    assert verify_ybe(op)
    cls = classify(op)
    assert cls.is_birack and not cls.is_biquandle
    assert not op.fixed_pairs.any()


def test_wada_on_s3_is_biquandle():
    assert classify(wada(symmetric_group(3))).is_biquandle


def test_class_hierarchy():
    for _, tw in CORPUS:
        cls = classify(tw.op)
        assert not cls.is_biquandle or cls.is_birack


def test_non_yb_operator_gets_witness():
    # swapping two r1 entries of one row keeps R invertible but breaks the relation
    op = cyclic_biquandle(3)
    r1 = op.r1.copy()
    r1[0, [0, 1]] = r1[0, [1, 0]]
    bad = YBOperator(r1, op.r2)
    assert not verify_ybe(bad)
    w = ybe_witness(bad)
    assert len(w) == 3
    assert classify(bad).kind is Structure.NONE


def test_malformed_tables_rejected():
    with pytest.raises(StructureError):
        YBOperator([[0, 1]], [[0, 1]])
    with pytest.raises(StructureError):
        YBOperator([[0, 5], [1, 0]], [[0, 1], [1, 0]])
    with pytest.raises(StructureError):
        YBOperator([[0, 0], [0, 0]], [[0, 0], [0, 0]])  # not invertible


def test_inverse_tables():
    op = wada(symmetric_group(3))
    for x, y in itertools.product(range(op.size), repeat=2):
        assert op.inverse(*op(x, y)) == (x, y)


def test_from_quandle_shapes():
    op = from_quandle(dihedral_quandle(3))
    assert all(op(x, y) == (y, (2 * y - x) % 3) for x in range(3) for y in range(3))
    assert from_quandle(trivial_quandle(3)) == swap(3)
    assert classify(from_quandle(dihedral_quandle(4))).is_biquandle


def test_alexander_conditions():
    assert classify(alexander_biquandle(5, 1, 2)).is_biquandle
    with pytest.raises(ValueError):
        alexander_biquandle(3, 2, 2)
    assert alexander_biquandle(2, 1, 1) == swap(2)


def test_make_twisted_accepts_and_rejects():
    op = cyclic_biquandle(3)
    tw = make_twisted(op, affine_map(3, 1, 1))
    assert tw.f(2) == 0
    make_twisted(op)  # identity twist
    with pytest.raises(EquivarianceError) as exc:
        make_twisted(op, affine_map(3, 2, 0))
    assert len(exc.value.witness) == 2


def test_twisted_operator_example():
    tw = make_twisted(cyclic_biquandle(3), affine_map(3, 1, 1))
    t1 = twisted_operator(tw, 1)
    assert all(t1(x, y) == ((y + 2) % 3, (x + 1) % 3) for x in range(3) for y in range(3))
    assert twisted_operator(tw, 0) == tw.op


def test_twisted_quandle_is_not_quandle_shaped():
    tw = make_twisted(from_quandle(dihedral_quandle(3)), affine_map(3, 1, 1))
    t1 = twisted_operator(tw, 1)
    assert classify(t1).is_biquandle
    assert any(t1(x, y)[0] != y for x in range(3) for y in range(3))


@pytest.mark.parametrize("name,tw", CORPUS, ids=[n for n, _ in CORPUS])
def test_twisted_operator_matches_formula_and_ybe(name, tw):
    r1, r2, f = tw.op.r1.tolist(), tw.op.r2.tolist(), tw.twist.perm.tolist()
    base = classify(tw.op).kind
    for t in range(-2, 3):
        op = twisted_operator(tw, t)
        for x, y in itertools.product(range(tw.size), repeat=2):
            assert op(x, y) == twisted_pair(r1, r2, f, t, x, y)
        assert compose_ybe(op.r1.tolist(), op.r2.tolist())
        assert classify(op).kind is base


@pytest.mark.parametrize("name,tw", CORPUS[::5], ids=[n for n, _ in CORPUS[::5]])
def test_twisted_inverse_and_composition(name, tw):
    for t in (-1, 1, 2):
        op = twisted_operator(tw, t)
        i1, i2 = twisted_inverse_tables(tw, t)
        assert np.array_equal(i1, op.r1inv) and np.array_equal(i2, op.r2inv)
        for s in (-1, 1):
            again = twisted_operator(TwistedYBSet(op, tw.twist), s)
            assert again == twisted_operator(tw, s + t)


def test_homomorphisms():
    op = cyclic_biquandle(3)
    tw = make_twisted(op)
    assert is_homomorphism(tw, tw, list(range(3)))
    assert is_homomorphism(tw, tw, affine_map(3, 1, 1))
    src = make_twisted(op, affine_map(3, 1, 1))
    # a constant map cannot intertwine f(x) = x + 1 with itself
    assert not is_homomorphism(src, src, [0, 0, 0])
    # collapsing onto a one-point set always commutes with the trivial twist there
    point = make_twisted(cyclic_biquandle(1))
    assert is_homomorphism(src, point, [0, 0, 0])


def test_isomorphism_transports_twisted_operator():
    # conjugating by a bijection g gives an isomorphic twisted set
    for name, tw in CORPUS[::3]:
        n = tw.size
        g = list(reversed(range(n)))
        ginv = [g.index(i) for i in range(n)]
        r1 = [[g[tw.op.r1[ginv[x], ginv[y]]] for y in range(n)] for x in range(n)]
        r2 = [[g[tw.op.r2[ginv[x], ginv[y]]] for y in range(n)] for x in range(n)]
        f = [g[tw.f(ginv[x])] for x in range(n)]
        other = make_twisted(YBOperator(r1, r2), f)
        assert is_homomorphism(tw, other, g)
        for t in (-1, 1, 2):
            a = TwistedYBSet(twisted_operator(tw, t), tw.twist)
            b = TwistedYBSet(twisted_operator(other, t), other.twist)
            assert is_homomorphism(a, b, g)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.data())
def test_ybe_agrees_with_component_equations(n, data):
    cells = n * n
    perm = data.draw(st.permutations(range(cells)))
    r1 = [[perm[x * n + y] // n for y in range(n)] for x in range(n)]
    r2 = [[perm[x * n + y] % n for y in range(n)] for x in range(n)]
    op = YBOperator(r1, r2)
    assert verify_ybe(op) == compose_ybe(r1, r2) == component_equations_hold(op)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(-6, 6))
def test_twist_powers(item, k):
    _, tw = item
    f = tw.twist.perm.tolist()
    assert [int(v) for v in tw.twist.power(k)] == [fpow(f, k, x) for x in range(tw.size)]
    assert tw.twist.power(tw.twist.order).tolist() == list(range(tw.size))


def test_twist_rejects_non_permutation():
    with pytest.raises(ValueError):
        Twist([0, 0, 1])
