import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import hq, sw
from oracle import NumericQHA, close, exact_to_array
from quasihopf.errors import NotInvertible, RankMismatch
from quasihopf.tensor import (
    apply_legs,
    contract,
    embed_legs,
    flip_legs,
    is_invertible,
    mul_all,
    tensor_invert,
    tensor_mul,
)

SWEEDLER = sw(0)[0]
NUM = NumericQHA(SWEEDLER)


@st.composite
def elements(draw, rank, H=SWEEDLER):
    size = H.dim**rank
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=size, max_size=size))
    return H.algebra.element([H.field(c) for c in coeffs], rank)


@given(elements(2), elements(2))
def test_product_matches_numpy(a, b):
    assert close(exact_to_array(tensor_mul(a, b)), NUM.tmul(exact_to_array(a), exact_to_array(b)))


@given(elements(1), elements(1), elements(1))
def test_product_is_associative(a, b, c):
    assert tensor_mul(tensor_mul(a, b), c) == tensor_mul(a, tensor_mul(b, c))
    assert mul_all(a, b, c) == tensor_mul(a, tensor_mul(b, c))


@given(elements(3))
def test_flip_legs_matches_transpose(a):
    arr = exact_to_array(a)
    for perm in [(1, 2, 3), (2, 1, 3), (3, 1, 2), (2, 3, 1)]:
        out = flip_legs(a, perm)
        # output leg i carries input leg perm[i]
        assert close(exact_to_array(out), np.transpose(arr, [p - 1 for p in perm]))
    assert flip_legs(flip_legs(a, (2, 3, 1)), (3, 1, 2)) == a


@given(elements(2))
def test_embed_legs(a):
    H = SWEEDLER
    r13 = embed_legs(a, (1, 3), 3)
    expected = np.einsum("ac,b->abc", exact_to_array(a), NUM.unit)
    assert close(exact_to_array(r13), expected)
    assert embed_legs(a, (1, 2), 2) == a
    assert embed_legs(a, (2, 1), 2) == flip_legs(a, (2, 1))
    assert embed_legs(a, (1, 2), 3) == a.tensor(H.one(1))


@given(elements(2))
def test_apply_legs_matches_numpy(a):
    H = SWEEDLER
    out = apply_legs([H.comult, None], a)
    assert close(exact_to_array(out), NUM.delta_leg(exact_to_array(a), 0))
    out = apply_legs([None, H.antipode], a)
    assert close(exact_to_array(out), np.einsum("ab,qb->aq", exact_to_array(a), NUM.S))


@given(elements(2), elements(1))
def test_contract_matches_direct_sum(a, c):
    H = SWEEDLER
    # a^1 c S(a^2)  and  (S(a^2) (x) a^1 c)
    got = contract([a], [[0, c, ("S", 1)]], {"S": H.antipode})
    arr = exact_to_array(a)
    want = np.zeros(H.dim, dtype=complex)
    for (i, j), v in np.ndenumerate(arr):
        want += v * NUM.mul(NUM.basis(i), exact_to_array(c), NUM.s(NUM.basis(j)))
    assert close(exact_to_array(got), want)
    got2 = contract([a], [[("S", 1)], [0, c]], {"S": H.antipode})
    want2 = np.einsum("ij,pj,iq->pq", arr, NUM.S, np.array([NUM.mul(NUM.basis(i), exact_to_array(c)) for i in range(H.dim)]))
    assert close(exact_to_array(got2), want2)


def test_contract_rejects_bad_input():
    H = SWEEDLER
    with pytest.raises(ValueError):
        contract([], [[0]])
    with pytest.raises(KeyError):
        contract([H.one(2)], [[("T", 0)], [1]])
    with pytest.raises(RankMismatch):
        contract([H.one(2)], [[0, H.one(2)], [1]])


@given(elements(1))
def test_inverse_property(a):
    if is_invertible(a):
        inv = tensor_invert(a)
        assert tensor_mul(a, inv) == SWEEDLER.one(1) == tensor_mul(inv, a)
    else:
        with pytest.raises(NotInvertible):
            tensor_invert(a)


def test_known_inverses():
    H = hq(3)
    g = H.basis(1)
    assert tensor_invert(g) == H.basis(2)
    assert tensor_invert(H.phi) == H.phi_inv
    x = SWEEDLER.basis(2)
    assert not is_invertible(x)


def test_rank_checks():
    H = SWEEDLER
    with pytest.raises(RankMismatch):
        tensor_mul(H.one(1), H.one(2))
    with pytest.raises(RankMismatch):
        H.one(1) + H.one(2)
