import pytest

from conftest import hq
from quasihopf.algebra import verify_quasi_hopf
from quasihopf.builders import cyclic_idempotents, cyclic_qha, group_hopf, sweedler, sweedler_r
from quasihopf.errors import BadParameters
from quasihopf.ribbon import verify_involutory
from quasihopf.tensor import tensor_mul


def test_h_q2_reassociator_closed_form():
    H = hq(2)
    e = cyclic_idempotents(H.algebra, 2, 1)
    expected = H.one(3) - e[1].tensor(e[1]).tensor(e[1]).scale(2)
    assert H.phi == expected
    assert H.phi_inv == H.phi


@pytest.mark.parametrize("n,s", [(2, 1), (3, 1), (3, 2), (4, 3), (5, 2), (6, 5)])
def test_idempotents(n, s):
    H = cyclic_qha(n, s)
    e = cyclic_idempotents(H.algebra, n, s)
    total = H.algebra.zero(1)
    for i in range(n):
        total = total + e[i]
        for j in range(n):
            assert tensor_mul(e[i], e[j]) == (e[i] if i == j else H.algebra.zero(1))
    assert total == H.one(1)


@pytest.mark.parametrize("n,s", [(3, 2), (5, 1), (5, 3), (6, 5)])
def test_other_roots_of_unity(n, s):
    H = cyclic_qha(n, s)
    assert verify_quasi_hopf(H).passed and verify_involutory(H).passed


def test_larger_field():
    H = cyclic_qha(3, cyclotomic_order=6)
    assert H.field.N == 6
    assert verify_involutory(H).passed


@pytest.mark.parametrize("kwargs", [dict(n=1), dict(n=2.0), dict(n=4, s=2), dict(n=3, cyclotomic_order=4)])
def test_cyclic_bad_parameters(kwargs):
    n = kwargs.pop("n")
    with pytest.raises(BadParameters):
        cyclic_qha(n, **kwargs)


def test_group_hopf():
    H, R = group_hopf(3)
    assert R is None and H.dim == 3
    H, R = group_hopf(2, with_r=True)
    assert R.report.passed
    with pytest.raises(BadParameters):
        group_hopf(3, with_r=True)
    with pytest.raises(BadParameters):
        group_hopf(0)


def test_sweedler_structure():
    H, R = sweedler(0)
    g, x = H.basis(1), H.basis(2)
    assert tensor_mul(g, g) == H.one(1)
    assert tensor_mul(x, x) == H.algebra.zero(1)
    assert tensor_mul(g, x) == -tensor_mul(x, g)
    assert H.S(H.S(x)) == -x
    assert R.r == sweedler_r(H.algebra, 0)


def test_sweedler_bad_parameters():
    with pytest.raises(BadParameters):
        sweedler(0, cyclotomic_order=3)
    with pytest.raises(BadParameters):
        sweedler("a")


def test_sweedler_over_larger_field():
    H, R = sweedler(2, cyclotomic_order=4)
    assert H.field.N == 4 and R.report.passed
