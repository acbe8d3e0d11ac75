import functools

import pytest
from hypothesis import settings

from quasihopf import cyclic_qha, group_hopf, sweedler
from quasihopf.gauge import compute_u
from quasihopf.ribbon import build_h_theta

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def hq(n: int):
    return cyclic_qha(n)


@functools.lru_cache(maxsize=None)
def kc2():
    return group_hopf(2, with_r=True)


@functools.lru_cache(maxsize=None)
def sw(a: int = 0):
    return sweedler(a)


@functools.lru_cache(maxsize=None)
def h_theta(which: str):
    H, R = kc2() if which == "kc2" else sw(int(which[-1]))
    return build_h_theta(H, R, compute_u(H, R))


@pytest.fixture
def qt_examples():
    """Named (H, R) pairs with a verified R-matrix."""
    return {"kC2": kc2(), "Sweedler a=0": sw(0), "Sweedler a=1": sw(1)}


def mutate(H, **changes):
    """A copy of H with some structure replaced (no verification)."""
    from quasihopf.algebra import QuasiHopfAlgebra

    parts = dict(algebra=H.algebra, comult=H.comult, counit=H.counit, phi=H.phi, antipode=H.antipode,
                 alpha=H.alpha, beta=H.beta, phi_inv=H.phi_inv, name=H.name + " (mutated)")
    parts.update(changes)
    return QuasiHopfAlgebra(**parts)


def bump(t, index, delta=1):
    """t with the coefficient at ``index`` shifted by ``delta``."""
    return t + t.algebra.from_terms(t.rank, [(delta, tuple(index))])


def bump_antipode(H, i, j, delta=1):
    from quasihopf.tensor import LinearMap

    rows = [list(r) for r in H.antipode.matrix()]
    rows[i][j] = rows[i][j] + delta
    return LinearMap.from_matrix(H.algebra, 1, 1, rows, "S")
