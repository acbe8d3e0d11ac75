import functools

import pytest

from conftest import h_theta, hq, kc2, mutate, sw
from quasihopf.builders import cyclic_qha, cyclic_r_matrices
from quasihopf.linalg import SparseMatrix
from quasihopf.modules import (
    HModule,
    categorical_traces,
    character_module,
    check_braiding,
    check_snake,
    check_spherical,
    check_theta_square,
    cyclic_submodule,
    diagrammatic_traces,
    dual_module,
    end_basis,
    induced_theta_module,
    regular_module,
    submodule,
    tensor_module,
    trivial_module,
    twist_action,
    twist_square_element,
    verify_category,
)
from quasihopf.ribbon import left_integrals, solve_pivotal
from quasihopf.tensor import tensor_mul


@functools.lru_cache(maxsize=None)
def braided_hq2():
    H = cyclic_qha(2, cyclotomic_order=4)
    return H, cyclic_r_matrices(H, 2)


def group_modules(H):
    return [trivial_module(H), character_module(H, [1, -1], "sign"), regular_module(H)]


@functools.lru_cache(maxsize=None)
def sweedler_theta_modules(a):
    T = h_theta(f"sw{a}")
    H = T.algebra
    reg = regular_module(H)
    P = cyclic_submodule(reg, [1, 1, 0, 0, 1, 1, 0, 0], "P")
    Q = cyclic_submodule(reg, [1, 0, 0, 0, 1, 0, 0, 0], "Q")
    ind = induced_theta_module(trivial_module(T.source), T)
    return T, [trivial_module(H), P, Q, ind]


def test_hq2_r_matrices_over_gaussian_field():
    H, Rs = braided_hq2()
    assert len(Rs) == 2
    assert all(not R.triangular for R in Rs)
    assert cyclic_r_matrices(hq(3), 3) == []


def test_category_hq2_braided():
    H, Rs = braided_hq2()
    mods = group_modules(H)
    rep = verify_category(mods, Rs[0], list(solve_pivotal(H)))
    assert rep.passed
    assert sum(1 for c in rep.checks if c.name == "yang_baxter") == 27


def test_category_hq2_rational_snakes():
    H = hq(2)
    assert verify_category(group_modules(H), None, list(solve_pivotal(H))).passed


def test_category_kc2():
    H, R = kc2()
    assert verify_category(group_modules(H), R, list(solve_pivotal(H))).passed


def test_category_kc2_theta():
    T = h_theta("kc2")
    H = T.algebra
    chars = [character_module(H, [1, s, t, s * t], f"chi{s},{t}") for s in (1, -1) for t in (1, -1)]
    assert verify_category(chars, T.r, list(solve_pivotal(H))).passed


@pytest.mark.parametrize("a", [0, 1])
def test_category_sweedler_theta(a):
    T, mods = sweedler_theta_modules(a)
    assert [V.n for V in mods] == [1, 2, 4, 2]
    rep = verify_category(mods, T.r, list(solve_pivotal(T.algebra)))
    assert rep.passed, rep.failures[:3]


def test_module_axioms_reject_bad_action():
    H = hq(2)
    bad = character_module(H, [1, 2], "bad")
    rep = bad.verify()
    assert not rep.passed


def test_mutated_alpha_breaks_snake():
    H = hq(2)
    M = mutate(H, alpha=H.basis(1).scale(2))
    rep = check_snake(regular_module(M))
    assert not rep.get("snake_module").passed


def test_double_dual_intertwiner():
    H = sw(0)[0]
    V = regular_module(H)
    VV = dual_module(dual_module(V))
    g = list(solve_pivotal(H))[0]
    phi = V.act(g.g_inv)
    for b in H.basis_elements():
        assert phi @ V.act(b) == VV.act(b) @ phi


def test_submodule_rejects_unstable_span():
    H = sw(0)[0]
    with pytest.raises(ValueError):
        submodule(regular_module(H), [[0, 0, 1, 0]])


def test_tensor_module_cache_tracks_identity():
    H = hq(3)
    V = regular_module(H)
    a = tensor_module(V, trivial_module(H))
    b = tensor_module(V, regular_module(H))
    assert a.n == 3 and b.n == 9


def test_regular_module_dimensions():
    for H in (hq(3), sw(0)[0]):
        V = regular_module(H)
        assert V.n == H.dim and V.verify().passed
    assert len(end_basis(regular_module(kc2()[0]))) == 2


def test_hq2_integral():
    H = hq(2)
    (t,) = left_integrals(H)
    t = t.scale(H.eps(t).inverse())
    assert t == H.element([H.field(1) / 2, H.field(1) / 2])


# traces -------------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_cyclic_family_spherical(n):
    H = hq(n)
    rep = check_spherical(H, H.basis(1), [regular_module(H), trivial_module(H)])
    assert rep.passed


def test_hq2_identity_traces():
    H = hq(2)
    V = regular_module(H)
    tl, tr = categorical_traces(V, V.identity(), H.basis(1))
    assert tl == 2 and tr == 2


def test_non_spherical_unit_on_hq3():
    H = hq(3)
    V = regular_module(H)
    rep = check_spherical(H, H.one(1), [V])
    chk = rep.get("left_right_traces_equal")
    assert not chk.passed
    assert chk.witness == {"module": "regular", "endomorphism": 0, "tr_l": "0", "tr_r": "3"}
    assert rep.get("traces_closed_match_diagram").passed


@pytest.mark.parametrize("which", ["kc2", "sw0"])
def test_closed_and_diagrammatic_traces_agree(which):
    T = h_theta(which)
    H = T.algebra
    g = list(solve_pivotal(H))[0]
    V = regular_module(H)
    for f in end_basis(V):
        assert categorical_traces(V, f, g) == diagrammatic_traces(V, f, g)


# twists --------------------------------------------------------------------------

@pytest.mark.parametrize("which", ["kc2", "sw0", "sw1"])
def test_theta_square_on_regular(which):
    T = h_theta(which)
    rep = check_theta_square(regular_module(T.algebra), T)
    assert rep.passed
    assert rep.get("twist_square_element").passed


def test_theta_square_on_induced_and_braided_hq2():
    from quasihopf.gauge import compute_u
    from quasihopf.ribbon import build_h_theta

    H, Rs = braided_hq2()
    T = build_h_theta(H, Rs[0], compute_u(H, Rs[0]))
    for V in (regular_module(T.algebra), induced_theta_module(regular_module(H), T)):
        assert check_theta_square(V, T).passed
    w = tensor_mul(T.theta, T.theta)
    assert regular_module(T.algebra).act(twist_square_element(T.algebra, T.r)) == regular_module(T.algebra).act(w)


@pytest.mark.parametrize("a", [0, 1])
def test_twist_action_on_sweedler_theta(a):
    T, mods = sweedler_theta_modules(a)
    for V in mods:
        for W in mods:
            _, rep = twist_action(V, T.eta, W, T.r, level="ribbon")
            assert rep.passed


def test_twist_action_detects_non_central_eta():
    T, mods = sweedler_theta_modules(0)
    x = T.algebra.basis(2)
    _, rep = twist_action(mods[2], x, mods[1], T.r)
    assert not rep.get("twist_linear").passed


def test_braiding_detects_bad_r():
    H, R = kc2()
    mods = group_modules(H)
    bad = R.r + H.basis(0, 1)
    rep = check_braiding(mods[2], mods[2], mods[1], bad)
    assert not rep.passed


def test_hmodule_shape_checks():
    H = hq(2)
    F = H.field
    with pytest.raises(Exception):
        HModule(H, [SparseMatrix.identity(F, 2)])
