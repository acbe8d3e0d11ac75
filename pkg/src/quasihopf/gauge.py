"""The Drinfeld twist and the quasitriangular layer.

Everything here is written with :func:`contract`: ingredient legs are
numbered in order, ``("S", i)`` is S applied to leg i, and rank-1 elements
appear as constants.  Phi = X^1 (x) X^2 (x) X^3 and Phi^-1 = x^1 (x) x^2 (x) x^3.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import QuasiHopfAlgebra
from .errors import InternalIdentityFailure, NotAnRMatrix, NotInvertible
from .report import VerificationReport
from .tensor import (
    TensorElement,
    apply_legs,
    contract,
    embed_legs,
    flip_legs,
    mul_all,
    tensor_invert,
    tensor_mul,
)


@dataclass(frozen=True)
class GaugeData:
    gamma: TensorElement
    delta: TensorElement
    f: TensorElement
    f_inv: TensorElement
    report: VerificationReport


@dataclass(frozen=True)
class RMatrixData:
    r: TensorElement
    r_inv: TensorElement
    triangular: bool
    report: VerificationReport

    @property
    def monodromy(self) -> TensorElement:
        """R_21 R."""
        return tensor_mul(flip_legs(self.r, (2, 1)), self.r)


@dataclass(frozen=True)
class UElement:
    u: TensorElement
    u_inv: TensorElement
    report: VerificationReport

    def casimir(self, H: QuasiHopfAlgebra) -> TensorElement:
        """The central element u S(u)."""
        return tensor_mul(self.u, H.S(self.u))


def _raise_on_failure(report: VerificationReport, exc=InternalIdentityFailure) -> None:
    if not report.passed:
        first = report.failures[0]
        raise exc(f"identity {first.name} fails (witness {first.witness})", report)


def gamma_delta_forms(H: QuasiHopfAlgebra) -> dict[str, TensorElement]:
    """Both displayed expressions for gamma and delta."""
    ops = {"S": H.antipode}
    a, b = H.alpha, H.beta
    phi, phi_inv = H.phi, H.phi_inv
    id_id_delta_phi = apply_legs([None, None, H.comult], phi)
    delta_id_id_phi_inv = apply_legs([H.comult, None, None], phi_inv)
    delta_id_id_phi = apply_legs([H.comult, None, None], phi)
    id_id_delta_phi_inv = apply_legs([None, None, H.comult], phi_inv)
    return {
        # S(x^1 X^2) a x^2 X^3_1 (x) S(X^1) a x^3 X^3_2
        "gamma_1": contract([phi_inv, id_id_delta_phi],
                            [[("S", 4), ("S", 0), a, 1, 5], [("S", 3), a, 2, 6]], ops),
        # S(X^2 x^1_2) a X^3 x^2 (x) S(X^1 x^1_1) a x^3
        "gamma_2": contract([phi, delta_id_id_phi_inv],
                            [[("S", 4), ("S", 1), a, 2, 5], [("S", 3), ("S", 0), a, 6]], ops),
        # X^1_1 x^1 b S(X^3) (x) X^1_2 x^2 b S(X^2 x^3)
        "delta_1": contract([delta_id_id_phi, phi_inv],
                            [[0, 4, b, ("S", 3)], [1, 5, b, ("S", 6), ("S", 2)]], ops),
        # x^1 b S(x^3_2 X^3) (x) x^2 X^1 b S(x^3_1 X^2)
        "delta_2": contract([id_id_delta_phi_inv, phi],
                            [[0, b, ("S", 6), ("S", 3)], [1, 4, b, ("S", 5), ("S", 2)]], ops),
    }


def compute_gamma_delta(H: QuasiHopfAlgebra) -> tuple[TensorElement, TensorElement]:
    """gamma and delta, each cross-checked against its second expression."""
    forms = gamma_delta_forms(H)
    report = VerificationReport()
    report.compare("gamma_two_forms", "gauge", forms["gamma_1"], forms["gamma_2"])
    report.compare("delta_two_forms", "gauge", forms["delta_1"], forms["delta_2"])
    _raise_on_failure(report)
    return forms["gamma_1"], forms["delta_1"]


def p_r(H: QuasiHopfAlgebra) -> TensorElement:
    """x^1 (x) x^2 beta S(x^3)."""
    return contract([H.phi_inv], [[0], [1, H.beta, ("S", 2)]], {"S": H.antipode})


def q_r(H: QuasiHopfAlgebra) -> TensorElement:
    """X^1 (x) S^-1(alpha X^3) X^2."""
    s_inv_alpha = H.S_inv(H.alpha)
    return contract([H.phi], [[0], [("Sinv", 2), s_inv_alpha, 1]], {"Sinv": H.s_inv})


def twist_formulas(H: QuasiHopfAlgebra, gamma: TensorElement, delta: TensorElement):
    """f and f^-1 from their closed formulas."""
    ops = {"S": H.antipode}
    dd = [H.comult, H.comult]
    p = apply_legs(dd, p_r(H))
    # f = S(x^1_2) gamma^1 p^2_1 (x) S(x^1_1) gamma^2 p^2_2, where p^2 = x^2 beta S(x^3)
    f = contract([p, gamma], [[("S", 1), 4, 2], [("S", 0), 5, 3]], ops)
    z = contract([H.phi_inv], [[("S", 0), H.alpha, 1], [2]], ops)
    zz = apply_legs(dd, z)
    f_inv = contract([zz, delta], [[0, 4, ("S", 3)], [1, 5, ("S", 2)]], ops)
    return f, f_inv


def compute_drinfeld_twist(H: QuasiHopfAlgebra) -> GaugeData:
    """gamma, delta, f and f^-1 with the defining identities verified; raises on failure."""
    gamma, delta = compute_gamma_delta(H)
    f, f_inv = twist_formulas(H, gamma, delta)
    report = VerificationReport()
    group = "gauge"
    one2 = H.one(2)
    report.compare("twist_inverse_right", group, tensor_mul(f, f_inv), one2)
    report.compare("twist_inverse_left", group, tensor_mul(f_inv, f), one2)
    eps = H.counit
    one1 = H.one(1)
    report.compare("twist_counit_left", group, apply_legs([eps, None], f), one1)
    report.compare("twist_counit_right", group, apply_legs([None, eps], f), one1)
    ss = [H.antipode, H.antipode]
    report.compare_all("twist_conjugates_antipode", group, (
        ((i,), mul_all(f, H.delta(H.S(h)), f_inv), apply_legs(ss, H.delta_cop(h)))
        for i, h in enumerate(H.basis_elements())))
    report.compare("twist_maps_alpha_to_gamma", group, tensor_mul(f, H.delta(H.alpha)), gamma)
    report.compare("twist_maps_beta_to_delta", group, tensor_mul(H.delta(H.beta), f_inv), delta)
    _raise_on_failure(report)
    return GaugeData(gamma, delta, f, f_inv, report)


def verify_s_morphism_identities(H: QuasiHopfAlgebra, G: GaugeData) -> VerificationReport:
    """The reassociator/twist compatibility in H^(x)3 and the two beta/alpha contractions of f, f^-1."""
    report = VerificationReport()
    group = "gauge"
    ops = {"S": H.antipode}
    g = G.f_inv
    lhs = mul_all(H.phi, apply_legs([H.comult, None], g), embed_legs(g, (1, 2), 3))
    s3 = [H.antipode] * 3
    rhs = mul_all(apply_legs([None, H.comult], g), embed_legs(g, (2, 3), 3),
                  apply_legs(s3, flip_legs(H.phi, (3, 2, 1))))
    report.compare("twist_reassociator_antipode", group, lhs, rhs)
    report.compare("twist_beta_contraction", group,
                   contract([G.f], [[0, H.beta, ("S", 1)]], ops), H.S(H.alpha))
    report.compare("twist_inverse_alpha_contraction", group,
                   contract([G.f_inv], [[("S", 0), H.alpha, 1]], ops), H.S(H.beta))
    return report


def qt_report(H, r: TensorElement) -> tuple[VerificationReport, TensorElement | None]:
    """All R-matrix axioms as a report, never raising.  Returns (report, R^-1 or None)."""
    report = VerificationReport()
    group = "qt"
    try:
        r_inv = tensor_invert(r)
    except NotInvertible:
        report.add("r_invertible", group, False, {"reason": "singular left multiplication"})
        r_inv = None
    else:
        report.add("r_invertible", group, True)
    phi, phi_inv = H.phi, H.phi_inv
    r13 = embed_legs(r, (1, 3), 3)
    lhs = apply_legs([H.comult, None], r)
    rhs = mul_all(flip_legs(phi, (2, 3, 1)), r13, flip_legs(phi_inv, (1, 3, 2)),
                  embed_legs(r, (2, 3), 3), phi)
    report.compare("r_comult_first_leg", group, lhs, rhs)
    lhs = apply_legs([None, H.comult], r)
    rhs = mul_all(flip_legs(phi_inv, (3, 1, 2)), r13, flip_legs(phi, (2, 1, 3)),
                  embed_legs(r, (1, 2), 3), phi_inv)
    report.compare("r_comult_second_leg", group, lhs, rhs)
    report.compare_all("r_intertwines_coproducts", group, (
        ((i,), tensor_mul(H.delta_cop(h), r), tensor_mul(r, H.delta(h)))
        for i, h in enumerate(H.basis_elements())))
    return report, r_inv


def verify_qt(H, r: TensorElement) -> RMatrixData:
    """Validate an R-matrix; raises NotAnRMatrix carrying the report when any axiom fails."""
    report, r_inv = qt_report(H, r)
    _raise_on_failure(report, NotAnRMatrix)
    mono = tensor_mul(flip_legs(r, (2, 1)), r)
    triangular = mono == H.one(2)
    report.add("triangular", "qt", triangular, required=False)
    return RMatrixData(r, r_inv, triangular, report)


def flip_invert(H, R: RMatrixData) -> RMatrixData:
    """The second R-matrix R_21^-1, re-verified rather than assumed."""
    return verify_qt(H, flip_legs(R.r_inv, (2, 1)))


def u_element(H: QuasiHopfAlgebra, r: TensorElement) -> TensorElement:
    """u = S(R^2 x^2 beta S(x^3)) alpha R^1 x^1 = S^2(x^3) S(beta) S(x^2) S(R^2) alpha R^1 x^1."""
    ops = {"S": H.antipode, "S2": H.s2}
    s_beta = H.S(H.beta)
    return contract([r, H.phi_inv], [[("S2", 4), s_beta, ("S", 3), ("S", 1), H.alpha, 0, 2]], ops)


def compute_u(H: QuasiHopfAlgebra, R: RMatrixData, G: GaugeData | None = None) -> UElement:
    """The element u with its identities verified; raises InternalIdentityFailure on failure."""
    if G is None:
        G = compute_drinfeld_twist(H)
    u = u_element(H, R.r)
    report = VerificationReport()
    group = "u"
    try:
        u_inv = tensor_invert(u)
    except NotInvertible:
        report.add("u_invertible", group, False, {"reason": "singular left multiplication"})
        raise InternalIdentityFailure("u is not invertible", report) from None
    report.add("u_invertible", group, True)
    ops = {"S": H.antipode}
    S = H.S
    report.compare_all("u_implements_square_antipode", group, (
        ((i,), tensor_mul(u, h), tensor_mul(S(S(h)), u)) for i, h in enumerate(H.basis_elements())))
    report.compare("u_alpha_contraction", group, tensor_mul(S(H.alpha), u),
                   contract([R.r], [[("S", 1), H.alpha, 0]], ops))
    report.compare("u_beta_contraction", group, contract([R.r], [[0, H.beta, ("S", 1)]], ops),
                   S(tensor_mul(H.beta, u)))
    mono_inv = tensor_invert(R.monodromy)
    ss = [H.antipode, H.antipode]
    uu = u.tensor(u)
    su = S(u)
    report.compare("u_coproduct", group, H.delta(u),
                   mul_all(mono_inv, G.f_inv, apply_legs(ss, flip_legs(G.f, (2, 1))), uu))
    report.compare("su_coproduct", group, H.delta(su),
                   mul_all(mono_inv, su.tensor(su), apply_legs(ss, flip_legs(G.f_inv, (2, 1))), G.f))
    c = tensor_mul(u, su)
    report.compare("u_su_commute", group, c, tensor_mul(su, u))
    report.compare_all("u_su_central", group, (
        ((i,), tensor_mul(c, h), tensor_mul(h, c)) for i, h in enumerate(H.basis_elements())))
    report.compare("u_su_antipode_fixed", group, S(c), c)
    if R.triangular:
        report.compare("u_coproduct_triangular", group, H.delta(u),
                       mul_all(G.f_inv, apply_legs(ss, flip_legs(G.f, (2, 1))), uu))
    _raise_on_failure(report)
    return UElement(u, u_inv, report)
