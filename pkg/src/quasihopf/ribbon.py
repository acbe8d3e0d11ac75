"""Pivotal (sovereign) elements, involutory algebras, ribbon elements and the
ribbon extension H(theta) of a quasitriangular quasi-Hopf algebra."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import QuasiHopfAlgebra, verify_quasi_bialgebra, verify_quasi_hopf
from .errors import ConstructionFailure, NoSolution, NotInvertible, NotSemisimple
from .gauge import (
    GaugeData,
    RMatrixData,
    UElement,
    compute_drinfeld_twist,
    p_r,
    q_r,
    qt_report,
    verify_qt,
)
from .linalg import nullspace
from .report import VerificationReport
from .tensor import (
    Algebra,
    LinearMap,
    TensorElement,
    apply_legs,
    contract,
    flip_legs,
    is_invertible,
    mul_all,
    tensor_invert,
    tensor_mul,
)


@dataclass(frozen=True)
class PivotalCandidate:
    g: TensorElement
    g_inv: TensorElement

    @classmethod
    def from_element(cls, g: TensorElement) -> "PivotalCandidate":
        return cls(g, tensor_invert(g))


@dataclass(frozen=True)
class PivotalSearch:
    """Result of :func:`solve_pivotal`.

    ``complete`` is False when the linear solution space has dimension > 1:
    only ε-normalized basis vectors of that space were tried, so solutions that
    are non-trivial combinations may have been missed.
    """

    candidates: list
    space_dim: int
    complete: bool
    rejected: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.candidates)

    def __len__(self):
        return len(self.candidates)

    def __getitem__(self, i):
        return self.candidates[i]


@dataclass(frozen=True)
class RibbonCandidate:
    eta: TensorElement
    eta_inv: TensorElement | None

    @classmethod
    def from_element(cls, eta: TensorElement) -> "RibbonCandidate":
        try:
            return cls(eta, tensor_invert(eta))
        except NotInvertible:
            return cls(eta, None)


@dataclass(frozen=True)
class IntegralData:
    t: TensorElement
    p_r: TensorElement
    q_r: TensorElement


@dataclass(frozen=True)
class IntegralPivotal:
    candidate: PivotalCandidate
    integral: IntegralData
    report: VerificationReport


def _gauge(H: QuasiHopfAlgebra, G: GaugeData | None) -> GaugeData:
    return G if G is not None else compute_drinfeld_twist(H)


def pivotal_target(H: QuasiHopfAlgebra, G: GaugeData) -> TensorElement:
    """(S (x) S)(f_21^-1) f, the factor in Delta(g) = (g (x) g)(S (x) S)(f_21^-1) f."""
    ss = [H.antipode, H.antipode]
    return tensor_mul(apply_legs(ss, flip_legs(G.f_inv, (2, 1))), G.f)


def verify_sovereign(H: QuasiHopfAlgebra, cand: PivotalCandidate | TensorElement,
                     G: GaugeData | None = None) -> VerificationReport:
    """S^2 = conjugation by g^-1, the coproduct of g, and g^-1 = S(g)."""
    G = _gauge(H, G)
    report = VerificationReport()
    group = "pivotal"
    g = cand.g if isinstance(cand, PivotalCandidate) else cand
    try:
        g_inv = cand.g_inv if isinstance(cand, PivotalCandidate) else tensor_invert(g)
    except NotInvertible:
        report.add("pivotal_invertible", group, False, {"reason": "singular left multiplication"})
        return report
    report.compare("pivotal_invertible", group, tensor_mul(g, g_inv), H.one(1))
    report.compare_all("pivotal_implements_square_antipode", group, (
        ((i,), tensor_mul(h, g), tensor_mul(g, H.S(H.S(h)))) for i, h in enumerate(H.basis_elements())))
    report.compare("pivotal_coproduct", group, H.delta(g),
                   tensor_mul(g.tensor(g), pivotal_target(H, G)))
    report.add("pivotal_counit", group, H.eps(g) == 1, {"counit": str(H.eps(g))})
    report.compare("pivotal_inverse_is_antipode", group, g_inv, H.S(g))
    return report


def solve_pivotal(H: QuasiHopfAlgebra, G: GaugeData | None = None) -> PivotalSearch:
    """Search pivotal elements over a basis of the linear solutions of h g = g S^2(h)."""
    G = _gauge(H, G)
    d = H.dim
    field_ = H.field
    basis = H.basis_elements()
    s2 = [H.S(H.S(h)) for h in basis]
    # unknown g = sum_j c_j e_j; constraint vector h e_j - e_j S^2(h)
    cols = [[tensor_mul(h, b) - tensor_mul(b, s2h) for b in basis] for h, s2h in zip(basis, s2)]
    rows = []
    for block in cols:
        for k in range(d):
            row = {j: block[j].coeffs[k] for j in range(d) if block[j].coeffs[k]}
            if row:
                rows.append(row)
    space = nullspace(rows, d, field_)
    candidates, rejected = [], []
    for vec in space:
        v = H.element(vec)
        e = H.eps(v)
        if not e:
            rejected.append((v, "counit zero"))
            continue
        v = v.scale(e.inverse())
        if not is_invertible(v):
            rejected.append((v, "not invertible"))
            continue
        cand = PivotalCandidate.from_element(v)
        rep = verify_sovereign(H, cand, G)
        if rep.passed:
            candidates.append(cand)
        else:
            rejected.append((v, rep.failures[0].name))
    if not candidates:
        raise NoSolution(f"no pivotal element among {len(space)} basis solutions", len(space))
    return PivotalSearch(candidates, len(space), len(space) <= 1, rejected)


def verify_involutory(H: QuasiHopfAlgebra, G: GaugeData | None = None) -> VerificationReport:
    """S^2(h) = S(beta) alpha h beta S(alpha); when it holds, the consequences for alpha, beta
    and the pivotal element beta S(alpha)."""
    report = VerificationReport()
    group = "involutory"
    S = H.S
    left = tensor_mul(S(H.beta), H.alpha)
    right = tensor_mul(H.beta, S(H.alpha))
    ok = report.compare_all("square_antipode_inner", group, (
        ((i,), S(S(h)), mul_all(left, h, right)) for i, h in enumerate(H.basis_elements())))
    if not ok:
        return report
    report.add("alpha_invertible", group, is_invertible(H.alpha))
    report.add("beta_invertible", group, is_invertible(H.beta))
    report.compare("pivotal_inverse_formula", group, tensor_mul(right, left), H.one(1))
    G = _gauge(H, G)
    report.extend(verify_sovereign(H, right, G))
    ss = [H.antipode, H.antipode]
    report.compare("inverse_pivotal_coproduct", group, H.delta(left),
                   mul_all(G.f_inv, apply_legs(ss, flip_legs(G.f, (2, 1))), left.tensor(left)))
    return report


def left_integrals(H: QuasiHopfAlgebra) -> list[TensorElement]:
    """Basis of {t : h t = eps(h) t for every basis h}."""
    d = H.dim
    rows = []
    for h in H.basis_elements():
        e = H.eps(h)
        for k in range(d):
            row = {}
            for j in range(d):
                v = tensor_mul(h, H.basis(j)).coeffs[k]
                if j == k:
                    v = v - e
                if v:
                    row[j] = v
            if row:
                rows.append(row)
    return [H.element(v) for v in nullspace(rows, d, H.field)]


def pivotal_from_integral(H: QuasiHopfAlgebra, G: GaugeData | None = None) -> IntegralPivotal:
    """g = q^2 t_2 p^2 S(q^1 t_1 p^1) from a normalized left integral t; raises NotSemisimple."""
    ints = left_integrals(H)
    t = next((x for x in ints if H.eps(x)), None)
    if t is None:
        raise NotSemisimple(f"all {len(ints)} left integrals have counit zero")
    t = t.scale(H.eps(t).inverse())
    p, q = p_r(H), q_r(H)
    g = contract([q, H.delta(t), p], [[1, 3, 5, ("S", 4), ("S", 2), ("S", 0)]], {"S": H.antipode})
    report = VerificationReport()
    report.compare_all("integral_left", "pivotal", (
        ((i,), tensor_mul(h, t), t.scale(H.eps(h))) for i, h in enumerate(H.basis_elements())))
    report.extend(verify_sovereign(H, g, G))
    try:
        cand = PivotalCandidate.from_element(g)
    except NotInvertible:
        cand = PivotalCandidate(g, g)
    return IntegralPivotal(cand, IntegralData(t, p, q), report)


def _r_tensor(R) -> TensorElement:
    return R.r if isinstance(R, RMatrixData) else R


def monodromy(R) -> TensorElement:
    r = _r_tensor(R)
    return tensor_mul(flip_legs(r, (2, 1)), r)


def verify_ribbon_element(H: QuasiHopfAlgebra, R, eta: RibbonCandidate | TensorElement,
                          level: str = "ribbon") -> VerificationReport:
    """eta central and invertible with Delta(eta) = (eta (x) eta) R_21 R; at ribbon level also S(eta) = eta."""
    if level not in ("balanced", "ribbon"):
        raise ValueError(f"level must be 'balanced' or 'ribbon', got {level!r}")
    if not isinstance(eta, RibbonCandidate):
        eta = RibbonCandidate.from_element(eta)
    report = VerificationReport()
    group = "ribbon"
    e = eta.eta
    report.add("twist_invertible", group, eta.eta_inv is not None, {"reason": "singular left multiplication"})
    report.compare_all("twist_central", group, (
        ((i,), tensor_mul(e, h), tensor_mul(h, e)) for i, h in enumerate(H.basis_elements())))
    report.compare("twist_coproduct", group, H.delta(e), tensor_mul(e.tensor(e), monodromy(R)))
    if level == "ribbon":
        report.compare("twist_antipode_fixed", group, H.S(e), e)
    return report


def verify_balanced_extension(H: QuasiHopfAlgebra, R) -> VerificationReport:
    """Quasi-coassociativity of Delta(theta) = (theta (x) theta)(R_21 R)^-1, i.e.
    Phi (M (x) 1)(Delta (x) id)(M) Phi^-1 = (1 (x) M)(id (x) Delta)(M) with M = R_21 R,
    tested in the form Phi (M (x) 1)(Delta (x) id)(M) = (1 (x) M)(id (x) Delta)(M) Phi."""
    m = monodromy(R)
    one = H.one(1)
    lhs = mul_all(H.phi, m.tensor(one), apply_legs([H.comult, None], m))
    rhs = mul_all(one.tensor(m), apply_legs([None, H.comult], m), H.phi)
    report = VerificationReport()
    report.compare("balanced_extension", "ribbon", lhs, rhs)
    return report


def ribbon_candidates(H: QuasiHopfAlgebra, R: RMatrixData, U: UElement, G: GaugeData | None = None,
                      level: str = "ribbon") -> list[RibbonCandidate]:
    """Ribbon elements of the form (u g)^-1 for the pivotal elements g found by :func:`solve_pivotal`."""
    G = _gauge(H, G)
    try:
        search = solve_pivotal(H, G)
    except NoSolution:
        return []
    out = []
    for cand in search:
        eta = RibbonCandidate.from_element(tensor_mul(U.u_inv, cand.g_inv))
        if verify_ribbon_element(H, R, eta, level).passed:
            out.append(eta)
    return out


@dataclass(frozen=True)
class HThetaAlgebra:
    """H(theta): basis e_0..e_{d-1}, then e_0 theta..e_{d-1} theta."""

    algebra: QuasiHopfAlgebra
    r: RMatrixData
    eta: RibbonCandidate
    theta: TensorElement
    source: QuasiHopfAlgebra
    source_r: RMatrixData
    report: VerificationReport

    @property
    def base_dim(self) -> int:
        return self.source.dim


def _lift(A2: Algebra, t: TensorElement, blocks: tuple[int, ...] | None = None) -> TensorElement:
    """Embed a tensor over H into H(theta); ``blocks[k] = 1`` sends leg k to the theta block."""
    d = t.dim
    blocks = blocks or (0,) * t.rank
    return A2.from_terms(t.rank, [(c, tuple(i + d * b for i, b in zip(idx, blocks))) for c, idx in t.terms()])


def build_h_theta(H: QuasiHopfAlgebra, R: RMatrixData, U: UElement) -> HThetaAlgebra:
    """The 2d-dimensional algebra H[theta]/(theta^2 - u S(u)) with Delta(theta) = (theta (x) theta)(R_21 R)^-1,
    eps(theta) = 1, S(theta) = theta; verified in full, raising ConstructionFailure on any failure."""
    d = H.dim
    A = H.algebra
    field_ = H.field
    zero = field_.zero
    w = tensor_mul(U.u, H.S(U.u))

    def vec(v1, v2):
        return list(v1) + list(v2)

    zeros = [zero] * d
    mult = []
    for i in range(2 * d):
        row = []
        for j in range(2 * d):
            a, b = i % d, j % d
            prod = tensor_mul(A.basis(a), A.basis(b))
            if i < d and j < d:
                row.append(vec(prod.coeffs, zeros))
            elif i >= d and j >= d:
                row.append(vec(tensor_mul(prod, w).coeffs, zeros))
            else:
                row.append(vec(zeros, prod.coeffs))
        mult.append(row)
    labels = list(A.labels) + [f"{lab}·θ" for lab in A.labels]
    A2 = Algebra(field_, mult, vec(A.unit_vector, zeros), labels)

    m_inv = tensor_invert(monodromy(R))
    comult_cols = [_lift(A2, H.delta(A.basis(i))) for i in range(d)]
    comult_cols += [_lift(A2, tensor_mul(H.delta(A.basis(i)), m_inv), (1, 1)) for i in range(d)]
    counit_cols = [[H.eps(A.basis(i))] for i in range(d)] * 2
    s_cols = [_lift(A2, H.S(A.basis(i))) for i in range(d)]
    s_cols += [_lift(A2, H.S(A.basis(i)), (1,)) for i in range(d)]
    s_inv_cols = [_lift(A2, H.S_inv(A.basis(i))) for i in range(d)]
    s_inv_cols += [_lift(A2, H.S_inv(A.basis(i)), (1,)) for i in range(d)]

    H2 = QuasiHopfAlgebra(
        A2,
        LinearMap(A2, 1, 2, comult_cols, "comult"),
        LinearMap(A2, 1, 0, counit_cols, "counit"),
        _lift(A2, H.phi),
        LinearMap(A2, 1, 1, s_cols, "S"),
        alpha=_lift(A2, H.alpha),
        beta=_lift(A2, H.beta),
        phi_inv=_lift(A2, H.phi_inv),
        s_inv=LinearMap(A2, 1, 1, s_inv_cols, "S^-1"),
        name=f"{H.name}(θ)",
    )
    theta = _lift(A2, H.one(1), (1,))
    eta = _lift(A2, tensor_invert(w), (1,))

    report = VerificationReport()
    report.extend(verify_quasi_bialgebra(H2))
    if report.passed:
        report.extend(verify_quasi_hopf(H2))
    r2 = _lift(A2, R.r)
    if report.passed:
        qt, _ = qt_report(H2, r2)
        report.extend(qt)
    if report.passed:
        group = "h-theta"
        report.compare_all("theta_central", group, (
            ((i,), tensor_mul(theta, h), tensor_mul(h, theta)) for i, h in enumerate(H2.basis_elements())))
        report.compare("theta_square", group, tensor_mul(theta, theta), _lift(A2, w))
        report.compare("theta_inverse", group, tensor_mul(theta, eta), H2.one(1))
        report.extend(verify_ribbon_element(H2, r2, eta, "ribbon"))
    if not report.passed:
        first = report.failures[0]
        raise ConstructionFailure(f"H(θ): {first.name} fails (witness {first.witness})", report)
    R2 = verify_qt(H2, r2)
    return HThetaAlgebra(H2, R2, RibbonCandidate(eta, theta), theta, H, R, report)
