"""Quasi-bialgebras and quasi-Hopf algebras given by structure constants, and their axiom verifiers.

Every identity is checked by exact equality on basis elements; by linearity
that is a complete test.
"""

from __future__ import annotations

from itertools import product

from .report import VerificationReport
from .tensor import (
    Algebra,
    LinearMap,
    TensorElement,
    apply_legs,
    contract,
    embed_legs,
    flip_legs,
    mul_all,
    tensor_invert,
    tensor_mul,
)


class QuasiBialgebra:
    """(H, Delta, epsilon, Phi) on top of an :class:`Algebra`.

    ``phi_inv`` is derived by exact inversion when not supplied.
    """

    def __init__(self, algebra: Algebra, comult: LinearMap, counit: LinearMap,
                 phi: TensorElement, phi_inv: TensorElement | None = None, name: str = ""):
        if (comult.source_rank, comult.target_rank) != (1, 2):
            raise ValueError("comultiplication must map rank 1 to rank 2")
        if (counit.source_rank, counit.target_rank) != (1, 0):
            raise ValueError("counit must map rank 1 to rank 0")
        if phi.rank != 3:
            raise ValueError("reassociator must have rank 3")
        self.algebra = algebra
        self.comult = comult
        self.counit = counit
        self.phi = phi
        self.phi_inv = phi_inv if phi_inv is not None else tensor_invert(phi)
        self.name = name

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def one(self, rank: int = 1) -> TensorElement:
        return self.algebra.one(rank)

    def basis(self, *idx) -> TensorElement:
        return self.algebra.basis(*idx)

    def basis_elements(self) -> list[TensorElement]:
        return [self.algebra.basis(i) for i in range(self.dim)]

    def element(self, coeffs) -> TensorElement:
        return self.algebra.element(coeffs)

    def delta(self, x: TensorElement) -> TensorElement:
        return apply_legs([self.comult], x)

    def delta_cop(self, x: TensorElement) -> TensorElement:
        return flip_legs(self.delta(x), (2, 1))

    def eps(self, x: TensorElement):
        return apply_legs([self.counit], x).coeffs[0]

    def is_central(self, x: TensorElement) -> bool:
        return all(tensor_mul(x, b) == tensor_mul(b, x) for b in self.basis_elements())

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or ''} dim={self.dim} N={self.field.N}>"


class QuasiHopfAlgebra(QuasiBialgebra):
    """A quasi-bialgebra with antipode S and distinguished elements alpha, beta."""

    def __init__(self, algebra, comult, counit, phi, antipode: LinearMap, alpha: TensorElement,
                 beta: TensorElement, phi_inv=None, s_inv: LinearMap | None = None, name: str = ""):
        super().__init__(algebra, comult, counit, phi, phi_inv, name)
        if (antipode.source_rank, antipode.target_rank) != (1, 1):
            raise ValueError("antipode must map rank 1 to rank 1")
        self.antipode = antipode
        self.alpha = alpha
        self.beta = beta
        self._s_inv = s_inv

    @property
    def s_inv(self) -> LinearMap:
        """Inverse of the antipode, computed from its matrix when not supplied."""
        if self._s_inv is None:
            self._s_inv = self.antipode.inverse()
        return self._s_inv

    def has_bijective_antipode(self) -> bool:
        return self.antipode.is_bijective()

    def S(self, x: TensorElement) -> TensorElement:
        return apply_legs([self.antipode] * x.rank, x)

    def S_inv(self, x: TensorElement) -> TensorElement:
        return apply_legs([self.s_inv] * x.rank, x)

    @property
    def s2(self) -> LinearMap:
        return self.antipode.compose(self.antipode)

    def ops(self) -> dict:
        """Named rank-1 maps for :func:`contract`."""
        ops = {"S": self.antipode, "S2": self.s2}
        if self._s_inv is not None or self.has_bijective_antipode():
            ops["Sinv"] = self.s_inv
        return ops


def _vector_product(algebra: Algebra, u: dict, v: list) -> dict:
    out: dict = {}
    for i, a in u.items():
        for j, b in v:
            for k, s in algebra.product_vector(i, j):
                val = a * b * s
                out[k] = out[k] + val if k in out else val
    return {k: x for k, x in out.items() if x}


def verify_associative_algebra(algebra: Algebra) -> VerificationReport:
    report = VerificationReport()
    d = algebra.dim
    one = algebra.field.one
    witness = None
    for i, j, k in product(range(d), repeat=3):
        left = _vector_product(algebra, _vector_product(algebra, {i: one}, [(j, one)]), [(k, one)])
        ij_k = _vector_product(algebra, {j: one}, [(k, one)])
        right = _vector_product(algebra, {i: one}, list(ij_k.items()))
        if left != right:
            witness = {"basis": (i, j, k)}
            break
    report.add("associativity", "algebra", witness is None, witness)
    unit = algebra.one(1)
    cases = [((i,), tensor_mul(unit, algebra.basis(i)), algebra.basis(i)) for i in range(d)]
    cases += [((i,), tensor_mul(algebra.basis(i), unit), algebra.basis(i)) for i in range(d)]
    report.compare_all("unit_law", "algebra", cases)
    return report


def verify_quasi_bialgebra(H: QuasiBialgebra) -> VerificationReport:
    """Algebra axioms, multiplicativity of the structure maps, quasi-coassociativity,
    counit law, the 3-cocycle condition and normalization of the reassociator."""
    report = verify_associative_algebra(H.algebra)
    group = "quasi-bialgebra"
    basis = H.basis_elements()
    one1, one2, one3 = H.one(1), H.one(2), H.one(3)
    d = H.dim

    report.compare_all("comult_multiplicative", group, (
        ((i, j), H.delta(tensor_mul(basis[i], basis[j])), tensor_mul(H.delta(basis[i]), H.delta(basis[j])))
        for i in range(d) for j in range(d)))
    report.compare("comult_unital", group, H.delta(one1), one2)
    eps_ok = None
    for i in range(d):
        for j in range(d):
            if H.eps(tensor_mul(basis[i], basis[j])) != H.eps(basis[i]) * H.eps(basis[j]):
                eps_ok = {"basis": (i, j)}
                break
        if eps_ok:
            break
    report.add("counit_multiplicative", group, eps_ok is None, eps_ok)
    report.add("counit_unital", group, H.eps(one1) == 1, {"counit_of_unit": str(H.eps(one1))})

    phi, phi_inv = H.phi, H.phi_inv
    report.add("reassociator_invertible", group,
               tensor_mul(phi, phi_inv) == one3 and tensor_mul(phi_inv, phi) == one3,
               {"at": tensor_mul(phi, phi_inv).first_difference(one3)})

    # Phi (Delta (x) id)Delta(h) Phi^-1 = (id (x) Delta)Delta(h), tested as Phi*A = B*Phi
    cases = []
    for i, h in enumerate(basis):
        dh = H.delta(h)
        left = apply_legs([H.comult, None], dh)
        right = apply_legs([None, H.comult], dh)
        cases.append(((i,), tensor_mul(phi, left), tensor_mul(right, phi)))
    report.compare_all("quasi_coassociativity", group, cases)

    eps = H.counit
    cases = []
    for i, h in enumerate(basis):
        dh = H.delta(h)
        cases.append(((i, "right"), apply_legs([None, eps], dh), h))
        cases.append(((i, "left"), apply_legs([eps, None], dh), h))
    report.compare_all("counit_law", group, cases)

    # (1 (x) Phi)(id (x) Delta (x) id)(Phi)(Phi (x) 1) = (id (x) id (x) Delta)(Phi)(Delta (x) id (x) id)(Phi)
    lhs = mul_all(embed_legs(phi, (2, 3, 4), 4),
                  apply_legs([None, H.comult, None], phi),
                  embed_legs(phi, (1, 2, 3), 4))
    rhs = tensor_mul(apply_legs([None, None, H.comult], phi), apply_legs([H.comult, None, None], phi))
    report.compare("three_cocycle", group, lhs, rhs)

    report.compare("reassociator_normalized", group, apply_legs([None, eps, None], phi), one2)
    report.compare("reassociator_normalized_left", group, apply_legs([eps, None, None], phi), one2,
                   required=False)
    report.compare("reassociator_normalized_right", group, apply_legs([None, None, eps], phi), one2,
                   required=False)
    return report


def _anti_multiplicative(H: QuasiHopfAlgebra) -> dict | None:
    basis = H.basis_elements()
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if H.S(tensor_mul(a, b)) != tensor_mul(H.S(b), H.S(a)):
                return {"basis": (i, j)}
    return None


def verify_quasi_hopf(H: QuasiHopfAlgebra) -> VerificationReport:
    """Antipode axioms: S anti-multiplicative and unital, the alpha/beta relations
    on coproducts, and the two reassociator identities."""
    report = VerificationReport()
    group = "quasi-hopf"
    ops = {"S": H.antipode}
    alpha, beta = H.alpha, H.beta
    one1 = H.one(1)

    w = _anti_multiplicative(H)
    report.add("antipode_anti_multiplicative", group, w is None, w)
    report.compare("antipode_unital", group, H.S(one1), one1)

    left, right = [], []
    for i, h in enumerate(H.basis_elements()):
        dh = H.delta(h)
        e = H.eps(h)
        left.append(((i,), contract([dh], [[("S", 0), alpha, 1]], ops), alpha.scale(e)))
        right.append(((i,), contract([dh], [[0, beta, ("S", 1)]], ops), beta.scale(e)))
    report.compare_all("antipode_alpha", group, left)
    report.compare_all("antipode_beta", group, right)

    report.compare("reassociator_antipode", group,
                   contract([H.phi], [[0, beta, ("S", 1), alpha, 2]], ops), one1)
    report.compare("reassociator_inverse_antipode", group,
                   contract([H.phi_inv], [[("S", 0), alpha, 1, beta, ("S", 2)]], ops), one1)

    bij = H.has_bijective_antipode()
    report.add("antipode_bijective", group, bij, {"rank": H.antipode.rank()}, required=False)
    if H._s_inv is not None:
        ident = [H.basis(i) for i in range(H.dim)]
        report.compare_all("antipode_inverse_consistent", group, (
            ((i,), H.S(H.S_inv(b)), b) for i, b in enumerate(ident)))
    return report


def opposite_coopposite(H: QuasiHopfAlgebra) -> QuasiHopfAlgebra:
    """H^{op,cop}: reversed product, flipped coproduct, reassociator Phi_321, alpha and beta swapped."""
    A = H.algebra
    d = A.dim
    mult = [[A.mult[j][i] for j in range(d)] for i in range(d)]
    Aop = Algebra(A.field, mult, A.unit_vector, [f"{lab}" for lab in A.labels])

    def move(t: TensorElement) -> TensorElement:
        return TensorElement(Aop, t.rank, t.coeffs)

    comult = LinearMap(Aop, 1, 2, [move(flip_legs(H.comult.image(j), (2, 1))) for j in range(d)], "comult")
    counit = LinearMap(Aop, 1, 0, [move(H.counit.image(j)) for j in range(d)], "counit")
    antipode = LinearMap(Aop, 1, 1, [move(H.antipode.image(j)) for j in range(d)], "S")
    return QuasiHopfAlgebra(
        Aop, comult, counit,
        phi=move(flip_legs(H.phi, (3, 2, 1))),
        phi_inv=move(flip_legs(H.phi_inv, (3, 2, 1))),
        antipode=antipode,
        alpha=move(H.beta),
        beta=move(H.alpha),
        name=f"{H.name}^op,cop",
    )
