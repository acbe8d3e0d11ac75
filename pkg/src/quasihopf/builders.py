"""Stock example algebras.  Every builder runs the verifiers before returning."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .algebra import QuasiHopfAlgebra, verify_quasi_bialgebra, verify_quasi_hopf
from .errors import BadParameters, ConstructionFailure
from .gauge import RMatrixData, verify_qt
from .scalar import make_field
from .tensor import Algebra, LinearMap, TensorElement


def _require(report, what: str) -> None:
    if not report.passed:
        first = report.failures[0]
        raise ConstructionFailure(f"{what}: {first.name} fails (witness {first.witness})", report)


def _cyclic_group_algebra(n: int, field) -> Algebra:
    zero, one = field.zero, field.one
    mult = [[[one if k == (a + b) % n else zero for k in range(n)] for b in range(n)] for a in range(n)]
    unit = [one] + [zero] * (n - 1)
    labels = ["1"] + [f"g^{a}" for a in range(1, n)]
    return Algebra(field, mult, unit, labels)


def _grouplike_structure(A: Algebra, n: int):
    """Delta(g^a) = g^a (x) g^a, eps = 1, S(g^a) = g^-a."""
    comult = LinearMap(A, 1, 2, [A.basis(a, a) for a in range(n)], "comult")
    counit = LinearMap(A, 1, 0, [[1] for _ in range(n)], "counit")
    antipode = LinearMap(A, 1, 1, [A.basis((-a) % n) for a in range(n)], "S")
    return comult, counit, antipode


def cyclic_idempotents(A: Algebra, n: int, s: int) -> list[TensorElement]:
    """1_i = (1/n) sum_a q^{-ia} g^a with q = zeta_n^s (zeta_n taken inside the field of A)."""
    field = A.field
    inv_n = Fraction(1, n)
    step = s * (field.N // n)
    return [A.element([field.zeta(-i * a * step) * inv_n for a in range(n)]) for i in range(n)]


def cyclic_qha(n: int, s: int = 1, verify: bool = True, cyclotomic_order: int | None = None) -> QuasiHopfAlgebra:
    """The group algebra of C_n with the reassociator sum q^{i[(j+l)/n]} 1_i (x) 1_j (x) 1_l.

    The field is Q(zeta_N) with N = ``cyclotomic_order`` (default n, must be a multiple of n).
    """
    if not isinstance(n, int) or n < 2:
        raise BadParameters(f"n must be an integer >= 2, got {n!r}")
    if not isinstance(s, int) or gcd(s, n) != 1:
        raise BadParameters(f"exponent s={s!r} must be coprime to n={n}")
    N = n if cyclotomic_order is None else cyclotomic_order
    if not isinstance(N, int) or N < 1 or N % n:
        raise BadParameters(f"cyclotomic order {N!r} must be a positive multiple of n={n}")
    field = make_field(N)
    A = _cyclic_group_algebra(n, field)
    comult, counit, antipode = _grouplike_structure(A, n)
    e = cyclic_idempotents(A, n, s)
    one3 = A.one(3)
    phi = phi_inv = one3
    step = s * (N // n)
    for i in range(1, n):
        qi = field.zeta(i * step)
        qi_inv = field.zeta(-i * step)
        for j in range(n):
            for l in range(n - j, n):
                block = e[i].tensor(e[j]).tensor(e[l])
                phi = phi + block.scale(qi - 1)
                phi_inv = phi_inv + block.scale(qi_inv - 1)
    g_inv = A.basis(n - 1)
    H = QuasiHopfAlgebra(A, comult, counit, phi, antipode, alpha=g_inv, beta=A.one(1),
                         phi_inv=phi_inv, s_inv=antipode,
                         name=f"H_q({n}) s={s}" + (f" N={N}" if N != n else ""))
    if verify:
        _require(verify_quasi_bialgebra(H), H.name)
        _require(verify_quasi_hopf(H), H.name)
        from .ribbon import verify_involutory

        _require(verify_involutory(H), H.name)
    return H


def cyclic_r_matrices(H: QuasiHopfAlgebra, n: int, s: int = 1) -> list[RMatrixData]:
    """Diagonal candidates sum_{i,j} zeta_N^{k i j} 1_i (x) 1_j on a cyclic_qha output, k = 0..N-1;
    only those passing verify_qt are returned."""
    from .gauge import qt_report

    field = H.field
    e = cyclic_idempotents(H.algebra, n, s)
    blocks = {(i, j): e[i].tensor(e[j]) for i in range(n) for j in range(n)}
    found = []
    for k in range(field.N):
        r = H.algebra.zero(2)
        for (i, j), b in blocks.items():
            r = r + b.scale(field.zeta(k * i * j))
        if qt_report(H, r)[0].passed:
            found.append(verify_qt(H, r))
    return found


def group_hopf(n: int, with_r: bool = False, verify: bool = True):
    """kC_n as a Hopf algebra (trivial reassociator); for n = 2 optionally with
    R = (1 (x) 1 + 1 (x) g + g (x) 1 - g (x) g)/2.  Returns (H, RMatrixData or None)."""
    if not isinstance(n, int) or n < 1:
        raise BadParameters(f"n must be a positive integer, got {n!r}")
    if with_r and n != 2:
        raise BadParameters("the stock R-matrix is only provided for n = 2")
    field = make_field(n)
    A = _cyclic_group_algebra(n, field)
    comult, counit, antipode = _grouplike_structure(A, n)
    one3 = A.one(3)
    H = QuasiHopfAlgebra(A, comult, counit, one3, antipode, alpha=A.one(1), beta=A.one(1),
                         phi_inv=one3, s_inv=antipode, name=f"kC{n}")
    if verify:
        _require(verify_quasi_bialgebra(H), H.name)
        _require(verify_quasi_hopf(H), H.name)
    R = None
    if with_r:
        half = Fraction(1, 2)
        r = A.from_terms(2, [(half, (0, 0)), (half, (0, 1)), (half, (1, 0)), (-half, (1, 1))])
        R = verify_qt(H, r)
    return H, R


def _sweedler_algebra(field) -> Algebra:
    # basis 1, g, x, gx; (g^a x^b)(g^c x^d) = (-1)^{bc} g^{a+c} x^{b+d}
    zero, one = field.zero, field.one
    mult = []
    for i in range(4):
        a, b = i & 1, i >> 1
        row = []
        for j in range(4):
            c, d = j & 1, j >> 1
            v = [zero] * 4
            if b + d < 2:
                k = ((a + c) % 2) | ((b + d) << 1)
                v[k] = -one if b * c else one
            row.append(v)
        mult.append(row)
    return Algebra(field, mult, [one, zero, zero, zero], ["1", "g", "x", "gx"])


def sweedler_r(A: Algebra, r_param) -> TensorElement:
    """(1(x)1 + 1(x)g + g(x)1 - g(x)g)/2 + (a/2)(x(x)x - x(x)gx + gx(x)x + gx(x)gx)."""
    a = A.field.coerce(r_param)
    half = Fraction(1, 2)
    one, g, x, gx = 0, 1, 2, 3
    terms = [(half, (one, one)), (half, (one, g)), (half, (g, one)), (-half, (g, g))]
    if a:
        ah = a * half
        terms += [(ah, (x, x)), (-ah, (x, gx)), (ah, (gx, x)), (ah, (gx, gx))]
    return A.from_terms(2, terms)


def sweedler(r_param=0, cyclotomic_order: int = 2, verify: bool = True) -> tuple[QuasiHopfAlgebra, RMatrixData]:
    """Sweedler's four-dimensional Hopf algebra with Delta(x) = x (x) 1 + g (x) x and the R-matrix family."""
    if cyclotomic_order % 2:
        raise BadParameters("the field must contain -1 (even cyclotomic order)")
    field = make_field(cyclotomic_order)
    try:
        field.coerce(r_param)
    except (TypeError, ValueError) as exc:
        raise BadParameters(f"bad R-matrix parameter {r_param!r}") from exc
    A = _sweedler_algebra(field)
    comult = LinearMap(A, 1, 2, [
        A.basis(0, 0),
        A.basis(1, 1),
        A.basis(2, 0) + A.basis(1, 2),
        # gx -> (g (x) g)(x (x) 1 + g (x) x) = gx (x) g + 1 (x) gx
        A.basis(3, 1) + A.basis(0, 3),
    ], "comult")
    counit = LinearMap(A, 1, 0, [[1], [1], [0], [0]], "counit")
    # S(g) = g, S(x) = -gx, S(gx) = S(x)S(g) = -gxg = x
    antipode = LinearMap(A, 1, 1, [A.basis(0), A.basis(1), -A.basis(3), A.basis(2)], "S")
    one3 = A.one(3)
    H = QuasiHopfAlgebra(A, comult, counit, one3, antipode, alpha=A.one(1), beta=A.one(1),
                         phi_inv=one3, name="Sweedler")
    if verify:
        _require(verify_quasi_bialgebra(H), H.name)
        _require(verify_quasi_hopf(H), H.name)
    R = verify_qt(H, sweedler_r(A, r_param))
    return H, R
