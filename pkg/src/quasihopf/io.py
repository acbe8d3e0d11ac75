"""JSON algebra files.

Scalars are written as an integer when rational and integral, otherwise as
``{"num": [...], "den": d}`` on the power basis of Q(zeta_N).  Output is
canonical: emitting a loaded file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra import QuasiHopfAlgebra
from .errors import FormatError, NotInvertible
from .linalg import SparseMatrix
from .modules import HModule
from .scalar import Scalar, make_field
from .tensor import Algebra, LinearMap, TensorElement, tensor_invert

FORMAT = "quasihopf-algebra/1"


@dataclass
class AlgebraFile:
    algebra: QuasiHopfAlgebra
    r_matrix: TensorElement | None = None
    eta: TensorElement | None = None
    modules: dict[str, HModule] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.algebra.name


# encoding ------------------------------------------------------------------

def encode_scalar(c: Scalar):
    if c.den == 1 and not any(c.num[1:]):
        return c.num[0]
    return c.to_json()


def _vec(coeffs) -> list:
    return [encode_scalar(c) for c in coeffs]


def _sparse(t: TensorElement) -> list:
    return [{"indices": list(idx), "coeff": encode_scalar(c)} for c, idx in t.terms()]


def to_dict(doc: AlgebraFile) -> dict:
    H = doc.algebra
    A = H.algebra
    d = A.dim
    out = {
        "format": FORMAT,
        "name": H.name,
        "dim": d,
        "cyclotomic_order": H.field.N,
        "basis": list(A.labels),
        "unit": _vec(A.unit_vector),
        "mult": [[_vec(A.mult[i][j]) for j in range(d)] for i in range(d)],
        "counit": [encode_scalar(H.counit.image(j).coeffs[0]) for j in range(d)],
        "comult": [_vec(H.comult.image(j).coeffs) for j in range(d)],
        "phi": _sparse(H.phi),
        "phi_inv": _sparse(H.phi_inv),
        "antipode": [_vec(row) for row in H.antipode.matrix()],
        "alpha": _vec(H.alpha.coeffs),
        "beta": _vec(H.beta.coeffs),
    }
    if doc.r_matrix is not None:
        out["r_matrix"] = _sparse(doc.r_matrix)
    if doc.eta is not None:
        out["eta"] = _vec(doc.eta.coeffs)
    if doc.modules:
        out["modules"] = [
            {"name": name, "dim": V.n, "action": [[_vec(row) for row in m.to_dense()] for m in V.matrices]}
            for name, V in doc.modules.items()
        ]
    return out


def dumps(doc: AlgebraFile) -> str:
    return json.dumps(to_dict(doc), indent=1, ensure_ascii=False) + "\n"


def dump(doc: AlgebraFile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


# decoding ------------------------------------------------------------------

def _get(obj: dict, key: str, kind=None):
    if key not in obj:
        raise FormatError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise FormatError(f"field {key!r} must be {kind.__name__ if isinstance(kind, type) else kind}")
    return val


def _scalar(F, obj, where: str) -> Scalar:
    if isinstance(obj, bool):
        raise FormatError(f"{where}: malformed scalar {obj!r}")
    try:
        return Scalar.from_json(F, obj)
    except (ValueError, TypeError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def _vector(F, obj, length: int, where: str) -> list[Scalar]:
    if not isinstance(obj, list) or len(obj) != length:
        raise FormatError(f"{where}: expected a list of {length} scalars")
    return [_scalar(F, c, f"{where}[{i}]") for i, c in enumerate(obj)]


def _sparse_tensor(A: Algebra, obj, rank: int, where: str) -> TensorElement:
    if not isinstance(obj, list):
        raise FormatError(f"{where}: expected a list of sparse entries")
    terms = []
    for k, entry in enumerate(obj):
        if not isinstance(entry, dict):
            raise FormatError(f"{where}[{k}]: expected an object")
        idx = _get(entry, "indices", list)
        if len(idx) != rank or not all(isinstance(i, int) and not isinstance(i, bool) and 0 <= i < A.dim for i in idx):
            raise FormatError(f"{where}[{k}]: indices {idx!r} out of range")
        terms.append((_scalar(A.field, _get(entry, "coeff"), f"{where}[{k}]"), tuple(idx)))
    return A.from_terms(rank, terms)


def from_dict(obj) -> AlgebraFile:
    if not isinstance(obj, dict):
        raise FormatError("top level must be an object")
    if obj.get("format", FORMAT) != FORMAT:
        raise FormatError(f"unsupported format {obj.get('format')!r}")
    d = _get(obj, "dim", int)
    N = _get(obj, "cyclotomic_order", int)
    if d < 1 or N < 1 or isinstance(d, bool) or isinstance(N, bool):
        raise FormatError("dim and cyclotomic_order must be positive integers")
    F = make_field(N)
    labels = _get(obj, "basis", list)
    if len(labels) != d or not all(isinstance(x, str) for x in labels):
        raise FormatError("basis must list d labels")
    unit = _vector(F, _get(obj, "unit"), d, "unit")
    mult_obj = _get(obj, "mult", list)
    if len(mult_obj) != d or any(not isinstance(row, list) or len(row) != d for row in mult_obj):
        raise FormatError("mult must be a d x d table")
    mult = [[_vector(F, mult_obj[i][j], d, f"mult[{i}][{j}]") for j in range(d)] for i in range(d)]
    A = Algebra(F, mult, unit, labels)

    counit = _vector(F, _get(obj, "counit"), d, "counit")
    comult_obj = _get(obj, "comult", list)
    if len(comult_obj) != d:
        raise FormatError("comult must have d entries")
    comult = [_vector(F, comult_obj[j], d * d, f"comult[{j}]") for j in range(d)]
    s_obj = _get(obj, "antipode", list)
    if len(s_obj) != d:
        raise FormatError("antipode must be a d x d matrix")
    s_rows = [_vector(F, s_obj[i], d, f"antipode[{i}]") for i in range(d)]
    phi = _sparse_tensor(A, _get(obj, "phi"), 3, "phi")
    if "phi_inv" in obj:
        # a supplied inverse that does not match is an identity failure, reported by the verifier
        phi_inv = _sparse_tensor(A, obj["phi_inv"], 3, "phi_inv")
    else:
        try:
            phi_inv = tensor_invert(phi)
        except NotInvertible:
            raise FormatError("phi is not invertible") from None
    H = QuasiHopfAlgebra(
        A,
        LinearMap(A, 1, 2, comult, "comult"),
        LinearMap(A, 1, 0, [[c] for c in counit], "counit"),
        phi,
        LinearMap.from_matrix(A, 1, 1, s_rows, "S"),
        alpha=A.element(_vector(F, _get(obj, "alpha"), d, "alpha")),
        beta=A.element(_vector(F, _get(obj, "beta"), d, "beta")),
        phi_inv=phi_inv,
        name=str(obj.get("name", "")),
    )
    doc = AlgebraFile(H)
    if obj.get("r_matrix") is not None:
        doc.r_matrix = _sparse_tensor(A, obj["r_matrix"], 2, "r_matrix")
    if obj.get("eta") is not None:
        doc.eta = A.element(_vector(F, obj["eta"], d, "eta"))
    for k, mod in enumerate(obj.get("modules") or []):
        if not isinstance(mod, dict):
            raise FormatError(f"modules[{k}]: expected an object")
        name = _get(mod, "name", str)
        n = _get(mod, "dim", int)
        action = _get(mod, "action", list)
        if len(action) != d:
            raise FormatError(f"module {name!r}: need {d} action matrices")
        mats = []
        for i, m in enumerate(action):
            if not isinstance(m, list) or len(m) != n:
                raise FormatError(f"module {name!r}: matrix {i} must have {n} rows")
            rows = [_vector(F, row, n, f"module {name!r} matrix {i}") for row in m]
            mats.append(SparseMatrix.from_dense(F, rows))
        if name in doc.modules:
            raise FormatError(f"duplicate module name {name!r}")
        doc.modules[name] = HModule(H, mats, name)
    return doc


def loads(text: str) -> AlgebraFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    return from_dict(obj)


def load(path) -> AlgebraFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return loads(text)
