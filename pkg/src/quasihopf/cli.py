"""Command-line front end.

Exit codes: 0 when every requested identity holds, 1 when any fails,
2 for unreadable input or bad parameters.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .algebra import verify_quasi_bialgebra, verify_quasi_hopf
from .builders import cyclic_qha, cyclic_r_matrices, group_hopf, sweedler
from .errors import (
    BadParameters,
    FormatError,
    InternalIdentityFailure,
    NoSolution,
    NotInvertible,
    NotSemisimple,
    QuasiHopfError,
)
from .gauge import compute_drinfeld_twist, compute_u, qt_report, verify_qt, verify_s_morphism_identities
from .io import AlgebraFile, dump, dumps, encode_scalar, from_dict
from .modules import (
    categorical_traces,
    check_spherical,
    end_basis,
    regular_module,
    trivial_module,
)
from .report import VerificationReport
from .ribbon import (
    PivotalCandidate,
    RibbonCandidate,
    build_h_theta,
    pivotal_from_integral,
    ribbon_candidates,
    solve_pivotal,
    verify_balanced_extension,
    verify_involutory,
    verify_ribbon_element,
    verify_sovereign,
)
from .tensor import TensorElement, tensor_mul

LEVELS = ("bialgebra", "hopf", "qt", "ribbon")


class UsageError(Exception):
    """Bad input detected by a command (exit code 2)."""


class Session:
    """Report under construction for one command."""

    def __init__(self, command: str, digest: str | None):
        self.command = command
        self.digest = digest
        self.report = VerificationReport()
        self.results: dict = {}

    def absorb(self, report: VerificationReport) -> bool:
        self.report.extend(report)
        return report.passed

    def absorb_failure(self, exc: InternalIdentityFailure) -> None:
        if exc.report is not None:
            self.report.extend(exc.report)
        if exc.report is None or exc.report.passed:
            self.report.add(type(exc).__name__, "error", False, {"message": str(exc)})

    @property
    def exit_status(self) -> int:
        return 0 if self.report.passed else 1

    def to_dict(self) -> dict:
        return {
            "tool": "quasihopf",
            "version": __version__,
            "command": self.command,
            "input_sha256": self.digest,
            "passed": self.report.passed,
            "exit_status": self.exit_status,
            "checks": [c.to_dict() for c in self.report.checks],
            "results": self.results,
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=1, ensure_ascii=False) + "\n"
        lines = [f"quasihopf {__version__} {self.command}"]
        if self.digest:
            lines.append(f"input sha256 {self.digest}")
        lines.extend(self.report.lines())
        for key, val in self.results.items():
            lines.append(f"{key}: {_text(val)}")
        lines.append(f"result: {'PASS' if self.report.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _text(val) -> str:
    if isinstance(val, (dict, list)):
        return json.dumps(val, ensure_ascii=False)
    return str(val)


def _element(t: TensorElement) -> str:
    """Human-readable expansion over the basis labels."""
    terms = []
    for c, idx in t.terms():
        label = "⊗".join(t.algebra.labels[i] for i in idx)
        terms.append(f"({c})*{label}")
    return " + ".join(terms) or "0"


def _sparse(t: TensorElement) -> list:
    return [{"indices": list(idx), "coeff": encode_scalar(c)} for c, idx in t.terms()]


def _load(path: str) -> tuple[AlgebraFile, str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    try:
        obj = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    return from_dict(obj), hashlib.sha256(raw).hexdigest()


def _parse_vector(doc: AlgebraFile, text: str) -> TensorElement:
    """A rank-1 element from a JSON list of scalars."""
    H = doc.algebra
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad vector {text!r}: {exc}") from None
    from .io import _vector

    return H.element(_vector(H.field, obj, H.dim, "vector"))


# pipelines -----------------------------------------------------------------

def _hopf_suite(s: Session, doc: AlgebraFile) -> bool:
    H = doc.algebra
    if not s.absorb(verify_quasi_bialgebra(H)):
        return False
    if not s.absorb(verify_quasi_hopf(H)):
        return False
    try:
        G = compute_drinfeld_twist(H)
    except InternalIdentityFailure as exc:
        s.absorb_failure(exc)
        return False
    s.absorb(G.report)
    return s.absorb(verify_s_morphism_identities(H, G))


def _qt_suite(s: Session, doc: AlgebraFile):
    if doc.r_matrix is None:
        raise UsageError("this command needs an r_matrix in the algebra file")
    report, _ = qt_report(doc.algebra, doc.r_matrix)
    if not s.absorb(report):
        return None
    R = verify_qt(doc.algebra, doc.r_matrix)
    s.report.add("triangular", "qt", R.triangular, required=False)
    return R


def cmd_verify(args) -> Session:
    doc, digest = _load(args.file)
    s = Session(f"verify --level {args.level}", digest)
    level = LEVELS.index(args.level)
    H = doc.algebra
    if level == 0:
        s.absorb(verify_quasi_bialgebra(H))
        return s
    if not _hopf_suite(s, doc) or level == 1:
        return s
    R = _qt_suite(s, doc)
    if R is None or level == 2:
        return s
    try:
        G = compute_drinfeld_twist(H)
        U = compute_u(H, R, G)
    except InternalIdentityFailure as exc:
        s.absorb_failure(exc)
        return s
    s.absorb(U.report)
    s.absorb(verify_balanced_extension(H, R))
    eta = None
    if args.eta is not None:
        eta = _parse_vector(doc, args.eta)
    elif doc.eta is not None:
        eta = doc.eta
    if eta is not None:
        s.results["eta"] = _element(eta)
        s.absorb(verify_ribbon_element(H, R, RibbonCandidate.from_element(eta), "ribbon"))
    else:
        found = ribbon_candidates(H, R, U, G)
        s.results["derived_eta"] = [_element(c.eta) for c in found]
        if found:
            s.absorb(verify_ribbon_element(H, R, found[0], "ribbon"))
        else:
            s.report.add("ribbon_element_found", "ribbon", False,
                         {"searched": "(u g)^-1 over pivotal elements g"})
    return s


def cmd_ribbonize(args) -> Session:
    doc, digest = _load(args.file)
    s = Session("ribbonize", digest)
    if doc.r_matrix is None:
        raise UsageError("ribbonize needs an r_matrix in the algebra file")
    if not _hopf_suite(s, doc):
        return s
    R = _qt_suite(s, doc)
    if R is None:
        return s
    H = doc.algebra
    try:
        U = compute_u(H, R)
        s.absorb(U.report)
        T = build_h_theta(H, R, U)
    except InternalIdentityFailure as exc:
        s.absorb_failure(exc)
        return s
    s.absorb(T.report)
    s.results["output_dim"] = T.algebra.dim
    s.results["theta"] = _element(T.theta)
    s.results["eta"] = _element(T.eta.eta)
    out = AlgebraFile(T.algebra, T.r.r, T.eta.eta)
    if args.output:
        dump(out, args.output)
        s.results["written"] = args.output
    else:
        s.results["algebra"] = json.loads(dumps(out))
    return s


def _describe_candidate(H, g: TensorElement) -> dict:
    return {
        "g": _element(g),
        "counit": str(H.eps(g)),
        "antipode_g_times_g": _element(tensor_mul(H.S(g), g)),
    }


def cmd_pivotal(args) -> Session:
    doc, digest = _load(args.file)
    mode = "candidate" if args.candidate is not None else ("integral" if args.integral else "solve")
    s = Session(f"pivotal --{mode}", digest)
    if not _hopf_suite(s, doc):
        return s
    H = doc.algebra
    G = compute_drinfeld_twist(H)
    if mode == "candidate":
        g = _parse_vector(doc, args.candidate)
        s.results["candidates"] = [_describe_candidate(H, g)]
        s.absorb(verify_sovereign(H, g, G))
    elif mode == "integral":
        try:
            res = pivotal_from_integral(H, G)
        except NotSemisimple as exc:
            s.report.add("semisimple", "pivotal", False, {"error": "NotSemisimple", "reason": str(exc)})
            return s
        s.results["integral"] = _element(res.integral.t)
        s.results["candidates"] = [_describe_candidate(H, res.candidate.g)]
        s.absorb(res.report)
    else:
        try:
            search = solve_pivotal(H, G)
        except NoSolution as exc:
            s.report.add("pivotal_element_found", "pivotal", False,
                         {"space_dimension": exc.space_dimension})
            return s
        s.results["space_dimension"] = search.space_dim
        s.results["search_complete"] = search.complete
        s.results["candidates"] = [_describe_candidate(H, c.g) for c in search]
        s.report.add("pivotal_element_found", "pivotal", True)
    return s


def _pick_pivotal(H, G) -> tuple[str, PivotalCandidate]:
    """Involutory beta S(alpha), then the integral element, then the first solved candidate."""
    if verify_involutory(H, G).passed:
        return "involutory", PivotalCandidate.from_element(tensor_mul(H.beta, H.S(H.alpha)))
    try:
        res = pivotal_from_integral(H, G)
        if res.report.passed:
            return "integral", res.candidate
    except NotSemisimple:
        pass
    return "solved", solve_pivotal(H, G)[0]


def cmd_traces(args) -> Session:
    doc, digest = _load(args.file)
    s = Session(f"traces --module {args.module}", digest)
    if not _hopf_suite(s, doc):
        return s
    H = doc.algebra
    G = compute_drinfeld_twist(H)
    if args.module in doc.modules:
        V = doc.modules[args.module]
    elif args.module == "regular":
        V = regular_module(H)
    elif args.module == "trivial":
        V = trivial_module(H)
    else:
        raise UsageError(f"unknown module {args.module!r}; available: regular, trivial, "
                         + ", ".join(sorted(doc.modules)))
    if not s.absorb(V.verify()):
        return s
    if args.candidate is not None:
        source = "supplied"
        try:
            g = PivotalCandidate.from_element(_parse_vector(doc, args.candidate))
        except NotInvertible:
            s.report.add("pivotal_invertible", "pivotal", False, {"reason": "candidate is singular"})
            return s
    else:
        try:
            source, g = _pick_pivotal(H, G)
        except NoSolution as exc:
            s.report.add("pivotal_element_found", "pivotal", False, {"space_dimension": exc.space_dimension})
            return s
    s.results["pivotal"] = {"source": source, "g": _element(g.g)}
    if not s.absorb(verify_sovereign(H, g, G)):
        return s
    traces = []
    for k, f in enumerate(end_basis(V)):
        tl, tr = categorical_traces(V, f, g)
        traces.append({"endomorphism": k, "tr_l": str(tl), "tr_r": str(tr)})
    s.results["traces"] = traces
    rep = check_spherical(H, g, [V])
    s.absorb(rep)
    s.results["spherical"] = rep.passed
    return s


def cmd_example(args) -> Session:
    s = Session(f"example {args.family}", None)
    try:
        if args.family == "cyclic":
            n = args.n if args.n is not None else 2
            H = cyclic_qha(n, args.s, cyclotomic_order=args.cyclotomic_order)
            doc = AlgebraFile(H)
            if args.with_r:
                found = cyclic_r_matrices(H, n, args.s)
                if not found:
                    raise BadParameters(f"no diagonal R-matrix over Q(zeta_{H.field.N}) for n={n}")
                doc.r_matrix = found[0].r
        elif args.family == "group":
            H, R = group_hopf(args.n if args.n is not None else 2, with_r=args.with_r)
            doc = AlgebraFile(H, R.r if R else None)
        else:
            H, R = sweedler(_parse_param(args.r_param))
            doc = AlgebraFile(H, R.r)
    except (BadParameters, ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    s.report.add("builder_verified", "example", True)
    s.results["name"] = H.name
    s.results["dim"] = H.dim
    if args.output:
        dump(doc, args.output)
        s.results["written"] = args.output
    else:
        s.results["algebra"] = json.loads(dumps(doc))
    return s


def _parse_param(text: str):
    from fractions import Fraction

    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise BadParameters(f"r-param must be rational, got {text!r}") from None


def cmd_drinfeld(args) -> Session:
    doc, digest = _load(args.file)
    s = Session("drinfeld", digest)
    if not _hopf_suite(s, doc):
        return s
    H = doc.algebra
    G = compute_drinfeld_twist(H)
    for name, t in (("gamma", G.gamma), ("delta", G.delta), ("f", G.f), ("f_inv", G.f_inv)):
        s.results[name] = _sparse(t)
    if doc.r_matrix is not None:
        R = _qt_suite(s, doc)
        if R is None:
            return s
        try:
            U = compute_u(H, R, G)
        except InternalIdentityFailure as exc:
            s.absorb_failure(exc)
            return s
        s.absorb(U.report)
        s.results["u"] = _sparse(U.u)
        s.results["u_inv"] = _sparse(U.u_inv)
        s.results["u_S(u)"] = _sparse(U.casimir(H))
    return s


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quasihopf", description="Exact verification of quasi-Hopf algebra structures.")
    p.add_argument("--version", action="version", version=f"quasihopf {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_file=True):
        if with_file:
            sp.add_argument("file", help="algebra file (JSON)")
        sp.add_argument("--format", choices=("text", "json"), default="text", help="report format")
        sp.add_argument("-o", "--output", help="write the report (or, for example/ribbonize, the algebra) here")

    sp = sub.add_parser("verify", help="run the axiom suite up to a level")
    common(sp)
    sp.add_argument("--level", choices=LEVELS, default="hopf")
    sp.add_argument("--eta", help="ribbon element as a JSON list of scalars (level ribbon)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("ribbonize", help="build and verify the ribbon extension H(θ)")
    common(sp)
    sp.set_defaults(func=cmd_ribbonize)

    sp = sub.add_parser("pivotal", help="verify or search pivotal elements")
    common(sp)
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--candidate", help="candidate element as a JSON list of scalars")
    grp.add_argument("--solve", action="store_true", help="search the linear solution space (default)")
    grp.add_argument("--integral", action="store_true", help="use the normalized left integral")
    sp.set_defaults(func=cmd_pivotal)

    sp = sub.add_parser("traces", help="left/right categorical traces on a module")
    common(sp)
    sp.add_argument("--module", default="regular", help="module name from the file, or regular/trivial")
    sp.add_argument("--candidate", help="pivotal element as a JSON list of scalars")
    sp.set_defaults(func=cmd_traces)

    sp = sub.add_parser("example", help="write a verified example algebra")
    sp.add_argument("family", choices=("cyclic", "group", "sweedler"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--s", type=int, default=1, help="root exponent for the cyclic family")
    sp.add_argument("--with-r", action="store_true",
                    help="attach a verified R-matrix (group family: n = 2; cyclic family: first diagonal solution)")
    sp.add_argument("--cyclotomic-order", type=int, help="field Q(zeta_N) for the cyclic family (multiple of n)")
    sp.add_argument("--r-param", default="0", help="R-matrix parameter for the sweedler family")
    common(sp, with_file=False)
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("drinfeld", help="emit gamma, delta, f, f^-1 and, with an R-matrix, u")
    common(sp)
    sp.set_defaults(func=cmd_drinfeld)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        session = args.func(args)
    except (FormatError, UsageError, BadParameters) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuasiHopfError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = session.render(args.format)
    writes_algebra = args.command in ("example", "ribbonize")
    if args.output and not writes_algebra:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return session.exit_status


if __name__ == "__main__":
    sys.exit(main())
