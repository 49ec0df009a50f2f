"""Command-line front end.

Exit codes: 0 pass, 1 fail or error, 2 unsupported.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from . import fileio
from .ado import AdoInput, build_faithful, verify_representation
from .algebra import (
    ConformalAlgebra,
    center,
    check_anticommutativity,
    check_jacobi,
    derived_series,
    lower_central_series,
    verify_split_structure,
)
from .errors import (
    ConformalError,
    HypothesisViolation,
    NonSplitSpectrum,
    NotCocycle,
    ParseError,
    UnsupportedCurrentType,
)
from .extensions import check_cocycle, differential, split_cocycle
from .modules import check_module, find_irreducible_submodule, triangular_series
from .poly import vec_str

EXIT = {"pass": 0, "fail": 1, "error": 1, "unsupported": 2}


@dataclass
class Report:
    command: str
    status: str = "pass"
    findings: List[dict] = field(default_factory=list)
    residuals: List[str] = field(default_factory=list)

    def add(self, **kw) -> None:
        self.findings.append(kw)

    def fail(self, what: str, result) -> None:
        self.status = "fail"
        self.add(check=what, ok=False, detail=result.describe())
        if result.residual is not None:
            self.residuals.append(vec_str(result.residual))

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(
                {"command": self.command, "status": self.status, "findings": self.findings, "residuals": self.residuals},
                indent=2,
                ensure_ascii=False,
            )
        lines = [f"{self.command}: {self.status}"]
        for f in self.findings:
            lines.append("  " + ", ".join(f"{k}={v}" for k, v in f.items()))
        for r in self.residuals:
            lines.append(f"  residual {r}")
        return "\n".join(lines)


def _algebra(path: str, split_path: Optional[str] = None) -> ConformalAlgebra:
    wf = fileio.load(path)
    if wf.kind != "algebra":
        raise ParseError(f"{path}: expected an algebra file, found {wf.kind}", 1, 1)
    C = wf.payload
    if split_path:
        text = Path(split_path).read_text(encoding="utf-8")
        C = C.with_split(fileio.parse_split(text, C))
    return C


def _module(path: str, C: ConformalAlgebra):
    wf = fileio.load(path)
    if wf.kind != "module":
        raise ParseError(f"{path}: expected a module file, found {wf.kind}", 1, 1)
    return wf.payload.bind(C)


def _axioms(report: Report, C: ConformalAlgebra, label: str) -> None:
    for what, res in (("anti-commutativity", check_anticommutativity(C)), ("Jacobi", check_jacobi(C))):
        if res:
            report.add(object=label, check=what, ok=True)
        else:
            report.fail(what, res)
            report.findings[-1]["object"] = label


def cmd_check(args) -> Report:
    report = Report("check")
    C = M = None
    for path in args.files:
        wf = fileio.load(path)
        if wf.kind == "algebra":
            C = wf.payload
            _axioms(report, C, path)
            if C.split is not None:
                res = verify_split_structure(C, C.split)
                report.add(object=path, check="split structure", ok=bool(res), detail=res.describe())
                if not res:
                    report.status = "fail"
        elif wf.kind == "split":
            if C is None:
                raise ParseError(f"{path}: a split file needs a preceding algebra", 1, 1)
            res = verify_split_structure(C, fileio.parse_split(Path(path).read_text(encoding="utf-8"), C))
            report.add(object=path, check="split structure", ok=bool(res), detail=res.describe())
            if not res:
                report.status = "fail"
        elif wf.kind == "module":
            if C is None:
                raise ParseError(f"{path}: a module file needs a preceding algebra", 1, 1)
            M = wf.payload.bind(C)
            res = check_module(M)
            if res:
                report.add(object=path, check="module identity", ok=True)
            else:
                report.fail("module identity", res)
        else:
            if M is None:
                raise ParseError(f"{path}: a cochain file needs a preceding module", 1, 1)
            res = check_cocycle(wf.payload.bind(M))
            if res:
                report.add(object=path, check="cocycle identity", ok=True)
            else:
                report.fail("cocycle identity", res)
    return report


def cmd_series(args) -> Report:
    C = _algebra(args.algebra)
    series = derived_series(C) if args.kind == "derived" else lower_central_series(C)
    report = Report("series")
    for k, S in enumerate(series):
        report.add(step=k + 1, rank=S.rank, basis="; ".join(vec_str(b) for b in S.basis) or "0")
    ends_zero = series[-1].is_zero()
    verdict = ("solvable" if ends_zero else "not solvable") if args.kind == "derived" else (
        "nilpotent" if ends_zero else "not nilpotent")
    report.add(kind=args.kind, ranks=",".join(str(S.rank) for S in series), verdict=verdict)
    return report


def cmd_center(args) -> Report:
    C = _algebra(args.algebra)
    Z = center(C)
    report = Report("center")
    report.add(rank=Z.rank, basis="; ".join(vec_str(b) for b in Z.basis) or "0")
    return report


def cmd_irreducible(args) -> Report:
    C = _algebra(args.algebra, args.split)
    M = _module(args.module, C)
    found = find_irreducible_submodule(M, degree_bound=args.degree_bound)
    report = Report("irreducible")
    if found is None:
        report.add(result="none", reason="module is trivial over the Vir-bearing summand")
    else:
        report.add(spec=str(found.spec), generators="; ".join(vec_str(g) for g in found.generators),
                   basis="; ".join(vec_str(b) for b in found.submodule.basis))
    return report


def cmd_triangular(args) -> Report:
    C = _algebra(args.algebra, args.split)
    M = _module(args.module, C)
    report = Report("triangular")
    for k, layer in enumerate(triangular_series(M, degree_bound=args.degree_bound)):
        report.add(layer=k, tag=layer.tag, rank=layer.submodule.rank, detail=str(layer))
    return report


def cmd_split_ext(args) -> Report:
    C = _algebra(args.algebra, args.split)
    M = _module(args.module, C)
    wf = fileio.load(args.cochain)
    if wf.kind != "cochain":
        raise ParseError(f"{args.cochain}: expected a cochain file, found {wf.kind}", 1, 1)
    phi = wf.payload.bind(M)
    report = Report("split-ext")
    res = check_cocycle(phi)
    if not res:
        report.fail("cocycle identity", res)
        return report
    tau = split_cocycle(phi)
    rest = phi - differential(tau, M)
    report.add(tau="; ".join(vec_str(r) for r in tau.matrix), residual="0" if rest.is_zero() else "nonzero")
    return report


def cmd_ado(args) -> Report:
    C = _algebra(args.algebra, args.split)
    inp = AdoInput.make(C)
    rep = build_faithful(inp, args.degree_bound)
    cert = verify_representation(inp.algebra, rep)
    report = Report("ado", "pass" if cert.ok else "fail")
    report.add(module_rank=rep.rank, depth=rep.provenance.depth(), kernel="0" if cert.faithful else "; ".join(cert.kernel_basis))
    report.residuals.extend(r for _, r in cert.residuals)
    if args.out:
        Path(args.out).write_text(fileio.dump_module(rep.module), encoding="utf-8")
        report.add(module_file=args.out)
    if args.certificate:
        text = cert.to_json() if args.json else cert.to_text()
        Path(args.certificate).write_text(text, encoding="utf-8")
        report.add(certificate_file=args.certificate)
    return report


def cmd_verify_rep(args) -> Report:
    C = _algebra(args.algebra)
    M = _module(args.module, C)
    cert = verify_representation(C, M)
    report = Report("verify-rep", "pass" if cert.ok else "fail")
    report.add(module_rank=cert.module_rank, module_identity=cert.module_ok,
               kernel="0" if cert.faithful else "; ".join(cert.kernel_basis))
    report.residuals.extend(r for _, r in cert.residuals)
    if args.certificate:
        Path(args.certificate).write_text(cert.to_json() if args.json else cert.to_text(), encoding="utf-8")
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--seed", type=int, default=0, help="seed for any randomized step")
    common.add_argument("--degree-bound", type=int, default=6, help="∂-degree bound for submodule search")
    p = argparse.ArgumentParser(prog="confado", description="Exact computations with finite conformal Lie algebras.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="verify axioms of algebra/module/cochain files")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("series", parents=[common], help="derived or lower central series")
    s.add_argument("algebra")
    s.add_argument("--kind", choices=("derived", "lower-central"), default="derived")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("center", parents=[common], help="center of an algebra")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_center)

    for name, func, extra in (("irreducible", cmd_irreducible, ()), ("triangular", cmd_triangular, ()),
                              ("split-ext", cmd_split_ext, ("cochain",))):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("algebra")
        s.add_argument("module")
        for e in extra:
            s.add_argument(e)
        s.add_argument("--split", help="split structure file (if not inside the algebra file)")
        s.set_defaults(func=func)

    s = sub.add_parser("ado", parents=[common], help="build a faithful finite representation")
    s.add_argument("algebra")
    s.add_argument("split", nargs="?")
    s.add_argument("--out", help="write the representation as a module file")
    s.add_argument("--certificate", help="write the faithfulness certificate")
    s.set_defaults(func=cmd_ado)

    s = sub.add_parser("verify-rep", parents=[common], help="certify a module as a faithful representation")
    s.add_argument("algebra")
    s.add_argument("module")
    s.add_argument("--certificate")
    s.set_defaults(func=cmd_verify_rep)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    random.seed(args.seed)
    try:
        report = args.func(args)
    except ParseError as e:
        report = Report(args.command, "error")
        report.add(error="parse", message=str(e), line=e.line, column=e.column)
    except (UnsupportedCurrentType, HypothesisViolation) as e:
        report = Report(args.command, "unsupported")
        report.add(reason=type(e).__name__, message=str(e))
    except NonSplitSpectrum as e:
        report = Report(args.command, "error")
        report.add(error="NonSplitSpectrum", message=str(e), polynomial=e.polynomial)
    except NotCocycle as e:
        report = Report(args.command, "fail")
        report.add(error="NotCocycle", message=str(e))
    except (ConformalError, OSError) as e:
        report = Report(args.command, "error")
        report.add(error=type(e).__name__, message=str(e))
    print(report.render(args.json))
    return EXIT[report.status]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
