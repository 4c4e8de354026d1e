"""``desingkit`` command line: analyze, kks, classify3, verdict, verify, emit.

Exit codes: 0 success or desingularizable, 1 verification failed,
2 invalid input, 3 non-desingularizable, 4 unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebroid import algebroid_from_json, algebroid_to_json, verify_desingularizes
from .desing import (
    DESINGULARIZABLE,
    NON_DESINGULARIZABLE,
    construct_heisenberg_algebroid,
    verdict,
)
from .errors import DesingError
from .liealg import (
    ABELIAN_FAMILY,
    builtin,
    center,
    classify3,
    derived_subalgebra,
    generic_symplectic_rank,
    is_abelian,
    is_nilpotent,
    is_reductive,
    is_semisimple,
    kks,
    liealg_from_json,
    liealg_to_json,
)
from .multivector import format_polyvector, polyvector_from_json, polyvector_to_json
from .symbolic import as_rational

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_NON_DESING = 3
EXIT_UNKNOWN = 4


class InputError(Exception):
    pass


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_algebra(path: str):
    return liealg_from_json(_load_json(path))


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _fmt_matrix(M) -> str:
    return "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in M) + "]"


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def cmd_analyze(args) -> int:
    g = _load_algebra(args.file)
    print(f"dim: {g.dim}")
    print(f"derived dim: {derived_subalgebra(g).dim}")
    print(f"center dim: {center(g).dim}")
    print(f"abelian: {_yes(is_abelian(g))}")
    print(f"nilpotent: {_yes(is_nilpotent(g))}")
    print(f"semisimple: {_yes(is_semisimple(g))}")
    print(f"reductive: {_yes(is_reductive(g))}")
    print(f"generic rank: {generic_symplectic_rank(g)}")
    return EXIT_OK


def cmd_kks(args) -> int:
    pi = kks(_load_algebra(args.file))
    if args.json:
        print(json.dumps(polyvector_to_json(pi), indent=2))
    else:
        print(format_polyvector(pi))
    return EXIT_OK


def cmd_classify3(args) -> int:
    g = _load_algebra(args.file)
    if g.dim != 3:
        raise InputError(f"classify3 needs a 3-dimensional algebra, got dimension {g.dim}")
    c = classify3(g)
    if c.family == ABELIAN_FAMILY:
        print("abelian")
    else:
        print(f"family {c.family}")
    if c.invariant is not None:
        q, s = c.invariant
        print(f"invariant (tr^2/|det|, sign det): ({q}, {s})")
    if c.parameter is not None:
        print(f"lambda: {c.parameter}")
    print(f"adapt: {_fmt_matrix(c.adapt)}")
    return EXIT_OK


def cmd_verdict(args) -> int:
    g = _load_algebra(args.file)
    iso = None
    if args.iso:
        iso = _load_json(args.iso)
    v = verdict(g, counterexample_iso=iso)
    print(f"verdict: {v.outcome}")
    if v.rule:
        print(f"rule: {v.rule}")
    for line in v.reasons:
        print(f"reason: {line}")
    if v.outcome == DESINGULARIZABLE:
        if args.certificate:
            _write_json(Path(args.certificate), algebroid_to_json(v.certificate))
            print(f"certificate: {args.certificate}")
        return EXIT_OK
    return EXIT_NON_DESING if v.outcome == NON_DESINGULARIZABLE else EXIT_UNKNOWN


def cmd_verify(args) -> int:
    A = algebroid_from_json(_load_json(args.algebroid))
    doc = _load_json(args.against)
    if isinstance(doc, dict) and "brackets" in doc:
        pi = kks(liealg_from_json(doc))
    elif isinstance(doc, dict) and "terms" in doc:
        pi = polyvector_from_json(doc)
        if pi.degree != 2:
            raise InputError("--against bivector must have degree 2")
    else:
        raise InputError(f"{args.against} is neither a Lie algebra nor a bivector document")
    report = verify_desingularizes(A, pi, check_jacobi=args.check_jacobi)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print("\n".join(report.lines()))
    return EXIT_OK if report.fully_verified else EXIT_FAILED


def _stem(name: str, args) -> str:
    if name in ("heisenberg", "abelian"):
        return f"{name}{args.n}"
    if name == "table1":
        stem = f"table1_family{args.family}"
        if args.lam is not None:
            stem += "_lambda" + args.lam.replace("/", "_").replace("-", "m")
        return stem
    return name


def cmd_emit(args) -> int:
    params = {}
    if args.name in ("heisenberg", "abelian"):
        params["n"] = args.n
    if args.name == "table1":
        if args.family is None:
            raise InputError("emit table1 needs --family")
        params["family"] = args.family
        if args.lam is not None:
            params["lam"] = as_rational(args.lam)
    g = builtin(args.name, **params)
    docs = {"": liealg_to_json(g), ".kks": polyvector_to_json(kks(g))}
    if args.name == "heisenberg":
        docs[".certificate"] = algebroid_to_json(construct_heisenberg_algebroid(args.n))
    else:
        v = verdict(g)
        if v.outcome == DESINGULARIZABLE:
            docs[".certificate"] = algebroid_to_json(v.certificate)
    if args.out is None:
        print(json.dumps(docs[""], indent=2))
        return EXIT_OK
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = _stem(args.name, args)
    for suffix, doc in docs.items():
        path = out / f"{stem}{suffix}.json"
        _write_json(path, doc)
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="desingkit", description="Exact Lie-Poisson desingularization toolkit.")
    sub = p.add_subparsers(dest="verb", required=True)

    a = sub.add_parser("analyze", help="structural invariants of a Lie algebra")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    k = sub.add_parser("kks", help="print the linear Poisson bivector")
    k.add_argument("file")
    k.add_argument("--json", action="store_true", help="emit polyvector JSON")
    k.set_defaults(func=cmd_kks)

    c = sub.add_parser("classify3", help="family of a 3-dimensional algebra")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify3)

    v = sub.add_parser("verdict", help="decide desingularizability")
    v.add_argument("file")
    v.add_argument("--certificate", metavar="OUT", help="write the certificate algebroid here")
    v.add_argument("--iso", metavar="MATRIX", help="JSON 6x6 basis matrix onto the 6D counterexample")
    v.set_defaults(func=cmd_verdict)

    f = sub.add_parser("verify", help="check an algebroid against a target")
    f.add_argument("algebroid")
    f.add_argument("--against", required=True, help="Lie algebra or bivector JSON")
    f.add_argument("--check-jacobi", action="store_true", help="always check Jacobi directly")
    f.add_argument("--json", action="store_true", help="emit the report as JSON")
    f.set_defaults(func=cmd_verify)

    e = sub.add_parser("emit", help="write JSON for a builtin algebra")
    e.add_argument("name")
    e.add_argument("--n", type=int, default=1)
    e.add_argument("--family", type=int)
    e.add_argument("--lambda", dest="lam")
    e.add_argument("--out", metavar="DIR")
    e.set_defaults(func=cmd_emit)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, DesingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
