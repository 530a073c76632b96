"""Batch front end over the library, with stable exit codes and byte-stable reports.

Verbs
-----
check      alpha-ellipticity verdict for a bundle+symbol document
decompose  isotypical multiplicities of a representation document
induce     induce a subgroup character and tabulate the multiplicities
prim       orbit/isotype enumeration for a bundle document
bvp        interval boundary-value spectra via the doubled circle
sweep      Fredholm proxy sweep of a named operator family

Exit codes: 0 report written and the checked criterion holds; 2 report written
but the criterion fails (not elliptic, degenerating sweep, undecidable rank);
1 malformed input, with a document pointer on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bundles import (
    ModelInconsistencyError,
    alpha_elliptic_check,
    prim_enumerate,
    validate_bundle,
)
from .groups import SubgroupCharacter, character, subgroup_from_generators
from .lab import (
    analytic_bvp_spectrum,
    build_fixed_point_degenerate_operator,
    build_invariant_circle_operator,
    double_interval_bvp,
    fredholm_proxy_sweep,
    mixed_bvp_spectrum,
    reflection_circle_rep,
    GridOperator,
)
from .reps import AmbiguousRankError, character_rep, decompose, induce
from .serialize import (
    InputDocumentError,
    canonical_json,
    character_doc,
    group_doc,
    load_bundle,
    load_group,
    load_rep,
    multiplicity_doc,
    rep_doc,
)


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags by default; 2 is reserved for
    # "criterion fails", so flag problems are remapped to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(self._exit_with(message))

    def _exit_with(self, message: str) -> int:
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return 1


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _bc_pair(text: str) -> tuple[str, str]:
    parts = tuple(p.strip() for p in text.split(","))
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected left,right boundary conditions")
    return parts  # type: ignore[return-value]


def _load_json(path: str):
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}")
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputDocumentError(f"/(line {exc.lineno})", f"invalid JSON: {exc.msg}")


def _emit(args, doc) -> None:
    text = canonical_json(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _alpha_for(group, exponents):
    if len(exponents) != len(group.orders):
        raise _CliError(
            f"--alpha has {len(exponents)} exponents, group has {len(group.orders)} factors"
        )
    return character(group, exponents)


def _checked_bundle(args):
    doc = _load_json(args.input)
    bundle, symbol = load_bundle(doc)
    validation = validate_bundle(bundle)
    if not validation.ok:
        for v in validation.violations[:10]:
            print(f"input error at {v.location}: {v.detail}", file=sys.stderr)
        raise SystemExit(1)
    return bundle, symbol


def cmd_check(args) -> int:
    bundle, symbol = _checked_bundle(args)
    if symbol is None:
        raise InputDocumentError("/symbol", "missing (check needs a symbol field)")
    alpha = _alpha_for(bundle.group, args.alpha)
    report = alpha_elliptic_check(symbol, alpha, tol=args.tol)
    doc = {
        "alpha": character_doc(report.alpha),
        "gamma0": [list(g) for g in report.gamma0.elements],
        "tol": report.tol,
        "verdict": "elliptic" if report.verdict else "not-elliptic",
        "warnings": list(report.warnings),
        "entries": [
            {
                "point": e.point,
                "isotype": character_doc(e.rho),
                "orbit_representative": e.orbit_representative,
                "block_dim": e.block_dim,
                "smallest_singular_value": e.smallest_singular_value,
                "condition_estimate": e.condition_estimate,
            }
            for e in report.entries
        ],
    }
    _emit(args, doc)
    return 0 if report.verdict else 2


def cmd_decompose(args) -> int:
    rep = load_rep(_load_json(args.input))
    mv = decompose(rep)
    doc = {"group": group_doc(rep.carrier), "multiplicities": multiplicity_doc(mv)}
    _emit(args, doc)
    return 0


def cmd_induce(args) -> int:
    doc_in = _load_json(args.input)
    if not isinstance(doc_in, dict):
        raise InputDocumentError("/", "expected an object")
    group = load_group(doc_in.get("group"), "/group")
    gens_node = doc_in.get("subgroup_generators")
    if not isinstance(gens_node, list):
        raise InputDocumentError("/subgroup_generators", "expected an array of elements")
    gens = []
    for i, g in enumerate(gens_node):
        if not isinstance(g, list) or len(g) != len(group.orders):
            raise InputDocumentError(
                f"/subgroup_generators/{i}", f"expected {len(group.orders)} residues"
            )
        gens.append([int(x) for x in g])
    exps = doc_in.get("character_exponents")
    if not isinstance(exps, list) or len(exps) != len(group.orders):
        raise InputDocumentError(
            "/character_exponents", f"expected {len(group.orders)} exponents"
        )
    sub = subgroup_from_generators(group, gens)
    rho = SubgroupCharacter(sub, character(group, [int(x) for x in exps]))
    ind = induce(character_rep(rho), group)
    mv = decompose(ind)
    doc = {
        "group": group_doc(group),
        "subgroup": [list(h) for h in sub.elements],
        "character": character_doc(rho),
        "dim": ind.dim,
        "induced": rep_doc(ind),
        "multiplicities": multiplicity_doc(mv),
    }
    _emit(args, doc)
    return 0


def cmd_prim(args) -> int:
    bundle, _ = _checked_bundle(args)
    records = prim_enumerate(bundle)
    doc = {
        "group": group_doc(bundle.group),
        "records": [
            {
                "representative": r.representative,
                "orbit": list(r.orbit),
                "isotypes": [character_doc(rho) for rho in r.isotypes],
                "fiber_size": len(r.isotypes),
            }
            for r in records
        ],
    }
    _emit(args, doc)
    return 0


def cmd_bvp(args) -> int:
    tables = []
    for n in args.sizes:
        problem = double_interval_bvp(n, args.bc)
        eigs = mixed_bvp_spectrum(problem, args.count)
        tables.append({"n": n, "eigenvalues": [float(x) for x in eigs]})
    doc = {
        "bc": list(problem.bc),
        "count": args.count,
        "analytic": [float(x) for x in analytic_bvp_spectrum(args.bc, args.count)],
        "tables": tables,
    }
    _emit(args, doc)
    return 0


_SWEEP_FAMILIES = {
    "reflection_laplacian": lambda n: build_invariant_circle_operator(
        n, 2, "shifted_laplacian", action="reflection"
    ),
    "degenerate_even": build_fixed_point_degenerate_operator,
    "zero": lambda n: GridOperator(
        n, np.zeros((n, n), dtype=complex), reflection_circle_rep(n), "zero"
    ),
}


def cmd_sweep(args) -> int:
    if args.family not in _SWEEP_FAMILIES:
        raise _CliError(
            f"unknown family {args.family!r}; choose from {sorted(_SWEEP_FAMILIES)}"
        )
    family = _SWEEP_FAMILIES[args.family]
    probe = family(min(args.sizes))
    alpha = _alpha_for(probe.group_rep.carrier, args.alpha)
    sweep = fredholm_proxy_sweep(family, alpha, args.sizes, k=args.k)
    doc = {
        "family": args.family,
        "alpha": character_doc(sweep.alpha),
        "k": sweep.k,
        "sizes": list(sweep.sizes),
        "values": list(sweep.values),
        "verdict": sweep.verdict,
    }
    _emit(args, doc)
    return 0 if sweep.verdict == "stable" else 2


def build_parser() -> _Parser:
    parser = _Parser(prog="equifred", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, with_alpha=False):
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--tol", type=float, default=1e-8, help="numerical tolerance")
        if with_alpha:
            p.add_argument(
                "--alpha", type=_csv_ints, required=True,
                help="character exponents, comma-separated",
            )

    p = sub.add_parser("check", help="alpha-ellipticity of a bundle+symbol document")
    p.add_argument("--input", required=True)
    common(p, with_alpha=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="isotypical multiplicities of a representation")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("induce", help="induce a subgroup character to the full group")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("prim", help="orbit/isotype enumeration of a bundle")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_prim)

    p = sub.add_parser("bvp", help="interval boundary-value spectra by doubling")
    p.add_argument("--bc", type=_bc_pair, required=True, help="left,right (dirichlet/neumann)")
    p.add_argument("--sizes", type=_csv_ints, default=(64, 128, 256))
    p.add_argument("--count", type=int, default=5, help="how many eigenvalues")
    common(p)
    p.set_defaults(func=cmd_bvp)

    p = sub.add_parser("sweep", help="Fredholm proxy sweep of a named operator family")
    p.add_argument("--family", required=True, help=f"one of {sorted(_SWEEP_FAMILIES)}")
    p.add_argument("--sizes", type=_csv_ints, default=(32, 64, 128))
    p.add_argument("--k", type=int, default=4, help="which smallest singular value to track")
    common(p, with_alpha=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "tol", 1.0) <= 0:
            raise _CliError("--tol must be positive")
        return args.func(args)
    except InputDocumentError as exc:
        print(f"input error at {exc}", file=sys.stderr)
        return 1
    except _CliError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except AmbiguousRankError as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return 2
    except (ModelInconsistencyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
