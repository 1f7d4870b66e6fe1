"""Batch front-end: build | associate | attach | verify pipelines over JSON.

Commands compose through stdin/stdout, e.g.

    solvcurv build orthogonal 3 5 | solvcurv associate --preset wb:1 \
        | solvcurv attach --z 1,1,0 | solvcurv verify

Algebra documents use schema "solvcurv/1"; output is byte-deterministic
for a fixed command line and seed.  Exit codes: 0 success (for `verify`
and `sweep`, additionally: every check passed), 1 a check failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import re
import sys

import numpy as np

from . import serialize
from .builders import (
    MetricSolvLieAlgebra,
    association_flags,
    build_symmetric,
    count_constructions,
)
from .curvature import (
    bracket_vec,
    curvature_report,
    einstein_check,
    fingerprint,
    sectional,
    u_form,
)
from .errors import ParamError, SolvcurvError
from .roots import CharacteristicElement
from .transforms import associate, attach

_TERM_SPLIT = re.compile(r"([+-])(?=[A-Za-z])")


def parse_plane_expr(s: MetricSolvLieAlgebra, expr: str) -> np.ndarray:
    """Vector from an expression like 'U27+U28' or '0.5*Y12--Z12-'.

    Separators are '+'/'-' immediately followed by a letter, so trailing
    sign characters in generator names (Y12-, A12+) stay attached.
    """
    expr = expr.strip().replace(" ", "")
    if not expr:
        raise ParamError("empty plane expression")
    pieces = _TERM_SPLIT.split(expr)
    terms = []
    sign = 1.0
    for i, piece in enumerate(pieces):
        if i % 2 == 1:
            sign = -1.0 if piece == "-" else 1.0
            continue
        if piece == "" and i == 0:
            continue
        coef = sign
        name = piece
        if "*" in piece:
            c, name = piece.split("*", 1)
            coef = sign * float(c)
        terms.append((name, coef))
        sign = 1.0
    v = np.zeros(s.dim)
    for name, coef in terms:
        v[s.gen_index(name)] += coef
    return v


def _read_algebra() -> MetricSolvLieAlgebra:
    import json

    text = sys.stdin.read()
    if not text.strip():
        raise SolvcurvError("expected an algebra document on stdin")
    return serialize.algebra_from_jsonable(json.loads(text))


def _family_params(args) -> tuple[str, tuple[int, ...]]:
    family = args.family_pos or args.family
    if family is None:
        raise ParamError("a family is required (positional or --family)")
    pos = [int(v) for v in args.params]
    if pos:
        return family, tuple(pos)
    if family in ("orthogonal", "unitary", "symplectic"):
        if args.p is None or args.q is None:
            raise ParamError(f"{family} needs p and q")
        return family, (args.p, args.q)
    if args.n is None:
        raise ParamError(f"{family} needs n")
    return family, (args.n,)


def _parse_z(text: str) -> CharacteristicElement:
    try:
        vec = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise ParamError(f"bad --z value {text!r}") from exc
    if any(v < 0 for v in vec) or not any(vec):
        raise ParamError("--z wants nonnegative integers, not all zero")
    return CharacteristicElement.from_vector(vec)


def _flags_for(s: MetricSolvLieAlgebra, args):
    if args.preset and args.flags:
        raise ParamError("give either --preset or --flags, not both")
    if args.preset:
        preset = args.preset
        choice = None
        if preset.startswith("wb:"):
            choice = int(preset.split(":", 1)[1])
        elif preset != "canonical":
            raise ParamError(f"unknown preset {preset!r}")
        return association_flags(s.rs.family, s.rs.params, choice)
    if args.flags:
        names = [t for t in args.flags.split(",") if t]
        flagged = {s.labels[s.gen_index(n)] for n in names}
        table = {
            lab: int(lab in flagged) for lab in s.labels[s.dim_a :]
        }
        from .builders import SignFlagAssignment

        return SignFlagAssignment.from_dict(table, description="explicit")
    raise ParamError("associate needs --preset or --flags")


def _emit(doc: dict) -> None:
    sys.stdout.write(serialize.dumps(doc))


def cmd_build(args) -> int:
    family, params = _family_params(args)
    s, _ = build_symmetric(family, *params)
    _emit(serialize.algebra_to_jsonable(s))
    return 0


def cmd_associate(args) -> int:
    s = _read_algebra()
    s2 = associate(s, _flags_for(s, args))
    _emit(serialize.algebra_to_jsonable(s2))
    return 0


def cmd_attach(args) -> int:
    s = _read_algebra()
    s2 = attach(s, _parse_z(args.z))
    _emit(serialize.algebra_to_jsonable(s2))
    return 0


def cmd_verify(args) -> int:
    s = _read_algebra()
    report = curvature_report(s, tol=args.tol, samples=args.samples, seed=args.seed)
    if args.format == "text":
        status = "PASS" if report.passed else "FAIL"
        sys.stdout.write(
            f"einstein {status}: c = {report.einstein_constant:.12g}, "
            f"deviation = {report.deviation:.3e} (tol {report.tolerance:.1e}), "
            f"dim = {s.dim}\n"
        )
    else:
        _emit(serialize.report_to_jsonable(report))
    return 0 if report.passed else 1


def cmd_probe(args) -> int:
    s = _read_algebra()
    xs, ys = args.plane.split(",")
    x = parse_plane_expr(s, xs)
    y = parse_plane_expr(s, ys)
    k = sectional(s, x, y)
    u = u_form(s, x / np.linalg.norm(x), y / np.linalg.norm(y))
    doc = {
        "schema": serialize.SCHEMA,
        "kind": "plane_probe",
        "x": xs,
        "y": ys,
        "K": k,
        "bracket_norm": float(np.linalg.norm(bracket_vec(s, x, y))),
        "u_norm": float(np.linalg.norm(u)),
    }
    _emit(doc)
    return 0


def cmd_fingerprint(args) -> int:
    s = _read_algebra()
    _emit(serialize.fingerprint_to_jsonable(fingerprint(s)))
    return 0


def _sweep_presets(family: str, params: tuple[int, ...]) -> list[str]:
    presets = ["none"]
    if family in ("orthogonal", "unitary", "symplectic"):
        p, q = params
        presets += [f"wb:{a}" for a in range(1, (q - p) // 2 + 1)]
    else:
        presets.append("canonical")
    return presets


def cmd_sweep(args) -> int:
    family, params = _family_params(args)
    s, _ = build_symmetric(family, *params)
    rank = s.rs.rank
    if rank > args.max_rank:
        raise ParamError(f"rank {rank} exceeds the sweep guard {args.max_rank}")
    presets = (
        [t for t in args.presets.split(",") if t]
        if args.presets
        else _sweep_presets(family, params)
    )
    associates = {}
    for preset in presets:
        if preset == "none":
            associates[preset] = s
        else:
            choice = int(preset.split(":", 1)[1]) if preset.startswith("wb:") else None
            associates[preset] = associate(
                s, association_flags(family, params, choice)
            )
    rows = ["family,support,preset,dim,c,deviation,pass"]
    all_pass = True
    for mask in range(1, 2**rank):
        support = [i + 1 for i in range(rank) if mask >> i & 1]
        z = CharacteristicElement.from_dict({i: 1 for i in support})
        for preset in presets:
            sz = attach(associates[preset], z)
            c, dev, ok = einstein_check(sz, tol=args.tol)
            all_pass &= ok
            rows.append(
                f"{family},{'+'.join(map(str, support))},{preset},{sz.dim},"
                f"{format(c, '.12g')},{format(dev, '.3e')},{str(ok).lower()}"
            )
    sys.stdout.write("\n".join(rows) + "\n")
    return 0 if all_pass else 1


def cmd_count(args) -> int:
    family, params = _family_params(args)
    associates, attached = count_constructions(family, params)
    _emit(
        {
            "schema": serialize.SCHEMA,
            "kind": "construction_count",
            "family": family,
            "params": list(params),
            "associates": associates,
            "attached_upper_bound": attached,
        }
    )
    return 0


def _add_family_args(sp) -> None:
    sp.add_argument("family_pos", nargs="?", default=None, metavar="family")
    sp.add_argument("params", nargs="*", type=int, default=[], metavar="param")
    sp.add_argument("--family", default=None)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--q", type=int, default=None)
    sp.add_argument("--n", type=int, default=None)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="solvcurv",
        description="metric solvable Lie algebras: build, transform, certify",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", help="construct a symmetric-space algebra")
    _add_family_args(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("associate", help="apply a sign-flag assignment")
    sp.add_argument("--preset", default=None, help="wb:<a> or canonical")
    sp.add_argument("--flags", default=None, help="comma list of generator names")
    sp.set_defaults(func=cmd_associate)

    sp = sub.add_parser("attach", help="restrict along a characteristic grading")
    sp.add_argument("--z", required=True, help="comma coefficients over the simple roots")
    sp.set_defaults(func=cmd_attach)

    sp = sub.add_parser("verify", help="Einstein certification report")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--samples", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("probe", help="sectional curvature of an explicit plane")
    sp.add_argument("--plane", required=True, help="expr,expr over generator names")
    sp.set_defaults(func=cmd_probe)

    sp = sub.add_parser("fingerprint", help="numerical invariant record")
    sp.set_defaults(func=cmd_fingerprint)

    sp = sub.add_parser("sweep", help="enumerate supports x presets, CSV summary")
    _add_family_args(sp)
    sp.add_argument("--presets", default=None, help="comma list; default: all")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--max-rank", type=int, default=12)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("count", help="associate and attached construction counts")
    _add_family_args(sp)
    sp.set_defaults(func=cmd_count)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolvcurvError as exc:
        sys.stderr.write(
            serialize.dumps(
                {
                    "schema": serialize.SCHEMA,
                    "kind": "error",
                    "error": type(exc).__name__,
                    "message": str(exc),
                }
            )
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
