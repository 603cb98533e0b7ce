"""Command line front end.

Tables indexed by weights list them in lexicographic order of their residue
vectors, e.g. 0, 1, 2 for Z/3 and (0,0), (0,1), (1,0), (1,1) for Z/2 + Z/2.

Exit codes: 0 success, 1 domain-level rejection, 2 parse or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import coverinv, localmodel
from .document import DocumentError, load_cover

EPILOG = """\
Weight tables are indexed in lexicographic order of residue vectors.
Exit codes: 0 success/admissible, 1 domain-level rejection, 2 parse or internal error.
"""


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated integer list, got {text!r}")


def _load(args):
    try:
        return load_cover(args.path)
    except OSError as exc:
        raise DocumentError(str(exc)) from None


def invariants_report(c: coverinv.CoverData) -> dict:
    weights = c.group.elements()
    degrees = [coverinv.deg_eigensheaf(c, lam) for lam in weights]
    out = {
        "genus": coverinv.hurwitz_genus(c),
        "weights": [str(lam) for lam in weights],
        "eigensheaf_degrees": [int(d) for d in degrees],
        "canonical_multiplicities": [m for _, m in coverinv.canonical_divisor(c)],
    }
    if coverinv.is_p_power_cyclic(c):
        out["tangent_degree"] = coverinv.tangent_degree(c)
        out["fixed_locus_degree"] = coverinv.fixed_locus_degree(c)
    return out


def character_report(c: coverinv.CoverData) -> dict:
    ch = coverinv.equivariant_genus(c)
    genus = coverinv.hurwitz_genus(c)
    coeffs = {str(lam): int(ch.coeff(lam)) for lam in c.group.elements()}
    if coeffs[str(c.group.zero())] != c.base_genus or sum(coeffs.values()) != genus:
        raise RuntimeError("character is inconsistent with the genus")
    return {"character": coeffs, "genus": genus}


def cmd_validate(args) -> int:
    c = _load(args)
    report = coverinv.validate(c)
    payload = {
        "admissible": report.ok,
        "violations": [
            {"code": v.code, "message": v.message, "warning": v.warning} for v in report.violations
        ],
    }
    _emit(args, payload, str(report))
    return 0 if report.ok else 1


def cmd_invariants(args) -> int:
    c = _load(args)
    rep = invariants_report(c)
    lines = [f"genus: {rep['genus']}", "eigensheaf degrees:"]
    lines += [f"  {w}: {d}" for w, d in zip(rep["weights"], rep["eigensheaf_degrees"])]
    lines.append("canonical multiplicities: " + " ".join(map(str, rep["canonical_multiplicities"])))
    for key in ("tangent_degree", "fixed_locus_degree"):
        if key in rep:
            lines.append(f"{key.replace('_', ' ')}: {rep[key]}")
    _emit(args, rep, "\n".join(lines))
    return 0


def cmd_character(args) -> int:
    c = _load(args)
    rep = character_report(c)
    text = "\n".join(f"{w}: {m}" for w, m in rep["character"].items())
    _emit(args, rep, text)
    return 0


def local_model_report(A: localmodel.LocalModelAlgebra) -> dict:
    ideal = localmodel.largest_graded_ideal(A, strict=False)
    xi = localmodel.derivation_xi(A)
    try:
        dec = localmodel.fibre_decompose(localmodel.fibre(A))
        decomposition = {
            "index": dec.index,
            "fixed_weights": [str(k) for k in sorted(dec.K.elements)],
            "generator_coset": [str(x) for x in sorted(dec.generator_coset)],
            "nilpotency": dec.nilpotency,
        }
    except localmodel.DecompositionError as exc:
        decomposition = {"error": str(exc)}
    checks = dict(ideal.checks)
    checks["xi_is_nu_T2_d2"] = xi.agrees
    checks["fibre_decomposition"] = "error" not in decomposition
    return {
        "rank": A.rank,
        "basis": [A.format_monomial(m) for m in A.basis],
        "weights": [A.weight(m).residues[0] for m in A.basis],
        "f": str(ideal.f),
        "f_power": f"f^{ideal.exponent} = {ideal.f_power}",
        "decomposition": decomposition,
        "zero_ideal_dim": xi.zero_ideal_dim,
        "tangent_weight": str(xi.tangent_weight),
        "checks": checks,
    }


def cmd_local_model(args) -> int:
    A = localmodel.build_local_model(args.p, args.r, args.s, args.nu, args.unit, args.trunc)
    rep = local_model_report(A)
    dec = rep["decomposition"]
    lines = [
        f"A = B[T1,T2]/(T1^{args.p ** (args.r - args.s)} - u, T2^{args.p ** args.s} - t*T1^{args.nu})"
        f" over F_{args.p}[t]/(t^{args.trunc}), u = {A.base.format(A.u)}",
        f"rank: {rep['rank']}",
        "basis (weight): " + ", ".join(f"{b} ({w})" for b, w in zip(rep["basis"], rep["weights"])),
        f"f = {rep['f']}",
        rep["f_power"],
    ]
    if "error" in dec:
        lines.append(f"fibre decomposition failed: {dec['error']}")
    else:
        lines.append(f"fixed characters K: index {dec['index']}")
        lines.append("generator weight coset: {" + ", ".join(dec["generator_coset"]) + "}")
    lines.append(f"zero_ideal_dim: {rep['zero_ideal_dim']}")
    lines.append(f"tangent weight: {rep['tangent_weight']}")
    lines += [f"check {name}: {'ok' if good else 'FAILED'}" for name, good in rep["checks"].items()]
    _emit(args, rep, "\n".join(lines))
    return 0 if all(rep["checks"].values()) else 1


def cmd_check_normal(args) -> int:
    normal = localmodel.is_mu_n_normal(args.p, args.n, args.g)
    _emit(args, {"normal": normal}, "mu_n-normal" if normal else "not mu_n-normal")
    return 0 if normal else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diagcovers",
        description="Invariants of covers of curves by finite diagonalizable group schemes.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help, epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    for name, func, help in [
        ("validate", cmd_validate, "check admissibility of a cover document"),
        ("invariants", cmd_invariants, "genus, eigensheaf degrees and canonical divisor"),
        ("character", cmd_character, "character of H^0(X, omega_X)"),
    ]:
        add(name, func, help).add_argument("path")

    p = add("local-model", cmd_local_model, "build and check a local model algebra")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--unit", type=_int_list, default=[1], help="coefficients of u, lowest first")
    p.add_argument("--trunc", type=int, default=8, help="truncation order N of F_p[t]/(t^N)")

    p = add("check-normal", cmd_check_normal, "mu_n-normality of B[T]/(T^n - g)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=_int_list, required=True, help="coefficients of g, lowest first")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except coverinv.InadmissibleCover as exc:
        print(str(exc.report), file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
