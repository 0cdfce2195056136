"""flagx command line.

Exit codes: 0 success, 1 usage error, 2 domain or mathematical error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction as Q

from . import report
from .extremality import (
    SURVEY_MAX_RANK,
    SURVEY_MIN_RANK,
    check_extremality,
    survey_full_flags,
)
from .flag import ConsistencyError, build_flag, t_root_decomposition
from .roots import FAMILIES, MIN_N, DomainError, build_root_system
from .spectrum import casimir_on_torus, center_basis, ke_parameter, metric_parameter, volume_ratio
from .su3 import BracketError, maximize_lambda1_on_curve, su3_lambda1_scan

EXIT_USAGE = 1
EXIT_DOMAIN = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _index_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text: str) -> Q:
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}")


def _family(text: str) -> str:
    fam = text.upper()
    if fam not in FAMILIES:
        raise argparse.ArgumentTypeError(f"family must be one of {', '.join(FAMILIES)}")
    return fam


def _families(text: str) -> list[str]:
    fams = [f.strip().upper() for f in text.split(",") if f.strip()]
    if not fams:
        raise argparse.ArgumentTypeError("empty family set")
    for f in fams:
        _family(f)
    return fams


def _common(p: argparse.ArgumentParser, scale: bool = True) -> None:
    p.add_argument("--format", choices=("json", "table"), default="json")
    if scale:
        p.add_argument("--scale", type=_rational, default=Q(1), help="form scale p/q (default 1)")


def _system_args(p: argparse.ArgumentParser, parabolic: bool = True) -> None:
    p.add_argument("family", type=_family, help="A, B, C or D")
    p.add_argument("n", type=int, help="classical parameter: su(n), so(2n+1), sp(n), so(2n)")
    if parabolic:
        p.add_argument(
            "--parabolic",
            type=_index_list,
            default=[],
            help="1-based simple roots kept in h (default: full flag)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flagx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("roots", help="dump a root system")
    _system_args(p, parabolic=False)
    _common(p)

    p = sub.add_parser("flag", help="flag manifold data and T-root decomposition")
    _system_args(p)
    _common(p)

    p = sub.add_parser("extremal", help="criticality verdict for the Kahler-Einstein metric")
    _system_args(p)
    _common(p)

    p = sub.add_parser("survey", help="verdicts over full flags of classical type")
    p.add_argument("--families", type=_families, default=list(FAMILIES))
    p.add_argument("--max-rank", type=int, default=None, help="largest Lie rank (default A9, B8, C8, D8)")
    _common(p)

    p = sub.add_parser("spectrum", help="Casimir of the adjoint representation on the torus")
    _system_args(p)
    p.add_argument("--xi", default=None, help="torus coordinates r1,...,rk (default: Kahler-Einstein)")
    p.add_argument("--float", action="store_true", help="parse --xi as floats")
    _common(p)

    p = sub.add_parser("su3", help="first eigenvalue along the SU(3)/T^2 volume curve")
    p.add_argument("mode", choices=("scan", "optimize"))
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--s-min", type=float, default=0.05)
    p.add_argument("--s-max", type=float, default=2.0)
    p.add_argument("--tol", type=float, default=1e-10)
    _common(p, scale=False)
    return parser


# --------------------------------------------------------------------------
# commands; each returns (outputs dict, table text)


def _check_n(family: str, n: int) -> None:
    if n < MIN_N[family]:
        raise UsageError(f"type {family} needs n >= {MIN_N[family]}, got {n}")


def _system_inputs(args, system) -> dict:
    inputs = {
        "family": system.family,
        "n": system.n,
        "rank": system.rank,
        "label": system.label,
        "algebra": system.algebra_name,
    }
    if hasattr(args, "parabolic"):
        inputs["parabolic"] = sorted(set(args.parabolic))
    return inputs


def _t_root_rows(decomposition) -> list[dict]:
    return [
        {"rho": c.rho, "multiplicity": c.multiplicity, "beta": c.beta} for c in decomposition
    ]


def _t_root_table(decomposition) -> str:
    return report.table(
        ["rho", "m", "beta"], [[c.rho, c.multiplicity, c.beta] for c in decomposition]
    )


def cmd_roots(args):
    _check_n(args.family, args.n)
    system = build_root_system(args.family, args.n, args.scale)
    delta = system.delta()
    out = {
        "ambient_dim": system.ambient_dim,
        "root_count": len(system.roots),
        "simple_roots": system.simple_roots,
        "positive_roots": system.positive_roots,
        "roots": system.roots,
        "delta": delta,
        "delta_norm2": system.inner(delta, delta),
    }
    text = "\n\n".join(
        [
            report.key_values(
                [
                    ("system", f"{system.label} = {system.algebra_name}"),
                    ("roots", len(system.roots)),
                    ("delta", delta),
                    ("||delta||^2", system.inner(delta, delta)),
                ]
            ),
            report.table(["#", "simple root"], [[i + 1, r] for i, r in enumerate(system.simple_roots)]),
            report.table(["positive root", "<a,delta>"], [[r, system.inner(r, delta)] for r in system.positive_roots]),
        ]
    )
    return _system_inputs(args, system), out, text


def cmd_flag(args):
    _check_n(args.family, args.n)
    system = build_root_system(args.family, args.n, args.scale)
    flag = build_flag(system, args.parabolic)
    dec = t_root_decomposition(flag)
    out = {
        "dim_complex": flag.dim_complex,
        "center_dim": flag.center_dim,
        "r_h_count": len(flag.r_h),
        "r_m_plus": flag.r_m_plus,
        "delta_m": flag.delta_m,
        "t_roots": _t_root_rows(dec),
    }
    text = "\n\n".join(
        [
            report.key_values(
                [
                    ("flag", flag.label),
                    ("dim_C M", flag.dim_complex),
                    ("dim c", flag.center_dim),
                    ("delta_m", flag.delta_m),
                ]
            ),
            _t_root_table(dec),
        ]
    )
    return _system_inputs(args, system), out, text


def cmd_extremal(args):
    _check_n(args.family, args.n)
    system = build_root_system(args.family, args.n, args.scale)
    flag = build_flag(system, args.parabolic)
    rep = check_extremality(flag)
    out = {
        "verdict": rep.verdict,
        "mu": rep.mu,
        "residual": rep.residual,
        "center_dim": rep.center_dim,
        "dim_complex": flag.dim_complex,
        "t_roots": _t_root_rows(rep.decomposition),
        "caveat": rep.caveat,
    }
    text = "\n\n".join(
        [
            report.key_values(
                [
                    ("flag", flag.label),
                    ("verdict", rep.verdict.value),
                    ("mu", rep.mu),
                    ("residual", rep.residual),
                    ("dim c", rep.center_dim),
                    ("note", rep.caveat),
                ]
            ),
            _t_root_table(rep.decomposition),
        ]
    )
    return _system_inputs(args, system), out, text


def cmd_survey(args):
    fams = sorted(set(args.families))
    if args.max_rank is not None:
        low = min(SURVEY_MIN_RANK[f] for f in fams)
        if args.max_rank < low:
            raise UsageError(f"--max-rank must be at least {low}")
    rows = survey_full_flags(fams, args.max_rank, form_scale=args.scale)
    out_rows = []
    for fam, rank, rep in rows:
        system = build_root_system(fam, rank + 1 if fam == "A" else rank)
        out_rows.append(
            {
                "family": fam,
                "rank": rank,
                "n": system.n,
                "label": system.label,
                "algebra": system.algebra_name,
                "verdict": rep.verdict,
                "mu": rep.mu,
                "residual_is_zero": all(x == 0 for x in rep.residual),
                "center_dim": rep.center_dim,
            }
        )
    extremal = [r["label"] for r in out_rows if r["verdict"].value == "EXTREMAL"]
    inputs = {
        "families": fams,
        "max_rank": {f: SURVEY_MAX_RANK[f] if args.max_rank is None else args.max_rank for f in fams},
    }
    out = {"rows": out_rows, "extremal": extremal}
    text = report.table(
        ["type", "algebra", "verdict", "mu"],
        [[r["label"], r["algebra"], r["verdict"].value, r["mu"]] for r in out_rows],
    )
    text += f"\n\nextremal: {', '.join(extremal) or 'none'}"
    return inputs, out, text


def _parse_xi(text: str, as_float: bool) -> list:
    parts = [p.strip() for p in text.split(",")]
    try:
        if as_float:
            return [float(p) for p in parts]
        return [Q(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --xi {text!r}")


def cmd_spectrum(args):
    _check_n(args.family, args.n)
    system = build_root_system(args.family, args.n, args.scale)
    flag = build_flag(system, args.parabolic)
    ke = ke_parameter(flag)
    if args.xi is None:
        xi = ke if not args.float else metric_parameter(flag, [float(c) for c in ke.coords])
    else:
        xi = metric_parameter(flag, _parse_xi(args.xi, args.float))
    rep = casimir_on_torus(flag, xi)
    p2 = rep.charpoly_at(2)
    out = {
        "xi": xi.coords,
        "xi_is_ke": tuple(xi.coords) == tuple(ke.coords),
        "ke_xi": ke.coords,
        "exact": rep.exact,
        "volume_ratio": volume_ratio(flag, xi),
        "d_matrix": rep.d_matrix,
        "charpoly": rep.charpoly,
        "charpoly_at_2": p2,
        "has_eigenvalue_2": rep.has_eigenvalue(2),
        "eigenvalues": rep.eigenvalues,
        "center_basis": center_basis(flag),
        "center_matrix": rep.center_matrix,
        "center_eigenvalues": rep.center_eigenvalues,
        "lambda1_candidate": rep.lambda1_candidate,
        "lambda1_note": "eigenvalue of the Laplacian (upper bound for lambda_1), not proven minimal",
    }
    inputs = _system_inputs(args, system)
    inputs["xi"] = None if args.xi is None else xi.coords
    inputs["float"] = bool(args.float)
    text = "\n\n".join(
        [
            report.key_values(
                [
                    ("flag", flag.label),
                    ("xi", xi.coords),
                    ("volume ratio", out["volume_ratio"]),
                    ("charpoly(2)", p2),
                    ("eigenvalue 2", rep.has_eigenvalue(2)),
                    ("lambda1 candidate", rep.lambda1_candidate),
                ]
            ),
            report.table(
                ["", *[f"H{k + 1}" for k in range(system.rank)]],
                [[f"H{i + 1}", *row] for i, row in enumerate(rep.d_matrix.tolist())],
            ),
            report.table(["torus eigenvalues"], [[x] for x in rep.eigenvalues]),
            report.table(["center eigenvalues"], [[x] for x in rep.center_eigenvalues]),
        ]
    )
    return inputs, out, text


def cmd_su3(args):
    if args.mode == "scan":
        if not (0 < args.s_min < args.s_max) or args.samples < 2:
            raise UsageError("need 0 < --s-min < --s-max and --samples >= 2")
        res = su3_lambda1_scan(args.samples, args.s_min, args.s_max)
        inputs = {"mode": "scan", "samples": args.samples, "s_min": args.s_min, "s_max": args.s_max}
        out = {
            "max_value": res.max_value,
            "argmax_s": res.argmax_s,
            "argmax_t": float(res.t[int(res.f.argmax())]),
            "bounded_by_2": bool(res.max_value <= 2 + 1e-12),
        }
    else:
        if not args.tol > 0:
            raise UsageError("--tol must be positive")
        if not (0 < args.s_min < args.s_max):
            raise UsageError("need 0 < --s-min < --s-max")
        res = maximize_lambda1_on_curve(args.tol, args.s_min, args.s_max)
        inputs = {"mode": "optimize", "tol": args.tol, "s_min": args.s_min, "s_max": args.s_max}
        out = {
            "s_star": res.s_star,
            "t_star": res.t_star,
            "f_star": res.f_star,
            "bracket": res.bracket,
            "evaluations": res.evaluations,
        }
    text = report.key_values(list(out.items()))
    return inputs, out, text


COMMANDS = {
    "roots": cmd_roots,
    "flag": cmd_flag,
    "extremal": cmd_extremal,
    "survey": cmd_survey,
    "spectrum": cmd_spectrum,
    "su3": cmd_su3,
}


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Execute a command; returns (exit code, stdout text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        inputs, outputs, text = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"flagx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""
    except (DomainError, BracketError, ConsistencyError) as exc:
        print(f"flagx: {exc}", file=sys.stderr)
        return EXIT_DOMAIN, ""
    if args.format == "table":
        return 0, text + "\n"
    if "scale" in args and args.command != "su3":
        inputs["scale"] = args.scale
    doc = {
        "schema_version": report.SCHEMA_VERSION,
        "command": args.command,
        "inputs": inputs,
        "outputs": outputs,
    }
    return 0, report.dumps(doc)


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
