"""Command-line entry point: ``artifact <subcommand> [flags]``.

Exit codes: 0 on success, 1 when a verification fails or a computation
raises, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import catalog, gw, local_model, modular, transition_limits
from .catalog import Cusp, TransitionCase
from .cyclotomic import Cyclotomic
from .qseries import GaussRational, Series

SUITES = ("pf", "modular", "gw", "translation", "remark-table", "all")
DEFAULT_BITS = 53


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Serialization


class Emitter:
    def __init__(self, bits: int):
        self.digits = max(1, math.ceil(bits * math.log10(2)))

    def real(self, x: float) -> str:
        return f"{x:.{self.digits}g}"

    def complex(self, z) -> list:
        z = complex(z)
        return [self.real(z.real), self.real(z.imag)]

    def value(self, x):
        if isinstance(x, bool) or x is None or isinstance(x, str):
            return x
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return {"num": str(x.numerator), "den": str(x.denominator)}
        if isinstance(x, GaussRational):
            return {"re": self.value(x.re), "im": self.value(x.im)}
        if isinstance(x, Cyclotomic):
            if x.is_rational():
                return self.value(x.to_fraction())
            parts = x.gaussian_parts()
            if parts is not None:
                return {"re": self.value(parts[0]), "im": self.value(parts[1])}
            return {"field": x.m, "coeffs": [self.value(c) for c in x.coeffs], "approx": self.complex(x)}
        if isinstance(x, (float,)):
            return self.real(x)
        if isinstance(x, complex):
            return self.complex(x)
        if isinstance(x, Series):
            return [self.value(c) for c in x.coeffs]
        if isinstance(x, dict):
            return {str(k): self.value(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [self.value(v) for v in x]
        return str(x)


def _text_scalar(x) -> str:
    if isinstance(x, dict) and set(x) == {"num", "den"}:
        return x["num"] if x["den"] == "1" else f"{x['num']}/{x['den']}"
    if isinstance(x, dict) and set(x) == {"re", "im"}:
        return f"({_text_scalar(x['re'])}) + ({_text_scalar(x['im'])})i"
    if isinstance(x, list):
        return "[" + ", ".join(_text_scalar(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_text_scalar(v)}" for k, v in x.items()) + "}"
    return str(x)


def write(payload: dict, fmt: str, out, table: tuple | None = None) -> None:
    """Emit a record; ``table`` = (header, rows) is used for csv."""
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if table is None:
            w.writerow(["key", "value"])
            for k, v in payload.items():
                w.writerow([k, json.dumps(v)])
        else:
            header, rows = table
            w.writerow(header)
            w.writerows(rows)
        out.write(buf.getvalue())
    else:
        for k, v in payload.items():
            out.write(f"{k}: {_text_scalar(v)}\n")


def _series_table(em: Emitter, named: dict) -> tuple:
    names = list(named)
    order = min(s.order for s in named.values())
    rows = []
    for n in range(order + 1):
        rows.append([n] + [_text_scalar(em.value(named[k][n])) for k in names])
    return ["n"] + names, rows


# ---------------------------------------------------------------------------
# Subcommands


def cmd_constants(args, em: Emitter) -> tuple[dict, None]:
    data = catalog.case_data(args.d)
    tp = data.transition_point
    payload = {
        "case": data.case.label,
        "degree": data.degree,
        "kappa": data.kappa,
        "lambda": data.lam,
        "mu": data.mu,
        "n_d": data.n_d,
        "hodge": list(data.hodge),
        "euler_defect": catalog.euler_defect(data.case),
        "level_group": data.level_group,
        "transition_point": str(tp) if tp is not None else None,
        "supported": data.supported,
    }
    return payload, None


def cmd_series(args, em: Emitter):
    N = args.order
    named = {
        "f": local_model.f_series(args.d, N),
        "g": local_model.g_series(args.d, N),
        "Q": local_model.mirror_Q(args.d, N),
        "E": local_model.extremal_series(args.d, N),
    }
    payload = {"case": TransitionCase.parse(args.d).label, "variable": "P", "order": N}
    payload.update({k: em.value(v) for k, v in named.items()})
    return payload, _series_table(em, named)


def cmd_mirror(args, em: Emitter):
    N = args.order
    P = modular.canonical_P_of_q(args.d, N).series
    named = {"P": P, "Q": modular.Q_of_q(args.d, N)}
    payload = {"case": TransitionCase.parse(args.d).label, "variable": "q", "order": N,
               "matches_hauptmodul": P == modular.hauptmodul_P(args.d, N).series}
    payload.update({k: em.value(v) for k, v in named.items()})
    return payload, _series_table(em, named)


def cmd_eisenstein(args, em: Emitter):
    combo = modular.extremal_eisenstein_combo(args.d)
    total = modular.combo_series(combo, args.order)
    payload = {
        "case": TransitionCase.parse(args.d).label,
        "terms": [{"coeff": em.value(c), "series": str(p)} for c, p in combo],
        "q_series": em.value(total),
    }
    return payload, _series_table(em, {"E": total})


def cmd_limit(args, em: Emitter):
    case = TransitionCase.parse(args.d)
    if args.real_axis or (args.cusp is None and not isinstance(catalog.transition_point(case), Cusp)):
        res = transition_limits.real_axis_limit(case)
        return {"case": case.label, "kind": "real_axis", "log_limit": em.real(res.log_limit),
                "value": em.complex(res.value), "error_estimate": em.real(res.error_estimate)}, None
    if args.cusp is None:
        tp = catalog.transition_point(case)
        r = transition_limits.CuspRep(tp.a, tp.c)
    else:
        r = transition_limits.CuspRep.parse(args.cusp)
    lim = transition_limits.cusp_limit(case, r)
    payload = {
        "case": case.label,
        "kind": "cusp",
        "cusp": str(r),
        "closed_form": {
            "const": em.value(lim.exact.const),
            "pi_i": em.value(lim.exact.pi_i),
            "lprime": [{"psi": str(psi), "coeff": em.value(c)} for psi, c in lim.trivial_part],
        },
        "log_value": em.complex(lim.log_value),
        "q_value": em.complex(lim.q_value),
        "modulus": em.real(abs(lim.q_value)),
        "root_of_unity": list(lim.root_of_unity) if lim.root_of_unity else None,
    }
    return payload, None


def cmd_path(args, em: Emitter):
    rows = transition_limits.path_image(args.d, args.dirs, args.samples, args.s_max)
    header = ["dir_index", "s", "q_re", "q_im", "P_re", "P_im", "Q_re", "Q_im"]
    table = []
    for row in rows:
        table.append([row.dir_index, em.real(row.s), *em.complex(row.q), *em.complex(row.P), *em.complex(row.Q)])
    payload = {"case": TransitionCase.parse(args.d).label, "columns": header, "rows": table}
    return payload, (header, table)


# ---------------------------------------------------------------------------
# Verification suites


def _suite_pf(N: int) -> list:
    n = min(N, 10)
    out = []
    for case in catalog.SUPPORTED:
        rep = gw.pf_verify(case, n)
        out.append((f"pf {case.label} order {n}", rep.ok, rep.failure or ""))
        if case in (TransitionCase.D1, TransitionCase.D2, TransitionCase.D3, TransitionCase.D4, TransitionCase.D8):
            bad = gw.recursion_matches_product(case, 8)
            out.append((f"recursion vs product {case.label}", bad is None, "" if bad is None else f"m={bad}"))
        fm = local_model.f_series(case, 6)
        ok = all(gw.mirror_term(case, m) == gw.E * (-fm[m] / m) for m in range(1, 7))
        out.append((f"mirror term {case.label}", ok, ""))
    return out


def _suite_modular(N: int) -> list:
    out = []
    for case in catalog.SUPPORTED:
        for res in modular.identity_suite(case, N):
            out.append((f"{case.label}: {res.name}", res.ok, "" if res.ok else f"first failure {res.first_failure}"))
    res = modular.six_level_relation(N)
    out.append((res.name, res.ok, ""))
    return out


def _suite_gw(N: int) -> list:
    n = min(N, 10)
    out = []
    for case in (TransitionCase.D5, TransitionCase.D6I, TransitionCase.D6II, TransitionCase.D8):
        rep = gw.regularized_limit_check(case, n)
        out.append((f"regularized limit {case.label}", rep.ok, ""))
    for case in catalog.SUPPORTED:
        ok = gw.x_one_point(case) == gw.gw_x_closed(case)["pt"][1]
        out.append((f"<pt>^X {case.label}", ok, ""))
    return out


def _suite_translation(N: int) -> list:
    out = [(f"worked example r={r}", a == b, "") for r, a, b in transition_limits.worked_examples()]
    for psi, r, resid in transition_limits.translation_battery():
        out.append((f"numeric {psi} at {r}", resid < 1e-10, f"{resid:.2e}"))
    return out


def _suite_remark(N: int) -> list:
    return [(f"d={b.case} r={b.r}", b.ok, b.detail) for b in transition_limits.remark_table_check()]


SUITE_FUNCS = {
    "pf": _suite_pf,
    "modular": _suite_modular,
    "gw": _suite_gw,
    "translation": _suite_translation,
    "remark-table": _suite_remark,
}


def cmd_verify(args, em: Emitter):
    names = list(SUITE_FUNCS) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        for label, ok, detail in SUITE_FUNCS[name](args.order):
            results.append({"suite": name, "check": label, "ok": bool(ok), "detail": detail})
    passed = all(r["ok"] for r in results)
    payload = {"suite": args.suite, "order": args.order, "passed": passed, "results": results}
    header = ["suite", "check", "ok", "detail"]
    return payload, (header, [[r[k] for k in header] for r in results])


# ---------------------------------------------------------------------------
# Argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _case_arg(text: str) -> str:
    try:
        return TransitionCase.parse(text).label
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    env_bits = os.environ.get("ARTIFACT_PRECISION_BITS")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--precision", type=_positive, default=int(env_bits) if env_bits else DEFAULT_BITS,
                        help="bits of precision for decimal output")
    parser = _Parser(prog="artifact", description="Mirror maps, modular identities and transition limits.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("constants", parents=[common])
    p.add_argument("--d", type=_case_arg, required=True)
    for name in ("series", "mirror", "eisenstein"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--d", type=_case_arg, required=True)
        p.add_argument("--order", type=_positive, default=10)
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--order", type=_positive, default=20)
    p = sub.add_parser("limit", parents=[common])
    p.add_argument("--d", type=_case_arg, required=True)
    p.add_argument("--cusp", help="a/c; defaults to the transition point")
    p.add_argument("--real-axis", action="store_true", help="use the real-axis quadrature route")
    p = sub.add_parser("path", parents=[common])
    p.add_argument("--d", type=_case_arg, required=True)
    p.add_argument("--dirs", type=_positive, default=12)
    p.add_argument("--samples", type=_positive, default=400)
    p.add_argument("--s-max", type=float, default=0.97)
    return parser


COMMANDS = {
    "constants": cmd_constants,
    "series": cmd_series,
    "mirror": cmd_mirror,
    "eisenstein": cmd_eisenstein,
    "verify": cmd_verify,
    "limit": cmd_limit,
    "path": cmd_path,
}


def _error(fmt: str, kind: str, message: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps({"error": {"kind": kind, "message": message}}) + "\n")
    print(f"error: {message}", file=sys.stderr)


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json"
    if "--format" in argv:
        i = argv.index("--format")
        if i + 1 < len(argv):
            fmt = argv[i + 1]
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _error(fmt, "usage", str(exc), out)
        return 2
    em = Emitter(args.precision)
    try:
        payload, table = COMMANDS[args.command](args, em)
    except (ValueError, ArithmeticError, NotImplementedError, catalog.UnsupportedCase) as exc:
        _error(args.format, type(exc).__name__, str(exc), out)
        return 1
    write(payload, args.format, out, table)
    if args.command == "verify" and not payload["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
