"""Command-line front end (installed as `gf`).

One subcommand per pipeline: residue counting, Carlitz/Drinfeld
torsion, class numbers, fundamental units, j-invariant values, Hilbert
class polynomials, the generator harness, and blow-up resolution.
Reports are emitted as JSON (sorted keys), CSV, or plain text; every
non-integer numeric value is a decimal string, so identical inputs and
configuration produce byte-identical output.  Defaults come from
built-ins, then GF_PRECISION, then an optional key=value config file,
then flags.  Exit code 2 flags bad syntax (argument or input text
parsing), 1 flags domain errors from the library, 0 is success.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict, dataclass

from . import blowup, cmfields, drinfeld, ffpoly
from .exactnum import PrecisionComplex

__all__ = ["main", "RunConfig"]


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce a run (plus the inputs)."""

    precision: int = 256
    max_degree: int = None
    seed: int = 0
    fmt: str = "json"
    output: str = None

    def as_record(self) -> dict:
        d = asdict(self)
        d["format"] = d.pop("fmt")
        return d


class DomainError(Exception):
    """Wrapper signalling exit code 1."""


class UsageError(Exception):
    """Wrapper signalling exit code 2 (bad arguments, not bad mathematics)."""


def _load_config_file(path: str) -> dict:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def _build_config(args) -> RunConfig:
    precision = 256
    seed = 0
    fmt = "json"
    output = None
    max_degree = None

    env_prec = os.environ.get("GF_PRECISION")
    if env_prec:
        precision = int(env_prec)
    if args.config:
        cfg = _load_config_file(args.config)
        if "precision" in cfg:
            precision = int(cfg["precision"])
        if "seed" in cfg:
            seed = int(cfg["seed"])
        if "format" in cfg:
            fmt = cfg["format"]
        if "output" in cfg:
            output = cfg["output"]
        if "max_degree" in cfg:
            max_degree = int(cfg["max_degree"])
    if args.precision is not None:
        precision = args.precision
    if args.seed is not None:
        seed = args.seed
    if args.format is not None:
        fmt = args.format
    if args.output is not None:
        output = args.output
    if getattr(args, "max_degree", None) is not None:
        max_degree = args.max_degree
    if fmt not in ("json", "csv", "text"):
        raise ValueError(f"unknown output format {fmt!r}")
    return RunConfig(precision=precision, max_degree=max_degree, seed=seed,
                     fmt=fmt, output=output)


# ---------------------------------------------------------------------------
# Report emission
# ---------------------------------------------------------------------------


def _flatten(value):
    if isinstance(value, (list, tuple)):
        return ";".join(str(_flatten(v)) for v in value)
    if isinstance(value, dict):
        return ";".join(f"{k}={_flatten(v)}" for k, v in sorted(value.items()))
    return value


def _emit(record: dict, config: RunConfig, stream) -> None:
    if config.fmt == "json":
        stream.write(json.dumps(record, sort_keys=True, indent=2, default=str))
        stream.write("\n")
    elif config.fmt == "csv":
        keys = sorted(record)
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(keys)
        writer.writerow([_flatten(record[k]) for k in keys])
    else:
        for key in sorted(record):
            stream.write(f"{key}: {record[key]}\n")


def _with_config(record: dict, config: RunConfig) -> dict:
    record["config"] = config.as_record()
    return record


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------


def _field_for(q: int) -> ffpoly.FqConfig:
    p, n = _prime_power(q)
    return ffpoly.field(p, n)


def _prime_power(q: int):
    if q < 2:
        raise DomainError(f"q must be a prime power >= 2, got {q}")
    for p in range(2, q + 1):
        if q % p == 0:
            n = 0
            m = q
            while m % p == 0:
                m //= p
                n += 1
            if m != 1:
                raise DomainError(f"q = {q} is not a prime power")
            return p, n
    raise DomainError(f"q = {q} is not a prime power")


def cmd_residue(args, config: RunConfig) -> dict:
    cfg = _field_for(args.q)
    g = ffpoly.parse_poly(cfg, args.g)
    count = ffpoly.residue_count(g)
    return {
        "command": "residue",
        "q": args.q,
        "g": str(g),
        "degree": g.degree,
        "count": str(count),
    }


def cmd_torsion(args, config: RunConfig) -> dict:
    cfg = _field_for(args.q)
    a = ffpoly.parse_poly(cfg, args.a)
    module = drinfeld.DrinfeldModule.carlitz(cfg, twist_exponent=args.twist)
    place = None
    if args.place and args.place != "symbolic":
        place = ffpoly.parse_poly(cfg, args.place)
    ts = drinfeld.torsion(a, module, place)
    record = {
        "command": "torsion",
        "q": args.q,
        "a": str(a),
        "rho_a": str(drinfeld.rho(a, module)),
        "twist": module.twist.e,
        "place": str(place) if place is not None else "symbolic",
        "cardinality": ts.cardinality,
        "separable": ts.separable,
        "extension_degree": ts.extension_degree,
        "roots": [str(r) for r in ts.roots],
        "definition_degrees": list(ts.definition_degrees),
        "ambient": str(ts.ambient),
    }
    if args.check_cyclic:
        report = drinfeld.check_cyclic_module(ts, a, module)
        record["cyclic"] = {
            "cyclic": report.cyclic,
            "checked_points": report.checked_points,
            "orbit_size": report.orbit_size,
            "witness": report.witness,
        }
    return record


def cmd_classnum(args, config: RunConfig) -> dict:
    if args.D is not None:
        h, forms = cmfields.class_number(args.D)
        return {
            "command": "classnum",
            "D": args.D,
            "h": h,
            "reduced_forms": [[f.a, f.b, f.c] for f in forms],
        }
    lo, hi = _parse_range(args.range)
    fundamental = set(cmfields.fundamental_discriminants(abs(lo))) if args.fundamental_only else None
    entries = []
    for D in range(lo, hi + 1):
        if D >= 0 or D % 4 not in (0, 1):
            continue
        if fundamental is not None and D not in fundamental:
            continue
        h, _ = cmfields.class_number(D)
        entries.append({"D": D, "h": h})
    return {"command": "classnum", "range": [lo, hi], "entries": entries}


def cmd_unit(args, config: RunConfig) -> dict:
    unit = cmfields.fundamental_unit(args.d, args.order)
    reg = unit.regulator(config.precision)
    return {
        "command": "unit",
        "d": args.d,
        "order": unit.order,
        "x": str(unit.x),
        "y": str(unit.y),
        "z": str(unit.z),
        "epsilon": str(unit),
        "norm": unit.norm,
        "regulator": str(reg.real),
        "precision": config.precision,
    }


def cmd_j(args, config: RunConfig) -> dict:
    tau = _parse_complex(args.tau, config.precision)
    value = cmfields.j_invariant(tau, config.precision)
    return {
        "command": "j",
        "tau": tau.decimal_str(),
        "value": value.decimal_str(),
        "precision": config.precision,
        "warning": value.warning,
    }


def cmd_hcp(args, config: RunConfig) -> dict:
    poly = cmfields.hilbert_class_polynomial(args.D, args.hcp_precision)
    return {
        "command": "hcp",
        "D": args.D,
        "h": poly.h,
        "coefficients": [str(c) for c in poly.coeffs],
        "polynomial": str(poly),
        "precision_used": poly.precision_used,
        "max_rounding_distance": str(float(poly.max_rounding_distance)),
    }


def _gen_one(formula: str, d: int, coeffs, config: RunConfig) -> dict:
    if formula == cmfields.FORMULA_CM:
        cand = cmfields.cm_generator(d, config.precision, config.max_degree, scan=True)
    elif formula == cmfields.FORMULA_EXP:
        cand = cmfields.exp_generator(d, config.precision, config.max_degree)
    elif formula == cmfields.FORMULA_POLY:
        cand = cmfields.conjecture_generator(coeffs, config.precision, config.max_degree)
    else:
        raise DomainError(f"unknown formula tag {formula!r}")
    record = cmfields.generator_record(cand)
    record["command"] = "gen"
    return record


def cmd_gen(args, config: RunConfig) -> dict:
    if args.formula == cmfields.FORMULA_POLY:
        if not args.coeffs:
            raise UsageError("--coeffs a1,a0 is required for this formula")
        try:
            coeffs = [int(tok) for tok in args.coeffs.split(",")]
        except ValueError:
            raise UsageError(f"--coeffs must be comma-separated integers, got {args.coeffs!r}")
        return _gen_one(args.formula, None, coeffs, config)
    if args.d is None:
        raise UsageError("--d is required for this formula")
    return _gen_one(args.formula, args.d, None, config)


def _sweep_gen(args, config: RunConfig, stream) -> int:
    lo, hi = _parse_range(args.d_range)
    if lo < 1:
        raise DomainError("sweep range must be positive")
    done = set()
    out_path = config.output
    if out_path and os.path.exists(out_path):
        with open(out_path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    done.add(json.loads(line)["d"])
                except (json.JSONDecodeError, KeyError):
                    raise DomainError(f"cannot resume: {out_path} has a malformed line")
    sink = open(out_path, "a", encoding="utf-8") if out_path else stream
    try:
        for d in range(lo, hi + 1):
            if d in done or not _is_squarefree_int(d):
                continue
            if args.formula == cmfields.FORMULA_EXP and d < 2:
                continue
            record = _gen_one(args.formula, d, None, config)
            sink.write(json.dumps(record, sort_keys=True, default=str))
            sink.write("\n")
            sink.flush()
    finally:
        if out_path:
            sink.close()
    return 0


def _is_squarefree_int(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def cmd_resolve(args, config: RunConfig) -> dict:
    curve = blowup.parse_curve(args.curve)
    report = blowup.resolve(
        curve,
        max_steps=args.max_steps,
        prime=args.p,
        include_infinity=args.include_infinity,
    )
    return {
        "command": "resolve",
        "curve": str(curve),
        "steps": [
            {
                "center": [str(c) for c in step.center],
                "multiplicity": step.center_multiplicity,
                "chart1": str(step.chart1),
                "chart2": str(step.chart2),
            }
            for step in report.steps
        ],
        "count": report.count,
        "smooth": report.smooth,
        "terminated": report.terminated,
        "delta_total": report.delta_total,
        "delta_remaining": list(report.delta_remaining),
        "certificate": list(report.certificate),
        "unresolved": list(report.unresolved),
        "prime": report.prime,
        "tower": [str(t) for t in report.tower],
    }


def _parse_range(text: str):
    if ".." not in text:
        raise DomainError(f"range must look like a..b, got {text!r}")
    lo_s, _, hi_s = text.partition("..")
    try:
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise DomainError(f"range bounds must be integers, got {text!r}")
    if lo > hi:
        lo, hi = hi, lo
    return lo, hi


def _parse_complex(text: str, prec: int) -> PrecisionComplex:
    s = text.strip().replace(" ", "")
    if not s:
        raise blowup.CurveSyntaxError("empty complex number", 0)
    if s in ("i", "+i"):
        return PrecisionComplex(0, 1, prec=prec)
    if s == "-i":
        return PrecisionComplex(0, -1, prec=prec)
    if s.endswith("i"):
        body = s[:-1]
        split = None
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "eE":
                split = k
                break
        if split is None:
            re_part, im_part = "0", body or "1"
        else:
            re_part, im_part = body[:split], body[split:]
            if im_part in ("+", "-"):
                im_part += "1"
        try:
            return PrecisionComplex(re_part, im_part, prec=prec)
        except ValueError:
            raise blowup.CurveSyntaxError(f"cannot parse complex number {text!r}", 0)
    try:
        return PrecisionComplex(s, 0, prec=prec)
    except ValueError:
        raise blowup.CurveSyntaxError(f"cannot parse number {text!r}", 0)


# ---------------------------------------------------------------------------
# Argument parser
# ---------------------------------------------------------------------------


def _add_common(parser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--precision", type=int, default=default,
                        help="working precision in bits (default 256 or GF_PRECISION)")
    parser.add_argument("--seed", type=int, default=default,
                        help="seed for randomized factorization (default 0)")
    parser.add_argument("--format", choices=("json", "csv", "text"), default=default)
    parser.add_argument("--output", default=default, help="write the report to this path")
    parser.add_argument("--config", default=default, help="key=value config file")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gf",
        description="Exact arithmetic across the number-field / function-field bridge",
    )
    _add_common(parser, suppress=False)
    # the same options are accepted after the subcommand; SUPPRESS keeps
    # the subparser from clobbering values parsed before it
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("residue", help="cardinality of F_q[T]/(g)", parents=[common])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--g", required=True)

    p = sub.add_parser("torsion", parents=[common], help="Carlitz/Drinfeld torsion points of a")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--place", default=None,
                   help="irreducible place polynomial, or 'symbolic'")
    p.add_argument("--twist", type=int, default=None,
                   help="twist exponent e (default q)")
    p.add_argument("--check-cyclic", action="store_true")

    p = sub.add_parser("classnum", parents=[common], help="class number via reduced forms")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--D", type=int, default=None, help="negative discriminant")
    group.add_argument("--range", default=None, help="discriminant range a..b")
    p.add_argument("--fundamental-only", action="store_true")

    p = sub.add_parser("unit", parents=[common], help="fundamental unit of Q(sqrt(d))")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--order", choices=("maximal", "pell"), default="maximal")

    p = sub.add_parser("j", parents=[common], help="j-invariant at tau")
    p.add_argument("--tau", required=True, help="complex decimal, e.g. 0.5+1.2i")

    p = sub.add_parser("hcp", parents=[common], help="Hilbert class polynomial")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--hcp-precision", type=int, default=None,
                   help="starting precision override")

    p = sub.add_parser("gen", parents=[common], help="explicit generator harness")
    p.add_argument("--formula", required=True,
                   choices=(cmfields.FORMULA_CM, cmfields.FORMULA_EXP,
                            cmfields.FORMULA_POLY))
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--coeffs", default=None, help="a1,a0 for the polynomial form")
    p.add_argument("--d-range", default=None, help="sweep d over a..b (JSON lines)")
    p.add_argument("--max-degree", type=int, default=None, dest="max_degree")

    p = sub.add_parser("resolve", parents=[common], help="blow-up resolution of a plane curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int, default=None, help="attach a prime for the tower")
    p.add_argument("--max-steps", type=int, default=64)
    p.add_argument("--include-infinity", action="store_true",
                   help="also resolve the projective points at infinity")

    return parser


_COMMANDS = {
    "residue": cmd_residue,
    "torsion": cmd_torsion,
    "classnum": cmd_classnum,
    "unit": cmd_unit,
    "j": cmd_j,
    "hcp": cmd_hcp,
    "gen": cmd_gen,
    "resolve": cmd_resolve,
}

_SYNTAX_ERRORS = (ffpoly.PolySyntaxError, blowup.CurveSyntaxError)


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _build_config(args)
    except (ValueError, OSError) as exc:
        print(f"gf: config error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "gen" and args.d_range:
            return _sweep_gen(args, config, stdout)
        record = _COMMANDS[args.command](args, config)
        record = _with_config(record, config)
        if config.output:
            with open(config.output, "w", encoding="utf-8") as fh:
                _emit(record, config, fh)
        else:
            _emit(record, config, stdout)
        return 0
    except _SYNTAX_ERRORS as exc:
        print(f"gf: syntax error: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"gf: usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"gf: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"gf: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
