"""Command-line front end.

Subcommands: build, analyze, experiment, verify.  Machine-readable
output goes to stdout (csv or json, selectable); diagnostics go to
stderr.  Exit codes: 0 success, 1 I/O failure, 2 usage error,
3 ordering self-check failed, 4 verification mismatch.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .analyzer import analyze, compare
from .builders import AdderVariant, build_qma
from .errors import QmodaddError
from .metrics import run_sweep
from .oracle import mod_add_plus_one
from .qasm import export_qasm, extract_variant, parse_qasm
from .sim import DEFAULT_NOISE, NoiseModel, run_exact

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_ORDERING = 3
EXIT_VERIFY = 4

SCHEMA_VERSION = 1


def _variant(token: str) -> AdderVariant:
    try:
        return AdderVariant(token.lower())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown adder {token!r} (choose from qma1..qma4)"
        )


def _parse_noise(tokens: list[str] | None) -> NoiseModel:
    """Noise spec: key=value tokens, or the single token 'zero'.

    Keys: x, cnot, toffoli, idle, delta, and 'gate' as shorthand for
    x+cnot+toffoli together.
    """
    base = {
        "x": DEFAULT_NOISE.p_x,
        "cnot": DEFAULT_NOISE.p_cnot,
        "toffoli": DEFAULT_NOISE.p_toffoli,
        "idle": DEFAULT_NOISE.p_idle,
        "delta": DEFAULT_NOISE.delta_reset,
    }
    if tokens:
        if tokens == ["zero"]:
            base = dict.fromkeys(base, 0.0)
        else:
            for token in tokens:
                if "=" not in token:
                    raise QmodaddError(f"noise token {token!r} is not key=value")
                key, _, raw = token.partition("=")
                key = key.strip().lower()
                try:
                    value = float(raw)
                except ValueError:
                    raise QmodaddError(f"noise value {raw!r} is not a number")
                if key == "gate":
                    base["x"] = base["cnot"] = base["toffoli"] = value
                elif key in base:
                    base[key] = value
                else:
                    raise QmodaddError(f"unknown noise key {key!r}")
    return NoiseModel(
        p_x=base["x"],
        p_cnot=base["cnot"],
        p_toffoli=base["toffoli"],
        p_idle=base["idle"],
        delta_reset=base["delta"],
    )


def _load_config(path: str | None) -> dict:
    """Optional key=value config file; flags win over file values."""
    if not path:
        return {}
    values = {}
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _default_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QMA_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise QmodaddError(f"QMA_SEED={env!r} is not an integer")
    return 0


def _selected_variants(args) -> list[AdderVariant]:
    if getattr(args, "all", False):
        return list(AdderVariant)
    if not args.variants:
        raise QmodaddError("no adders selected (pass names or --all)")
    return args.variants


def cmd_build(args) -> int:
    built = build_qma(args.variant, args.n)
    text = export_qasm(built)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as err:
            print(f"error: cannot write {args.output}: {err}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    report = analyze(built.circuit)
    print(
        f"{built.variant.value}: width={report.width} cnot={report.cnot_count} "
        f"toffoli={report.toffoli_count} resets={report.reset_count}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_analyze(args) -> int:
    variants = _selected_variants(args)
    reports = [analyze(build_qma(v, args.n).circuit) for v in variants]
    deltas = compare(reports, baseline=0)
    if args.format == "json":
        payload = {
            "schema": SCHEMA_VERSION,
            "n": args.n,
            "reports": [r.as_dict() for r in reports],
            "reduction_pct_vs_first": [
                {k: (None if v is None else str(v)) for k, v in row.items()}
                for row in deltas
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        header = [
            "variant", "n", "qubits", "resets", "cnot_depth",
            "toffoli_depth", "cnot_count", "toffoli_count", "fom",
        ]
        table = [
            [
                report.label, args.n, report.width, report.reset_count,
                report.cnot_depth, report.toffoli_depth,
                report.cnot_count, report.toffoli_count, report.fom,
            ]
            for report in reports
        ]
        if args.format == "csv":
            writer = csv.writer(sys.stdout)
            writer.writerow(header)
            writer.writerows(table)
        else:
            widths = [
                max(len(str(cell)) for cell in column)
                for column in zip(header, *table)
            ]
            for row in [header] + table:
                print("  ".join(str(c).rjust(w) for c, w in zip(row, widths)))
            print()
            print("reduction % vs first row:")
            for row in deltas:
                cells = "  ".join(
                    f"{name}={row[name]}"
                    for name in ("cnot_count", "toffoli_count", "cnot_depth",
                                 "toffoli_depth", "fom")
                )
                print(f"  {row['label']}: {cells}")
    return EXIT_OK


def cmd_experiment(args) -> int:
    variants = _selected_variants(args)
    noise = _parse_noise(args.noise)
    seed = _default_seed(args)
    rows = run_sweep(
        variants,
        args.n,
        noise,
        args.shots,
        seed,
        reset_model=args.reset_model,
        ideal_convention=args.ideal_convention,
        full_basis=args.full_basis,
        score_sum=args.score_sum,
    )
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["variant", "a", "b", "ideal", "observed", "ed"])
        for row in rows:
            for item in row.error.per_input:
                writer.writerow(
                    [
                        row.error.variant.value, item.a, item.b,
                        "" if item.ideal is None else item.ideal,
                        item.observed,
                        "" if item.ed is None else item.ed,
                    ]
                )
    else:
        payload = {
            "schema": SCHEMA_VERSION,
            "n": args.n,
            "shots": args.shots,
            "seed": seed,
            "reset_model": args.reset_model,
            "noise": {
                "p_x": noise.p_x,
                "p_cnot": noise.p_cnot,
                "p_toffoli": noise.p_toffoli,
                "p_idle": noise.p_idle,
                "delta_reset": noise.delta_reset,
            },
            "rows": [
                {
                    **row.error.as_dict(),
                    "resources": row.resources.as_dict(),
                    "nmed_drop_pct_vs_first": (
                        None if row.nmed_drop_pct is None else str(row.nmed_drop_pct)
                    ),
                }
                for row in rows
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    if args.check_ordering:
        nmeds = [row.error.nmed for row in rows]
        if any(late >= early for early, late in zip(nmeds, nmeds[1:])):
            print(
                "ordering check failed: "
                + " ".join(f"{row.error.variant.value}={float(row.error.nmed):.6f}"
                           for row in rows),
                file=sys.stderr,
            )
            return EXIT_ORDERING
    return EXIT_OK


def cmd_verify(args) -> int:
    lo, hi = args.n_range
    if args.qasm:
        return _verify_qasm(args.qasm)
    variants = _selected_variants(args)
    for n in range(lo, hi + 1):
        for variant in variants:
            built = build_qma(variant, n)
            failure = _check_adder(built)
            if failure:
                a, b, want, got = failure
                print(
                    f"FAIL {variant.value} n={n} a={a} b={b}: "
                    f"expected {want}, got {got}"
                )
                return EXIT_VERIFY
            print(f"ok {variant.value} n={n} ({(2**n + 1) ** 2} inputs)")
    return EXIT_OK


def _check_adder(built) -> tuple | None:
    layout = built.layout
    limit = 1 << layout.n
    for a in range(limit + 1):
        for b in range(limit + 1):
            bits = [0] * built.circuit.width
            for i, wire in enumerate(layout.a_wires):
                bits[wire] = (a >> i) & 1
            for i, wire in enumerate(layout.b_wires):
                bits[wire] = (b >> i) & 1
            out = run_exact(built.circuit, bits)
            got_mod = sum(out[w] << i for i, w in enumerate(layout.mod_wires))
            got_sum = sum(out[w] << i for i, w in enumerate(layout.sum_wires))
            want = mod_add_plus_one(layout.n, a, b)
            if got_mod != want:
                return a, b, want, got_mod
            if got_sum != a + b:
                return a, b, a + b, got_sum
    return None


def _verify_qasm(path: str) -> int:
    from .builders import BuiltAdder

    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as err:
        print(f"error: cannot read {path}: {err}", file=sys.stderr)
        return EXIT_IO
    circuit, layout = parse_qasm(text)
    variant = extract_variant(text)
    if layout is None or variant is None:
        print("error: file has no usable layout metadata", file=sys.stderr)
        return EXIT_USAGE
    built = BuiltAdder(circuit, layout, variant)
    failure = _check_adder(built)
    if failure:
        a, b, want, got = failure
        print(f"FAIL {path} a={a} b={b}: expected {want}, got {got}")
        return EXIT_VERIFY
    print(f"ok {path} ({(2**layout.n + 1) ** 2} inputs)")
    return EXIT_OK


def _range_pair(token: str) -> tuple[int, int]:
    if ".." in token:
        lo, _, hi = token.partition("..")
    else:
        lo = hi = token
    try:
        pair = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {token!r} (want LO..HI)")
    if pair[0] < 1 or pair[1] < pair[0]:
        raise argparse.ArgumentTypeError(f"bad range {token!r}")
    return pair


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmodadd",
        description="Build, analyze, simulate, and verify modulo (2^n + 1) adders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="emit one adder as OpenQASM 3")
    p_build.add_argument("variant", type=_variant)
    p_build.add_argument("--n", type=int, required=True)
    p_build.add_argument("-o", "--output", help="target .qasm path (default stdout)")
    p_build.set_defaults(func=cmd_build)

    p_analyze = sub.add_parser("analyze", help="resource report incl. reductions")
    p_analyze.add_argument("variants", nargs="*", type=_variant)
    p_analyze.add_argument("--all", action="store_true")
    p_analyze.add_argument("--n", type=int, required=True)
    p_analyze.add_argument(
        "--format", choices=("csv", "json", "table"), default="csv"
    )
    p_analyze.set_defaults(func=cmd_analyze)

    p_exp = sub.add_parser("experiment", help="noisy sweep over all valid inputs")
    p_exp.add_argument("variants", nargs="*", type=_variant)
    p_exp.add_argument("--all", action="store_true")
    p_exp.add_argument("--n", type=int, required=True)
    p_exp.add_argument("--shots", type=int, default=None,
                       help="default 1000 (or config value)")
    p_exp.add_argument("--seed", type=int, default=None,
                       help="default: env QMA_SEED, else 0")
    p_exp.add_argument("--noise", nargs="*", default=None, metavar="KEY=VALUE",
                       help="noise overrides, or the single word 'zero'")
    p_exp.add_argument("--format", choices=("json", "csv"), default="json")
    p_exp.add_argument("--reset-model", choices=("purify", "independent"),
                       default="purify")
    p_exp.add_argument("--ideal-convention", choices=("plus-one", "pre-decrement"),
                       default="plus-one")
    p_exp.add_argument("--full-basis", action="store_true")
    p_exp.add_argument("--score-sum", action="store_true")
    p_exp.add_argument("--check-ordering", action="store_true",
                       help="exit 3 unless NMED strictly decreases across variants")
    p_exp.add_argument("--config", default=None,
                       help="key=value file merged under the flags")
    p_exp.set_defaults(func=cmd_experiment)

    p_verify = sub.add_parser("verify", help="exhaustive oracle check")
    p_verify.add_argument("variants", nargs="*", type=_variant)
    p_verify.add_argument("--all", action="store_true")
    p_verify.add_argument("--n", dest="n_range", type=_range_pair, required=True,
                          metavar="LO..HI")
    p_verify.add_argument("--qasm", default=None,
                          help="verify a circuit from a .qasm file instead")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def _merge_config(args) -> None:
    values = _load_config(getattr(args, "config", None))
    if not values:
        return
    if args.seed is None and "seed" in values:
        args.seed = int(values["seed"])
    if args.shots is None and "shots" in values:
        args.shots = int(values["shots"])
    noise_keys = [
        f"{key}={values[key]}"
        for key in ("x", "cnot", "toffoli", "idle", "delta", "gate")
        if key in values
    ]
    if noise_keys and args.noise is None:
        args.noise = noise_keys


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "experiment":
            _merge_config(args)
            if args.shots is None:
                args.shots = 1000
        return args.func(args)
    except QmodaddError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
