"""Command-line interface: NOON-state reports, sweep tables, verification
grids, and hardware resource counts.

Exit codes: 0 on success, 1 on configuration or validation errors, 2 when the
verification grid finds a simulation/closed-form mismatch. All output is
deterministic: repeated identical invocations emit byte-identical text.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import analysis
from .fock import FockState, state_rows
from .pipelines import MethodConfig, run_method

OUTPUT_DIR_ENV = "NOONGEN_OUTPUT_DIR"

_GENERATE_CSV_HEADER = (
    "method,d,N,alpha_sq,generation_probability,balanced,residual_norm"
)
_RESOURCES_CSV_HEADER = (
    "method,d,N,beam_splitters,phase_shifters,spcd_detectors,"
    "fock_inputs,single_photon_inputs,odd_n_variant"
)


class CliError(Exception):
    """Configuration or validation failure; mapped to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise CliError(message)


def _parse_methods(text: str) -> tuple[int, ...]:
    if text == "all":
        return analysis.METHODS
    try:
        methods = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise CliError(f"invalid method list {text!r}") from exc
    for method in methods:
        if method not in analysis.METHODS:
            raise CliError(f"method must be 1, 2, 3 or 4, got {method}")
    return methods


def _parse_range(text: str, name: str) -> tuple[int, ...]:
    """Parse 'lo:hi' (inclusive) or a comma-separated list of integers."""
    try:
        if ":" in text:
            lo_text, hi_text = text.split(":", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise CliError(f"invalid {name} {text!r}; expected lo:hi or a,b,c") from exc


def build_parser() -> tuple[_Parser, dict[str, _Parser]]:
    parser = _Parser(prog="noongen", description=__doc__)
    parser.add_argument(
        "--config",
        metavar="FILE",
        help="key=value file supplying defaults; explicit flags win",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    registry: dict[str, _Parser] = {}

    def add_command(name: str, help_text: str) -> _Parser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--format", choices=("json", "csv"), default=None)
        sub.add_argument(
            "--output",
            default=None,
            help=f"output path (relative paths resolve against ${OUTPUT_DIR_ENV}); default stdout",
        )
        registry[name] = sub
        return sub

    gen = add_command("generate", "run one pipeline and emit its NOON report")
    gen.add_argument("--method", type=int, choices=analysis.METHODS, required=True)
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--N", type=int, required=True)
    gen.add_argument("--alpha-sq", type=float, default=None)
    gen.add_argument("--cutoff", type=int, default=None)
    gen.add_argument("--tolerance", type=float, default=1e-10)
    gen.set_defaults(func=cmd_generate)

    sweep = add_command("sweep", "emit a closed-form/simulation sweep table")
    sweep.add_argument("--vary", choices=("d", "N"), required=True)
    sweep.add_argument("--methods", default="all")
    sweep.add_argument("--d", type=int, default=None)
    sweep.add_argument("--N", type=int, default=None)
    sweep.add_argument("--d-range", default=None)
    sweep.add_argument("--N-range", default=None)
    sweep.add_argument("--alpha-sq", type=float, default=None)
    sweep.set_defaults(func=cmd_sweep)

    verify = add_command("verify", "compare simulation against closed forms")
    verify.add_argument("--methods", default="all")
    verify.add_argument("--d-values", default="2,4")
    verify.add_argument("--N-range", default="2:6")
    verify.add_argument("--alpha-sq", type=float, default=None)
    verify.add_argument("--tolerance", type=float, default=1e-9)
    verify.set_defaults(func=cmd_verify)

    resources = add_command("resources", "emit hardware counts")
    resources.add_argument("--methods", default="all")
    resources.add_argument("--d", type=int, required=True)
    resources.add_argument("--N", type=int, required=True)
    resources.set_defaults(func=cmd_resources)

    return parser, registry


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as handle:
            for line_no, raw in enumerate(handle, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise CliError(
                        f"{path}:{line_no}: expected key=value, got {line!r}"
                    )
                key, _, value = line.partition("=")
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise CliError(f"cannot read config file {path}: {exc}") from exc
    return values


def _apply_config(sub: _Parser, values: dict[str, str]) -> None:
    actions = {
        action.dest: action
        for action in sub._actions
        if action.dest not in ("help", "func")
    }
    defaults = {}
    for key, raw in values.items():
        dest = key.replace("-", "_")
        action = actions.get(dest)
        if action is None:
            raise CliError(f"unknown config key {key!r}")
        try:
            defaults[dest] = action.type(raw) if action.type else raw
        except ValueError as exc:
            raise CliError(f"invalid value for config key {key!r}: {raw!r}") from exc
        # a value from the file satisfies the flag; explicit flags still win
        action.required = False
    sub.set_defaults(**defaults)


def _extract_config(argv: list[str]) -> tuple[str | None, list[str]]:
    rest: list[str] = []
    config: str | None = None
    index = 0
    while index < len(argv):
        token = argv[index]
        if token == "--config":
            if index + 1 >= len(argv):
                raise CliError("--config requires a file path")
            config = argv[index + 1]
            index += 2
            continue
        if token.startswith("--config="):
            config = token.split("=", 1)[1]
            index += 1
            continue
        rest.append(token)
        index += 1
    return config, rest


def _emit(text: str, output: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output is None:
        sys.stdout.write(text)
        return
    path = output
    if not os.path.isabs(path):
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base:
            path = os.path.join(base, path)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _json_dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _report_payload(report, alpha_sq: float | None) -> dict:
    jf = analysis.json_float
    payload = report.to_dict()
    payload["component_amplitudes"] = [
        [jf(re), jf(im)] for re, im in payload["component_amplitudes"]
    ]
    payload["sign_pattern"] = [
        [jf(re), jf(im)] for re, im in payload["sign_pattern"]
    ]
    payload["generation_probability"] = jf(payload["generation_probability"])
    payload["residual_norm"] = jf(payload["residual_norm"])
    payload["alpha_sq"] = None if alpha_sq is None else jf(alpha_sq)
    return payload


def cmd_generate(args) -> int:
    alpha = None if args.alpha_sq is None else math.sqrt(args.alpha_sq)
    cfg = MethodConfig(
        method=args.method,
        d=args.d,
        N=args.N,
        alpha=alpha,
        per_mode_cutoff=args.cutoff,
        tolerance=args.tolerance,
    )
    report = run_method(cfg)
    alpha_sq = None
    if args.method == 1:
        alpha_sq = (
            args.alpha_sq
            if args.alpha_sq is not None
            else analysis.optimal_alpha_sq(args.d, args.N)
        )
    if args.format == "csv":
        fmt = analysis.format_float
        row = ",".join(
            (
                f"M{args.method}",
                str(args.d),
                str(args.N),
                "" if alpha_sq is None else fmt(alpha_sq),
                fmt(report.generation_probability),
                str(report.balanced).lower(),
                fmt(report.residual_norm),
            )
        )
        _emit(_GENERATE_CSV_HEADER + "\n" + row, args.output)
        return 0
    payload = {"method": f"M{args.method}", "report": _report_payload(report, alpha_sq)}
    noon_state = FockState(
        report.d,
        {
            tuple(report.N if i == j else 0 for i in range(report.d)): amp
            for j, amp in enumerate(report.component_amplitudes)
        },
    )
    payload["noon_state_rows"] = [
        [list(occ), analysis.json_float(re), analysis.json_float(im)]
        for occ, re, im in state_rows(noon_state)
    ]
    _emit(_json_dumps(payload), args.output)
    return 0


def _sweep_spec(args) -> analysis.SweepSpec:
    methods = _parse_methods(args.methods)
    if args.vary == "d":
        if args.N is None or args.d_range is None:
            raise CliError("sweep --vary d requires --N and --d-range")
        fixed, values = args.N, _parse_range(args.d_range, "--d-range")
    else:
        if args.d is None or args.N_range is None:
            raise CliError("sweep --vary N requires --d and --N-range")
        fixed, values = args.d, _parse_range(args.N_range, "--N-range")
    return analysis.SweepSpec(
        methods=methods,
        vary=args.vary,
        fixed=fixed,
        values=values,
        alpha_sq=args.alpha_sq,
    )


def cmd_sweep(args) -> int:
    rows = analysis.run_sweep(_sweep_spec(args))
    if args.format == "json":
        _emit(analysis.sweep_to_json(rows), args.output)
    else:
        _emit(analysis.sweep_to_csv(rows), args.output)
    return 0


def cmd_verify(args) -> int:
    methods = _parse_methods(args.methods)
    d_values = _parse_range(args.d_values, "--d-values")
    n_values = _parse_range(args.N_range, "--N-range")
    if args.tolerance <= 0.0:
        raise CliError("tolerance must be positive")
    for d in d_values:
        if d < 2:
            raise CliError(f"d must be at least 2, got {d}")
        if d > analysis.SIM_MAX_D:
            raise CliError(
                f"d={d} exceeds the simulation limit d<={analysis.SIM_MAX_D}"
            )
    for n in n_values:
        if n < 1:
            raise CliError(f"N must be at least 1, got {n}")
        if n > analysis.SIM_MAX_N:
            raise CliError(
                f"N={n} exceeds the simulation limit N<={analysis.SIM_MAX_N}"
            )
    fmt = analysis.format_float
    lines = []
    failures = 0
    points = 0
    worst = 0.0
    for method in sorted(set(methods)):
        for d in sorted(set(d_values)):
            if method in (3, 4) and d & (d - 1):
                continue
            for n in sorted(set(n_values)):
                alpha_sq = None
                if method == 1:
                    alpha_sq = (
                        args.alpha_sq
                        if args.alpha_sq is not None
                        else analysis.optimal_alpha_sq(d, n)
                    )
                p_closed = analysis.closed_form_probability(method, d, n, alpha_sq)
                p_sim = analysis.simulated_probability(method, d, n, alpha_sq)
                rel_err = (
                    abs(p_sim - p_closed) / p_closed if p_closed > 0.0 else abs(p_sim)
                )
                points += 1
                worst = max(worst, rel_err)
                ok = rel_err < args.tolerance
                failures += 0 if ok else 1
                alpha_cell = "-" if alpha_sq is None else fmt(alpha_sq)
                lines.append(
                    f"M{method} d={d} N={n} alpha_sq={alpha_cell} "
                    f"p_closed={fmt(p_closed)} p_sim={fmt(p_sim)} "
                    f"rel_err={fmt(rel_err)} {'ok' if ok else 'FAIL'}"
                )
    verdict = "PASS" if failures == 0 else f"FAIL ({failures} of {points} points)"
    lines.append(
        f"verify: {points} points, max rel_err={fmt(worst)}, "
        f"tolerance={fmt(args.tolerance)} -> {verdict}"
    )
    _emit("\n".join(lines), args.output)
    return 0 if failures == 0 else 2


def cmd_resources(args) -> int:
    methods = _parse_methods(args.methods)
    counts = [
        (method, analysis.resource_counts(method, args.d, args.N))
        for method in sorted(set(methods))
    ]
    if args.format == "json":
        payload = [
            {
                "method": f"M{method}",
                "d": args.d,
                "N": args.N,
                "beam_splitters": rc.beam_splitters,
                "phase_shifters": rc.phase_shifters,
                "spcd_detectors": rc.spcd_detectors,
                "fock_inputs": rc.fock_inputs,
                "single_photon_inputs": rc.single_photon_inputs,
                "odd_n_variant": rc.odd_n_variant,
            }
            for method, rc in counts
        ]
        _emit(_json_dumps(payload), args.output)
        return 0
    lines = [_RESOURCES_CSV_HEADER]
    for method, rc in counts:
        lines.append(
            ",".join(
                (
                    f"M{method}",
                    str(args.d),
                    str(args.N),
                    str(rc.beam_splitters),
                    str(rc.phase_shifters),
                    str(rc.spcd_detectors),
                    str(rc.fock_inputs),
                    str(rc.single_photon_inputs),
                    str(rc.odd_n_variant).lower(),
                )
            )
        )
    _emit("\n".join(lines), args.output)
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser, registry = build_parser()
        config_path, rest = _extract_config(argv)
        if config_path is not None:
            values = _load_config(config_path)
            command = next((token for token in rest if token in registry), None)
            if command is None:
                raise CliError("--config requires a subcommand")
            _apply_config(registry[command], values)
        args = parser.parse_args(rest)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
