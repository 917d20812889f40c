"""``ncengine`` command line interface.

Subcommands: ``otto``, ``stirling``, ``sweep``, ``figures``, ``verify``.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 domain-condition violation (closed form evaluated outside its validity
region, or an undefined efficiency).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import (
    DomainConditionViolated,
    EngineError,
    InvalidParameter,
    ZeroHeatInput,
)
from .output import fmt, render
from .sweeps import (
    Axis,
    RunConfig,
    SweepGrid,
    evaluate,
    run_figures,
    run_sweep,
    write_sweep,
)
from .verify import FD_STEP, REPORT_FIELDS, first_failure, verification_suite

EXIT_OK, EXIT_VERIFY, EXIT_INVALID, EXIT_DOMAIN = 0, 1, 2, 3

# flag dest -> RunConfig field
FLAG_FIELDS = {
    "space": "space", "mode": "mode", "theta": "theta", "gamma": "gamma", "xi": "xi",
    "zeta": "zeta", "kconst": "kconst", "mass": "mass", "omega_hot": "omega_hot",
    "omega_cold": "omega_cold", "t_hot": "t_hot", "t_cold": "t_cold", "engine": "engine",
}
FLOAT_FIELDS = {"theta", "gamma", "xi", "zeta", "kconst", "mass", "omega_hot",
                "omega_cold", "t_hot", "t_cold"}
CONFIG_ALIASES = {"omega_a": "omega_hot", "omega_b": "omega_cold", "k": "kconst", "m": "mass"}


def read_config_file(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidParameter(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InvalidParameter(f"{path}:{lineno}: expected key = value")
        key = key.strip().lower().replace("-", "_")
        key = CONFIG_ALIASES.get(key, key)
        if key not in RunConfig.keys():
            raise InvalidParameter(f"{path}:{lineno}: unknown key {key!r}")
        value = value.strip()
        if key in FLOAT_FIELDS:
            try:
                out[key] = float(value)
            except ValueError:
                raise InvalidParameter(f"{path}:{lineno}: {key} needs a number") from None
        else:
            out[key] = value
    return out


def build_config(args, engine=None) -> RunConfig:
    """Built-in defaults < config file < command-line flags."""
    values = read_config_file(args.config) if args.config else {}
    for dest, key in FLAG_FIELDS.items():
        v = getattr(args, dest, None)
        if v is not None:
            values[key] = v
    if engine is not None:
        values["engine"] = engine
    try:
        return RunConfig(**values)
    except ValueError as exc:
        raise InvalidParameter(str(exc)) from None


def _common(p, with_out=True):
    g = p.add_argument_group("medium and cycle")
    g.add_argument("--space", choices=("comm", "nc", "gnc"))
    g.add_argument("--mode", choices=("paper", "exact"))
    g.add_argument("--theta", type=float, help="NC deformation (>= 0)")
    g.add_argument("--gamma", type=float, help="GNC position deformation")
    g.add_argument("--xi", type=float, help="GNC momentum deformation")
    g.add_argument("--zeta", type=float, help="coupling strength (default 2)")
    g.add_argument("--kconst", type=float, help="stiffness K (default 0.25)")
    g.add_argument("--mass", type=float, help="effective mass m (default 1)")
    g.add_argument("--omega-hot", dest="omega_hot", type=float,
                   help="Otto hot-stroke / Stirling state-A frequency")
    g.add_argument("--omega-cold", dest="omega_cold", type=float,
                   help="Otto cold-stroke / Stirling state-B frequency")
    g.add_argument("--t-hot", dest="t_hot", type=float, help="hot bath temperature (default 2)")
    g.add_argument("--t-cold", dest="t_cold", type=float, help="cold bath temperature (default 1)")
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--format", choices=("csv", "json"))
    if with_out:
        p.add_argument("--out", help="output file (default: stdout)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncengine",
        description="Otto and Stirling cycles of coupled oscillators in (non-)commutative phase space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for engine in ("otto", "stirling"):
        p = sub.add_parser(engine, help=f"evaluate one {engine} cycle")
        _common(p)

    p = sub.add_parser("sweep", help="evaluate a cycle over a 1-D or 2-D parameter grid")
    _common(p)
    p.add_argument("--engine", choices=("otto", "stirling"), default=None)
    p.add_argument("--axis", action="append", required=True, metavar="NAME:START:STOP:COUNT[:open]",
                   help="sweep axis; give once or twice")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("figures", help="write the fig1-3 (Otto) and fig6-8 (Stirling) tables")
    _common(p, with_out=False)
    p.add_argument("--out", default="figures", help="output directory (default: figures)")
    p.add_argument("--plot", action="store_true", help="also render PNG figures")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("verify", help="run the oracle checks and write a discrepancy report")
    _common(p)
    p.add_argument("--fd-step", dest="fd_step", type=float, default=FD_STEP,
                   help=f"finite-difference step (default {FD_STEP})")
    p.add_argument("--n-max", dest="n_max", type=int, default=200,
                   help="brute-force level cutoff per mode")
    p.add_argument("--axis", action="append", metavar="NAME:START:STOP:COUNT[:open]",
                   help="zeta and/or theta grid for the checks")
    return parser


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_single(args, engine) -> int:
    config = build_config(args, engine)
    code = EXIT_OK
    record = {}
    try:
        result = evaluate(config)
        record.update(result.as_dict())
        record["error"] = ""
    except ZeroHeatInput as exc:
        record.update(exc.result.as_dict())
        record["error"] = f"ZeroHeatInput: {exc}"
        code = EXIT_DOMAIN
    record["anomalies"] = "; ".join(record.get("anomalies", ()))
    inputs = config.as_meta()
    fields = list(inputs) + [k for k in record if k not in inputs]
    row = {**inputs, **record}
    _emit(render([row], fields, {"generator": "ncengine single run"}, args.format or "json"),
          args.out)
    if code:
        print(f"ncengine: {record['error']}", file=sys.stderr)
    return code


def cmd_sweep(args) -> int:
    config = build_config(args, args.engine)
    grid = SweepGrid(tuple(Axis.parse(a) for a in args.axis), config)
    rows = run_sweep(grid, args.jobs)
    fmt_name = args.format or "csv"
    if args.out:
        write_sweep(grid, rows, args.out, fmt_name)
    else:
        sys.stdout.write(render(rows, grid.fields, grid.meta(), fmt_name))
    return EXIT_OK


def cmd_figures(args) -> int:
    base = build_config(args)
    written = run_figures(args.out, args.format or "csv", args.jobs, args.plot, base)
    for path in written.values():
        print(path)
    return EXIT_OK


def cmd_verify(args) -> int:
    config = build_config(args)
    zetas = thetas = None
    for text in args.axis or ():
        axis = Axis.parse(text)
        if axis.name == "zeta":
            zetas = axis.values()
        elif axis.name == "theta":
            thetas = axis.values()
        else:
            raise InvalidParameter("verify grids take zeta and theta axes only")
    if config.space == "nc" and config.theta and thetas is None:
        thetas = [config.theta]
    gnc_points = [(config.gamma, config.xi)] if config.space == "gnc" else None
    base = {"t_hot": config.t_hot, "t_cold": config.t_cold, "K": config.kconst, "m": config.mass}
    for otto_key, stirling_key, v in (("omega_hot", "omega_A", args.omega_hot),
                                      ("omega_cold", "omega_B", args.omega_cold)):
        if v is not None:
            base[otto_key] = base[stirling_key] = v
    if args.zeta is not None and zetas is None:
        zetas = [config.zeta]
    reports = verification_suite(base, zetas, thetas, gnc_points, step=args.fd_step,
                                 n_max=args.n_max)
    rows = [r.as_row() for r in reports]
    asserted = sum(r.asserted for r in reports)
    failed = [r for r in reports if r.passed is False]
    meta = {"generator": "ncengine verify", "fd_step": args.fd_step, "n_max": args.n_max,
            **{k: v for k, v in base.items()},
            "asserted": asserted, "failed": len(failed)}
    _emit(render(rows, REPORT_FIELDS, meta, args.format or "csv"), args.out)
    bad = first_failure(reports)
    if bad is not None:
        row = bad.as_row()
        print(f"ncengine: verification failed in {bad.check} ({bad.quantity}) at {row['context']}: "
              f"{bad.metric} diff {fmt(bad.rel_diff if bad.metric == 'rel' else bad.abs_diff)} "
              f"> tolerance {fmt(bad.tolerance)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command in ("otto", "stirling"):
            return cmd_single(args, args.command)
        if args.command == "sweep":
            return cmd_sweep(args)
        if args.command == "figures":
            return cmd_figures(args)
        return cmd_verify(args)
    except DomainConditionViolated as exc:
        print(f"ncengine: domain condition violated: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except InvalidParameter as exc:
        print(f"ncengine: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except EngineError as exc:
        print(f"ncengine: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
