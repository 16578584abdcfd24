"""``irsdf`` command-line interface.

Data goes to stdout (or the ``-o`` file), diagnostics to stderr. Exit status is
0 on success, 1 on a failed verification or invalid input, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from irsdf import __version__, verify
from irsdf.config import CONFIG_ENV_VAR, PRESETS, ConfigError, ScenarioConfig, resolve_config
from irsdf.energy import best_scheme_ee
from irsdf.linkmath import LinkGains, rate_irs, rate_siso
from irsdf.powerctl import (
    df_mode,
    min_elements_low_snr_limit,
    min_elements_to_beat_df,
    optimal_df_power_split,
    power_df,
    power_df_mode,
    power_irs,
    power_siso,
    rate_df_opt,
)
from irsdf.sweep import FIGURES, SweepSpec, SweepVariable, Table, crossover_table, figure_table
from irsdf.sweep import sweep_channel_gain, sweep_ee_vs_rate, sweep_power_vs_d1
from irsdf.units import db_to_linear, linear_to_db, watts_to_dbm


def _finite(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


def _key_value(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    return key.strip(), value.strip()


def _scenario_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    g = parent.add_argument_group("scenario")
    g.add_argument("--preset", default="paper", help=f"built-in preset ({', '.join(PRESETS)})")
    g.add_argument("--config", help=f"flat key/value config file (default: ${CONFIG_ENV_VAR})")
    g.add_argument("--set", dest="overrides", action="append", type=_key_value, default=[],
                   metavar="KEY=VALUE", help="override any config key, e.g. --set nu=0.8")
    g.add_argument("--d1", type=_finite, help="destination position d1 in m")
    g.add_argument("--p-dbm", type=_finite, help="transmit power in dBm")
    g.add_argument("--format", choices=("text", "json", "csv"), default="text")
    return parent


def _load(args) -> ScenarioConfig:
    overrides: dict = {}
    for key, value in args.overrides:
        if key == "n_elements":
            value = [int(v) for v in value.replace(",", " ").split()]
        overrides[key] = value
    if args.d1 is not None:
        overrides["d1_m"] = args.d1
    if args.p_dbm is not None:
        overrides["p_dbm"] = args.p_dbm
    if getattr(args, "n", None):
        overrides["n_elements"] = list(args.n)
    return resolve_config(args.preset, args.config, overrides)


def _emit_record(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(record, indent=2) + "\n")
    elif fmt == "csv":
        out.write(",".join(record) + "\n")
        out.write(",".join(_fmt_value(v) for v in record.values()) + "\n")
    else:
        for key, value in record.items():
            out.write(f"{key}={_fmt_value(value)}\n")


def _fmt_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def cmd_rate(args, out) -> int:
    cfg = _load(args)
    gains = cfg.gains()
    pm = cfg.power_model()
    record = {"scheme": args.scheme, "d1(m)": cfg.d1_m, "p(dBm)": cfg.p_dbm}
    if args.scheme == "siso":
        record["snr_direct(dB)"] = linear_to_db(pm.p * gains.beta_sd / pm.sigma2)
        record["rate(bit/s/Hz)"] = float(rate_siso(pm.p, gains.beta_sd, pm.sigma2))
    elif args.scheme == "irs":
        for n in cfg.n_elements:
            amp2 = (math.sqrt(gains.beta_sd) + n * cfg.alpha * math.sqrt(gains.beta_irs)) ** 2
            record[f"snr_irs_n{n}(dB)"] = linear_to_db(pm.p * amp2 / pm.sigma2)
            record[f"rate_irs_n{n}(bit/s/Hz)"] = float(rate_irs(pm.p, gains, cfg.irs(n), pm.sigma2))
    else:
        split = optimal_df_power_split(pm.p, gains)
        record["mode"] = split.mode.value
        record["p1(W)"] = split.p1
        record["p2(W)"] = split.p2
        record["snr_relay(dB)"] = linear_to_db(split.p1 * gains.beta_sr / pm.sigma2)
        record["snr_dest(dB)"] = linear_to_db((split.p1 * gains.beta_sd + split.p2 * gains.beta_rd) / pm.sigma2)
        record["rate(bit/s/Hz)"] = float(rate_df_opt(pm.p, gains, pm.sigma2))
    _emit_record(record, args.format, out)
    return 0


def cmd_power(args, out) -> int:
    cfg = _load(args)
    gains = cfg.gains()
    s2 = cfg.sigma2
    choice = power_df_mode(args.r_bar, gains, s2)
    record = {
        "r_bar(bit/s/Hz)": args.r_bar,
        "d1(m)": cfg.d1_m,
        "p_siso(dBm)": watts_to_dbm(power_siso(args.r_bar, gains.beta_sd, s2)),
        "p_df(dBm)": watts_to_dbm(power_df(args.r_bar, gains, s2)),
        "p_dfmode(dBm)": watts_to_dbm(choice.power),
        "dfmode": "Siso" if choice.mode.value == "SisoFallback" else "DfRelay",
    }
    for n in cfg.n_elements:
        record[f"p_irs_n{n}(dBm)"] = watts_to_dbm(power_irs(args.r_bar, gains, cfg.irs(n), s2))
    _emit_record(record, args.format, out)
    return 0


def cmd_ee(args, out) -> int:
    cfg = _load(args)
    res = best_scheme_ee(args.r_bar, cfg.power_model(), cfg.gains(), cfg.alpha, cfg.p_elem, cfg.bandwidth_hz)
    record = {"r_bar(bit/s/Hz)": args.r_bar, "d1(m)": cfg.d1_m}
    for scheme, value in res.all_ee.items():
        record[f"ee_{scheme.value}(bit/J)"] = value
    record["n_opt(elements)"] = res.n_opt
    record["best"] = res.scheme.value
    _emit_record(record, args.format, out)
    return 0


def cmd_threshold(args, out) -> int:
    cfg = _load(args)
    if args.beta_db:
        gains = LinkGains.from_db(*args.beta_db)
    else:
        gains = cfg.gains()
    record = {}
    if args.low_snr:
        th = min_elements_low_snr_limit(gains, cfg.alpha)
        record["regime"] = "low-snr-limit"
    else:
        if args.r_bar is not None:
            # the DF transmit power that just reaches the target; the IRS must do better with it
            p = power_df(args.r_bar, gains, cfg.sigma2)
            record["r_bar(bit/s/Hz)"] = args.r_bar
        else:
            p = db_to_linear(cfg.p_dbm - 30.0)
        record["p(dBm)"] = watts_to_dbm(p)
        th = min_elements_to_beat_df(p, gains, cfg.alpha, cfg.sigma2)
    record["df_mode"] = df_mode(gains).value
    record["threshold"] = th.value
    record["always_wins"] = th.always_wins
    record["min_integer_n"] = th.min_integer_n
    _emit_record(record, args.format, out)
    return 0


def _write(text: str, path: Optional[str], out) -> None:
    if path:
        Path(path).write_text(text)
    else:
        out.write(text)


def _render(table: Table, fmt: str) -> str:
    return table.to_json() if fmt == "json" else table.to_csv()


def cmd_sweep(args, out) -> int:
    cfg = _load(args)
    fmt = "csv" if args.format == "text" else args.format
    if args.figure:
        table = figure_table(args.figure, cfg)
    else:
        if not args.variable or args.start is None or args.stop is None or args.step is None:
            raise ConfigError("sweep: give --figure or all of --variable/--start/--stop/--step")
        variable = {"distance": SweepVariable.DISTANCE, "d1": SweepVariable.D1, "rate": SweepVariable.RATE}[
            args.variable
        ]
        spec = SweepSpec(variable, args.start, args.stop, args.step, cfg, log_spaced=args.log)
        if variable is SweepVariable.DISTANCE:
            table = sweep_channel_gain(spec)
        elif variable is SweepVariable.D1:
            if args.r_bar is None:
                raise ConfigError("r_bar: a d1 sweep needs --r-bar")
            table = sweep_power_vs_d1(spec, args.r_bar)
        else:
            table = sweep_ee_vs_rate(spec)
    _write(_render(table, fmt), args.output, out)
    return 0


def cmd_crossover(args, out) -> int:
    cfg = _load(args)
    fmt = "csv" if args.format == "text" else args.format
    spec = SweepSpec(SweepVariable.RATE, args.start, args.stop, args.step, cfg)
    _write(_render(crossover_table(spec), fmt), args.output, out)
    return 0


def cmd_verify(args, out) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        kwargs = {"seed": args.seed}
        if args.draws is not None:
            kwargs["draws"] = args.draws
        if args.resolution is not None and name in ("lemma1", "prop1"):
            kwargs["resolution"] = args.resolution
        if args.n is not None and name == "lemma1":
            kwargs["n_max"] = args.n
        rep = verify.SUITES[name](**kwargs)
        out.write(rep.summary() + "\n")
        if args.table:
            out.write(",".join(rep.columns) + "\n")
            for row in rep.rows:
                out.write(",".join(_fmt_value(float(v) if not isinstance(v, int) else v) for v in row) + "\n")
        for msg in rep.failures[:20]:
            print(f"  {name}: {msg}", file=sys.stderr)
        ok &= rep.passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irsdf", description="IRS vs DF relaying link analysis")
    parser.add_argument("--version", action="version", version=f"irsdf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _scenario_parent()

    p = sub.add_parser("rate", parents=[parent], help="achievable rate of one scheme")
    p.add_argument("--scheme", choices=("siso", "irs", "df"), required=True)
    p.add_argument("--n", type=int, action="append", help="IRS element count (repeatable)")
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("power", parents=[parent], help="transmit power needed for a rate")
    p.add_argument("--r-bar", type=_finite, required=True, help="rate target in bit/s/Hz")
    p.add_argument("--n", type=int, action="append", help="IRS element count (repeatable)")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("ee", parents=[parent], help="energy efficiency of each scheme at a rate")
    p.add_argument("--r-bar", type=_finite, required=True)
    p.set_defaults(func=cmd_ee)

    p = sub.add_parser("threshold", parents=[parent], help="IRS size needed to beat DF relaying")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--r-bar", type=_finite, help="size the comparison at the DF power for this rate")
    mode.add_argument("--low-snr", action="store_true", help="the p -> 0 limit")
    p.add_argument("--beta-db", type=_finite, nargs=3, metavar=("SD", "SR", "RD"),
                   help="explicit channel gains in dB instead of the scenario geometry")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("sweep", parents=[parent], help="regenerate a figure's data or a custom sweep")
    p.add_argument("--figure", help=f"figure id ({', '.join(FIGURES)})")
    p.add_argument("--variable", choices=("distance", "d1", "rate"))
    p.add_argument("--start", type=_finite)
    p.add_argument("--stop", type=_finite)
    p.add_argument("--step", type=_finite)
    p.add_argument("--log", action="store_true", help="log-spaced distance grid; --step is points per decade")
    p.add_argument("--r-bar", type=_finite)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("crossover", parents=[parent], help="rates where the best EE scheme changes")
    p.add_argument("--start", type=_finite, default=0.1)
    p.add_argument("--stop", type=_finite, default=12.0)
    p.add_argument("--step", type=_finite, default=0.05)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_crossover)

    p = sub.add_parser("verify", help="closed forms against brute-force oracles")
    p.add_argument("--suite", choices=(*verify.SUITES, "all"), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int)
    p.add_argument("--resolution", type=int)
    p.add_argument("--n", type=int, help="largest IRS size for the lemma1 suite")
    p.add_argument("--table", action="store_true", help="print every case, not just the summary")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (ConfigError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
