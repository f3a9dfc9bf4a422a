"""Command line interface.

Subcommands:
    outage     analytic outage probability at the configured threshold,
               plus a Monte Carlo estimate unless --no-mc
    ber        same for the end-to-end average bit error rate
    sweep      run the [sweep] section, emit CSV
    validate   compare analytic against Monte Carlo for both quantities
               and fail (exit 4) on disagreement beyond 4 standard errors

Exit codes: 0 success, 2 configuration error, 3 series convergence
failure, 4 validation gate failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys

from .config import ConfigError, ParsedConfig, parse_config
from .e2e import ber_floor, e2e_avg_ber, outage_floor, outage_probability
from .montecarlo import McOptions, simulate_ber, simulate_outage
from .specfun import ConvergenceError
from .sweep import emit_csv, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3
EXIT_VALIDATION = 4

# |analytic - estimate| beyond this many standard errors fails validation
VALIDATION_GATE_SE = 4.0
# absolute slack so a zero-variance exact match (e.g. both probabilities 0)
# does not divide by a zero standard error
VALIDATION_GATE_ABS = 1e-12


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rfvlc",
        description="Outage and BER analysis of a two-hop radio/optical relay link.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("outage", "outage probability at the configured threshold"),
        ("ber", "end-to-end average bit error rate"),
        ("sweep", "run the [sweep] section and emit CSV"),
        ("validate", "gate the closed forms against Monte Carlo"),
    ):
        q = sub.add_parser(name, help=doc)
        q.add_argument("--config", required=True, help="path to the config file")
        q.add_argument("--trials", type=int, help="override Monte Carlo trial count")
        q.add_argument("--seed", type=int, help="override Monte Carlo seed")
        q.add_argument("--workers", type=int, help="override worker thread count")
        q.add_argument("--out", help="write output to this file instead of stdout")
        if name != "validate":
            q.add_argument(
                "--no-mc", action="store_true", help="skip the Monte Carlo columns"
            )
    return p


def _load(args) -> ParsedConfig:
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    parsed = parse_config(text)
    overrides = {}
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.workers is not None:
        overrides["workers"] = args.workers
    if getattr(args, "no_mc", False):
        overrides["enabled"] = False
    if overrides:
        try:
            mc = dataclasses.replace(parsed.mc, **overrides)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        parsed = dataclasses.replace(parsed, mc=mc)
    return parsed


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _point_report(quantity: str, parsed: ParsedConfig) -> str:
    cfg, mc = parsed.system, parsed.mc
    if quantity == "outage":
        analytic, floor = outage_probability(cfg), outage_floor(cfg)
        runner = simulate_outage
    else:
        analytic, floor = e2e_avg_ber(cfg), ber_floor(cfg)
        runner = simulate_ber
    lines = [
        f"quantity = {quantity}",
        f"analytic = {analytic:.12g}",
        f"floor = {floor:.12g}",
    ]
    if mc.enabled:
        est = runner(cfg, mc.trials, mc.seed, workers=mc.workers)
        lines += [
            f"mc_estimate = {est.estimate:.12g}",
            f"mc_std_error = {est.std_error:.12g}",
            f"mc_trials = {est.trials}",
            f"mc_seed = {est.seed}",
        ]
        if not est.reliable:
            lines.append(
                "mc_warning = fewer than 100 expected events; estimate unreliable"
            )
    return "\n".join(lines) + "\n"


def _validate_report(parsed: ParsedConfig) -> tuple[str, bool]:
    cfg, mc = parsed.system, parsed.mc
    rows = (
        ("outage", outage_probability(cfg), simulate_outage),
        ("ber", e2e_avg_ber(cfg), simulate_ber),
    )
    lines, all_ok = [], True
    for name, analytic, runner in rows:
        est = runner(cfg, mc.trials, mc.seed, workers=mc.workers)
        diff = abs(analytic - est.estimate)
        gate = VALIDATION_GATE_SE * est.std_error + VALIDATION_GATE_ABS
        ok = diff <= gate
        all_ok &= ok
        z = diff / est.std_error if est.std_error > 0.0 else 0.0
        lines.append(
            f"{name}: analytic = {analytic:.12g}, mc = {est.estimate:.12g}, "
            f"se = {est.std_error:.12g}, z = {z:.2f} -> {'OK' if ok else 'FAIL'}"
        )
    lines.append(f"validation {'passed' if all_ok else 'FAILED'} "
                 f"(gate: {VALIDATION_GATE_SE:g} standard errors, "
                 f"trials = {mc.trials}, seed = {mc.seed})")
    return "\n".join(lines) + "\n", all_ok


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        parsed = _load(args)
        if args.command == "sweep":
            if parsed.sweep is None:
                raise ConfigError("the sweep command needs a [sweep] section")
            records = run_sweep(parsed.system, parsed.sweep, parsed.mc)
            _write(args, emit_csv(records))
        elif args.command in ("outage", "ber"):
            _write(args, _point_report(args.command, parsed))
        else:
            report, ok = _validate_report(parsed)
            _write(args, report)
            if not ok:
                return EXIT_VALIDATION
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
