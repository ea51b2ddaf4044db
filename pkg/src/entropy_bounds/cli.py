"""Command-line front end: ``entropy-bounds <subcommand> [options]``.

Configuration is a flat ``key = value`` file (``#`` comments).  Grids are
written ``start:stop:step`` (inclusive) or as comma lists.  Recognised keys::

    spectrum        oscillator | power | <path to spectrum file>
    gap             oscillator level spacing            (default 1)
    scale, exponent power-law levels scale * n**exponent (default 1, 2)
    truncation_dim  initial number of levels            (default 64)
    tol             solver tolerance                    (default 1e-10)
    seed            RNG seed                            (default 0)
    E               energy grid
    epsilon         distance grid
    sample_count    random states / pairs per point     (default 10)
    s_rho           entropies for the contradiction search
    rho, sigma      states as JSON {"weights": [...], "labels": [...]} or file paths
    output, format  destination and csv | json

Gibbs weights are exp(-beta * E_n) (beta > 0 on infinite spectra).

Exit codes: 0 success, 1 numeric failure, 2 configuration or parse error,
3 contradiction threshold not reached.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import afw, bounds, checks, contradiction, maxent, sampling, spectra
from .errors import (EnergyOutOfRange, EntropyBoundsError, InvalidArgument, InvariantViolation,
                     NumericFailure, ParseError, ThresholdNotReached, TruncationLimit)
from .states import SpectralState

EXIT_OK, EXIT_NUMERIC, EXIT_CONFIG, EXIT_THRESHOLD = 0, 1, 2, 3
MAX_SEED = 2 ** 64 - 1


class ConfigError(EntropyBoundsError, ValueError):
    pass


def fmt(x) -> str:
    """15 significant digits, '.' decimal, empty for missing values."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".15g")


def parse_grid(text: str) -> List[float]:
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"grid {text!r} must be start:stop:step")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError:
            raise ConfigError(f"grid {text!r} is not numeric") from None
        if step <= 0 or stop < start:
            raise ConfigError(f"grid {text!r} is empty or has a non-positive step")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + k * step, 12) for k in range(count)]
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"grid {text!r} is not numeric") from None


@dataclass
class ExperimentConfig:
    spectrum_source: str = "oscillator"
    gap: float = 1.0
    scale: float = 1.0
    exponent: float = 2.0
    truncation_dim: int = 64
    tol: float = 1e-10
    seed: int = 0
    energies: List[float] = field(default_factory=list)
    epsilons: List[float] = field(default_factory=list)
    sample_count: int = 10
    s_rho: List[float] = field(default_factory=list)
    rho: Optional[str] = None
    sigma: Optional[str] = None
    output: Optional[str] = None
    format: str = "csv"
    base_dir: Path = Path(".")

    def validate(self):
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.truncation_dim < 2:
            raise ConfigError("truncation_dim must be >= 2")
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.sample_count < 0:
            raise ConfigError("sample_count must be >= 0")

    def spectrum(self) -> spectra.Spectrum:
        src = self.spectrum_source
        if src == "oscillator":
            return spectra.harmonic_oscillator(self.gap, self.truncation_dim)
        if src == "power":
            return spectra.power_law(self.scale, self.exponent, self.truncation_dim)
        path = Path(src)
        if not path.is_absolute():
            path = self.base_dir / path
        try:
            with open(path, encoding="utf-8") as fh:
                return spectra.load_spectrum(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read spectrum file: {exc}") from None


_KEYS = {"spectrum", "gap", "scale", "exponent", "truncation_dim", "tol", "seed", "e",
         "epsilon", "sample_count", "s_rho", "rho", "sigma", "output", "format"}


def load_config(text: str, base_dir: Path = Path(".")) -> ExperimentConfig:
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#",),
                                       inline_comment_prefixes=None)
    try:
        parser.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"bad config: {exc}") from None
    return apply_settings(ExperimentConfig(base_dir=base_dir), dict(parser["config"]))


def apply_settings(cfg: ExperimentConfig, items: dict) -> ExperimentConfig:
    for key, value in items.items():
        key = key.strip().lower()
        value = value.strip()
        if key not in _KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        try:
            if key == "spectrum":
                cfg.spectrum_source = value
            elif key in ("gap", "scale", "exponent", "tol"):
                setattr(cfg, key, float(value))
            elif key in ("truncation_dim", "seed", "sample_count"):
                setattr(cfg, key, int(value))
            elif key == "e":
                cfg.energies = parse_grid(value)
            elif key == "epsilon":
                cfg.epsilons = parse_grid(value)
            elif key == "s_rho":
                cfg.s_rho = parse_grid(value)
            else:
                setattr(cfg, key, value)
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad value for {key}: {value!r}") from None
    return cfg


def _read_state(spec_text: str, base_dir: Path) -> SpectralState:
    text = spec_text.strip()
    if not text.startswith("{"):
        path = Path(text)
        if not path.is_absolute():
            path = base_dir / path
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read state file: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"state is not valid JSON: {exc.msg}", exc.lineno) from None
    return SpectralState.from_json(data)


def _write(cfg: ExperimentConfig, text: str):
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv_text(header, rows, footer=()) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    for line in footer:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- subcommands ------------------------------------------------------------------

def cmd_gibbs(cfg: ExperimentConfig) -> int:
    if not cfg.energies:
        raise ConfigError("gibbs needs a nonempty E grid")
    spec = cfg.spectrum()
    rows, status = [], EXIT_OK
    for e in cfg.energies:
        try:
            s = maxent.thermal_for_energy(spec, e, cfg.tol)
            rows.append({"E": e, "beta": s.beta, "entropy_bits": s.entropy_bits,
                         "tail_bound": s.tail_bound, "error": None})
        except (EnergyOutOfRange, InvalidArgument) as exc:
            rows.append({"E": e, "beta": None, "entropy_bits": None, "tail_bound": None,
                         "error": str(exc)})
            status = EXIT_CONFIG
    if cfg.format == "json":
        _write(cfg, _json_text(rows))
    else:
        header = ["E", "beta", "entropy_bits", "tail_bound", "error"]
        _write(cfg, _csv_text(header, [[fmt(r[k]) if k != "error" else (r[k] or "")
                                        for k in header] for r in rows]))
    return status


def cmd_afw(cfg: ExperimentConfig) -> int:
    spec = cfg.spectrum()
    if cfg.rho and cfg.sigma:
        rho = _read_state(cfg.rho, cfg.base_dir)
        sigma = _read_state(cfg.sigma, cfg.base_dir)
    elif cfg.rho or cfg.sigma:
        raise ConfigError("give both rho and sigma, or neither for a random pair")
    else:
        rng = np.random.default_rng(cfg.seed)
        if cfg.energies:
            rho, sigma = sampling.random_bounded_pair(rng, spec, cfg.energies[0])
        else:
            labels = np.arange(spec.truncation_dim)
            rho = sampling.random_state(rng, labels, int(rng.integers(1, labels.size + 1)))
            sigma = sampling.random_state(rng, labels, int(rng.integers(1, labels.size + 1)))
    try:
        report = afw.coupling_report(rho, sigma, spec)
    except InvalidArgument:
        report = afw.coupling_report(rho, sigma, None)
    report["rho"], report["sigma"] = rho.to_json(), sigma.to_json()
    _write(cfg, _json_text(report))
    return EXIT_OK


BOUND_HEADER = ["epsilon", "E", "actual_diff", "audenaert", "winter", "mixture",
                "tightest", "hypothesis_flags"]


def cmd_bounds(cfg: ExperimentConfig) -> int:
    if not cfg.energies or not cfg.epsilons:
        raise ConfigError("bounds needs nonempty epsilon and E grids")
    spec = cfg.spectrum()
    rng = np.random.default_rng(cfg.seed)
    rows, skipped = [], []
    validity = dominance = 0
    for E in cfg.energies:
        labels = sampling.bounded_labels(spec, E)
        for eps in cfg.epsilons:
            if labels.size < 1 or eps > 1.0 - 1.0 / labels.size:
                skipped.append(f"skipped epsilon={fmt(eps)} E={fmt(E)}: "
                               f"not attainable on {labels.size} level(s) <= E")
                continue
            for _ in range(max(cfg.sample_count, 1)):
                rho, sigma = sampling.pair_at_distance(rng, labels, eps)
                rep = bounds.compare_bounds(rho, sigma, spec, E, cfg.tol)
                validity += len(rep.violations())
                if rep.mixture_bound is not None and rep.winter is not None \
                        and rep.mixture_bound > rep.winter + 1e-9:
                    dominance += 1
                rows.append(rep)
    footer = skipped + [f"rows={len(rows)} validity_violations={validity} "
                        f"dominance_violations={dominance}"]
    if cfg.format == "json":
        data = [{"epsilon": r.epsilon, "E": r.E, "actual_diff": r.actual_diff,
                 "audenaert": r.audenaert, "winter": r.winter, "mixture": r.mixture_bound,
                 "tightest": r.tightest, "hypotheses": r.hypotheses,
                 "inapplicable": r.inapplicable} for r in rows]
        _write(cfg, _json_text({"rows": data, "summary": footer}))
    else:
        body = [[fmt(r.epsilon), fmt(r.E), fmt(r.actual_diff), fmt(r.audenaert),
                 fmt(r.winter), fmt(r.mixture_bound), r.tightest or "",
                 r.hypothesis_flags()] for r in rows]
        _write(cfg, _csv_text(BOUND_HEADER, body, footer))
    return EXIT_OK if validity == 0 and dominance == 0 else EXIT_NUMERIC


def cmd_contradiction(cfg: ExperimentConfig) -> int:
    if not cfg.energies:
        raise ConfigError("contradiction needs E")
    E = cfg.energies[0]
    spec = cfg.spectrum()
    certs = []
    for s_rho in cfg.s_rho:
        try:
            certs.append(contradiction.find_contradiction_energy(spec, E, s_rho, cfg.tol))
        except ThresholdNotReached as exc:
            certs.append(exc.partial)
    if cfg.sample_count and not cfg.s_rho:
        rng = np.random.default_rng(cfg.seed)
        try:
            sample = sampling.random_gibbs_states(rng, spec, E, 10 * E, cfg.sample_count)
            certs.extend(contradiction.theorem4_report(spec, E, sample, cfg.tol))
        except EnergyOutOfRange as exc:
            cert = contradiction.ContradictionCertificate(
                E=E, s_rho=math.nan, status="threshold-not-reached",
                truncation_note=f"sample energies unreachable: {exc}")
            certs.append(cert)
    for cert in certs:
        print(cert.summary(), file=sys.stderr)
    if cfg.format == "json":
        _write(cfg, _json_text([c.to_json() for c in certs]))
    else:
        header = ["E", "s_rho", "slack", "threshold", "gamma_entropy_at_threshold", "status"]
        body = [[fmt(c.E), fmt(c.s_rho), fmt(c.slack), fmt(c.threshold_E_tilde),
                 fmt(c.gamma_entropy_at_threshold), c.status] for c in certs]
        _write(cfg, _csv_text(header, body))
    return EXIT_THRESHOLD if any(c.status != "ok" for c in certs) else EXIT_OK


def cmd_check(cfg: ExperimentConfig) -> int:
    results = checks.run_all(cfg.seed, max(cfg.sample_count, 1))
    if cfg.format == "json":
        _write(cfg, _json_text({"seed": cfg.seed, "checks": [r.to_json() for r in results]}))
    else:
        header = ["check", "cases", "violations", "max_excess", "passed"]
        body = [[r.name, r.cases, r.violations, fmt(r.max_excess), int(r.passed)]
                for r in results]
        _write(cfg, _csv_text(header, body, [f"seed={cfg.seed}"]))
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


COMMANDS = {"gibbs": cmd_gibbs, "afw": cmd_afw, "bounds": cmd_bounds,
            "contradiction": cmd_contradiction, "check": cmd_check}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--seed", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config key (repeatable)")
    parser = argparse.ArgumentParser(
        prog="entropy-bounds",
        description="Entropy continuity bounds, Gibbs states and the AFW coupling.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("gibbs", parents=[common], help="max-entropy curve S(gamma(E))")
    p = sub.add_parser("afw", parents=[common], help="AFW coupling report for two states")
    p.add_argument("--rho", help="state JSON or path")
    p.add_argument("--sigma", help="state JSON or path")
    sub.add_parser("bounds", parents=[common], help="compare continuity bounds on a grid")
    sub.add_parser("contradiction", parents=[common], help="contradiction thresholds")
    sub.add_parser("check", parents=[common], help="run the seeded property suite")
    return parser


def resolve_config(args) -> ExperimentConfig:
    if args.config:
        path = Path(args.config)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        cfg = load_config(text, path.parent)
    else:
        cfg = ExperimentConfig()
    overrides = {}
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set needs KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        overrides[k] = v
    apply_settings(cfg, overrides)
    for name in ("seed", "tol", "format"):
        if getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if args.out:
        cfg.output = args.out
    for name in ("rho", "sigma"):
        if getattr(args, name, None):
            setattr(cfg, name, getattr(args, name))
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg)
    except (ConfigError, ParseError, InvalidArgument, InvariantViolation,
            EnergyOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericFailure, TruncationLimit) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
