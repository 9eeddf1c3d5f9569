"""Command-line front end: spectrum | ground | evolve | verify.

Configs are INI files (key = value, one section per concern); command
line flags override config values.  Outputs are CSV or JSON written
atomically (temp file + rename), with shortest round-trip float
formatting and '\n' line endings so identical inputs give byte-identical
files.  Exit codes: 0 success, 2 config validation error, 3 numerical
check failure (verify), 4 I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
import tempfile

import numpy as np

from .dynamics import EigenbasisState, evolve_observable, paper_jz_series, to_eigenbasis
from .model import FOCK_CONVENTIONS, ModelParams
from .observables import dicke_distribution
from .rotation import RotationAngles, rotated_basis_state
from .spectrum import exact_spectrum, ground_state, residual_norm
from .su2 import HalfInt, m_floats
from .verify import build_report

__all__ = ["main", "ConfigError"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CHECK = 3
EXIT_IO = 4

ALLOWED_KEYS = {
    "model": {"twice_j", "coeffs", "theta", "phi"},
    "output": {"path", "format"},
    "evolve": {"t_min", "t_max", "num_points", "initial", "observables",
               "include_printed_formula"},
    "ground": {"floor"},
    "verify": {"max_twice_j", "draws", "seed", "sweep_points"},
}


class ConfigError(Exception):
    """Invalid or missing configuration."""


def _fmt(x) -> str:
    """Shortest round-trip decimal for a float."""
    return repr(float(x))


def _write_atomic(path: str, content: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp_", suffix=".part")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(lines: list[str]) -> str:
    return "\n".join(lines) + "\n"


def _read_config(path: str | None) -> dict[str, dict[str, str]]:
    if path is None:
        return {}
    parser = configparser.ConfigParser()
    loaded = parser.read(path)
    if not loaded:
        raise ConfigError(f"config file not found: {path}")
    sections: dict[str, dict[str, str]] = {}
    for section in parser.sections():
        if section not in ALLOWED_KEYS:
            raise ConfigError(f"unknown config section [{section}]")
        allowed = ALLOWED_KEYS[section]
        values = dict(parser.items(section))
        unknown = set(values) - allowed
        if unknown:
            raise ConfigError(f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}")
        sections[section] = values
    return sections


def _parse_coeffs(text: str) -> tuple[float, ...]:
    try:
        coeffs = tuple(float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"coefficients must be comma-separated numbers: {text!r}") from exc
    if len(coeffs) < 2:
        raise ConfigError(
            f"need at least 2 coefficients (constant and linear), got {len(coeffs)}"
        )
    return coeffs


def _get(section: dict[str, str], key: str, cast, default=None):
    if key not in section:
        if default is not None:
            return default
        raise ConfigError(f"missing required key {key!r}")
    try:
        return cast(section[key])
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad value for {key!r}: {section[key]!r}") from exc


def _build_model(config: dict, args) -> tuple[ModelParams, HalfInt]:
    section = dict(config.get("model", {}))
    if args.j is not None:
        section["twice_j"] = str(args.j)
    if args.theta is not None:
        section["theta"] = repr(args.theta)
    if args.phi is not None:
        section["phi"] = repr(args.phi)
    if args.coeffs is not None:
        section["coeffs"] = args.coeffs
    if not section:
        raise ConfigError("no model given; provide --config or --j/--A/--theta flags")
    twice_j = _get(section, "twice_j", int)
    if twice_j < 0:
        raise ConfigError(f"twice_j must be nonnegative, got {twice_j}")
    coeffs = _parse_coeffs(_get(section, "coeffs", str))
    theta = _get(section, "theta", float)
    phi = _get(section, "phi", float, default=0.0)
    try:
        params = ModelParams(order=len(coeffs) - 1, coeffs=coeffs,
                             angles=RotationAngles(theta, phi))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return params, HalfInt(twice_j)


def _output_target(config: dict, args, default_name: str) -> tuple[str, str]:
    section = config.get("output", {})
    path = args.out or section.get("path") or default_name
    fmt = (args.format or section.get("format") or "csv").lower()
    if fmt not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {fmt!r}")
    return path, fmt


def _parse_initial(spec: str, params: ModelParams, j: HalfInt) -> EigenbasisState:
    kind, _, rest = spec.partition(":")
    dim = j.twice + 1
    if kind == "dicke":
        twice_m = int(rest)
        if (twice_m - j.twice) % 2 != 0 or abs(twice_m) > j.twice:
            raise ConfigError(f"dicke m (twice={twice_m}) invalid for twice_j={j.twice}")
        psi = np.zeros(dim, dtype=complex)
        psi[(twice_m + j.twice) // 2] = 1.0
        return to_eigenbasis(params, j, psi)
    if kind == "rotated":
        twice_m = int(rest)
        if (twice_m - j.twice) % 2 != 0 or abs(twice_m) > j.twice:
            raise ConfigError(f"rotated m (twice={twice_m}) invalid for twice_j={j.twice}")
        return to_eigenbasis(params, j, rotated_basis_state(j, params.angles, HalfInt(twice_m)))
    if kind == "amplitudes":
        try:
            amps = np.array([complex(tok) for tok in rest.split(",")])
        except ValueError as exc:
            raise ConfigError(f"bad amplitude list: {rest!r}") from exc
        if amps.size != dim:
            raise ConfigError(f"amplitude list has {amps.size} entries, expected {dim}")
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise ConfigError("amplitude list is all zeros")
        return to_eigenbasis(params, j, amps / norm)
    raise ConfigError(f"initial state must be dicke:TWICE_M, rotated:TWICE_M, or "
                      f"amplitudes:..., got {spec!r}")


def cmd_spectrum(config: dict, args) -> int:
    params, j = _build_model(config, args)
    path, fmt = _output_target(config, args, "spectrum.csv")
    pairs = exact_spectrum(params, j)
    residuals = [residual_norm(params, j, p) for p in pairs]
    if fmt == "csv":
        lines = ["m,energy,residual"]
        lines += [f"{_fmt(p.m.value)},{_fmt(p.energy)},{_fmt(r)}"
                  for p, r in zip(pairs, residuals)]
        _write_atomic(path, _csv(lines))
    else:
        doc = {
            "m": [p.m.value for p in pairs],
            "energy": [p.energy for p in pairs],
            "residual": residuals,
        }
        _write_atomic(path, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_ground(config: dict, args) -> int:
    params, j = _build_model(config, args)
    path, fmt = _output_target(config, args, "ground.csv")
    result = ground_state(params, j)
    dist = dicke_distribution(result.pair.vector)
    m_grid = m_floats(j)
    if fmt == "csv":
        lines = [
            f"# m0={_fmt(result.m0.value)}",
            f"# energy={_fmt(result.pair.energy)}",
            f"# degenerate={str(result.degenerate).lower()}",
            f"# method={result.method}",
            "m,probability",
        ]
        lines += [f"{_fmt(m)},{_fmt(p)}" for m, p in zip(m_grid, dist.probs)]
        _write_atomic(path, _csv(lines))
    else:
        doc = {
            "m0": result.m0.value,
            "energy": result.pair.energy,
            "degenerate": result.degenerate,
            "method": result.method,
            "m": [float(m) for m in m_grid],
            "probability": [float(p) for p in dist.probs],
        }
        _write_atomic(path, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_evolve(config: dict, args) -> int:
    params, j = _build_model(config, args)
    path, fmt = _output_target(config, args, "evolve.csv")
    section = config.get("evolve", {})
    if not section:
        raise ConfigError("evolve requires an [evolve] config section")
    t_min = _get(section, "t_min", float, default=0.0)
    t_max = _get(section, "t_max", float)
    num_points = _get(section, "num_points", int)
    if num_points < 2 or not t_max > t_min:
        raise ConfigError("need num_points >= 2 and t_max > t_min")
    include_printed = _get(section, "include_printed_formula",
                           lambda s: s.strip().lower() in ("1", "true", "yes"),
                           default=params.order == 2)
    state = _parse_initial(_get(section, "initial", str), params, j)
    times = np.linspace(t_min, t_max, num_points)
    jz = evolve_observable(params, j, state, "Jz", times)
    jy = evolve_observable(params, j, state, "Jy", times)
    printed = None
    if include_printed and params.order == 2:
        printed = paper_jz_series(params, j, state, times)
    if fmt == "csv":
        header = "t,jz_exact" + (",jz_paper_formula" if printed else "") + ",jy_exact"
        lines = [header]
        for i, t in enumerate(times):
            row = [_fmt(t), _fmt(jz.values[i])]
            if printed:
                row.append(_fmt(printed.values[i]))
            row.append(_fmt(jy.values[i]))
            lines.append(",".join(row))
        _write_atomic(path, _csv(lines))
    else:
        doc = {"t": [float(t) for t in times],
               "jz_exact": [float(v) for v in jz.values]}
        if printed:
            doc["jz_paper_formula"] = [float(v) for v in printed.values]
        doc["jy_exact"] = [float(v) for v in jy.values]
        _write_atomic(path, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_verify(config: dict, args) -> int:
    section = config.get("verify", {})
    max_twice_j = args.max_j if args.max_j is not None else _get(
        section, "max_twice_j", int, default=24)
    draws = args.draws if args.draws is not None else _get(section, "draws", int, default=40)
    seed = args.seed if args.seed is not None else _get(section, "seed", int, default=0)
    report = build_report(max_twice_j=max_twice_j, draws=draws, seed=seed)
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    for check in report["required"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"[{status}] {check['name']}: {check['measured']:.3e} "
              f"(limit {check['limit']:.3e})", file=sys.stderr)
    for sweep in report["diagnostics"]:
        status = "PASS" if sweep["passed"] else "FAIL"
        print(f"[{status}] {sweep['name']}: ratio {sweep['mean_ratio']:.9g} "
              f"(cv {sweep['cv']:.3e})", file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_CHECK


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exactspin",
        description="Exactly solvable rotated collective-spin models: "
                    "spectra, ground states, dynamics, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("spectrum", "export the closed-form eigensystem (m, energy, residual)"),
        ("ground", "export the ground state and its population distribution"),
        ("evolve", "export exact observable evolution (and the printed formula)"),
        ("verify", "run oracle checks and measured-deviation sweeps"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="INI config file")
        p.add_argument("--out", help="output path")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
        p.add_argument("--j", type=int, metavar="TWICE_J",
                       help="doubled total spin (e.g. 200 for j=100)")
        p.add_argument("--theta", type=float, help="rotation angle theta (radians)")
        p.add_argument("--phi", type=float, help="rotation angle phi (radians)")
        p.add_argument("--A", dest="coeffs", metavar="a0,a1,...",
                       help="comma-separated polynomial coefficients")
        p.add_argument("--convention", choices=FOCK_CONVENTIONS, default="standard",
                       help="two-mode population-difference normalization")
        p.add_argument("--threads", type=int, default=1,
                       help="accepted for compatibility; computation is "
                            "deterministic and single-process")
        if name == "verify":
            p.add_argument("--max-j", type=int, metavar="TWICE_J",
                           help="cap the oracle comparisons at this doubled spin")
            p.add_argument("--draws", type=int, help="number of random draws")
            p.add_argument("--seed", type=int, help="random seed")
    return parser


def main(argv=None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        config = _read_config(args.config)
        if args.command == "spectrum":
            return cmd_spectrum(config, args)
        if args.command == "ground":
            return cmd_ground(config, args)
        if args.command == "evolve":
            return cmd_evolve(config, args)
        return cmd_verify(config, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
