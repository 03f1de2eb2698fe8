"""Command-line front end.

Emits plot-ready CSV/JSON sweeps (branch curves, ground-state envelope,
crossing points, model-function graphs), resolves the model constants with
their consistency checks, and runs the full invariant suite.

Exit codes: 0 success, 1 verification failure, 2 configuration error.
Data files are deterministic byte-for-byte for a fixed configuration; a
``<out>.meta.json`` sidecar carries provenance (command, parameters,
version) so the data itself stays timestamp-free.
"""

import argparse
import datetime
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__, disk, intersect, models, verify
from .numerics import DEFAULT_TOL, DomainError, Tolerances, central_diff
from .specfun import cylinder_d

SCHEMA_VERSION = 1

_COMMANDS = (
    "curves",
    "envelope",
    "intersections",
    "asymptotics",
    "constants",
    "halfplane",
    "degennes",
    "verify",
)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n_min: int = 0
    n_max: int = 5
    b_min: float = 0.0
    b_max: float = 10.0
    steps: int = 101
    out_path: str = "-"
    format: str = "csv"
    rel_tol: float | None = None
    only: str | None = None

    def validate(self):
        if self.command not in _COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.n_min > self.n_max:
            raise ConfigError(f"need n_min <= n_max, got {self.n_min} > {self.n_max}")
        if self.b_min > self.b_max:
            raise ConfigError(f"need b_min <= b_max, got {self.b_min} > {self.b_max}")
        if self.steps < 2:
            raise ConfigError(f"need steps >= 2, got {self.steps}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.n_min < 0:
            raise ConfigError(f"need n_min >= 0, got {self.n_min}")
        if self.rel_tol is not None and self.rel_tol <= 0:
            raise ConfigError("rel-tol must be positive")

    @property
    def tolerances(self) -> Tolerances:
        if self.rel_tol is None:
            return DEFAULT_TOL
        return Tolerances(rel_tol=self.rel_tol)


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _emit(cfg: RunConfig, columns: list[str], rows: list[tuple]) -> None:
    if cfg.format == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": cfg.command,
            "columns": columns,
            "rows": [[v for v in row] for row in rows],
        }
        text = json.dumps(payload, indent=2) + "\n"
    _write_output(cfg, text)


def _write_output(cfg: RunConfig, text: str) -> None:
    if cfg.out_path in ("-", ""):
        sys.stdout.write(text)
        return
    with open(cfg.out_path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    sidecar = {
        "schema_version": SCHEMA_VERSION,
        "command": cfg.command,
        "parameters": {key: value for key, value in asdict(cfg).items() if value is not None},
        "package_version": __version__,
        "written_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    with open(cfg.out_path + ".meta.json", "w", encoding="utf-8") as handle:
        json.dump(sidecar, handle, indent=2)
        handle.write("\n")


def _b_grid(cfg: RunConfig) -> list[float]:
    return [float(b) for b in np.linspace(cfg.b_min, cfg.b_max, cfg.steps)]


def cmd_curves(cfg: RunConfig) -> int:
    grid = _b_grid(cfg)
    rows = []
    for branch in ("pos", "neg"):
        sign = 1.0 if branch == "pos" else -1.0
        for n in range(cfg.n_min, cfg.n_max + 1):
            for b in grid:
                rows.append((n, b, branch, disk.lambda_n(n, sign * b)))
    _emit(cfg, ["n", "b", "branch", "lambda"], rows)
    return 0


def cmd_envelope(cfg: RunConfig) -> int:
    if cfg.b_min < 0:
        raise ConfigError("envelope needs b_min >= 0")
    alpha = models.compute_alpha()
    offset = (alpha * alpha + 2.0) / 6.0
    rows = []
    for point in disk.envelope(_b_grid(cfg)):
        asymptote = alpha * math.sqrt(point.b) - offset
        rows.append((point.b, point.active_mode, point.lambda_dn, asymptote))
    _emit(cfg, ["b", "active_mode", "lambda_dn", "asymptote"], rows)
    return 0


def cmd_intersections(cfg: RunConfig) -> int:
    rows = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        r = intersect.find_zn(n, cfg.tolerances if cfg.rel_tol else None)
        rows.append((r.n, r.z_n, r.lambda_at_zn, r.beta_n, r.residual_M, r.residual_F))
    _emit(cfg, ["n", "z_n", "lambda_at_zn", "beta_n", "residual_M", "residual_F"], rows)
    return 0


def cmd_asymptotics(cfg: RunConfig) -> int:
    n_lo = max(cfg.n_min, 1)
    n_hi = cfg.n_max
    if n_hi / max(n_lo, 1) < 4:
        raise ConfigError("asymptotics needs n_max/n_min >= 4 for a stable fit")
    count = min(40, n_hi - n_lo + 1)
    ns = sorted({int(round(n)) for n in np.geomspace(n_lo, n_hi, count)})
    records = [intersect.find_zn(n) for n in ns]
    fit = intersect.fit_asymptotics(records, terms=4)
    alpha = models.compute_alpha()
    gap = intersect.gap_zn(n_hi)
    gap_model = 1.0 + 0.5 * alpha / math.sqrt(n_hi)
    names = ["sqrt_n", "const", "inv_sqrt_n", "inv_n"]
    if cfg.format == "csv":
        rows = [(name, coeff) for name, coeff in zip(names, fit.coefficients)]
        rows.append(("max_fit_residual", fit.max_residual))
        rows.append(("gap_at_n_max", gap))
        rows.append(("gap_model_at_n_max", gap_model))
        _emit(cfg, ["quantity", "value"], rows)
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "asymptotics",
            "n_range": list(fit.n_range),
            "modes_used": ns,
            "coefficients": dict(zip(names, fit.coefficients)),
            "max_fit_residual": fit.max_residual,
            "gap_at_n_max": gap,
            "gap_model_at_n_max": gap_model,
        }
        _write_output(cfg, json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_constants(cfg: RunConfig) -> int:
    tol = cfg.tolerances
    consts = models.constants(tol)
    alpha = consts.alpha
    phi_prime = central_diff(models.phi, alpha)
    delta_quad = models.delta(alpha, tol)
    f_residual = intersect.check_F_formula(20)
    f1_at_alpha = models.halfplane_multiplier(alpha)
    d_half_residual = abs(cylinder_d(0.5, -alpha).value)
    checks = {
        "alpha_matches_reference": (abs(alpha - 0.7649508673), 1e-8),
        "theta0_matches_reference": (abs(consts.theta0 - 0.5901061249), 1e-6),
        "cylinder_root_residual": (d_half_residual, 1e-10),
        "halfplane_fixed_point": (abs(f1_at_alpha - alpha), 1e-8),
        "phi_prime_alpha": (abs(phi_prime - 0.5), 1e-6),
        "delta_alpha_two_routes": (abs(delta_quad - consts.delta_alpha), 1e-6),
        "f_formula_max_residual": (f_residual, 1e-8),
        "alpha_below_bound": (max(0.0, alpha - consts.alpha_upper_bound), 0.0),
    }
    payload = {
        "schema_version": SCHEMA_VERSION,
        "alpha": alpha,
        "xi0": consts.xi0,
        "theta0": consts.theta0,
        "delta_alpha": consts.delta_alpha,
        "u0_sq_at_0": consts.u0_sq_at_0,
        "alpha_upper_bound": consts.alpha_upper_bound,
        "resolved_tol": consts.resolved_tol,
        "checks": {
            name: {"residual": residual, "limit": limit, "pass": residual <= limit}
            for name, (residual, limit) in checks.items()
        },
    }
    _write_output(cfg, json.dumps(payload, indent=2) + "\n")
    return 0 if all(v <= lim for v, lim in checks.values()) else 1


def cmd_halfplane(cfg: RunConfig) -> int:
    rows = []
    for xi in _b_grid(cfg):
        rows.append((xi, models.halfplane_multiplier(xi), cylinder_d(0.5, xi).value))
    _emit(cfg, ["xi", "f1", "d_half"], rows)
    return 0


def cmd_degennes(cfg: RunConfig) -> int:
    if cfg.b_min < 0.0 or cfg.b_max > 1.5:
        raise ConfigError("degennes sweep needs the grid inside [0, 1.5]")
    rows = [(xi, models.degennes_f(xi)) for xi in _b_grid(cfg)]
    _emit(cfg, ["xi", "f"], rows)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    results = verify.run_suite(only=cfg.only, rel_tol=cfg.rel_tol)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.module:<10} {r.name:<{width}} {status}  {r.detail}")
        failures += 0 if r.passed else 1
    total = len(results)
    print(f"{total - failures}/{total} checks passed")
    if failures:
        names = ", ".join(r.name for r in results if not r.passed)
        print(f"FAILED: {names}", file=sys.stderr)
    return 1 if failures else 0


_DISPATCH = {
    "curves": cmd_curves,
    "envelope": cmd_envelope,
    "intersections": cmd_intersections,
    "asymptotics": cmd_asymptotics,
    "constants": cmd_constants,
    "halfplane": cmd_halfplane,
    "degennes": cmd_degennes,
    "verify": cmd_verify,
}

_GRID_DEFAULTS = {
    # per-command (b_min, b_max) defaults matched to each function's domain
    "halfplane": (-2.0, 2.0),
    "degennes": (0.0, 1.5),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magsteklov",
        description="Magnetic Steklov spectrum of the unit disk: sweeps, constants, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        b_lo, b_hi = _GRID_DEFAULTS.get(name, (0.0, 10.0))
        p = sub.add_parser(name)
        p.add_argument("--n-min", type=int, default=0)
        p.add_argument("--n-max", type=int, default=5)
        p.add_argument("--b-min", type=float, default=b_lo)
        p.add_argument("--b-max", type=float, default=b_hi)
        p.add_argument("--steps", type=int, default=101)
        p.add_argument("--out", default="-", help="output path, or - for stdout")
        p.add_argument("--format", choices=("csv", "json"), default="json" if name in ("constants", "asymptotics") else "csv")
        p.add_argument("--rel-tol", type=float, default=None)
        p.add_argument("--only", default=None, help="restrict verify to one module")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        n_min=args.n_min,
        n_max=args.n_max,
        b_min=args.b_min,
        b_max=args.b_max,
        steps=args.steps,
        out_path=args.out,
        format=args.format,
        rel_tol=args.rel_tol,
        only=args.only,
    )
    try:
        cfg.validate()
        return _DISPATCH[cfg.command](cfg)
    except (ConfigError, DomainError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
