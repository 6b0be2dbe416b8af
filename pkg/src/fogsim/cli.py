"""Command-line front end.

Emits the constant-factor improvement table, figure data sets as CSV, and
single-point variance / optimization / ratio / simulation queries as JSON.

Commands
--------
``fogsim table1``
    Both rows of the improvement table (length-optimized and fixed-length
    count-optimized inverse sensitivity ratios) at 5, 10, 15, 20 and
    infinite dB of squeezing, each computed analytically and via the
    numeric optimizer, with the absolute difference.
``fogsim figure --id {3a,3b,5,6,7}``
    Deterministic CSV grids behind the standard plots.
``fogsim variance / optimize / ratio / simulate``
    JSON records for one configuration.

A flat ``key = value`` configuration file can be supplied with ``--config``;
command-line flags override file values.  Exit codes: 0 success, 2 usage or
configuration error, 3 numeric convergence failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass

from . import analytic, designs, optimize
from .sagnac import GyroGeometry, db_to_photons, time_factor

#: Squeezing grid of the improvement table, in dB ("inf" allowed in configs).
TABLE_SIGMAS_DB = (5.0, 10.0, 15.0, 20.0, math.inf)

FIGURE_IDS = ("3a", "3b", "5", "6", "7")


class ConfigError(ValueError):
    """A configuration file or flag combination cannot be used."""


def format_number(value: float) -> str:
    """Fixed CSV number format: 12 significant digits, scientific notation."""
    return f"{value:.11e}"


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for one swept parameter."""

    parameter: str
    start: float
    stop: float
    steps: int
    log: bool = False

    def values(self) -> list[float]:
        if self.steps < 2:
            raise ConfigError(f"sweep of {self.parameter} needs at least 2 steps")
        if self.log:
            if self.start <= 0 or self.stop <= 0:
                raise ConfigError(f"log sweep of {self.parameter} needs positive bounds")
            a, b = math.log10(self.start), math.log10(self.stop)
            return [10.0 ** (a + (b - a) * i / (self.steps - 1)) for i in range(self.steps)]
        return [
            self.start + (self.stop - self.start) * i / (self.steps - 1)
            for i in range(self.steps)
        ]


@dataclass
class RunConfig:
    """Resolved settings for one invocation (file values overridden by flags)."""

    # physical constants block
    wavelength_nm: float = 1550.0
    radius_m: float = 0.05
    b: float = 0.5
    # design block
    design: str = "C"
    m: int = 1
    n_v: float = 100.0
    squeeze_db: str | None = None
    n_squeezed: float | None = None
    # task block
    eta: float | None = None
    phi: float = 0.0
    length_km: float | None = None
    fix_length_km: float | None = None
    time_factor_s: float | None = None
    m_max: int = 64
    samples: int = 1_000_000
    seed: int = 1
    figure_id: str | None = None
    # presentation-only grid defaults (match the standard plots visually)
    fig3a_max_photons: float = 1e6
    fig3a_points: int = 61
    fig3b_max_length_km: float = 50.0
    fig3b_points: int = 199
    fig6_lengths_km: str = "5,15,30"
    fig6_max_m: int = 16
    fig7_max_sigma_db: float = 30.0
    fig7_max_m: int = 16
    # output block
    out: str | None = None
    format: str = "csv"

    _INT_KEYS = ("m", "m_max", "samples", "seed", "fig3a_points", "fig3b_points", "fig6_max_m", "fig7_max_m")
    _STR_KEYS = ("design", "squeeze_db", "figure_id", "fig6_lengths_km", "out", "format")

    @classmethod
    def known_keys(cls) -> tuple[str, ...]:
        return tuple(f.name for f in dataclasses.fields(cls))

    def apply(self, key: str, raw: str) -> None:
        if key not in self.known_keys():
            raise ConfigError(f"unknown configuration key: {key!r}")
        if key in self._INT_KEYS:
            try:
                value: object = int(raw)
            except ValueError:
                raise ConfigError(f"configuration key {key!r} expects an integer, got {raw!r}") from None
        elif key in self._STR_KEYS:
            value = raw
        else:
            try:
                value = float(raw)
            except ValueError:
                raise ConfigError(f"configuration key {key!r} expects a number, got {raw!r}") from None
        setattr(self, key, value)

    def resolved_squeezed_photons(self) -> float:
        """Total squeezed photon number from either config route (0 if absent)."""
        if self.n_squeezed is not None and self.squeeze_db is not None:
            raise ConfigError("give either squeeze_db or n_squeezed, not both")
        if self.n_squeezed is not None:
            return self.n_squeezed
        if self.squeeze_db is not None:
            text = str(self.squeeze_db).strip().lower()
            sigma = math.inf if text in ("inf", "infinity") else _parse_float("squeeze_db", text)
            return db_to_photons(sigma)
        return 0.0

    def resolved_eta(self) -> float:
        """Transmissivity from --eta, or from the fiber model at L/M per coil."""
        if self.eta is not None:
            return self.eta
        if self.length_km is not None:
            return 10.0 ** (-self.b * (self.length_km / self.m) / 10.0)
        raise ConfigError("missing field: provide eta or length_km")

    def resolved_time_factor(self) -> float:
        """Per-interferometer time factor (seconds); 1.0 when underivable."""
        if self.time_factor_s is not None:
            return self.time_factor_s
        if self.length_km is not None:
            geometry = GyroGeometry.from_wavelength(
                wavelength_m=self.wavelength_nm * 1e-9, radius=self.radius_m
            )
            return time_factor(geometry, self.length_km / self.m)
        return 1.0

    def fig6_lengths(self) -> list[float]:
        try:
            lengths = [float(tok) for tok in str(self.fig6_lengths_km).split(",") if tok.strip()]
        except ValueError:
            raise ConfigError(f"fig6_lengths_km expects comma-separated numbers, got {self.fig6_lengths_km!r}") from None
        if not lengths:
            raise ConfigError("fig6_lengths_km must list at least one length")
        return lengths

    def design_config(self) -> designs.DesignConfig:
        return designs.DesignConfig(
            variant=self.design,
            m_interferometers=self.m,
            n_v=self.n_v,
            n_squeezed=self.resolved_squeezed_photons(),
        )


def _parse_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"configuration key {key!r} expects a number, got {raw!r}") from None


def load_config_file(path: str) -> dict[str, str]:
    """Parse a flat ``key = value`` file; '#' starts a comment."""
    entries: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line_number, line in enumerate(handle, start=1):
                text = line.split("#", 1)[0].strip()
                if not text:
                    continue
                if "=" not in text:
                    raise ConfigError(
                        f"{path}:{line_number}: expected 'key = value', got {line.strip()!r}"
                    )
                key, raw = (part.strip() for part in text.split("=", 1))
                entries[key] = raw
    except OSError as exc:
        raise ConfigError(f"cannot read configuration file {path}: {exc}") from exc
    return entries


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """RunConfig from defaults, then the config file, then explicit flags."""
    config = RunConfig()
    if getattr(args, "config", None):
        for key, raw in load_config_file(args.config).items():
            config.apply(key, raw)
    for key in RunConfig.known_keys():
        value = getattr(args, key, None)
        if value is not None:
            setattr(config, key, value)
    return config


# ---------------------------------------------------------------------------
# CSV assembly
# ---------------------------------------------------------------------------

def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return format_number(float(value))


def render_csv(comment: str, header: list[str], rows: list[list[object]]) -> str:
    """Deterministic CSV: comment line, header, then 12-significant-digit rows."""
    lines = [f"# {comment}", ",".join(header)]
    lines.extend(",".join(_cell(value) for value in row) for row in rows)
    return "\n".join(lines) + "\n"


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _config_comment(config: RunConfig, **extra: object) -> str:
    parts = [f"{key}={value}" for key, value in sorted(extra.items())]
    # Full resolved configuration, minus output routing, so a data file is
    # reproducible from its own comment line.
    resolved = [
        f"{field.name}={getattr(config, field.name)}"
        for field in dataclasses.fields(RunConfig)
        if field.name != "out"
    ]
    return " ".join(["fogsim", *parts, *resolved])


# ---------------------------------------------------------------------------
# Improvement table
# ---------------------------------------------------------------------------

def table1_rows(config: RunConfig) -> list[list[object]]:
    """Analytic and numeric inverse sensitivity ratios at the table squeezings."""
    fixed_length = config.fix_length_km if config.fix_length_km is not None else 15.0
    rows: list[list[object]] = []
    for sigma in TABLE_SIGMAS_DB:
        n_s = db_to_photons(sigma)
        length_analytic = 1.0 / analytic.ratio_optimal_length(n_s)
        length_numeric = 1.0 / optimize.numeric_ratio_optimal_length(n_s, b=config.b)
        count_analytic = 1.0 / analytic.ratio_optimal_m(n_s)
        count_numeric = 1.0 / optimize.numeric_ratio_optimal_m(
            n_s, b=config.b, length_km=fixed_length
        )
        rows.append(
            [
                "inf" if math.isinf(sigma) else format_number(sigma),
                length_analytic,
                length_numeric,
                abs(length_analytic - length_numeric),
                count_analytic,
                count_numeric,
                abs(count_analytic - count_numeric),
            ]
        )
    return rows


def cmd_table1(config: RunConfig) -> None:
    header = [
        "sigma_db",
        "improvement_length_opt_analytic",
        "improvement_length_opt_numeric",
        "improvement_length_opt_absdiff",
        "improvement_m_opt_analytic",
        "improvement_m_opt_numeric",
        "improvement_m_opt_absdiff",
    ]
    rows = table1_rows(config)
    if config.format == "json":
        records = [dict(zip(header, [row[0]] + [float(v) for v in row[1:]])) for row in rows]
        _write_output(json.dumps(records, indent=2, sort_keys=True) + "\n", config.out)
    else:
        _write_output(
            render_csv(_config_comment(config, command="table1"), header, rows),
            config.out,
        )


# ---------------------------------------------------------------------------
# Figure data sets
# ---------------------------------------------------------------------------

def figure_3a(config: RunConfig) -> tuple[list[str], list[list[object]]]:
    """Energy-split-optimized variance against total photons, per transmissivity."""
    etas = (1.0, 0.9, 0.99, 0.999)
    sweep = SweepSpec("n_photons", 1.0, config.fig3a_max_photons, config.fig3a_points, log=True)
    header = ["n_photons"]
    for eta in etas:
        header.extend([f"classical_eta_{eta}", f"squeezed_eta_{eta}"])
    rows = []
    for n in sweep.values():
        row: list[object] = [n]
        for eta in etas:
            row.append(analytic.classical_variance(1.0, eta, n))
            row.append(analytic.optimal_energy_split(n, eta).variance)
        rows.append(row)
    return header, rows


def figure_3b(config: RunConfig) -> tuple[list[str], list[list[object]]]:
    """Normalized variance against fiber length, plus the optimized parametric curve."""
    sigmas = (5.0, 10.0, 15.0, math.inf)
    sweep = SweepSpec("length_km", 0.5, config.fig3b_max_length_km, config.fig3b_points)
    header = ["length_km", "classical"]
    header.extend(
        "squeezed_infdb" if math.isinf(s) else f"squeezed_{s:g}db" for s in sigmas
    )
    header.extend(["param_sigma_db", "param_length_km", "param_variance"])
    lengths = sweep.values()
    parametric = SweepSpec("sigma_db", 0.0, 40.0, 81).values()
    rows = []
    for i, length in enumerate(lengths):
        row: list[object] = [length, analytic.variance_vs_length("C", config.b, length)]
        for sigma in sigmas:
            row.append(
                analytic.variance_vs_length("S", config.b, length, 1, db_to_photons(sigma))
            )
        if i < len(parametric):
            sigma = parametric[i]
            optimum = analytic.optimal_length("S", config.b, db_to_photons(sigma))
            row.extend([sigma, optimum.length_km, optimum.variance_normalized])
        else:
            row.extend([None, None, None])
        rows.append(row)
    return header, rows


def figure_5(config: RunConfig) -> tuple[list[str], list[list[object]]]:
    """Length-optimized normalized variance of the distributed designs.

    The product design appears twice: with the total squeezed energy fixed
    to one 10 dB source shared over the array, and with one 10 dB source
    per interferometer (which reproduces the entangled design exactly).
    """
    n_s = db_to_photons(10.0)
    header = ["m", "design_d", "design_p_shared_source", "design_p_per_mode", "design_e"]
    rows: list[list[object]] = []
    for m in (1, 2, 4, 8, 16):
        rows.append(
            [
                m,
                analytic.optimal_length("D", config.b, 0.0, m).variance_normalized,
                analytic.optimal_length("P", config.b, n_s, m).variance_normalized,
                analytic.optimal_length("P", config.b, m * n_s, m).variance_normalized,
                analytic.optimal_length("E", config.b, n_s, m).variance_normalized,
            ]
        )
    return header, rows


def figure_6(config: RunConfig) -> tuple[list[str], list[list[object]]]:
    """Fixed-length variance profiles against the interferometer count."""
    n_s = db_to_photons(10.0)
    lengths = config.fig6_lengths()
    header = ["m"]
    for length in lengths:
        tag = f"{length:g}km"
        header.extend([f"design_d_{tag}", f"design_p_{tag}", f"design_e_{tag}"])
    header.extend(
        [
            "param_length_km",
            "param_m_d",
            "param_var_d",
            "param_m_p",
            "param_var_p",
            "param_m_e",
            "param_var_e",
        ]
    )
    parametric_lengths = SweepSpec("length_km", 2.0, 40.0, 77).values()
    count = max(config.fig6_max_m, len(parametric_lengths))
    rows = []
    for i in range(count):
        row: list[object] = []
        if i < config.fig6_max_m:
            m = i + 1
            row.append(m)
            for length in lengths:
                row.append(analytic.variance_vs_length("D", config.b, length, m))
                row.append(analytic.variance_vs_length("P", config.b, length, m, n_s))
                row.append(analytic.variance_vs_length("E", config.b, length, m, n_s))
        else:
            row.extend([None] * (1 + 3 * len(lengths)))
        if i < len(parametric_lengths):
            length = parametric_lengths[i]
            d_opt = analytic.optimal_m("D", config.b, length)
            e_opt = analytic.optimal_m("E", config.b, length, n_s)
            p_opt = optimize.optimize_m_continuous("P", config.b, length, n_s, m_hi=1e4)
            row.extend(
                [
                    length,
                    d_opt.continuous,
                    d_opt.variance_continuous,
                    p_opt.x,
                    p_opt.value,
                    e_opt.continuous,
                    e_opt.variance_continuous,
                ]
            )
        else:
            row.extend([None] * 7)
        rows.append(row)
    return header, rows


def figure_7(config: RunConfig) -> tuple[list[str], list[list[object]]]:
    """Sensitivity-ratio surfaces over squeezing and interferometer count.

    Fixed total length (default 15 km): the per-coil transmissivity improves
    with the count, and every ratio is floored by 1 - eta.
    """
    length = config.fix_length_km if config.fix_length_km is not None else 15.0
    sigma_grid = SweepSpec("sigma_db", 0.0, config.fig7_max_sigma_db, 61).values()
    header = ["sigma_db", "m", "eta", "ratio_s_single", "ratio_p", "ratio_e", "one_minus_eta"]
    eta_single = 10.0 ** (-config.b * length / 10.0)
    rows = []
    for sigma in sigma_grid:
        n_s = db_to_photons(sigma)
        ratio_single = analytic.ratio_fixed_eta(n_s, eta_single)
        for m in range(1, config.fig7_max_m + 1):
            eta = 10.0 ** (-config.b * (length / m) / 10.0)
            rows.append(
                [
                    sigma,
                    m,
                    eta,
                    ratio_single,
                    analytic.ratio_product_fixed_eta(n_s, eta, m),
                    analytic.ratio_fixed_eta(n_s, eta),
                    1.0 - eta,
                ]
            )
    return header, rows


_FIGURE_BUILDERS = {
    "3a": figure_3a,
    "3b": figure_3b,
    "5": figure_5,
    "6": figure_6,
    "7": figure_7,
}


def cmd_figure(config: RunConfig) -> None:
    figure_id = config.figure_id
    if figure_id not in _FIGURE_BUILDERS:
        raise ConfigError(
            f"unknown figure id {figure_id!r}; choose one of {', '.join(FIGURE_IDS)}"
        )
    header, rows = _FIGURE_BUILDERS[figure_id](config)
    comment = _config_comment(config, command="figure", id=figure_id)
    _write_output(render_csv(comment, header, rows), config.out)


# ---------------------------------------------------------------------------
# Single-point JSON commands
# ---------------------------------------------------------------------------

def _emit_json(record: dict, out: str | None) -> None:
    _write_output(json.dumps(record, indent=2, sort_keys=True) + "\n", out)


def cmd_variance(config: RunConfig) -> None:
    design = config.design_config()
    eta = config.resolved_eta()
    t = config.resolved_time_factor()
    variance = analytic.design_variance(
        design.variant, t, eta, design.m, design.n_v, design.n_squeezed
    )
    _emit_json(
        {
            "design": design.variant,
            "m": design.m,
            "n_v": design.n_v,
            "n_squeezed": design.n_squeezed,
            "eta": eta,
            "time_factor_s": t,
            "variance": variance,
            "variance_normalized": variance * t**2 * design.n_v,
            "provenance": "analytic",
        },
        config.out,
    )


def cmd_ratio(config: RunConfig) -> None:
    n_s = config.resolved_squeezed_photons()
    try:
        eta: float | None = config.resolved_eta()
    except ConfigError:
        eta = None
    ratios = analytic.sensitivity_ratios(n_s, eta)
    record = {
        "n_squeezed": n_s if math.isfinite(n_s) else "inf",
        "ratio_fixed_eta": ratios.fixed_eta,
        "ratio_optimal_length": ratios.optimal_length,
        "ratio_optimal_m": ratios.optimal_m,
        "improvement_optimal_length": 1.0 / ratios.optimal_length,
        "improvement_optimal_m": 1.0 / ratios.optimal_m,
        "provenance": "analytic",
    }
    if eta is not None and config.m > 1:
        record["ratio_product_fixed_eta"] = analytic.ratio_product_fixed_eta(
            n_s, eta, config.m
        )
    _emit_json(record, config.out)


def cmd_optimize(config: RunConfig) -> None:
    n_s = config.resolved_squeezed_photons()
    variant = config.design
    if config.fix_length_km is not None:
        length = config.fix_length_km
        search = optimize.optimize_m_integer(variant, config.b, length, n_s, config.m_max)
        record: dict[str, object] = {
            "design": variant,
            "b": config.b,
            "length_km": length,
            "m_best": search.m_best,
            "variance_best": search.variance_best,
            "provenance": "numeric-optimum",
        }
        if search.analytic_reference is not None:
            reference = search.analytic_reference
            record.update(
                {
                    "m_continuous": reference.continuous,
                    "variance_continuous": reference.variance_continuous,
                    "m_floor": reference.floor_candidate,
                    "m_ceil": reference.ceil_candidate,
                    "below_threshold": reference.below_threshold,
                }
            )
        if variant == "E":
            record["ratio_fixed_length"] = analytic.ratio_optimal_m(n_s)
            record["improvement_fixed_length"] = 1.0 / analytic.ratio_optimal_m(n_s)
        _emit_json(record, config.out)
    else:
        optimum = analytic.optimal_length(variant, config.b, n_s, config.m)
        numeric = optimize.optimize_length(variant, config.b, n_s, config.m)
        _emit_json(
            {
                "design": variant,
                "b": config.b,
                "m": config.m,
                "length_opt_km": optimum.length_km,
                "variance_normalized": optimum.variance_normalized,
                "numeric_length_km": numeric.x,
                "numeric_variance": numeric.value,
                "relative_length_difference": abs(numeric.x - optimum.length_km)
                / optimum.length_km,
                "provenance": "analytic",
            },
            config.out,
        )


def cmd_simulate(config: RunConfig) -> None:
    design = config.design_config()
    eta = config.resolved_eta()
    t = config.resolved_time_factor()
    stats = designs.build_and_run(design, config.phi, eta)
    result = designs.estimator_variance_sim(design, eta, t)
    reference = analytic.design_variance(
        design.variant, t, eta, design.m, design.n_v, design.n_squeezed
    )
    _emit_json(
        {
            "design": design.variant,
            "m": design.m,
            "n_v": design.n_v,
            "n_squeezed": design.n_squeezed,
            "eta": eta,
            "phi": config.phi,
            "time_factor_s": t,
            "homodyne_mean": stats.mean,
            "homodyne_variance": stats.variance,
            "slope": result.slope,
            "estimator_variance_sim": result.estimator_variance,
            "estimator_variance_analytic": reference,
            "relative_deviation": abs(result.estimator_variance - reference)
            / reference,
            "variance_normalized": result.variance_normalized,
            "provenance": "simulated",
        },
        config.out,
    )


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--b", type=float, help="fiber loss coefficient, dB/km")
    parser.add_argument("--wavelength-nm", dest="wavelength_nm", type=float)
    parser.add_argument("--radius-m", dest="radius_m", type=float)


def _add_design_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--design", choices=designs.VARIANTS)
    parser.add_argument("--m", type=int, help="number of interferometers")
    parser.add_argument("--n-v", dest="n_v", type=float, help="per-fiber laser photons")
    parser.add_argument(
        "--squeeze-db", dest="squeeze_db", help="squeezing in dB ('inf' allowed)"
    )
    parser.add_argument(
        "--n-squeezed", dest="n_squeezed", type=float, help="total squeezed photons"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fogsim",
        description="Rotation-sensitivity analysis of quantum-enhanced fiber gyroscopes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table1", help="constant-factor improvement table")
    _add_common_options(p_table)
    p_table.add_argument("--fix-length", dest="fix_length_km", type=float)
    p_table.add_argument("--format", choices=("csv", "json"))

    p_figure = sub.add_parser("figure", help="figure data set as CSV")
    _add_common_options(p_figure)
    p_figure.add_argument("--id", dest="figure_id", choices=FIGURE_IDS, required=True)

    p_variance = sub.add_parser("variance", help="estimator variance of one design")
    _add_common_options(p_variance)
    _add_design_options(p_variance)
    p_variance.add_argument("--eta", type=float)
    p_variance.add_argument("--length-km", dest="length_km", type=float)
    p_variance.add_argument("--t", dest="time_factor_s", type=float)

    p_optimize = sub.add_parser("optimize", help="optimal length or count")
    _add_common_options(p_optimize)
    _add_design_options(p_optimize)
    p_optimize.add_argument(
        "--fix-length",
        dest="fix_length_km",
        type=float,
        help="optimize the count at this total length (km); omit to optimize length",
    )
    p_optimize.add_argument("--m-max", dest="m_max", type=int)

    p_ratio = sub.add_parser("ratio", help="quantum/classical sensitivity ratios")
    _add_common_options(p_ratio)
    _add_design_options(p_ratio)
    p_ratio.add_argument("--eta", type=float)
    p_ratio.add_argument("--length-km", dest="length_km", type=float)

    p_simulate = sub.add_parser("simulate", help="Gaussian-circuit cross check")
    _add_common_options(p_simulate)
    _add_design_options(p_simulate)
    p_simulate.add_argument("--eta", type=float)
    p_simulate.add_argument("--length-km", dest="length_km", type=float)
    p_simulate.add_argument("--phi", type=float)
    p_simulate.add_argument("--t", dest="time_factor_s", type=float)

    return parser


_COMMANDS = {
    "table1": cmd_table1,
    "figure": cmd_figure,
    "variance": cmd_variance,
    "optimize": cmd_optimize,
    "ratio": cmd_ratio,
    "simulate": cmd_simulate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
        _COMMANDS[args.command](config)
    except optimize.ConvergenceError as exc:
        print(f"fogsim: convergence error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, ValueError) as exc:
        print(f"fogsim: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
