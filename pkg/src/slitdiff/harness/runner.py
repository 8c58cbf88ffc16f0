"""Experiment orchestration behind the CLI subcommands.

Work items (methods, method pairs, sweep cells) may be evaluated on a
thread pool, but results are always assembled in configuration order, so
output files do not depend on scheduling.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..bandlimit import BandlimitConfig, ReconstructionProfile, reconstruction_profile
from ..classical import fraunhofer_method_pattern, kirchhoff_method_pattern
from ..core import AngleGrid, ComparisonReport, Pattern, compare_patterns
from ..huygens import HuygensConfig, huygens_convergence, huygens_method_pattern
from ..marcella import momentum_amplitude
from . import io
from .config import ConfigError, RunConfig

SWEEP_HEADER = (
    "lambda_over_a", "theta_max_deg", "huygens_n", "screen_distance",
    "worst_pair", "max_abs_deviation", "rms_deviation",
)


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def marcella_pattern(cfg: RunConfig, grid: AngleGrid, normalization="raw") -> Pattern:
    amps = momentum_amplitude(cfg.aperture(), cfg.k * grid.sin_theta)
    return Pattern.from_amplitudes("marcella", grid, amps, normalization, cfg.k)


def compute_pattern(cfg: RunConfig, method: str, grid: Optional[AngleGrid] = None) -> Pattern:
    """Evaluate one canonical method name on the configured (or given) grid."""
    grid = grid if grid is not None else cfg.grid()
    norm = cfg.normalize
    if method == "marcella":
        return marcella_pattern(cfg, grid, norm)
    if method == "fraunhofer":
        return fraunhofer_method_pattern(cfg.aperture(), cfg.k, grid, norm)
    family, _, param = method.partition(":")
    if family == "huygens":
        return huygens_method_pattern(HuygensConfig(cfg.slit_width, cfg.k, int(param)), grid, norm)
    if family == "kirchhoff":
        return kirchhoff_method_pattern(
            cfg.aperture(), cfg.wave(), param, cfg.screen_distance, grid, norm,
            panels=cfg.panels, kernel=cfg.kernel,
        )
    raise ConfigError(f"unknown method {method!r}", "methods")


def compute_patterns(cfg: RunConfig) -> List[Pattern]:
    grid = cfg.grid()
    return _map(lambda m: compute_pattern(cfg, m, grid), list(cfg.methods), cfg.workers)


def _output_path(cfg: RunConfig, command: str) -> Path:
    return Path(cfg.output) if cfg.output else Path(f"slitdiff-{command}.{cfg.format}")


def _method_path(base: Path, method: str) -> Path:
    return base.with_name(f"{base.stem}.{method.replace(':', '-')}{base.suffix}")


def run_pattern(cfg: RunConfig) -> List[Path]:
    """Compute every selected method and write the pattern file(s).

    CSV output with several methods writes one file per method, named
    ``<stem>.<method><suffix>``; a single method writes exactly ``output``.
    JSON output always goes to one file.
    """
    patterns = compute_patterns(cfg)
    base = _output_path(cfg, "pattern")
    written = []
    if cfg.format == "json":
        io.write_patterns_json(patterns, base)
        written.append(base)
    elif len(patterns) == 1:
        io.write_pattern_csv(patterns[0], base)
        written.append(base)
    else:
        for p in patterns:
            path = _method_path(base, p.method)
            io.write_pattern_csv(p, path)
            written.append(path)
    if cfg.plot:
        from .plotting import plot_patterns

        written.append(Path(cfg.plot))
        written.append(plot_patterns(patterns, cfg.plot))
    return written


def compare_all(cfg: RunConfig, patterns: Optional[Sequence[Pattern]] = None) -> List[ComparisonReport]:
    """Pairwise reports for every unordered method pair, in configuration order."""
    if len(cfg.methods) < 2:
        raise ConfigError("comparison needs at least two methods", "methods")
    if patterns is None:
        patterns = compute_patterns(cfg)
    return [
        compare_patterns(p, q, lambda_over_a=cfg.lambda_over_a)
        for p, q in itertools.combinations(patterns, 2)
    ]


def run_compare(cfg: RunConfig) -> List[Path]:
    patterns = compute_patterns(cfg)
    reports = compare_all(cfg, patterns)
    path = _output_path(cfg, "compare")
    if cfg.format == "json":
        io.write_reports_json(reports, path)
    else:
        io.write_reports_csv(reports, path)
    written = [path]
    if cfg.plot:
        from .plotting import plot_patterns

        written.append(Path(cfg.plot))
        written.append(plot_patterns(patterns, cfg.plot))
    return written


def sweep_cells(cfg: RunConfig) -> List[RunConfig]:
    """Cartesian product of the sweep axes, outermost axis first.

    Axes that are not swept stay at the configured value.
    """
    if not cfg.has_sweep:
        raise ConfigError("sweep needs at least one sweep_* axis", "sweep_lambda_over_a")
    lambdas = cfg.sweep_lambda_over_a or (cfg.lambda_over_a,)
    thetas = cfg.sweep_theta_max or (cfg.theta_max,)
    ns = cfg.sweep_n or (None,)
    distances = cfg.sweep_screen_distance or (cfg.screen_distance,)
    cells = []
    for lam, th, n, dist in itertools.product(lambdas, thetas, ns, distances):
        methods = cfg.methods
        if n is not None:
            methods = tuple(f"huygens:{n}" if m.startswith("huygens") else m for m in methods)
        cells.append(dataclasses.replace(
            cfg, wavelength=lam * cfg.slit_width, theta_max=th,
            screen_distance=dist, methods=methods,
        ))
    return cells


def _huygens_n(cell: RunConfig) -> str:
    ns = [m.split(":", 1)[1] for m in cell.methods if m.startswith("huygens:")]
    return ns[0] if ns else ""


def sweep_rows(cfg: RunConfig) -> Tuple[Tuple[str, ...], List[list]]:
    cells = sweep_cells(cfg)

    def evaluate(cell: RunConfig):
        reports = compare_all(dataclasses.replace(cell, workers=1))
        worst = max(reports, key=lambda r: r.max_abs_deviation)
        row = [
            cell.lambda_over_a, cell.theta_max, _huygens_n(cell), cell.screen_distance,
            "|".join(worst.method_pair), worst.max_abs_deviation, worst.rms_deviation,
        ]
        if cfg.sweep_n:
            n = int(_huygens_n(cell) or 0)
            row.append(
                huygens_convergence(cell.slit_width, cell.k, [n], math.radians(cell.convergence_theta))[0][1]
                if n else float("nan")
            )
        return row

    header = SWEEP_HEADER + (("huygens_rel_error",) if cfg.sweep_n else ())
    return header, _map(evaluate, cells, cfg.workers)


def run_sweep(cfg: RunConfig) -> List[Path]:
    header, rows = sweep_rows(cfg)
    path = _output_path(cfg, "sweep")
    if cfg.format == "json":
        io.write_table_json(header, rows, path)
    else:
        io.write_table_csv(header, rows, path)
    written = [path]
    if cfg.plot:
        from .plotting import emit_plot

        x = np.arange(len(rows), dtype=float)
        y = np.array([row[5] for row in rows], dtype=float)
        written.append(Path(cfg.plot))
        written.append(emit_plot([("max |deviation|", x, y)], cfg.plot, "sweep cell", "max |deviation|"))
    return written


def bandlimit_profile(cfg: RunConfig) -> Tuple[BandlimitConfig, ReconstructionProfile]:
    a = cfg.slit_width
    bl = BandlimitConfig(a, cfg.bandlimit_ka / a)
    ys = np.linspace(-cfg.bandlimit_extent * a, cfg.bandlimit_extent * a, cfg.bandlimit_samples)
    return bl, reconstruction_profile(bl, ys)


def run_bandlimit(cfg: RunConfig) -> List[Path]:
    bl, profile = bandlimit_profile(cfg)
    header = ("y", "psi_reconstructed", "deviation")
    rows = list(zip(profile.ys, profile.values, profile.deviation))
    path = _output_path(cfg, "bandlimit")
    if cfg.format == "json":
        io.write_table_json(header, rows, path)
    else:
        io.write_table_csv(header, rows, path)
    written = [path]
    if cfg.plot:
        from .plotting import plot_profile

        written.append(Path(cfg.plot))
        written.append(plot_profile(profile, bl, cfg.plot))
    return written


def convergence_rows(cfg: RunConfig) -> List[Tuple[int, float]]:
    if cfg.slits != 1:
        raise ConfigError("the huygens convergence study needs a single slit", "slits")
    return huygens_convergence(
        cfg.slit_width, cfg.k, cfg.convergence_n, math.radians(cfg.convergence_theta)
    )


def run_convergence(cfg: RunConfig) -> List[Path]:
    rows = convergence_rows(cfg)
    header = ("N", "relative_error")
    path = _output_path(cfg, "convergence")
    if cfg.format == "json":
        io.write_table_json(header, rows, path)
    else:
        io.write_table_csv(header, rows, path)
    written = [path]
    if cfg.plot:
        from .plotting import emit_plot

        n = np.array([r[0] for r in rows], dtype=float)
        err = np.array([r[1] for r in rows], dtype=float)
        written.append(Path(cfg.plot))
        written.append(emit_plot([("huygens", np.log10(n), np.log10(err))], cfg.plot, "log10 N", "log10 relative error"))
    return written


RUNNERS = {
    "pattern": run_pattern,
    "compare": run_compare,
    "sweep": run_sweep,
    "bandlimit": run_bandlimit,
    "convergence": run_convergence,
}
