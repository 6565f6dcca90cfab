"""Sweep configuration and figure-data generators.

Each figure runner returns ``{filename: (header, rows)}``; ``run`` writes the
tables in sorted filename order plus a JSON sidecar holding the resolved
configuration, so identical configs give byte-identical output.
"""
from __future__ import annotations

import dataclasses
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analytics
from .binning import qubit_density
from .ec import ec_qubit_average
from .gates import T_POLYNOMIAL, apply_cubic_T
from .gkp import LogicalLabel, SqueezingSpec, db_to_delta, grid_for, logical_state
from .grid import SQRT_PI, density, fold_density, to_momentum
from .qubit import bloch_vector, fidelity_to_magic
from .teleport import two_mode_grid, teleport_T

log = logging.getLogger(__name__)

FIGURES = ("fig1a", "fig1b", "fig1c", "fig2a", "fig2b", "fig3b", "custom")


@dataclass
class GridConfig:
    samples_per_sigma: float = 6.0
    tail_tolerance: float = 1e-12
    two_mode_points: int = 1024
    two_mode_samples_per_sigma: float = 1.5


@dataclass
class SweepConfig:
    figure: str = "fig2b"
    # (start, stop, step) in dB, stop inclusive
    x_db: tuple[float, float, float] = (10.0, 30.0, 5.0)
    # when set, delta_p is swept independently (fig3b, custom); otherwise delta_p = ratio * delta_x
    p_db: tuple[float, float, float] | None = None
    ratios: list[float] = field(default_factory=lambda: [1.0, 5.0])
    fig1_db: float = 15.0
    fig1c_db: list[float] = field(default_factory=lambda: [15.0, 20.0, 25.0, 30.0])
    grid: GridConfig = field(default_factory=GridConfig)
    out_dir: str = "out"
    k_max: int | None = None
    teleport: bool = False
    threads: int = 1

    def __post_init__(self):
        if isinstance(self.grid, dict):
            self.grid = GridConfig(**self.grid)
        self.x_db = tuple(float(v) for v in self.x_db)
        if self.p_db is not None:
            self.p_db = tuple(float(v) for v in self.p_db)
        self.validate()

    def validate(self) -> None:
        if self.figure not in FIGURES:
            raise ValueError(f"unknown figure {self.figure!r}; choose from {FIGURES}")
        for name in ("x_db", "p_db"):
            rng = getattr(self, name)
            if rng is None:
                continue
            if len(rng) != 3:
                raise ValueError(f"{name} must be (start, stop, step)")
            if not rng[2] > 0:
                raise ValueError(f"{name} step must be positive")
            if rng[1] < rng[0]:
                raise ValueError(f"{name} range is empty")
        if not self.ratios or any(r <= 0 for r in self.ratios):
            raise ValueError("ratios must be a nonempty list of positive numbers")
        if self.k_max is not None and self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        n = self.grid.two_mode_points
        if n < 16 or n & (n - 1):
            raise ValueError("two_mode_points must be a power of two >= 16")
        if not self.grid.samples_per_sigma > 0:
            raise ValueError("samples_per_sigma must be positive")
        if not 0 < self.grid.tail_tolerance < 1:
            raise ValueError("tail_tolerance must be in (0, 1)")

    def squeezing_points(self) -> list[SqueezingSpec]:
        xs = db_range(*self.x_db)
        if self.p_db is not None:
            return [SqueezingSpec.from_db(x, p) for x in xs for p in db_range(*self.p_db)]
        return [SqueezingSpec(db_to_delta(x), r * db_to_delta(x)) for r in self.ratios for x in xs]

    def grid_for(self, s: SqueezingSpec):
        return grid_for(s, self.grid.samples_per_sigma, tail_tolerance=self.grid.tail_tolerance)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def db_range(start: float, stop: float, step: float) -> list[float]:
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def load_config(path=None, **overrides) -> SweepConfig:
    data = {}
    if path is not None:
        data = json.loads(Path(path).read_text())
    data.update({k: v for k, v in overrides.items() if v is not None})
    fields = {f.name for f in dataclasses.fields(SweepConfig)}
    unknown = set(data) - fields
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return SweepConfig(**data)


def _ratio_label(s: SqueezingSpec) -> float:
    return round(s.delta_p / s.delta_x, 12)


def fig1a(cfg: SweepConfig) -> dict:
    s = SqueezingSpec.symmetric(cfg.fig1_db)
    g = cfg.grid_for(s)
    d = density(logical_state(LogicalLabel.PLUS, s, g))
    phase = T_POLYNOMIAL.on_grid(g)
    rows = list(zip(g.points, d.values, phase))
    m = g.samples_per_cell
    markers = [(n, n * SQRT_PI, phase[g.origin_index + n * m]) for n in range(-g.cells, g.cells)]
    return {
        "fig1a.csv": (["x", "density", "phase_mod_2pi"], rows),
        "fig1a_markers.csv": (["n", "x", "phase_mod_2pi"], markers),
    }


def _cubic_and_target(s: SqueezingSpec, g):
    plus = logical_state(LogicalLabel.PLUS, s, g)
    return apply_cubic_T(plus), logical_state(LogicalLabel.MAGIC, s, g)


def fig1b(cfg: SweepConfig) -> dict:
    s = SqueezingSpec.symmetric(cfg.fig1_db)
    g = cfg.grid_for(s)
    cubic, target = _cubic_and_target(s, g)
    dc, dt = density(to_momentum(cubic)), density(to_momentum(target))
    return {"fig1b.csv": (["p", "density_cubic", "density_target"], list(zip(dc.points, dc.values, dt.values)))}


def folded_pair(db: float, cfg: SweepConfig):
    s = SqueezingSpec.symmetric(db)
    g = cfg.grid_for(s)
    cubic, target = _cubic_and_target(s, g)
    fc = fold_density(density(to_momentum(cubic)), 2 * SQRT_PI)
    ft = fold_density(density(to_momentum(target)), 2 * SQRT_PI)
    return fc, ft


def fig1c(cfg: SweepConfig) -> dict:
    pairs = _map(cfg, lambda db: folded_pair(db, cfg), cfg.fig1c_db)
    rows, floors = [], []
    for db, (fc, ft) in zip(cfg.fig1c_db, pairs):
        rows += [(db, p, a, b) for p, a, b in zip(fc.points, fc.values, ft.values)]
        lo_c, lo_t = float(fc.values.min()), float(ft.values.min())
        floors.append((db, lo_c, lo_t, lo_c / lo_t if lo_t > 0 else math.inf))
    return {
        "fig1c.csv": (["db", "p", "folded_cubic", "folded_target"], rows),
        "fig1c_floor.csv": (["db", "floor_cubic", "floor_target", "floor_ratio"], floors),
    }


def fig2a(cfg: SweepConfig) -> dict:
    def point(s):
        g = cfg.grid_for(s)
        cubic, _ = _cubic_and_target(s, g)
        b = bloch_vector(ec_qubit_average(cubic, cfg.k_max))
        return (s.db_x, s.db_p, _ratio_label(s), b.bx, b.by, b.bz)

    rows = _map(cfg, point, cfg.squeezing_points())
    return {"fig2a.csv": (["db_x", "db_p", "ratio", "bx", "by", "bz"], rows)}


def fig2b_point(s: SqueezingSpec, cfg: SweepConfig) -> list[tuple]:
    g = cfg.grid_for(s)
    plus = logical_state(LogicalLabel.PLUS, s, g)
    curves = {
        "cubic": apply_cubic_T(plus),
        "target": logical_state(LogicalLabel.MAGIC, s, g),
        "identity": plus,
    }
    key = (s.db_x, s.db_p, _ratio_label(s))
    rows = [key + (name, fidelity_to_magic(ec_qubit_average(psi, cfg.k_max))) for name, psi in curves.items()]
    if cfg.teleport:
        g2 = two_mode_grid(s, cfg.grid.two_mode_points, cfg.grid.two_mode_samples_per_sigma)
        rho = teleport_T(logical_state(LogicalLabel.PLUS, s, g2), s, cfg.k_max)
        rows.append(key + ("teleport", fidelity_to_magic(rho)))
    return rows


def fig2b(cfg: SweepConfig) -> dict:
    rows = [r for block in _map(cfg, lambda s: fig2b_point(s, cfg), cfg.squeezing_points()) for r in block]
    return {"fig2b.csv": (["db_x", "db_p", "ratio", "curve", "fidelity"], rows)}


def binning_fidelity(s: SqueezingSpec, cfg: SweepConfig) -> float:
    g = cfg.grid_for(s)
    cubic = apply_cubic_T(logical_state(LogicalLabel.PLUS, s, g))
    return fidelity_to_magic(qubit_density(cubic))


def fig3b(cfg: SweepConfig) -> dict:
    def point(s):
        return (s.db_x, s.db_p, binning_fidelity(s, cfg), analytics.fidelity_closed_form(s.delta_x, s.delta_p))

    rows = _map(cfg, point, cfg.squeezing_points())
    return {"fig3b.csv": (["db_x", "db_p", "fidelity_numeric", "fidelity_closed"], rows)}


def custom(cfg: SweepConfig) -> dict:
    """Every decoder on every state at every sweep point."""

    def point(s):
        g = cfg.grid_for(s)
        plus = logical_state(LogicalLabel.PLUS, s, g)
        states = {"cubic": apply_cubic_T(plus), "target": logical_state(LogicalLabel.MAGIC, s, g), "identity": plus}
        out = []
        for name, psi in states.items():
            for decoder, rho in (("binning", qubit_density(psi)), ("ec", ec_qubit_average(psi, cfg.k_max))):
                b = bloch_vector(rho)
                out.append((s.db_x, s.db_p, decoder, name, fidelity_to_magic(rho), b.bx, b.by, b.bz))
        return out

    rows = [r for block in _map(cfg, point, cfg.squeezing_points()) for r in block]
    return {"custom.csv": (["db_x", "db_p", "decoder", "state", "fidelity", "bx", "by", "bz"], rows)}


RUNNERS = {
    "fig1a": fig1a,
    "fig1b": fig1b,
    "fig1c": fig1c,
    "fig2a": fig2a,
    "fig2b": fig2b,
    "fig3b": fig3b,
    "custom": custom,
}


def oracle_rows(cfg: SweepConfig) -> list[tuple]:
    """Binning-decoder fidelity of U_T|+_L> against the closed forms, per sweep point."""

    def point(s):
        c = analytics.ClosedFormInputs(s.delta_x, s.delta_p)
        f_num = binning_fidelity(s, cfg)
        f_closed = analytics.fidelity_closed_form(c)
        return (
            s.db_x,
            s.db_p,
            f_num,
            f_closed,
            abs(f_num - f_closed),
            analytics.fidelity_asymptotic(c),
            int(c.small_noise),
            int(c.phase_regime),
        )

    return _map(cfg, point, cfg.squeezing_points())


ORACLE_HEADER = ["db_x", "db_p", "f_numeric", "f_closed", "abs_delta", "f_asymptotic", "small_noise", "phase_regime"]


def _map(cfg: SweepConfig, fn, items) -> list:
    items = list(items)
    if cfg.threads == 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(cfg.threads) as pool:
        return list(pool.map(fn, items))


def _cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def write_table(path: Path, header, rows) -> None:
    with path.open("w") as fh:
        fh.write(",".join(header) + "\n")
        for r in rows:
            fh.write(",".join(_cell(v) for v in r) + "\n")


def write_tables(cfg: SweepConfig, name: str, tables: dict) -> list[Path]:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for fname in sorted(tables):
        header, rows = tables[fname]
        write_table(out / fname, header, rows)
        paths.append(out / fname)
    manifest = {"figure": name, "config": cfg.to_dict(), "files": sorted(tables)}
    side = out / f"{name}.json"
    side.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return paths + [side]


def run(cfg: SweepConfig) -> list[Path]:
    log.info("running %s", cfg.figure)
    return write_tables(cfg, cfg.figure, RUNNERS[cfg.figure](cfg))


def run_oracle(cfg: SweepConfig) -> tuple[list[tuple], list[Path]]:
    rows = oracle_rows(cfg)
    return rows, write_tables(cfg, "oracle", {"oracle.csv": (ORACLE_HEADER, rows)})
