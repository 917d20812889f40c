"""Run configurations, parameter sweeps and the standard figure grids."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from itertools import product
from pathlib import Path

import numpy as np

from . import __version__
from .cycles import OttoSpec, StirlingSpec, otto_cycle, stirling_cycle
from .errors import EngineError, InvalidParameter, ZeroHeatInput
from .output import render
from .spectra import Space, SpaceConfig
from .thermo import BathPair, Mode

ENGINES = ("otto", "stirling")
DEFAULT_OMEGAS = {"otto": (4.0, 3.0), "stirling": (4.0, 2.0)}
SWEEPABLE = ("zeta", "kconst", "mass", "theta", "gamma", "xi",
             "omega_hot", "omega_cold", "t_hot", "t_cold")
MAX_AXES = 2


@dataclass(frozen=True)
class RunConfig:
    """Effective parameters of one cycle evaluation.

    ``omega_hot``/``omega_cold`` are the Otto stroke frequencies or the
    Stirling state frequencies omega_A/omega_B; ``None`` picks the published
    pair for the engine.
    """

    engine: str = "otto"
    space: str = "comm"
    mode: str = "exact"
    omega_hot: float | None = None
    omega_cold: float | None = None
    t_hot: float = 2.0
    t_cold: float = 1.0
    zeta: float = 2.0
    kconst: float = 0.25
    mass: float = 1.0
    theta: float = 0.0
    gamma: float = 0.0
    xi: float = 0.0

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise InvalidParameter(f"engine must be one of {ENGINES}, got {self.engine!r}")
        Space(self.space)
        Mode(self.mode)
        hot, cold = DEFAULT_OMEGAS[self.engine]
        if self.omega_hot is None:
            object.__setattr__(self, "omega_hot", hot)
        if self.omega_cold is None:
            object.__setattr__(self, "omega_cold", cold)

    @classmethod
    def keys(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def space_config(self) -> SpaceConfig:
        if self.space == "comm":
            if self.theta or self.gamma or self.xi:
                raise InvalidParameter("commutative space takes no theta/gamma/xi")
            return SpaceConfig.commutative()
        if self.space == "nc":
            if self.gamma or self.xi:
                raise InvalidParameter("nc space takes --theta only")
            return SpaceConfig.nc(self.theta)
        if self.theta:
            raise InvalidParameter("gnc space takes --gamma and --xi only")
        return SpaceConfig.gnc(self.gamma, self.xi)

    def cycle_spec(self) -> OttoSpec | StirlingSpec:
        baths = BathPair(self.t_hot, self.t_cold)
        kw = {"space": self.space_config(), "baths": baths, "zeta": self.zeta,
              "K": self.kconst, "m": self.mass, "mode": Mode(self.mode)}
        if self.engine == "otto":
            return OttoSpec(omega_hot=self.omega_hot, omega_cold=self.omega_cold, **kw)
        return StirlingSpec(omega_A=self.omega_hot, omega_B=self.omega_cold, **kw)

    def as_meta(self) -> dict:
        return {k: v for k, v in asdict(self).items()}


def evaluate(config: RunConfig):
    spec = config.cycle_spec()
    return otto_cycle(spec) if config.engine == "otto" else stirling_cycle(spec)


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    count: int
    open_start: bool = False

    def __post_init__(self):
        if self.name not in SWEEPABLE:
            raise InvalidParameter(f"cannot sweep {self.name!r}; choose from {SWEEPABLE}")
        if self.count < 2:
            raise InvalidParameter(f"axis {self.name}: count must be >= 2, got {self.count}")
        if not self.start < self.stop:
            raise InvalidParameter(f"axis {self.name}: start must be < stop")

    @classmethod
    def parse(cls, text: str) -> Axis:
        """``name:start:stop:count[:open]``; ``open`` drops the start point."""
        parts = text.split(":")
        if len(parts) not in (4, 5) or (len(parts) == 5 and parts[4] != "open"):
            raise InvalidParameter(f"axis spec {text!r} is not name:start:stop:count[:open]")
        try:
            return cls(parts[0].replace("-", "_"), float(parts[1]), float(parts[2]),
                       int(parts[3]), len(parts) == 5)
        except ValueError as exc:
            raise InvalidParameter(f"axis spec {text!r}: {exc}") from None

    def values(self) -> np.ndarray:
        if self.open_start:
            return self.start + (self.stop - self.start) * np.arange(1, self.count + 1) / self.count
        return np.linspace(self.start, self.stop, self.count)

    def describe(self) -> str:
        left = "(" if self.open_start else "["
        return f"{left}{self.start!r}, {self.stop!r}] x {self.count}"


@dataclass(frozen=True)
class SweepGrid:
    axes: tuple[Axis, ...]
    fixed: RunConfig = field(default_factory=RunConfig)

    def __post_init__(self):
        if not 1 <= len(self.axes) <= MAX_AXES:
            raise InvalidParameter(f"a sweep takes 1 or {MAX_AXES} axes, got {len(self.axes)}")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise InvalidParameter("sweep axes must be distinct")

    @property
    def fields(self) -> tuple[str, ...]:
        return (*[a.name for a in self.axes], "work", "heat_in", "efficiency",
                "mode", "space", "error")

    def points(self):
        """Grid points in row-major order (last axis fastest)."""
        for combo in product(*(a.values() for a in self.axes)):
            yield {a.name: float(v) for a, v in zip(self.axes, combo)}

    def meta(self) -> dict:
        out = {"generator": f"ncengine {__version__}", "engine": self.fixed.engine}
        swept = {a.name for a in self.axes}
        for key, value in self.fixed.as_meta().items():
            if key not in swept and key != "engine":
                out[key] = value
        for a in self.axes:
            out[f"axis {a.name}"] = a.describe()
        return out


def _evaluate_point(args):
    config, point = args
    row = dict(point)
    row.update(mode=config.mode, space=config.space, work=math.nan, heat_in=math.nan,
               efficiency=math.nan, error="")
    try:
        res = evaluate(replace(config, **point))
        row.update(work=res.work, heat_in=res.heat_in, efficiency=res.efficiency)
        if res.anomalies:
            row["error"] = "; ".join(res.anomalies)
    except ZeroHeatInput as exc:
        res = exc.result
        row.update(work=res.work, heat_in=res.heat_in, error=f"ZeroHeatInput: {exc}")
    except EngineError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_sweep(grid: SweepGrid, jobs: int = 1) -> list[dict]:
    """Evaluate every grid point; rows come back in grid order whatever ``jobs`` is."""
    tasks = [(grid.fixed, p) for p in grid.points()]
    if jobs <= 1:
        return [_evaluate_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_evaluate_point, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def write_sweep(grid: SweepGrid, rows, path, fmt_name="csv"):
    text = render(rows, grid.fields, grid.meta(), fmt_name)
    Path(path).write_text(text)
    return text


# figure grids: engine, space, mode, axes
FIGURES = {
    "fig1": ("otto", "comm", "paper", (Axis("zeta", 0.0, 5.0, 51),)),
    "fig2": ("otto", "nc", "paper", (Axis("theta", 0.0, 2.0, 50, open_start=True),)),
    "fig3": ("otto", "gnc", "paper", (Axis("gamma", -1.0, 1.0, 41), Axis("xi", -1.0, 1.0, 41))),
    "fig6": ("stirling", "comm", "exact", (Axis("zeta", 0.0, 5.0, 51),)),
    "fig7": ("stirling", "nc", "exact", (Axis("theta", 0.0, 2.0, 50, open_start=True),)),
    "fig8": ("stirling", "gnc", "exact", (Axis("gamma", -1.0, 1.0, 41), Axis("xi", -1.0, 1.0, 41))),
}


def figure_grid(name: str, base: RunConfig | None = None) -> SweepGrid:
    engine, space, mode, axes = FIGURES[name]
    base = base or RunConfig()
    hot, cold = DEFAULT_OMEGAS[engine]
    fixed = replace(base, engine=engine, space=space, mode=mode, omega_hot=hot,
                    omega_cold=cold, theta=0.0, gamma=0.0, xi=0.0)
    return SweepGrid(axes, fixed)


def run_figures(output_dir, fmt_name="csv", jobs=1, plot=False, base=None) -> dict[str, Path]:
    """Write fig1..fig3 (Otto) and fig6..fig8 (Stirling) tables, optionally PNGs too."""
    out = Path(output_dir)
    os.makedirs(out, exist_ok=True)
    written = {}
    for name in FIGURES:
        grid = figure_grid(name, base)
        rows = run_sweep(grid, jobs)
        path = out / f"{name}.{fmt_name}"
        write_sweep(grid, rows, path, fmt_name)
        written[name] = path
        if plot:
            from .plotting import plot_sweep

            written[f"{name}.png"] = plot_sweep(grid, rows, out / f"{name}.png", title=name)
    return written
