"""Inverse synthesis and one-parameter sweeps of model-level metrics.

Sweeps report only what the analytic model can support: closed-form mode
frequencies and array-model boresight directivity / axial ratio. Matching,
isolation and input resistance need a full-wave solver and are not produced.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .cavity import C0, TM12, TM31, CavityGeometry, ModeIndex, mode_frequency
from .farfield import (DEFAULT_FREQUENCY, ElementModel, build_dual_port, boresight_jones,
                       directivity)
from .polar import PortExcitation, axial_ratio

MM = 1e-3


@dataclass(frozen=True)
class DesignParameters:
    """Layout dimensions in metres; defaults are the reference layout."""

    rs: float = 1.69 * MM
    r_out: float = 11.75 * MM
    offset: float = 5.35 * MM
    ws: float = 0.45 * MM
    ls: float = 4.65 * MM
    d_pin: float = 0.7 * MM
    d_pout: float = 0.5 * MM
    d: float = 0.5 * MM
    # tabulated cavity radius; the model default is 8.0 mm (see CavityGeometry)
    rc_table: float = 8.25 * MM

    def __post_init__(self):
        for name in ("rs", "r_out", "offset", "ws", "ls", "d_pin", "d_pout", "d", "rc_table"):
            if not getattr(self, name) > 0:
                raise ValueError(f"design parameter {name} must be positive")

    def check(self, geom: CavityGeometry) -> None:
        if not self.offset < geom.radius:
            raise ValueError("feed offset must lie inside the cavity")
        if not self.r_out > geom.radius:
            raise ValueError("outer radius must exceed the cavity radius")


def synth_radius(f_target: float, mode: ModeIndex, permittivity: float) -> float:
    """Cavity radius (m) that puts ``mode`` at ``f_target`` (Hz)."""
    if not f_target > 0:
        raise ValueError("target frequency must be positive")
    if not permittivity >= 1:
        raise ValueError("relative permittivity must be >= 1")
    return C0 * mode.chi / (2 * math.pi * f_target * math.sqrt(permittivity))


@dataclass(frozen=True)
class ModelSettings:
    geometry: CavityGeometry = field(default_factory=CavityGeometry)
    params: DesignParameters = field(default_factory=DesignParameters)
    slot_radius: float | None = None
    weights: tuple[complex, complex] = (1.0, 1.0)
    frequency: float = DEFAULT_FREQUENCY
    element_model: ElementModel = "magnetic_dipole"
    excitation: PortExcitation = field(default_factory=lambda: PortExcitation(1.0, 0.0, 0.0, 0.0))
    n_theta: int = 181
    n_phi: int = 361

    def dual_port(self):
        return build_dual_port(self.geometry, slot_radius=self.slot_radius,
                               ring_radius=self.params.rs, frequency=self.frequency,
                               weights=self.weights, outer_radius=self.params.r_out)


PARAMETERS = {
    # canonical name: (CSV column, aliases)
    "R_c": ("R_c_m", {"r_c", "rc"}),
    "eps_r": ("eps_r", {"er", "epsilon_r"}),
    "R_slot": ("R_slot_m", {"r_slot", "rslot"}),
    "R_S": ("R_S_m", {"r_s", "rs"}),
    "frequency": ("frequency_Hz", {"freq", "f"}),
}

METRICS = {
    "modes": ("TM31_GHz", "TM12_GHz"),
    "boresight_directivity": ("boresight_dBi",),
    "axial_ratio": ("boresight_AR_dB",),
}


def _canonical(name: str) -> str:
    for key, (_, aliases) in PARAMETERS.items():
        if name == key or name.lower() in aliases or name.lower() == key.lower():
            return key
    raise ValueError(f"unknown sweep parameter {name!r}; choose from {sorted(PARAMETERS)}")


def _apply(settings: ModelSettings, param: str, value: float) -> ModelSettings:
    g = settings.geometry
    if param == "R_c":
        return replace(settings, geometry=replace(g, radius=value))
    if param == "eps_r":
        return replace(settings, geometry=replace(g, permittivity=value))
    if param == "R_slot":
        return replace(settings, slot_radius=value)
    if param == "R_S":
        return replace(settings, params=replace(settings.params, rs=value))
    return replace(settings, frequency=value)


def evaluate(settings: ModelSettings, metric: str) -> tuple[float, ...]:
    if metric == "modes":
        g = settings.geometry
        return (mode_frequency(g, TM31) / 1e9, mode_frequency(g, TM12) / 1e9)
    if metric == "boresight_directivity":
        d = directivity(settings.dual_port(), settings.excitation, settings.element_model,
                        settings.n_theta, settings.n_phi)
        return (d.boresight_dbi,)
    if metric == "axial_ratio":
        j = boresight_jones(settings.dual_port(), settings.excitation, settings.element_model)
        return (axial_ratio(j),)
    raise ValueError(f"unknown metric {metric!r}; choose from {sorted(METRICS)}")


@dataclass
class SweepTable:
    columns: list[str]
    rows: list[tuple[float, ...]]

    def column(self, i: int) -> np.ndarray:
        return np.array([r[i] for r in self.rows])

    def to_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(v) for v in row])


def _fmt(v: float) -> str:
    if math.isinf(v):
        return "inf"
    s = f"{v:.9g}"
    return "0" if s == "-0" else s


def sweep(param: str, start: float, stop: float, steps: int, metric: str,
          settings: ModelSettings | None = None) -> SweepTable:
    """One row per step; ``start``/``stop`` are in SI units."""
    if steps < 2:
        raise ValueError("a sweep needs at least 2 steps")
    if start == stop:
        raise ValueError("sweep range is empty")
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; choose from {sorted(METRICS)}")
    key = _canonical(param)
    settings = settings or ModelSettings()
    values = np.linspace(start, stop, steps)
    rows = [(float(v), *evaluate(_apply(settings, key, float(v)), metric)) for v in values]
    return SweepTable([PARAMETERS[key][0], *METRICS[metric]], rows)
