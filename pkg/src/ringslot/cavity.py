"""TM_mn0 modes of a thin dielectric-filled circular cavity.

Fields are relative (amplitude constant 1). The slot-loading frequency shift
of the real structure is not modelled; resonances use the unloaded closed form.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .specfun import DomainError, bessel_j, bessel_zero

C0 = 299_792_458.0


@dataclass(frozen=True)
class ModeIndex:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 1:
            raise DomainError(f"invalid mode indices ({self.m}, {self.n})")

    @property
    def extended(self) -> bool:
        """True for modes other than the two exploited by the antenna."""
        return (self.m, self.n) not in {(3, 1), (1, 2)}

    @property
    def chi(self) -> float:
        return bessel_zero(self.m, self.n).value

    def __str__(self) -> str:
        return f"TM{self.m}{self.n}"

    @classmethod
    def parse(cls, text: str) -> "ModeIndex":
        """Parse ``"TM31"`` or ``"3,1"`` style names."""
        t = text.strip().upper().removeprefix("TM")
        if "," in t:
            m, n = (int(v) for v in t.split(","))
        elif len(t) == 2 and t.isdigit():
            m, n = int(t[0]), int(t[1])
        else:
            raise ValueError(f"cannot parse mode {text!r}")
        return cls(m, n)


TM31 = ModeIndex(3, 1)
TM12 = ModeIndex(1, 2)


@dataclass(frozen=True)
class CavityGeometry:
    """Cavity radius and substrate height in metres."""

    radius: float = 8.0e-3
    permittivity: float = 2.2
    height: float = 0.787e-3

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("cavity radius must be positive")
        if not self.permittivity >= 1:
            raise DomainError("relative permittivity must be >= 1")
        if not self.height > 0:
            raise DomainError("substrate height must be positive")
        if self.height > self.radius / 4:
            warnings.warn("substrate height exceeds R_c/4; thin-cavity model is doubtful",
                          stacklevel=3)


def mode_frequency(geom: CavityGeometry, mode: ModeIndex) -> float:
    """Resonant frequency in Hz: c * chi_mn / (2 pi R_c sqrt(eps_r))."""
    return C0 * mode.chi / (2 * math.pi * geom.radius * math.sqrt(geom.permittivity))


def _check_rho(geom: CavityGeometry, rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    # allow one ulp-scale overshoot at the wall
    if np.any(rho < 0) or np.any(rho > geom.radius * (1 + 1e-12)):
        raise DomainError("rho must lie in [0, R_c]")
    return np.minimum(rho, geom.radius)


def ez_mode(geom: CavityGeometry, mode: ModeIndex, rho, phi):
    """J_m(chi_mn rho / R_c) * (sin(m phi) + cos(m phi)). Broadcasts over arrays."""
    r = _check_rho(geom, rho)
    phi = np.asarray(phi, dtype=float)
    radial = bessel_j(mode.m, mode.chi * r / geom.radius)
    out = radial * (np.sin(mode.m * phi) + np.cos(mode.m * phi))
    if np.ndim(out) == 0:
        return float(out)
    return out


def ez_hybrid(geom: CavityGeometry, rho, phi, w31: complex = 1.0, w12: complex = 1.0):
    """Weighted TM31 + TM12 superposition (complex, linear in the weights)."""
    out = (complex(w31) * np.asarray(ez_mode(geom, TM31, rho, phi))
           + complex(w12) * np.asarray(ez_mode(geom, TM12, rho, phi)))
    if np.ndim(out) == 0:
        return complex(out)
    return out


@dataclass
class FieldMap:
    """Normalised E_z samples on an N x N Cartesian grid spanning [-R_c, R_c]^2.

    ``ez[i, j]`` sits at ``(x[j], y[i])``. Exterior samples are NaN and
    ``interior`` is False there.
    """

    x: np.ndarray
    y: np.ndarray
    ez: np.ndarray
    interior: np.ndarray
    weights: tuple[complex, complex]
    scale: float = field(default=1.0)

    def to_csv(self, path_or_file) -> None:
        """Row-major export: x_mm,y_mm,re_ez,im_ez,abs_ez,interior."""
        own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x_mm", "y_mm", "re_ez", "im_ez", "abs_ez", "interior"])
            for i, yv in enumerate(self.y):
                for j, xv in enumerate(self.x):
                    v = self.ez[i, j]
                    w.writerow([_g9(xv * 1e3), _g9(yv * 1e3), _g9(v.real), _g9(v.imag),
                                _g9(abs(v)), int(self.interior[i, j])])
        finally:
            if own:
                fh.close()


def _g9(v: float) -> str:
    if v != v:
        return "nan"
    s = f"{v:.9g}"
    return "0" if s == "-0" else s


def field_map(geom: CavityGeometry, weights=(1.0, 1.0), n: int = 64) -> FieldMap:
    if n < 16:
        raise ValueError(f"grid size must be >= 16, got {n}")
    w31, w12 = (complex(w) for w in weights)
    x = np.linspace(-geom.radius, geom.radius, n)
    y = x.copy()
    X, Y = np.meshgrid(x, y)
    rho = np.hypot(X, Y)
    inside = rho <= geom.radius
    ez = np.full(X.shape, complex(np.nan, np.nan))
    ez[inside] = ez_hybrid(geom, rho[inside], np.arctan2(Y[inside], X[inside]), w31, w12)
    peak = np.abs(ez[inside]).max() if inside.any() else 0.0
    if peak > 0:
        ez[inside] /= peak
    return FieldMap(x=x, y=y, ez=ez, interior=inside, weights=(w31, w12), scale=peak)


Extremum = tuple[float, Literal["peak", "null"]]


def _golden_max(f, a: float, b: float, tol: float) -> float:
    invphi = (math.sqrt(5) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _bisect_sign(f, a: float, b: float, tol: float) -> float:
    fa = f(a)
    while b - a > tol:
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def locate_radial_extrema(geom: CavityGeometry, weights=(1.0, 1.0), phi: float = 0.0,
                          samples: int = 4000) -> list[Extremum]:
    """Peaks and nulls of |E_z| along the ray at azimuth ``phi``, inside (0, R_c).

    When the two weights share a phase (up to sign) the field along a ray is a
    real function times a constant phasor, so nulls are found as sign changes.
    Otherwise a null is reported only where a minimum of |E_z| drops below
    1e-9 of the ray maximum.
    """
    w31, w12 = (complex(w) for w in weights)
    R = geom.radius
    tol = 1e-6 * R * 1e-2

    ref = w31 if w31 != 0 else w12
    ratio = w12 / w31 if w31 != 0 else 0j
    coherent = ref != 0 and abs(ratio.imag) <= 1e-14 * max(1.0, abs(ratio))

    def field(r):
        return ez_hybrid(geom, r, phi, w31, w12)

    if coherent:
        u = ref / abs(ref)

        def real_part(r):
            return (np.asarray(field(r)) / u).real
    rho = np.linspace(0.0, R, samples + 1)
    mag = np.abs(field(rho))
    top = mag.max()
    out: list[Extremum] = []
    if top == 0.0:
        return out

    def absf(r):
        return abs(field(r))

    h = rho[1] - rho[0]
    for i in range(1, samples):
        if mag[i] >= mag[i - 1] and mag[i] > mag[i + 1]:
            r = _golden_max(absf, rho[i - 1], rho[i + 1], tol)
            if 0 < r < R and absf(r) > 1e-9 * top:
                out.append((r, "peak"))
    if coherent:
        vals = real_part(rho)
        for i in range(1, samples - 1):
            a, b = vals[i], vals[i + 1]
            if a == 0.0:
                out.append((float(rho[i]), "null"))
            elif (a < 0) != (b < 0) and b != 0.0:
                out.append((_bisect_sign(real_part, rho[i], rho[i + 1], tol), "null"))
    else:
        for i in range(1, samples):
            if mag[i] <= mag[i - 1] and mag[i] < mag[i + 1]:
                r = _golden_max(lambda t: -absf(t), rho[i - 1], rho[i + 1], tol)
                if absf(r) <= 1e-9 * top:
                    out.append((r, "null"))
    out.sort(key=lambda e: e[0])
    return out
