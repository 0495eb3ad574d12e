"""Far field of the equivalent magnetic-current array above the cavity.

Each ring slot is replaced by two point magnetic currents on either side of
its centre, giving eight elements for the four slots. The slot aperture field
of port 1 points along +y; the equivalent current is M = -z x E = +x, which
radiates +y-polarised at boresight. Port 2 is port 1 turned +90 deg about z.

The cavity backs the slots, so with ``ground_plane=True`` only the upper half
space radiates. That doubles the directivity relative to free space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence, Union

import numpy as np

from .cavity import C0, CavityGeometry, locate_radial_extrema
from .polar import CLAMP_DB, JonesVector, PortExcitation, jones_from_ports

ElementModel = Literal["isotropic", "magnetic_dipole"]

DEFAULT_FREQUENCY = 28e9
RING_RADIUS = 1.69e-3
OUTER_RADIUS = 11.75e-3
SLOT_AZIMUTHS_DEG = (0, 90, 180, 270)
_UNIT = {0: (1.0, 0.0), 90: (0.0, 1.0), 180: (-1.0, 0.0), 270: (0.0, -1.0)}


class GeometryError(ValueError):
    """Array elements do not fit inside the cavity."""


@dataclass(frozen=True)
class MonopoleElement:
    position: np.ndarray
    orientation: np.ndarray
    excitation: complex = 1.0 + 0j

    def __post_init__(self):
        o = np.asarray(self.orientation, dtype=float)
        if not math.isclose(float(np.linalg.norm(o)), 1.0, rel_tol=1e-12):
            raise ValueError("orientation must be a unit vector")
        object.__setattr__(self, "orientation", o)
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))


@dataclass
class MonopoleArray:
    elements: list[MonopoleElement]
    frequency: float = DEFAULT_FREQUENCY

    @property
    def wavenumber(self) -> float:
        return 2 * math.pi * self.frequency / C0

    def scaled(self, alpha: complex) -> "MonopoleArray":
        return MonopoleArray([MonopoleElement(e.position, e.orientation, e.excitation * alpha)
                              for e in self.elements], self.frequency)

    def rotated_quarter(self) -> "MonopoleArray":
        """Copy turned +90 deg about z; (x, y) -> (-y, x) exactly."""
        def rot(v):
            return np.array([-v[1], v[0], v[2]])
        return MonopoleArray([MonopoleElement(rot(e.position), rot(e.orientation), e.excitation)
                              for e in self.elements], self.frequency)


@dataclass
class DualPortArray:
    """The two port arrays; drive them together with a PortExcitation."""

    port1: MonopoleArray
    port2: MonopoleArray


Source = Union[MonopoleArray, DualPortArray]


def default_slot_radius(geom: CavityGeometry, weights=(1.0, 1.0),
                        ring_radius: float = RING_RADIUS) -> float:
    """Smallest interior null of the hybrid field over the four slot azimuths
    that leaves room for both elements of a slot inside the cavity."""
    candidates = []
    for az in SLOT_AZIMUTHS_DEG:
        for r, kind in locate_radial_extrema(geom, weights, math.radians(az)):
            if kind == "null" and ring_radius < r < geom.radius - ring_radius:
                candidates.append(r)
    if not candidates:
        raise GeometryError("hybrid field has no interior null that can host a slot")
    return min(candidates)


def build_monopole_array(geom: CavityGeometry, slot_radius: float | None = None,
                         ring_radius: float = RING_RADIUS, port: int = 1,
                         frequency: float = DEFAULT_FREQUENCY, weights=(1.0, 1.0),
                         outer_radius: float = OUTER_RADIUS) -> MonopoleArray:
    """Eight in-phase elements at slot_radius +- ring_radius on the four slot axes."""
    if port not in (1, 2):
        raise ValueError(f"port must be 1 or 2, got {port}")
    if not frequency > 0:
        raise ValueError("frequency must be positive")
    if slot_radius is None:
        slot_radius = default_slot_radius(geom, weights, ring_radius)
    if not ring_radius > 0:
        raise GeometryError("ring radius must be positive")
    if not slot_radius + ring_radius < geom.radius:
        raise GeometryError(
            f"slot radius {slot_radius * 1e3:.4g} mm + ring radius {ring_radius * 1e3:.4g} mm "
            f"exceeds cavity radius {geom.radius * 1e3:.4g} mm")
    if not slot_radius - ring_radius > 0:
        raise GeometryError("inner slot element would cross the cavity centre")
    if slot_radius + ring_radius > outer_radius:
        raise GeometryError("elements fall outside the outer radius")

    elements = []
    m_hat = np.array([1.0, 0.0, 0.0])
    for az in SLOT_AZIMUTHS_DEG:
        ux, uy = _UNIT[az]
        for r in (slot_radius - ring_radius, slot_radius + ring_radius):
            elements.append(MonopoleElement(np.array([r * ux, r * uy, 0.0]), m_hat, 1.0 + 0j))
    arr = MonopoleArray(elements, frequency)
    return arr.rotated_quarter() if port == 2 else arr


def build_dual_port(geom: CavityGeometry, **kwargs) -> DualPortArray:
    kwargs.pop("port", None)
    return DualPortArray(build_monopole_array(geom, port=1, **kwargs),
                         build_monopole_array(geom, port=2, **kwargs))


def _element_pattern(orient: np.ndarray, model: str, ct, st, cp, sp):
    mx, my, mz = orient
    if model == "magnetic_dipole":
        # r_hat x M in spherical components
        m_theta = mx * ct * cp + my * ct * sp - mz * st
        m_phi = -mx * sp + my * cp
        return -m_phi, m_theta
    if model == "isotropic":
        # unit-magnitude Ludwig-3 field along z_hat x M
        px, py = -my, mx
        return px * cp + py * sp, -px * sp + py * cp
    raise ValueError(f"unknown element model {model!r}")


def far_field(array: MonopoleArray, theta, phi,
              element_model: ElementModel = "magnetic_dipole"):
    """Transverse far field (E_theta, E_phi), without the spherical-wave factor.

    Sum over elements of excitation * element pattern * exp(+j k r_hat . p).
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    theta, phi = np.broadcast_arrays(theta, phi)
    ct, st, cp, sp = np.cos(theta), np.sin(theta), np.cos(phi), np.sin(phi)
    rx, ry, rz = st * cp, st * sp, ct
    k = array.wavenumber
    e_theta = np.zeros(theta.shape, dtype=complex)
    e_phi = np.zeros(theta.shape, dtype=complex)
    for el in array.elements:
        px, py, pz = el.position
        af = el.excitation * np.exp(1j * k * (rx * px + ry * py + rz * pz))
        gt, gp = _element_pattern(el.orientation, element_model, ct, st, cp, sp)
        e_theta += af * gt
        e_phi += af * gp
    if e_theta.ndim == 0:
        return complex(e_theta), complex(e_phi)
    return e_theta, e_phi


def source_field(source: Source, theta, phi, excitation: PortExcitation | None = None,
                 element_model: ElementModel = "magnetic_dipole"):
    """Field of a single array, or of both ports driven by ``excitation``."""
    if isinstance(source, MonopoleArray):
        return far_field(source, theta, phi, element_model)
    if excitation is None:
        raise ValueError("a dual-port source needs a PortExcitation")
    v1, v2 = excitation.phasors
    t1, p1 = far_field(source.port1, theta, phi, element_model)
    t2, p2 = far_field(source.port2, theta, phi, element_model)
    return v1 * t1 + v2 * t2, v1 * p1 + v2 * p2


@dataclass(frozen=True)
class Directivity:
    d_max_dbi: float
    boresight_dbi: float
    peak_theta_deg: float
    peak_phi_deg: float
    prad: float


def _theta_nodes(n_theta: int, ground_plane: bool) -> np.ndarray:
    if ground_plane:
        # same spacing as the full-sphere grid, ending on the horizon
        return np.linspace(0.0, math.pi / 2, (n_theta - 1) // 2 + 1)
    return np.linspace(0.0, math.pi, n_theta)


def radiated_power(source: Source, excitation: PortExcitation | None = None,
                   element_model: ElementModel = "magnetic_dipole", n_theta: int = 181,
                   n_phi: int = 361, ground_plane: bool = True):
    """Trapezoid integral of |E|^2 sin(theta) over the radiating sphere.

    Returns ``(prad, theta, phi, U)`` with U on the integration grid.
    """
    if n_theta < 181 or n_phi < 361:
        raise ValueError(f"quadrature too coarse: need n_theta >= 181 and n_phi >= 361, "
                         f"got {n_theta} x {n_phi}")
    theta = _theta_nodes(n_theta, ground_plane)
    phi = np.linspace(0.0, 2 * math.pi, n_phi)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    et, ep = source_field(source, T, P, excitation, element_model)
    u = np.abs(et) ** 2 + np.abs(ep) ** 2
    inner = np.trapezoid(u, phi, axis=1)
    prad = float(np.trapezoid(inner * np.sin(theta), theta))
    return prad, theta, phi, u


def directivity(source: Source, excitation: PortExcitation | None = None,
                element_model: ElementModel = "magnetic_dipole", n_theta: int = 181,
                n_phi: int = 361, ground_plane: bool = True) -> Directivity:
    """Peak and boresight directivity, D = 4 pi U / P_rad."""
    prad, theta, phi, u = radiated_power(source, excitation, element_model,
                                         n_theta, n_phi, ground_plane)
    if not prad > 0:
        raise ValueError("source radiates no power")
    d = 4 * math.pi * u / prad
    i, j = np.unravel_index(np.argmax(d), d.shape)
    if i == 0:
        j = 0  # every azimuth is the same direction at the pole
    return Directivity(
        d_max_dbi=10 * math.log10(d[i, j]),
        boresight_dbi=10 * math.log10(d[0, 0]) if d[0, 0] > 0 else CLAMP_DB,
        peak_theta_deg=math.degrees(theta[i]),
        peak_phi_deg=math.degrees(phi[j]),
        prad=prad,
    )


def ludwig3(e_theta, e_phi, phi):
    """Ludwig-3 (x, y) components of a far field given in (theta, phi) components."""
    cp, sp = np.cos(phi), np.sin(phi)
    return e_theta * cp - e_phi * sp, e_theta * sp + e_phi * cp


@dataclass
class PatternCut:
    """Directivity-normalised complex amplitudes: |co|^2 + |cross|^2 = D."""

    plane: str
    phi_deg: float
    theta_deg: np.ndarray
    co: np.ndarray
    cross: np.ndarray
    reference: JonesVector

    @staticmethod
    def _db(v: np.ndarray) -> np.ndarray:
        p = np.abs(v) ** 2
        with np.errstate(divide="ignore"):
            out = 10 * np.log10(p)
        return np.maximum(out, CLAMP_DB)

    @property
    def co_db(self) -> np.ndarray:
        return self._db(self.co)

    @property
    def cross_db(self) -> np.ndarray:
        return self._db(self.cross)

    @property
    def total_db(self) -> np.ndarray:
        return self._db(np.sqrt(np.abs(self.co) ** 2 + np.abs(self.cross) ** 2))

    def to_csv(self, fh) -> None:
        """theta_deg,co_dB,cross_dB,total_dB with angles ascending."""
        fh.write("theta_deg,co_dB,cross_dB,total_dB\n")
        for row in zip(self.theta_deg, self.co_db, self.cross_db, self.total_db):
            fh.write(",".join(_g9(v) for v in row) + "\n")


def _g9(v: float) -> str:
    s = f"{float(v):.9g}"
    return "0" if s == "-0" else s


_PLANES = {"H": 0.0, "E": 90.0}


def boresight_jones(source: Source, excitation: PortExcitation | None = None,
                    element_model: ElementModel = "magnetic_dipole") -> JonesVector:
    et, ep = source_field(source, 0.0, 0.0, excitation, element_model)
    ex, ey = ludwig3(et, ep, 0.0)
    return JonesVector(complex(ex), complex(ey))


def pattern_cut(source: Source, excitation: PortExcitation | None = None,
                plane: str | float = "E", step: float = 1.0,
                element_model: ElementModel = "magnetic_dipole", ground_plane: bool = True,
                reference: JonesVector | None = None, n_theta: int = 181,
                n_phi: int = 361) -> PatternCut:
    """Co/cross-polar cut over theta in [-180, 180] deg, values in dBi.

    ``plane`` is "E" (the y-z plane), "H" (the x-z plane), both named for
    port 1, or an explicit cut azimuth in degrees. The reference polarization
    defaults to the ideal state of ``excitation`` for a dual-port source, and
    to the array's own boresight field for a single array.
    """
    if isinstance(plane, str):
        try:
            phi_cut = _PLANES[plane.upper()]
        except KeyError:
            raise ValueError(f"plane must be 'E', 'H' or an azimuth, got {plane!r}") from None
        label = plane.upper()
    else:
        phi_cut, label = float(plane), f"phi={float(plane):g}"
    ratio = 360.0 / step
    if step <= 0 or abs(ratio - round(ratio)) > 1e-9:
        raise ValueError(f"step must divide 360, got {step}")

    if isinstance(source, DualPortArray) and excitation is None:
        raise ValueError("a dual-port source needs a PortExcitation")
    if reference is None:
        if isinstance(source, DualPortArray):
            reference = jones_from_ports(excitation)
        else:
            reference = boresight_jones(source, None, element_model)
    ref = reference.normalized()
    ax, ay = ref.ex, ref.ey

    npts = int(round(ratio)) + 1
    theta_deg = np.linspace(-180.0, 180.0, npts)
    th = np.radians(np.abs(theta_deg))
    ph = np.radians(np.where(theta_deg < 0, phi_cut + 180.0, phi_cut))
    et, ep = source_field(source, th, ph, excitation, element_model)
    if ground_plane:
        below = np.abs(theta_deg) > 90.0
        et = np.where(below, 0, et)
        ep = np.where(below, 0, ep)
    ex, ey = ludwig3(et, ep, ph)
    co = np.conj(ax) * ex + np.conj(ay) * ey
    cross = -ay * ex + ax * ey

    prad = radiated_power(source, excitation, element_model, n_theta, n_phi, ground_plane)[0]
    scale = math.sqrt(4 * math.pi / prad)
    return PatternCut(label, phi_cut, theta_deg, co * scale, cross * scale, reference)


def array_from_sequence(positions: Sequence, orientation, excitations, frequency: float):
    """Convenience constructor for ad-hoc arrays (tests, debugging)."""
    return MonopoleArray([MonopoleElement(np.asarray(p, float), np.asarray(orientation, float),
                                          complex(e)) for p, e in zip(positions, excitations)],
                         frequency)
