"""Dual-port polarization synthesis and analysis.

Conventions: time dependence e^{+j omega t}, propagation along +z, IEEE
handedness (x - j y is right-handed). Port 1 radiates along +y at boresight,
port 2 along PORT2_SIGN * x. A port phase is a phase *delay*, so the
boresight phasor of port i is A_i * exp(-j phi_i).

With PORT2_SIGN = -1 and phase-delay excitation every row of the six-state
table (y, x, 45 deg, 135 deg, RHCP, LHCP) classifies as labelled; see
``SIX_STATES``. The sign is also what a +90 deg rotation of the port-1 slot
currents gives (y -> -x).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

PORT2_SIGN = -1

CP_TOL_DB = 0.005
LINEAR_TOL_DB = 60.0
CLAMP_DB = -200.0

Kind = Literal["linear", "RHCP", "LHCP", "elliptical"]
Hand = Literal["right", "left", "none"]


class ZeroFieldError(ValueError):
    """Polarization is undefined for an all-zero field."""


@dataclass(frozen=True)
class PortExcitation:
    """Drive state of the two ports; amplitudes linear, phases in radians."""

    a1: float
    p1: float
    a2: float
    p2: float

    def __post_init__(self):
        if self.a1 < 0 or self.a2 < 0:
            raise ValueError("port amplitudes must be non-negative")
        if not self.a1 + self.a2 > 0:
            raise ZeroFieldError("at least one port must be driven")

    @classmethod
    def from_degrees(cls, a1: float, p1_deg: float, a2: float, p2_deg: float) -> "PortExcitation":
        return cls(a1, math.radians(p1_deg), a2, math.radians(p2_deg))

    @property
    def phasors(self) -> tuple[complex, complex]:
        return (self.a1 * np.exp(-1j * self.p1), self.a2 * np.exp(-1j * self.p2))


@dataclass(frozen=True)
class JonesVector:
    ex: complex
    ey: complex

    def __mul__(self, k) -> "JonesVector":
        return JonesVector(self.ex * k, self.ey * k)

    __rmul__ = __mul__

    @property
    def power(self) -> float:
        return abs(self.ex) ** 2 + abs(self.ey) ** 2

    def normalized(self) -> "JonesVector":
        p = math.sqrt(_nonzero(self))
        return JonesVector(self.ex / p, self.ey / p)


@dataclass(frozen=True)
class StokesState:
    """``s0`` is the total power; s1..s3 are normalised by it."""

    s0: float
    s1: float
    s2: float
    s3: float


@dataclass(frozen=True)
class PolarizationState:
    kind: Kind
    tilt_deg: float
    axial_ratio_db: float
    handedness: Hand
    stokes: StokesState

    def to_dict(self) -> dict:
        ar = self.axial_ratio_db
        return {
            "kind": self.kind,
            "tilt_deg": _sig9(self.tilt_deg),
            "axial_ratio_db": "inf" if math.isinf(ar) else _sig9(ar),
            "handedness": self.handedness,
            "stokes": [_sig9(self.stokes.s1), _sig9(self.stokes.s2), _sig9(self.stokes.s3)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _sig9(v: float) -> float:
    v = float(f"{v:.9g}")
    return 0.0 if v == 0 else v


def _nonzero(j: JonesVector) -> float:
    p = j.power
    if not p > 0:
        raise ZeroFieldError("zero Jones vector")
    return p


def jones_from_ports(exc: PortExcitation) -> JonesVector:
    v1, v2 = exc.phasors
    return JonesVector(complex(PORT2_SIGN * v2), complex(v1))


def _raw_stokes(j: JonesVector) -> tuple[float, float, float, float]:
    ex, ey = complex(j.ex), complex(j.ey)
    s0 = abs(ex) ** 2 + abs(ey) ** 2
    s1 = abs(ex) ** 2 - abs(ey) ** 2
    s2 = 2.0 * (ex * ey.conjugate()).real
    s3 = 2.0 * (ex.conjugate() * ey).imag
    return s0, s1, s2, s3


def stokes(j: JonesVector) -> StokesState:
    _nonzero(j)
    s0, s1, s2, s3 = _raw_stokes(j)
    return StokesState(s0, s1 / s0, s2 / s0, s3 / s0)


def axial_ratio(j: JonesVector) -> float:
    """Axial ratio in dB; ``math.inf`` for a linear state."""
    _nonzero(j)
    s0, s1, s2, s3 = _raw_stokes(j)
    lin = math.hypot(s1, s2)
    # s0 - L == s3^2 / (s0 + L) for a fully polarised wave; avoids cancellation
    minor = s3 * s3 / (s0 + lin)
    if minor <= 1e-15 * s0:
        return math.inf
    return 10.0 * math.log10((s0 + lin) / minor)


def classify(j: JonesVector, ar_tol_db: float = CP_TOL_DB,
             lin_tol_db: float = LINEAR_TOL_DB) -> PolarizationState:
    if not (ar_tol_db > 0 and lin_tol_db > 0):
        raise ValueError("tolerances must be positive")
    st = stokes(j)
    ar = axial_ratio(j)
    hand: Hand = "none"
    if ar >= lin_tol_db:
        kind: Kind = "linear"
    else:
        hand = "right" if st.s3 < 0 else "left"
        if ar <= ar_tol_db:
            kind = "RHCP" if hand == "right" else "LHCP"
        else:
            kind = "elliptical"
    if kind in ("RHCP", "LHCP"):
        tilt = 0.0  # undefined for a circle
    else:
        tilt = math.degrees(0.5 * math.atan2(st.s2, st.s1)) % 180.0
        if tilt >= 180.0:
            tilt = 0.0
    return PolarizationState(kind, tilt, ar, hand, st)


def handedness_oracle(j: JonesVector) -> Hand:
    """Rotation sense of the real instantaneous field, from two time samples."""
    p = _nonzero(j)
    e = np.array([complex(j.ex), complex(j.ey)])
    e0 = e.real
    e1 = (e * np.exp(0.01j)).real
    cross = e0[0] * e1[1] - e0[1] * e1[0]
    if abs(cross) < 1e-12 * p:
        return "none"
    # counter-clockwise seen from +z while travelling +z is IEEE right-hand
    return "right" if cross > 0 else "left"


def mismatch_loss(transmit: JonesVector, receive: JonesVector) -> float:
    """Polarization mismatch in dB (<= 0), clamped at -200 dB."""
    t = transmit.normalized()
    r = receive.normalized()
    inner = t.ex * np.conj(r.ex) + t.ey * np.conj(r.ey)
    plf = min(abs(inner) ** 2, 1.0)
    if plf <= 10 ** (CLAMP_DB / 10):
        return CLAMP_DB
    return 10.0 * math.log10(plf)


# (excitation, expected kind, expected tilt in degrees or None for CP)
SIX_STATES: dict[str, tuple[PortExcitation, Kind, float | None]] = {
    "linear_y": (PortExcitation.from_degrees(1, 0, 0, 0), "linear", 90.0),
    "linear_x": (PortExcitation.from_degrees(0, 0, 1, 0), "linear", 0.0),
    "linear_45": (PortExcitation.from_degrees(1, 180, 1, 0), "linear", 45.0),
    "linear_135": (PortExcitation.from_degrees(1, 0, 1, 0), "linear", 135.0),
    "RHCP": (PortExcitation.from_degrees(1, 0, 1, 90), "RHCP", None),
    "LHCP": (PortExcitation.from_degrees(1, 90, 1, 0), "LHCP", None),
}
