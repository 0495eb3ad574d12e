"""Numerical model of a dual-port, polarization-adjustable ring-slot cavity antenna."""

from .cavity import (TM12, TM31, CavityGeometry, FieldMap, ModeIndex, ez_hybrid, ez_mode,
                     field_map, locate_radial_extrema, mode_frequency)
from .design import DesignParameters, ModelSettings, sweep, synth_radius
from .farfield import (DualPortArray, MonopoleArray, MonopoleElement, build_dual_port,
                       build_monopole_array, default_slot_radius, directivity, far_field,
                       pattern_cut)
from .polar import (JonesVector, PortExcitation, axial_ratio, classify, handedness_oracle,
                    jones_from_ports, mismatch_loss, stokes)
from .specfun import (BesselZero, ConvergenceError, DomainError, bessel_j, bessel_j_prime,
                      bessel_prime_zero, bessel_zero)

__version__ = "0.1.0"
