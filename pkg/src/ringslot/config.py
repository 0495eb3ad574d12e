"""Run configuration: JSON file + command-line overrides.

Precedence, lowest to highest: built-in defaults, ``--config`` file, flags.
Units are part of every key name (``*_mm``, ``*_ghz``, ``*_deg``); sweep
bounds are SI (``*_si``).
"""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .cavity import CavityGeometry
from .design import MM, DesignParameters, ModelSettings
from .polar import PortExcitation

DEFAULTS: dict[str, Any] = {
    "rc_mm": 8.0,
    "er": 2.2,
    "h_mm": 0.787,
    "rs_mm": 1.69,
    "r_out_mm": 11.75,
    "offset_mm": 5.35,
    "ws_mm": 0.45,
    "ls_mm": 4.65,
    "d_pin_mm": 0.7,
    "d_pout_mm": 0.5,
    "d_mm": 0.5,
    "r_slot_mm": None,
    "w31": [1.0, 0.0],
    "w12": [1.0, 0.0],
    "freq_ghz": 28.0,
    "element_model": "magnetic_dipole",
    "ground_plane": True,
    "n_theta": 181,
    "n_phi": 361,
    "a1": 1.0,
    "p1_deg": 0.0,
    "a2": 0.0,
    "p2_deg": 0.0,
    "grid_n": 64,
    "phi_deg": 0.0,
    "plane": "E",
    "step_deg": 1.0,
    "target_ghz": 28.21,
    "mode": "TM12",
    "param": "R_c",
    "start_si": 7e-3,
    "stop_si": 9e-3,
    "steps": 11,
    "metric": "modes",
    "output": None,
}

_pos = {"type": "number", "exclusiveMinimum": 0}
_nonneg = {"type": "number", "minimum": 0}
_complex = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ringslot run configuration",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "rc_mm": _pos, "er": {"type": "number", "minimum": 1}, "h_mm": _pos,
        "rs_mm": _pos, "r_out_mm": _pos, "offset_mm": _pos, "ws_mm": _pos, "ls_mm": _pos,
        "d_pin_mm": _pos, "d_pout_mm": _pos, "d_mm": _pos,
        "r_slot_mm": {"anyOf": [_pos, {"type": "null"}]},
        "w31": _complex, "w12": _complex,
        "freq_ghz": _pos,
        "element_model": {"enum": ["isotropic", "magnetic_dipole"]},
        "ground_plane": {"type": "boolean"},
        "n_theta": {"type": "integer", "minimum": 181},
        "n_phi": {"type": "integer", "minimum": 361},
        "a1": _nonneg, "p1_deg": {"type": "number"},
        "a2": _nonneg, "p2_deg": {"type": "number"},
        "grid_n": {"type": "integer", "minimum": 16},
        "phi_deg": {"type": "number"},
        "plane": {"anyOf": [{"enum": ["E", "H", "e", "h"]}, {"type": "number"}]},
        "step_deg": _pos,
        "target_ghz": _pos,
        "mode": {"type": "string"},
        "param": {"type": "string"},
        "start_si": {"type": "number"}, "stop_si": {"type": "number"},
        "steps": {"type": "integer", "minimum": 2},
        "metric": {"enum": ["modes", "boresight_directivity", "axial_ratio"]},
        "output": {"type": ["string", "null"]},
    },
}


class ConfigError(ValueError):
    pass


def load_file(path: str) -> dict[str, Any]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return data


def merge(file_values: dict[str, Any], flags: dict[str, Any]) -> dict[str, Any]:
    cfg = dict(DEFAULTS)
    cfg.update(file_values)
    cfg.update({k: v for k, v in flags.items() if v is not None})
    try:
        jsonschema.validate(cfg, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"invalid configuration: {exc.message}") from exc
    return cfg


def geometry(cfg: dict[str, Any]) -> CavityGeometry:
    return CavityGeometry(cfg["rc_mm"] * MM, cfg["er"], cfg["h_mm"] * MM)


def design_parameters(cfg: dict[str, Any]) -> DesignParameters:
    return DesignParameters(rs=cfg["rs_mm"] * MM, r_out=cfg["r_out_mm"] * MM,
                            offset=cfg["offset_mm"] * MM, ws=cfg["ws_mm"] * MM,
                            ls=cfg["ls_mm"] * MM, d_pin=cfg["d_pin_mm"] * MM,
                            d_pout=cfg["d_pout_mm"] * MM, d=cfg["d_mm"] * MM)


def excitation(cfg: dict[str, Any]) -> PortExcitation:
    return PortExcitation.from_degrees(cfg["a1"], cfg["p1_deg"], cfg["a2"], cfg["p2_deg"])


def weights(cfg: dict[str, Any]) -> tuple[complex, complex]:
    return complex(*cfg["w31"]), complex(*cfg["w12"])


def settings(cfg: dict[str, Any]) -> ModelSettings:
    r_slot = cfg["r_slot_mm"]
    return ModelSettings(
        geometry=geometry(cfg),
        params=design_parameters(cfg),
        slot_radius=None if r_slot is None else r_slot * MM,
        weights=weights(cfg),
        frequency=cfg["freq_ghz"] * 1e9,
        element_model=cfg["element_model"],
        excitation=excitation(cfg),
        n_theta=cfg["n_theta"],
        n_phi=cfg["n_phi"],
    )
