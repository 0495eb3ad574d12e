"""Command-line front end.

Exit codes: 0 success, 1 I/O failure, 2 invalid arguments or configuration,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys

from . import config as cfgmod
from .cavity import TM12, TM31, ModeIndex, field_map, locate_radial_extrema, mode_frequency
from .design import MM, sweep, synth_radius
from .farfield import default_slot_radius, directivity, pattern_cut
from .polar import classify, jones_from_ports
from .specfun import ConvergenceError

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def _sig(v: float) -> float | str:
    if math.isinf(v):
        return "inf"
    v = float(f"{v:.9g}")
    return 0.0 if v == 0 else v


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON configuration file; flags override its values")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")


def _geometry_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rc-mm", dest="rc_mm", type=float, help="cavity radius [mm]")
    p.add_argument("--er", type=float, help="relative permittivity")
    p.add_argument("--h-mm", dest="h_mm", type=float, help="substrate height [mm]")


def _array_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rs-mm", dest="rs_mm", type=float, help="ring slot radius R_S [mm]")
    p.add_argument("--r-slot-mm", dest="r_slot_mm", type=float,
                   help="slot-centre radius [mm]; default is the hybrid-field null")
    p.add_argument("--freq-ghz", dest="freq_ghz", type=float)
    p.add_argument("--element-model", dest="element_model",
                   choices=["isotropic", "magnetic_dipole"])
    p.add_argument("--n-theta", dest="n_theta", type=int)
    p.add_argument("--n-phi", dest="n_phi", type=int)
    p.add_argument("--free-space", dest="ground_plane", action="store_const", const=False,
                   help="radiate into the full sphere instead of the upper half space")


def _weight_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--w31", nargs=2, type=float, metavar=("RE", "IM"))
    p.add_argument("--w12", nargs=2, type=float, metavar=("RE", "IM"))


def _port_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a1", type=float)
    p.add_argument("--p1-deg", dest="p1_deg", type=float)
    p.add_argument("--a2", type=float)
    p.add_argument("--p2-deg", dest="p2_deg", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ringslot",
                                     description="Slot-loaded circular cavity antenna model")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("modes", help="TM31 / TM12 resonant frequencies (JSON)")
    _common(p)
    _geometry_flags(p)

    p = sub.add_parser("fieldmap", help="normalised E_z map (CSV)")
    _common(p)
    _geometry_flags(p)
    _weight_flags(p)
    p.add_argument("--grid-n", dest="grid_n", type=int)

    p = sub.add_parser("extrema", help="radial peaks and nulls along a ray (JSON)")
    _common(p)
    _geometry_flags(p)
    _weight_flags(p)
    p.add_argument("--phi-deg", dest="phi_deg", type=float)

    p = sub.add_parser("pattern", help="co/cross-polar pattern cut (CSV)")
    _common(p)
    _geometry_flags(p)
    _weight_flags(p)
    _array_flags(p)
    _port_flags(p)
    p.add_argument("--plane", help="E, H, or a cut azimuth in degrees")
    p.add_argument("--step-deg", dest="step_deg", type=float)

    p = sub.add_parser("directivity", help="peak and boresight directivity (JSON)")
    _common(p)
    _geometry_flags(p)
    _weight_flags(p)
    _array_flags(p)
    _port_flags(p)

    p = sub.add_parser("polstate", help="classify the boresight polarization (JSON)")
    _common(p)
    _port_flags(p)

    p = sub.add_parser("synth", help="cavity radius for a target frequency (JSON)")
    _common(p)
    p.add_argument("--target-ghz", dest="target_ghz", type=float)
    p.add_argument("--mode", help="TM31, TM12, ...")
    p.add_argument("--er", type=float)

    p = sub.add_parser("sweep", help="one-parameter sweep of a model metric (CSV)")
    _common(p)
    _geometry_flags(p)
    _weight_flags(p)
    _array_flags(p)
    _port_flags(p)
    p.add_argument("--param", help="R_c, eps_r, R_slot, R_S or frequency")
    p.add_argument("--start", dest="start_si", type=float, help="first value, SI units")
    p.add_argument("--stop", dest="stop_si", type=float, help="last value, SI units")
    p.add_argument("--steps", type=int)
    p.add_argument("--metric", choices=["modes", "boresight_directivity", "axial_ratio"])
    return parser


def _plane(value):
    if isinstance(value, str) and value.upper() not in ("E", "H"):
        try:
            return float(value)
        except ValueError:
            raise cfgmod.ConfigError(f"plane must be E, H or a number, got {value!r}") from None
    return value


def _run_modes(cfg) -> str:
    g = cfgmod.geometry(cfg)
    return _dump({"TM31_GHz": _sig(mode_frequency(g, TM31) / 1e9),
                  "TM12_GHz": _sig(mode_frequency(g, TM12) / 1e9)})


def _run_fieldmap(cfg) -> str:
    fm = field_map(cfgmod.geometry(cfg), cfgmod.weights(cfg), cfg["grid_n"])
    buf = io.StringIO()
    fm.to_csv(buf)
    return buf.getvalue()


def _run_extrema(cfg) -> str:
    ext = locate_radial_extrema(cfgmod.geometry(cfg), cfgmod.weights(cfg),
                                math.radians(cfg["phi_deg"]))
    return _dump({"phi_deg": _sig(cfg["phi_deg"]),
                  "extrema": [{"radius_mm": _sig(r / MM), "kind": k} for r, k in ext]})


def _run_pattern(cfg) -> str:
    s = cfgmod.settings(cfg)
    cut = pattern_cut(s.dual_port(), s.excitation, _plane(cfg["plane"]), cfg["step_deg"],
                      s.element_model, cfg["ground_plane"], n_theta=s.n_theta, n_phi=s.n_phi)
    buf = io.StringIO()
    cut.to_csv(buf)
    return buf.getvalue()


def _run_directivity(cfg) -> str:
    s = cfgmod.settings(cfg)
    r_slot = s.slot_radius or default_slot_radius(s.geometry, s.weights, s.params.rs)
    d = directivity(s.dual_port(), s.excitation, s.element_model, s.n_theta, s.n_phi,
                    cfg["ground_plane"])
    return _dump({"D_max_dBi": _sig(d.d_max_dbi), "boresight_dBi": _sig(d.boresight_dbi),
                  "peak_theta_deg": _sig(d.peak_theta_deg),
                  "peak_phi_deg": _sig(d.peak_phi_deg), "slot_radius_mm": _sig(r_slot / MM)})


def _run_polstate(cfg) -> str:
    return classify(jones_from_ports(cfgmod.excitation(cfg))).to_json() + "\n"


def _run_synth(cfg) -> str:
    mode = ModeIndex.parse(cfg["mode"])
    rc = synth_radius(cfg["target_ghz"] * 1e9, mode, cfg["er"])
    return _dump({"rc_mm": _sig(rc / MM), "mode": str(mode)})


def _run_sweep(cfg) -> str:
    table = sweep(cfg["param"], cfg["start_si"], cfg["stop_si"], cfg["steps"], cfg["metric"],
                  cfgmod.settings(cfg))
    buf = io.StringIO()
    table.to_csv(buf)
    return buf.getvalue()


_COMMANDS = {
    "modes": _run_modes, "fieldmap": _run_fieldmap, "extrema": _run_extrema,
    "pattern": _run_pattern, "directivity": _run_directivity, "polstate": _run_polstate,
    "synth": _run_synth, "sweep": _run_sweep,
}


def _error(msg: str) -> None:
    print(f"ringslot: error: {msg}", file=sys.stderr)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        file_values = cfgmod.load_file(args.config) if args.config else {}
        cfg = cfgmod.merge(file_values, flags)
        text = _COMMANDS[args.command](cfg)
    except ConvergenceError as exc:
        _error(f"numerical non-convergence: {exc}")
        return EXIT_NUMERIC
    except (ValueError, TypeError) as exc:
        _error(str(exc))
        return EXIT_USAGE
    try:
        if cfg["output"]:
            with open(cfg["output"], "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        _error(f"cannot write output: {exc}")
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
