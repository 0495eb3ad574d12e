"""Acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per criterion.
"""
import contextlib
import io
import math
import time

import numpy as np

from ringslot import cli
from ringslot.cavity import (TM12, TM31, CavityGeometry, ez_mode, locate_radial_extrema,
                             mode_frequency)
from ringslot.design import DesignParameters, synth_radius
from ringslot.farfield import (array_from_sequence, build_dual_port, build_monopole_array,
                               directivity, far_field, pattern_cut, radiated_power)
from ringslot.polar import (SIX_STATES, PortExcitation, axial_ratio, classify,
                            handedness_oracle, jones_from_ports)
from ringslot.specfun import ConvergenceError, bessel_prime_zero, bessel_zero

from oracles import direct_far_field, elements_of, gauss_hemisphere_power, scan_bisect

G = CavityGeometry(radius=8e-3, permittivity=2.2)


def report(n, checks, elapsed=None, limit=None):
    """Print one verdict line for criterion ``n`` and fail the test on any bad check."""
    bad = [name for name, ok in checks if not ok]
    if limit is not None and elapsed >= limit:
        bad.append(f"runtime {elapsed:.2f}s >= {limit}s")
    timing = "" if elapsed is None else f" ({elapsed:.2f}s)"
    print(f"\ncriterion {n:2d}: {'FAIL' if bad else 'PASS'}{timing}" + (f" {bad}" if bad else ""))
    assert not bad


def test_criterion_01_bessel_constants():
    t0 = time.perf_counter()
    got = [bessel_zero(3, 1).value, bessel_zero(1, 2).value, bessel_prime_zero(3, 1)]
    elapsed = time.perf_counter() - t0
    ref = [scan_bisect(3, 1), scan_bisect(1, 2), scan_bisect(3, 1, derivative=True)]
    quoted = [6.3801619, 7.0155867, 4.2011889]
    checks = [(f"oracle {q}", abs(g - r) <= 1e-7) for g, r, q in zip(got, ref, quoted)]
    checks += [(f"quoted {q}", abs(g - q) <= 1e-7) for g, q in zip(got, quoted)]
    report(1, checks, elapsed, 1.0)


def test_criterion_02_mode_anchor():
    t0 = time.perf_counter()
    f31, f12 = mode_frequency(G, TM31), mode_frequency(G, TM12)
    elapsed = time.perf_counter() - t0
    report(2, [("TM31", abs(f31 / 25.66e9 - 1) <= 5e-3),
               ("TM12", abs(f12 / 28.21e9 - 1) <= 5e-3),
               ("band", all(25e9 <= f <= 29.5e9 for f in (f31, f12)))], elapsed, 1.0)


def test_criterion_03_feed_placement():
    peaks = [r for r, k in locate_radial_extrema(G, (1, 0), 0.0) if k == "peak"]
    r = peaks[0] * 1e3
    offset = DesignParameters().offset * 1e3
    report(3, [("single peak", len(peaks) == 1),
               ("5.2675 mm", abs(r - 5.2675) <= 0.01),
               ("offset 2%", abs(r / offset - 1) <= 0.02)])


def test_criterion_04_boundary_orthogonality():
    t0 = time.perf_counter()
    R = G.radius
    phis = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    rim = [np.max(np.abs(ez_mode(G, m, np.full(256, R), phis))) for m in (TM31, TM12)]
    x, w = np.polynomial.legendre.leggauss(400)
    rho = 0.5 * R * (x + 1)
    P, Q = np.meshgrid(rho, 2 * np.pi * np.arange(400) / 400, indexing="ij")
    wt = (0.5 * R * w * rho)[:, None]
    a, b = ez_mode(G, TM31, P, Q), ez_mode(G, TM12, P, Q)
    cross = abs(np.sum(a * b * wt)) / math.sqrt(np.sum(a * a * wt) * np.sum(b * b * wt))
    elapsed = time.perf_counter() - t0
    report(4, [("boundary", max(rim) <= 1e-10), ("orthogonality", cross <= 1e-6)], elapsed, 10.0)


def test_criterion_05_table_rows():
    checks = []
    for name, (exc, kind, tilt) in SIX_STATES.items():
        s = classify(jones_from_ports(exc))
        ok = s.kind == kind and (tilt is None or abs(s.tilt_deg - tilt) <= 1e-9)
        checks.append((name, ok))
    r = jones_from_ports(SIX_STATES["RHCP"][0])
    l = jones_from_ports(SIX_STATES["LHCP"][0])
    checks.append(("opposite hands", classify(r).handedness != classify(l).handedness))
    checks.append(("oracle RHCP", handedness_oracle(r) == "right" == classify(r).handedness))
    checks.append(("oracle LHCP", handedness_oracle(l) == "left" == classify(l).handedness))
    report(5, checks)


def test_criterion_06_polarization_identities():
    cp = [axial_ratio(jones_from_ports(SIX_STATES[k][0])) for k in ("RHCP", "LHCP")]
    lin = [axial_ratio(jones_from_ports(SIX_STATES[k][0]))
           for k in ("linear_x", "linear_y", "linear_45", "linear_135")]
    ell = axial_ratio(jones_from_ports(PortExcitation.from_degrees(2, 0, 1, 90)))
    rng = np.random.default_rng(2024)
    inv_ok = True
    for _ in range(1000):
        a1, a2 = rng.uniform(0.05, 1.0, 2)
        p1, p2 = rng.uniform(-math.pi, math.pi, 2)
        j = jones_from_ports(PortExcitation(a1, p1, a2, p2))
        ref = classify(j)
        alpha = rng.uniform(0.1, 10.0) * np.exp(1j * rng.uniform(0, 2 * math.pi))
        s = classify(alpha * j)
        same_ar = (math.isinf(ref.axial_ratio_db) and math.isinf(s.axial_ratio_db)) or \
            abs(s.axial_ratio_db - ref.axial_ratio_db) <= 1e-9 * max(1.0, ref.axial_ratio_db)
        inv_ok &= (s.kind == ref.kind and s.handedness == ref.handedness and same_ar
                   and abs(s.tilt_deg - ref.tilt_deg) <= 1e-9)
    report(6, [("CP AR", max(cp) <= 1e-9), ("linear inf", all(map(math.isinf, lin))),
               ("6.0206 dB", abs(ell - 20 * math.log10(2)) <= 1e-6 and abs(ell - 6.0206) <= 1e-4),
               ("invariance", inv_ok)])


def test_criterion_07_far_field_oracle():
    array = build_monopole_array(G)
    rng = np.random.default_rng(7)
    th = rng.uniform(0, math.pi, 10_000)
    ph = rng.uniform(0, 2 * math.pi, 10_000)
    et, ep = far_field(array, th, ph)
    el, k = elements_of(array), array.wavenumber
    ref = np.array([direct_far_field(el, k, t, p) for t, p in zip(th, ph)])
    scale = np.hypot(np.abs(ref[:, 0]), np.abs(ref[:, 1]))
    err = np.hypot(np.abs(et - ref[:, 0]), np.abs(ep - ref[:, 1]))
    # relative to the local field, floored at 1e-6 of the peak so pattern nulls are not divided by ~0
    rel = np.max(err / np.maximum(scale, 1e-6 * len(el)))
    dipole = array_from_sequence([(0, 0, 0)], (1, 0, 0), [1.0], 28e9)
    d_dip = directivity(dipole, ground_plane=False).d_max_dbi
    prad = radiated_power(array)[0]
    u_int = gauss_hemisphere_power(lambda t, p: direct_far_field(el, k, t, p)) / prad
    report(7, [("direct summation", rel <= 1e-12), ("dipole 1.761", abs(d_dip - 1.761) <= 0.01),
               ("hemisphere normalisation", abs(u_int - 1) <= 1e-3)])


def test_criterion_08_array_properties():
    t0 = time.perf_counter()
    dual = build_dual_port(G)
    d = directivity(dual.port1)
    th, ph = np.meshgrid(np.linspace(0, math.pi / 2, 91), np.linspace(0, 2 * math.pi, 181))
    t1, p1 = far_field(dual.port1, th, ph)
    t2, p2 = far_field(dual.port2, th, ph + math.pi / 2)
    peak = np.max(np.hypot(np.abs(t1), np.abs(p1)))
    rot = max(np.max(np.abs(t2 - t1)), np.max(np.abs(p2 - p1))) / peak
    exc = SIX_STATES["RHCP"][0]
    xpol = [pattern_cut(dual, exc, plane=p) for p in ("E", "H")]
    bore = [c.cross_db[c.theta_deg == 0.0][0] for c in xpol]
    elapsed = time.perf_counter() - t0
    report(8, [("boresight max", d.peak_theta_deg == 0.0 and d.boresight_dbi >= d.d_max_dbi - 1e-9),
               ("D_max bracket", 9.0 <= d.d_max_dbi <= 15.0),
               ("port-2 rotation", rot <= 1e-12),
               ("CP cross-pol clamp", all(b <= -200.0 for b in bore))], elapsed, 30.0)


def test_criterion_09_round_trip():
    rng = np.random.default_rng(9)
    worst = 0.0
    for f in rng.uniform(20e9, 40e9, 100):
        for mode in (TM31, TM12):
            g = CavityGeometry(radius=synth_radius(f, mode, 2.2), permittivity=2.2)
            worst = max(worst, abs(mode_frequency(g, mode) / f - 1))
    report(9, [("identity", worst <= 1e-12)])


CLI_RUNS = {
    "modes": ["modes"],
    "fieldmap": ["fieldmap", "--grid-n", "32"],
    "extrema": ["extrema"],
    "pattern": ["pattern", "--a1", "1", "--a2", "1", "--p2-deg", "90", "--step-deg", "5"],
    "directivity": ["directivity"],
    "polstate": ["polstate", "--a1", "1", "--a2", "1", "--p2-deg", "90"],
    "synth": ["synth"],
    "sweep": ["sweep", "--steps", "3"],
}


def _capture(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = cli.run(argv)
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue()


def test_criterion_10_cli(tmp_path, monkeypatch):
    checks = []
    for name, argv in CLI_RUNS.items():
        first, second = _capture(argv), _capture(argv)
        checks.append((name, first[0] == cli.EXIT_OK and first == second and first[1]))
    checks.append(("exit 1", _capture(["modes", "-o", str(tmp_path / "x" / "y.json")])[0]
                   == cli.EXIT_IO))
    checks.append(("exit 2", _capture(["modes", "--rc-mm", "-1"])[0] == cli.EXIT_USAGE))
    checks.append(("exit 2 argparse", _capture(["bogus"])[0] == cli.EXIT_USAGE))

    def fail(cfg):
        raise ConvergenceError("forced")
    monkeypatch.setitem(cli._COMMANDS, "modes", fail)
    checks.append(("exit 3", _capture(["modes"])[0] == cli.EXIT_NUMERIC))
    report(10, checks)

