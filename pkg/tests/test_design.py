import io
import math

import numpy as np
import pytest

from ringslot.cavity import TM12, TM31, CavityGeometry, mode_frequency
from ringslot.design import DesignParameters, ModelSettings, evaluate, sweep, synth_radius
from ringslot.farfield import build_dual_port, directivity
from ringslot.polar import PortExcitation

# boresight directivity of the default array (port 1 only), computed with the
# direct-summation field and Gauss-Legendre x 192-point hemisphere quadrature in tests/oracles.py
ORACLE_FREQ_SWEEP = [
    (25.0e9, 9.61400319),
    (26.125e9, 9.95599606),
    (27.25e9, 10.29101612),
    (28.375e9, 10.61603934),
    (29.5e9, 10.92816355),
]


def test_table_defaults():
    p = DesignParameters()
    assert (p.rs, p.r_out, p.offset, p.ws, p.ls) == pytest.approx(
        (1.69e-3, 11.75e-3, 5.35e-3, 0.45e-3, 4.65e-3))
    assert (p.d_pin, p.d_pout, p.d, p.rc_table) == pytest.approx((0.7e-3, 0.5e-3, 0.5e-3,
                                                                  8.25e-3))
    p.check(CavityGeometry())
    with pytest.raises(ValueError):
        DesignParameters(rs=0)
    with pytest.raises(ValueError):
        DesignParameters(offset=9e-3).check(CavityGeometry())


def test_synth_examples():
    assert synth_radius(28.21e9, TM12, 2.2) == pytest.approx(8.0e-3, rel=5e-3)
    assert synth_radius(28.21e9, TM12, 1.0) == pytest.approx(
        synth_radius(28.21e9, TM12, 2.2) * math.sqrt(2.2), rel=1e-15)
    assert synth_radius(28.21e9, TM12, 1.0) * 1e3 == pytest.approx(11.87, abs=0.01)
    with pytest.raises(ValueError):
        synth_radius(0.0, TM12, 2.2)


@pytest.mark.filterwarnings("ignore:substrate height")
def test_round_trip():
    rng = np.random.default_rng(1)
    for f, er in zip(rng.uniform(20e9, 40e9, 100), rng.uniform(1, 10, 100)):
        for mode in (TM31, TM12):
            g = CavityGeometry(radius=synth_radius(f, mode, er), permittivity=er)
            assert mode_frequency(g, mode) == pytest.approx(f, rel=1e-12)


def test_sweep_rc_modes():
    t = sweep("R_c", 7e-3, 9e-3, 9, "modes")
    assert t.columns == ["R_c_m", "TM31_GHz", "TM12_GHz"]
    assert len(t.rows) == 9
    assert np.all(np.diff(t.column(0)) > 0)
    assert np.all(np.diff(t.column(2)) < 0)


def test_sweep_rs_matches_single_calls():
    t = sweep("R_S", 0.5e-3, 2.5e-3, 5, "boresight_directivity")
    for rs, d in t.rows:
        s = ModelSettings(params=DesignParameters(rs=rs))
        ref = directivity(build_dual_port(s.geometry, ring_radius=rs), s.excitation)
        assert d == ref.boresight_dbi


def test_sweep_frequency_against_oracle_column():
    t = sweep("frequency", 25e9, 29.5e9, 5, "boresight_directivity")
    for (f, d), (f_ref, d_ref) in zip(t.rows, ORACLE_FREQ_SWEEP):
        assert f == pytest.approx(f_ref)
        assert math.isfinite(d) and d > 0
        assert d == pytest.approx(d_ref, abs=2e-3)


def test_sweep_axial_ratio():
    rhcp = ModelSettings(excitation=PortExcitation.from_degrees(1, 0, 1, 90))
    t = sweep("eps_r", 1.5, 3.0, 3, "axial_ratio", rhcp)
    assert t.columns == ["eps_r", "boresight_AR_dB"]
    assert all(ar == pytest.approx(0.0, abs=1e-9) for _, ar in t.rows)
    lin = sweep("R_slot", 2.5e-3, 4.5e-3, 3, "axial_ratio")
    assert all(math.isinf(ar) for _, ar in lin.rows)
    buf = io.StringIO()
    lin.to_csv(buf)
    assert buf.getvalue().splitlines()[1].endswith(",inf")


def test_sweep_errors():
    with pytest.raises(ValueError):
        sweep("W_S", 1, 2, 3, "modes")
    with pytest.raises(ValueError):
        sweep("R_c", 7e-3, 9e-3, 1, "modes")
    with pytest.raises(ValueError):
        sweep("R_c", 7e-3, 9e-3, 3, "gain")
    with pytest.raises(ValueError):
        evaluate(ModelSettings(), "gain")


def test_sweep_csv():
    t = sweep("rc", 7e-3, 8e-3, 2, "modes")
    buf = io.StringIO()
    t.to_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "R_c_m,TM31_GHz,TM12_GHz"
    assert len(lines) == 3
