"""Parity between the compiled shooting kernel and its Python twin.

The two implementations share tableau, step control and node counting;
any drift between them shows up here before it can corrupt the oracle.
"""

import importlib
import math

import pytest

from dkp_spectra import _shoot_py, shooting

compiled = pytest.importorskip(
    "dkp_spectra._shoot_cy", reason="compiled extension not built"
)

CASES = [
    # variant, m, a, g, J, E
    (0, 938.0, 0.986634902, 0.3422745326720664, 0.0, 872.467),
    (0, 938.0, 0.986634902, 0.3422745326720664, 2.0, -400.0),
    (0, 938.0, 2.959904706, 0.3422745326720664, 1.0, 910.0),
    (1, 938.0, 0.986634902, 0.3422745326720664, 0.0, 872.467),
    (1, 938.0, 2.959904706, 0.3422745326720664, 3.0, 500.0),
    (0, 1.0, 0.001, 0.05, 0.0, 0.9987),
]


def _setup(m, a, g, J, E):
    eps = math.sqrt(m * m - E * E)
    half = J + 0.5
    lam = 0.5 + math.sqrt(half * half - g * g)
    b1 = g * (a * g - E) / lam
    return 1e-6 / a, 1.0 / eps, 30.0 / eps, lam, b1


class TestBackendParity:
    @pytest.mark.parametrize("case", CASES)
    def test_w_value_identical(self, case):
        variant, m, a, g, J, E = case
        for r in (1e-5, 0.003, 0.05, 0.7, 5.0):
            wc = compiled.w_value(variant, m, a, g, J, E, r)
            wp = _shoot_py.w_value(variant, m, a, g, J, E, r)
            assert wc == pytest.approx(wp, rel=2e-16, abs=1e-300)

    @pytest.mark.parametrize("case", CASES)
    def test_shoot_kernel_agrees(self, case):
        variant, m, a, g, J, E = case
        r0, rm, r1, lam, b1 = _setup(m, a, g, J, E)
        out_c = compiled.shoot_kernel(variant, m, a, g, J, E, r0, rm, r1, 1e-10, lam, b1)
        out_p = _shoot_py.shoot_kernel(variant, m, a, g, J, E, r0, rm, r1, 1e-10, lam, b1)
        # node counts and convergence flags are integers: exact
        assert out_c[2] == out_p[2]
        assert out_c[5] == out_p[5]
        assert out_c[6] == out_p[6]
        # log-derivatives agree far below the integration tolerance
        ld_out_c, ld_out_p = out_c[1] / out_c[0], out_p[1] / out_p[0]
        ld_in_c, ld_in_p = out_c[4] / out_c[3], out_p[4] / out_p[3]
        assert ld_out_c == pytest.approx(ld_out_p, rel=1e-9)
        assert ld_in_c == pytest.approx(ld_in_p, rel=1e-9)


class TestBackendSelection:
    def test_active_backend_exposes_kernel(self):
        assert shooting.BACKEND in ("compiled", "python")
        assert callable(shooting.shoot_kernel)
        assert callable(shooting.w_value)

    def test_env_override_forces_python(self, monkeypatch):
        monkeypatch.setenv("DKP_SPECTRA_PURE_PYTHON", "1")
        spec = importlib.util.find_spec("dkp_spectra.shooting")
        module = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(module)
        assert module.BACKEND == "python"
        assert module.shoot_kernel is _shoot_py.shoot_kernel


class TestFallbackEndToEnd:
    def test_find_level_on_python_backend(self):
        """The fallback must run the whole oracle pipeline, only slower.

        A coarse scan keeps this affordable in pure Python; agreement
        with the closed form is checked at the bisection tolerance.
        """
        import subprocess
        import sys

        script = (
            "import os\n"
            "from dkp_spectra import shooting, oracle, NaturalParams, "
            "QuantumNumbers, Variant, energy_physical\n"
            "assert shooting.BACKEND == 'python', shooting.BACKEND\n"
            "nat = NaturalParams(m=938.0, a=0.986634902, g=0.3422745326720664)\n"
            "cfg = oracle.OracleConfig(scan_points=240, scan_local_error=1e-7,\n"
            "                          local_error=1e-10)\n"
            "e = oracle.find_level(Variant.APPROX, nat, QuantumNumbers(0, 0), cfg)\n"
            "closed = energy_physical(nat, QuantumNumbers(0, 0)).E\n"
            "assert abs(e - closed) / nat.m <= 1e-6, (e, closed)\n"
            "print('fallback ok', e)\n"
        )
        proc = subprocess.run(
            [sys.executable, "-c", script],
            env={"DKP_SPECTRA_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"},
            capture_output=True,
            text=True,
            timeout=600,
        )
        assert proc.returncode == 0, proc.stderr
        assert "fallback ok" in proc.stdout
