import importlib
import os
import subprocess
import sys

import pytest

from cuspelastic import _kernels
from cuspelastic._kernels import _fallback

try:
    from cuspelastic._kernels import _core
except ImportError:  # extension not built
    _core = None

needs_core = pytest.mark.skipif(_core is None, reason="compiled extension not built")


def test_backend_name():
    assert _kernels.BACKEND in ("cython", "python")
    if _core is not None and not os.environ.get("CUSPELASTIC_PURE_PYTHON"):
        assert _kernels.BACKEND == "cython"


@needs_core
@pytest.mark.parametrize("args", [(1.0, 2.0, 0.3, 1.0), (1.0, 1.5, 0.1, 0.0), (1.0, 2.0, 0.5, 5.0)])
def test_energy_kernels_agree(args):
    v_c, e_c, ok_c = _core.lens_energy_integral(*args, 1e-11, 1e-12, 2000)
    v_p, e_p, ok_p = _fallback.lens_energy_integral(*args, 1e-11, 1e-12, 2000)
    assert ok_c and ok_p
    assert v_c == pytest.approx(v_p, rel=1e-12)


@needs_core
@pytest.mark.parametrize("R, k, nc, nt", [(2.0, 0.0, 64, 64), (1.5, 3.0, 40, 33), (2.0, 5.6, 64, 64)])
def test_ellipticity_kernels_agree(R, k, nc, nt):
    m_c, i_c, j_c = _core.ellipticity_margin_min(R, k, nc, nt)
    m_p, i_p, j_p = _fallback.ellipticity_margin_min(R, k, nc, nt)
    assert m_c == pytest.approx(m_p, abs=1e-13)
    assert (i_c, j_c) == (i_p, j_p)


def test_fallback_forced_by_environment():
    env = dict(os.environ, CUSPELASTIC_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import cuspelastic; print(cuspelastic.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_reload_keeps_interface():
    mod = importlib.reload(_kernels)
    assert callable(mod.lens_energy_integral)
    assert callable(mod.ellipticity_margin_min)
