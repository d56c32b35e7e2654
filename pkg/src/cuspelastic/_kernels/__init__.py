"""Hot loops: the area-energy double integral and the ellipticity grid scan.

The compiled extension ``_core`` is used when it imports; otherwise the
pure-Python ``_fallback`` takes over.  Setting the environment variable
``CUSPELASTIC_PURE_PYTHON=1`` forces the fallback.  ``BACKEND`` names the
active implementation.
"""

from __future__ import annotations

import os

from . import _fallback

if os.environ.get("CUSPELASTIC_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

lens_energy_integral = _impl.lens_energy_integral
ellipticity_margin_min = _impl.ellipticity_margin_min

__all__ = ["BACKEND", "lens_energy_integral", "ellipticity_margin_min"]
