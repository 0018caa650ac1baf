"""Numerical experiments on weighted ergodic averages."""

import json
import os

# installed wheels carry their own fixtures
_packaged = os.path.join(os.path.dirname(__file__), "fixtures")
if "ERGOLAB_FIXTURES" not in os.environ and os.path.isdir(_packaged):
    os.environ["ERGOLAB_FIXTURES"] = _packaged

from ._core import (
    BoundViolation,
    CapacityError,
    DegenerateError,
    DomainError,
    Error,
    FixtureError,
    InvertibilityError,
    PreconditionError,
    RangeError,
    ShapeError,
    UsageError,
    __version__,
    automatic,
    default_fixture_dir,
    fejer,
    gowers_cyclic,
    gowers_interval,
    lemma_names,
    liouville,
    mobius,
    sup_norm,
    vdp,
    vdp_multiplier,
)
from . import _core


def decay_profile(weight="mobius", system="rotation", a=1, b=-1, nmin=1024, nmax=1 << 14, points=32,
                  f="trig:1", g="trig:2", seed=20240601):
    """Decay profile report as a dict (header, columns, rows, summary)."""
    return json.loads(_core.decay_profile_json(weight, system, a, b, nmin, nmax, points, f, g, seed))


def lemma_sweep(which, trials, seed):
    """Calibration sweep report as a dict."""
    return json.loads(_core.lemma_sweep_json(which, trials, seed))


def verify(seed=20240601, quick=True, only=(), fixtures=""):
    """Acceptance verdict as a dict."""
    return json.loads(_core.verify_json(seed, quick, list(only), fixtures))
