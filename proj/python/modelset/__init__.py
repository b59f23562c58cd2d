"""Cut-and-project model sets: enumeration, autocorrelation, diffraction and torus diagnostics."""

import json

from ._core import ModelsetError, operations, version
from . import _core

__all__ = ["ModelsetError", "cut", "density", "needs_seed", "operations", "run", "version"]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def run(config, write_files=False):
    """Run a config (dict or JSON text) and return the report as a dict."""
    return json.loads(_core.run_json(_text(config), write_files))


def cut(scheme, window, region):
    """Points of the cut in `region` ({"lo": [...], "hi": [...]})."""
    return json.loads(_core.cut_json(_text(scheme), _text(window), _text(region)))


def density(scheme, window):
    return _core.density_json(_text(scheme), _text(window))


def needs_seed(operation, params=None):
    return _core.needs_seed(operation, _text(params or {}))
