"""Groupcast rate-region toolkit.

Thin dict-in/dict-out wrapper over the native module, which speaks JSON
text so the schemas stay defined in one place.
"""

import json

from ._core import ResourceLimitError, __version__  # noqa: F401
from . import _core


def _text(value):
    return value if isinstance(value, str) else json.dumps(value)


def build_system(request, cap=0):
    return json.loads(_core.build_system(_text(request), cap))


def eliminate_vars(system, targets, assign=None, exact_prune=False, cap=0):
    return json.loads(
        _core.eliminate_vars(
            _text(system),
            list(targets),
            _text(assign) if assign is not None else "",
            exact_prune,
            cap,
        )
    )


def compare_regions(a, b, assign, tol=1e-9):
    return json.loads(_core.compare_regions(_text(a), _text(b), _text(assign), tol))


def gamma_table(dist, order="inclusion"):
    return json.loads(_core.gamma_table(_text(dist), _text(order)))


def check_admissible(input, order="inclusion", tol=1e-9):
    return json.loads(_core.check_admissible(_text(input), _text(order), tol))


def run_covering(experiment):
    return json.loads(_core.run_covering(_text(experiment)))


def assemble_distribution(input):
    return json.loads(_core.assemble_distribution(_text(input)))


def known_region(name):
    return json.loads(_core.known_region(name))


def run_demo(name):
    return json.loads(_core.run_demo(name))
