"""Kernel backend selection.

The compiled extension handles the hot decision procedures when it is
importable and the formula fits its 63-node closure limit; everything else
runs on the pure-Python twin. ``BACKEND`` reports what was picked at import.
"""

from __future__ import annotations

from . import pykernels

try:
    from . import _kernels  # type: ignore[attr-defined]

    HAVE_COMPILED = True
except ImportError:
    _kernels = None
    HAVE_COMPILED = False

BACKEND = "compiled" if HAVE_COMPILED else "python"

_COMPILED_NODE_LIMIT = 63

SAT, UNSAT, TIMEOUT = pykernels.SAT, pykernels.UNSAT, pykernels.TIMEOUT


def tableau_sat(enc, max_states, time_budget, force_python=False):
    if HAVE_COMPILED and len(enc) <= _COMPILED_NODE_LIMIT and not force_python:
        return _kernels.tableau_sat(enc.kinds, enc.left, enc.right, max_states, time_budget)
    return pykernels.tableau_sat(enc.kinds, enc.left, enc.right, max_states, time_budget)


def tableau_witness(enc, max_states, time_budget):
    # witness extraction is cold-path; it always runs on the Python kernel
    return pykernels.tableau_witness(enc.kinds, enc.left, enc.right, enc.atom_id, max_states, time_budget)


def lasso_search(enc, max_prefix, max_period, force_python=False):
    if HAVE_COMPILED and len(enc) <= _COMPILED_NODE_LIMIT and len(enc.atoms) <= 16 and not force_python:
        return _kernels.lasso_search(
            enc.kinds, enc.left, enc.right, enc.atom_id, len(enc.atoms), max_prefix, max_period
        )
    return pykernels.lasso_search(
        enc.kinds, enc.left, enc.right, enc.atom_id, len(enc.atoms), max_prefix, max_period
    )
