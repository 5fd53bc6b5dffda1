"""Kernel dispatch: compiled ``_ckernels`` when built, ``_pykernels`` otherwise.

Set ``CIRCRANK_PURE=1`` to force the pure-Python kernels. Even with the
compiled module loaded, calls whose integers could overflow 64-bit
intermediates are routed to the Python kernels, which use unbounded ints.
"""

import logging
import os

from circrank import _pykernels as py
from circrank._pykernels import BudgetExceeded, Infeasible, NegativeCycle

log = logging.getLogger(__name__)

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "Infeasible",
    "NegativeCycle",
    "min_cost_flow",
    "residual_potentials",
    "kemeny_orders",
    "min_maximal_circulations",
    "use_backend",
]

try:
    from circrank import _ckernels as c
except ImportError:  # extension not built
    c = None

_impl = py if (c is None or os.environ.get("CIRCRANK_PURE")) else c
BACKEND = _impl.BACKEND

# sums of at most ~2^16 terms of magnitude < 2^44 stay below 2^62
_SAFE = 1 << 44
_SAFE_TERMS = 1 << 16


def use_backend(name: str) -> str:
    """Switch kernels at runtime (``"python"`` or ``"cython"``); returns the previous one."""
    global _impl, BACKEND
    prev = BACKEND
    if name == "python":
        _impl = py
    elif name == "cython":
        if c is None:
            raise RuntimeError("compiled kernels are not available")
        _impl = c
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = _impl.BACKEND
    return prev


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if c is not None else [])


def _fits(*seqs, terms: int) -> bool:
    if terms > _SAFE_TERMS:
        return False
    for seq in seqs:
        for v in seq:
            if not -_SAFE < v < _SAFE:
                return False
    return True


def _pick(*seqs, terms: int):
    if _impl is py:
        return py
    if _fits(*seqs, terms=terms):
        return _impl
    log.debug("integer range too wide for compiled kernel, using Python ints")
    return py


def min_cost_flow(n, tails, heads, caps, costs, supplies):
    # path costs are bounded by (n+2) * max|cost| and pushes by sum(caps)
    k = _pick(caps, costs, supplies, [sum(caps)], [sum(abs(x) for x in costs)], terms=len(caps) + n + 2)
    return k.min_cost_flow(n, list(tails), list(heads), list(caps), list(costs), list(supplies))


def residual_potentials(n, tails, heads, caps, costs, flows):
    k = _pick(caps, costs, flows, [sum(abs(x) for x in costs)], terms=len(caps) + n)
    return k.residual_potentials(n, list(tails), list(heads), list(caps), list(costs), list(flows))


def kemeny_orders(n, weights):
    flat = [w for row in weights for w in row]
    k = _pick(flat, [sum(flat)], terms=n * n)
    return k.kemeny_orders(n, [list(r) for r in weights])


def min_maximal_circulations(n, tails, heads, caps, budget):
    k = _pick(caps, [sum(caps)], terms=len(caps))
    return k.min_maximal_circulations(n, list(tails), list(heads), list(caps), int(budget))
