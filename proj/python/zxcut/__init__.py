"""Cutting stabiliser decompositions of ZX-diagrams (C++ core)."""

import json

from ._zxcut import (
    BudgetExceeded,
    CircuitError,
    DecompError,
    Diagram,
    FormatError,
    basic_simp,
    build,
    cat_state,
    circuit_text,
    fidelity,
    full_reduce,
    logical_T_state,
    parse_circuit,
    state,
    strategies,
    sum_state,
    t_states,
)
from ._zxcut import decompose as _decompose


def decompose(strategy, circuit, **kwargs):
    """Run a strategy; returns (report dict, pre-expansion terms, Clifford terms)."""
    out = _decompose(strategy, circuit, **kwargs)
    return json.loads(out["report"]), out["terms"], out["clifford"]


__all__ = [
    "BudgetExceeded",
    "CircuitError",
    "DecompError",
    "Diagram",
    "FormatError",
    "basic_simp",
    "build",
    "cat_state",
    "circuit_text",
    "decompose",
    "fidelity",
    "full_reduce",
    "logical_T_state",
    "parse_circuit",
    "state",
    "strategies",
    "sum_state",
    "t_states",
]
