"""Projected model counting: exact #∃SAT by several independent methods."""

from ._pmc import (
    LimitExceeded,
    compile,
    count,
    count_nnf,
    d2c,
    enumerate,
    gen_circuit,
    gen_uf3sat,
)

METHODS = ("oracle", "dsharp", "blocking", "enum", "d2c")

__all__ = [
    "LimitExceeded",
    "METHODS",
    "compile",
    "count",
    "count_nnf",
    "d2c",
    "enumerate",
    "gen_circuit",
    "gen_uf3sat",
]
