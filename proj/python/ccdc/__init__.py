"""Coded shuffle simulator for MapReduce jobs with linear reduction.

Thin bindings over the C++ core: run any of the four shuffle schemes,
compare measured communication loads against their closed forms, and check
reduced outputs against a centralized oracle.
"""

from ._core import (
    ConfigError,
    ParameterError,
    PayloadError,
    SystemConfig,
    evaluate,
    formula_load,
    group_add,
    lex_subsets,
    oracle_outputs,
    run,
    split_packet,
    xor_bits,
)

SCHEMES = ("uncoded", "compression", "cdc", "ccdc")

__all__ = [
    "ConfigError",
    "ParameterError",
    "PayloadError",
    "SCHEMES",
    "SystemConfig",
    "evaluate",
    "formula_load",
    "group_add",
    "lex_subsets",
    "oracle_outputs",
    "run",
    "split_packet",
    "xor_bits",
]
