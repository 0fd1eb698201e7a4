"""Limit distributions of free path lengths and their empirical counterparts."""

from ._lorentz import (
    G,
    G_limit,
    H2,
    H3,
    billiard_exit_time,
    constant_A,
    constant_C,
    dilog,
    empirical_billiard,
    empirical_P,
    exit_time,
    g,
    horizontal_free_path,
    mobius,
    theory_hex,
    theory_square,
    totient,
    zeta2,
)

__all__ = [
    "G",
    "G_limit",
    "H2",
    "H3",
    "billiard_exit_time",
    "constant_A",
    "constant_C",
    "dilog",
    "empirical_billiard",
    "empirical_P",
    "exit_time",
    "g",
    "horizontal_free_path",
    "mobius",
    "theory_hex",
    "theory_square",
    "totient",
    "zeta2",
]
