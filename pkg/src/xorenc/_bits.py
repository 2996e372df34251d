"""Truth tables packed into Python ints.

A table over ``N`` variables is an int with ``2**N`` bits; bit ``a`` is the
value at the assignment whose integer encoding is ``a`` (variable ``v`` is
bit ``v - 1`` of ``a``).
"""

from __future__ import annotations

from functools import lru_cache

MAX_VARS = 24


def full_mask(nvars: int) -> int:
    return (1 << (1 << nvars)) - 1


@lru_cache(maxsize=None)
def var_mask(nvars: int, var: int) -> int:
    """Table of the positive literal ``x_var`` over ``nvars`` variables."""
    half = 1 << (var - 1)
    pattern = ((1 << half) - 1) << half
    width = half << 1
    total = 1 << nvars
    while width < total:
        pattern |= pattern << width
        width <<= 1
    return pattern


def literal_mask(nvars: int, lit: int) -> int:
    m = var_mask(nvars, abs(lit))
    return m if lit > 0 else full_mask(nvars) ^ m


def clause_table(nvars: int, clause) -> int:
    """Points satisfying ``clause`` (a collection of signed ints)."""
    falsified = full_mask(nvars)
    for lit in clause:
        falsified &= literal_mask(nvars, -lit)
    return full_mask(nvars) ^ falsified


def cnf_table(nvars: int, clauses) -> int:
    table = full_mask(nvars)
    for c in clauses:
        table &= clause_table(nvars, c)
        if not table:
            break
    return table


def project_high(table: int, nvars: int, count: int) -> int:
    """Existentially quantify the top ``count`` variables of ``table``."""
    for _ in range(count):
        half = 1 << (nvars - 1)
        table = (table & ((1 << half) - 1)) | (table >> half)
        nvars -= 1
    return table


def flip_var(table: int, nvars: int, var: int) -> int:
    """Table of ``x -> table(x with bit var-1 flipped)``."""
    m = var_mask(nvars, var)
    shift = 1 << (var - 1)
    return ((table & m) >> shift) | ((table & ~m & full_mask(nvars)) << shift)


def iter_ones(table: int):
    """Yield the indices of set bits in increasing order."""
    while table:
        low = table & -table
        yield low.bit_length() - 1
        table ^= low


def popcount(table: int) -> int:
    return table.bit_count()
