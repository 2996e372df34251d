"""The small parity-4 encoding with two guess variables, in two versions.

``printed_toy_encoding`` links the last block with the clauses
``(~x4 v y2)`` and ``(x4 v ~y2)``.  Those force ``y2 = x4``, so the chain
accepts the even inputs and encodes the complement of parity.  ``corrected_toy_encoding`` is the block chain with
blocks ``[2, 1, 1]`` whose last constraint is ``y2 xor x4 = 1``.
"""

from __future__ import annotations

from .boolfn import parity_fn
from .cnf import Encoding, encodes
from .generators import block_parity_encoding

X1, X2, X3, X4, Y1, Y2 = 1, 2, 3, 4, 5, 6


def printed_toy_encoding() -> Encoding:
    return Encoding.build(4, 2, [
        (X1, X2, -Y1), (X1, -X2, Y1), (-X1, X2, Y1), (-X1, -X2, -Y1),
        (Y1, X3, -Y2), (Y1, -X3, Y2), (-Y1, X3, Y2), (-Y1, -X3, -Y2),
        (-X4, Y2), (X4, -Y2),
    ])


def corrected_toy_encoding() -> Encoding:
    return block_parity_encoding(4, 2, [2, 1, 1])


def toy_encoding_report() -> str:
    """Brute-force verdicts on both versions, as a short text report."""
    par = parity_fn(4)
    printed = printed_toy_encoding()
    fixed = corrected_toy_encoding()
    fn_printed = printed.function()
    lines = [
        "toy encoding adjudication (n=4, s=2)",
        f"printed: m={printed.m} k={printed.k} encodes PAR_4 = {encodes(printed, par)}",
        f"printed: encodes NOT PAR_4 = {encodes(printed, ~par)}",
        f"printed: accepted inputs = {' '.join(format(x, '04b')[::-1] for x in fn_printed.ones())}",
        f"corrected: m={fixed.m} k={fixed.k} encodes PAR_4 = {encodes(fixed, par)}",
        "difference: last constraint of the printed CNF is y2 = x4 "
        "(clauses (~x4 v y2), (x4 v ~y2)); corrected uses y2 xor x4 = 1 "
        "(clauses (x4 v y2), (~x4 v ~y2))",
    ]
    removed = sorted(sorted(c, key=abs) for c in printed.clauses - fixed.clauses)
    added = sorted(sorted(c, key=abs) for c in fixed.clauses - printed.clauses)
    lines.append(f"clauses only in printed: {removed}")
    lines.append(f"clauses only in corrected: {added}")
    return "\n".join(lines) + "\n"
