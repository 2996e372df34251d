"""Constructors for parity encodings: canonical CNFs, block chains, Tseitin."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .boolfn import ArityError, BoolFn, parity_fn
from .cnf import Cnf, Encoding

CANONICAL_MAX_VARS = 20


def canonical_cnf(f: BoolFn) -> Cnf:
    """One full-width clause per falsifying input of ``f``."""
    if f.n > CANONICAL_MAX_VARS:
        raise ArityError(f"canonical CNF materialization capped at {CANONICAL_MAX_VARS} variables")
    clauses = []
    for x in f.zeros():
        clauses.append(frozenset(-v if (x >> (v - 1)) & 1 else v for v in range(1, f.n + 1)))
    return Cnf(f.n, frozenset(clauses))


def parity_constraint(variables: Sequence[int], constant: int = 1) -> list[frozenset[int]]:
    """Clauses of ``XOR(variables) = constant`` over global variable ids."""
    variables = list(variables)
    if len(set(variables)) != len(variables):
        raise ValueError(f"repeated variable in parity constraint {variables}")
    k = len(variables)
    if k == 0:
        return [frozenset()] if constant else []
    local = parity_fn(k) if constant else ~parity_fn(k)
    return [frozenset(variables[abs(x) - 1] * (1 if x > 0 else -1) for x in c)
            for c in canonical_cnf(local).clauses]


def default_partition(n: int, s: int) -> list[int]:
    """``n mod (s+1)`` blocks of ``ceil(n/(s+1))``, the rest ``floor``."""
    if s < 0:
        raise ValueError(f"negative s={s}")
    q, r = divmod(n, s + 1)
    return [q + 1] * r + [q] * (s + 1 - r)


def block_parity_encoding(n: int, s: int, partition: Optional[Sequence[int]] = None,
                          constant: int = 1) -> Encoding:
    """Chain of ``s + 1`` block parity constraints linked by ``y_1..y_s``.

    Constraint ``i`` says ``y_i = y_{i-1} xor XOR(block i)`` and the last one
    says ``constant = y_s xor XOR(block s+1)``.  ``constant=0`` encodes the
    complement of parity.
    """
    if n < 1:
        raise ArityError(f"n must be positive, got {n}")
    if partition is None:
        partition = default_partition(n, s)
    partition = list(partition)
    if len(partition) != s + 1:
        raise ValueError(f"partition needs s+1={s + 1} blocks, got {len(partition)}")
    if any(b < 1 for b in partition):
        raise ValueError(f"blocks must be nonempty: {partition}")
    if sum(partition) != n:
        raise ValueError(f"blocks sum to {sum(partition)}, expected n={n}")
    clauses = []
    start = 1
    for i, size in enumerate(partition, start=1):
        vs = list(range(start, start + size))
        start += size
        if i > 1:
            vs.append(n + i - 1)
        if i <= s:
            vs.append(n + i)
            clauses += parity_constraint(vs, 0)
        else:
            clauses += parity_constraint(vs, constant)
    return Encoding.build(n, s, clauses)


@dataclass(frozen=True)
class XorCircuit:
    """XOR gates in topological order; the last gate is the output.

    Fan-ins use global ids: ``1..n`` are inputs, ``n + j`` is gate ``j``.
    """

    n: int
    gates: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ArityError(f"circuit needs at least one input, got n={self.n}")
        if not self.gates:
            raise ValueError("circuit has no gates")
        gates = tuple(frozenset(g) for g in self.gates)
        for j, fanins in enumerate(gates, start=1):
            if not fanins:
                raise ValueError(f"gate g{j} has no fan-ins")
            for v in fanins:
                if not 1 <= v < self.n + j:
                    raise ValueError(f"gate g{j} fan-in {v} is not an input or earlier gate")
        object.__setattr__(self, "gates", gates)

    @property
    def output(self) -> int:
        return len(self.gates)

    def evaluate(self, x: int) -> int:
        vals = [(x >> i) & 1 for i in range(self.n)]
        for fanins in self.gates:
            acc = 0
            for v in fanins:
                acc ^= vals[v - 1]
            vals.append(acc)
        return vals[-1]

    def function(self) -> BoolFn:
        table = 0
        for x in range(1 << self.n):
            if self.evaluate(x):
                table |= 1 << x
        return BoolFn(self.n, table)


def tseitin(c: XorCircuit, propagate_output: bool = True) -> Encoding:
    """Tseitin encoding with one guess variable per gate.

    With ``propagate_output`` the output gate's variable is replaced by the
    constant 1 and dropped; otherwise a unit clause on it is appended.
    """
    g = len(c.gates)
    if c.n + g > 24:
        raise ArityError(f"n + gates = {c.n + g} exceeds 24")
    clauses = []
    for j, fanins in enumerate(c.gates, start=1):
        if len(fanins) + 1 > CANONICAL_MAX_VARS:
            raise ArityError(f"gate g{j} constraint arity exceeds {CANONICAL_MAX_VARS}")
        if propagate_output and j == g:
            clauses += parity_constraint(sorted(fanins), 1)
        else:
            clauses += parity_constraint(sorted(fanins) + [c.n + j], 0)
    if propagate_output:
        return Encoding.build(c.n, g - 1, clauses)
    clauses.append(frozenset([c.n + g]))
    return Encoding.build(c.n, g, clauses)


def chain_circuit(n: int, fanin_sizes: Sequence[int]) -> XorCircuit:
    """Chain of XOR gates; gate ``j > 1`` takes the previous gate plus
    ``fanin_sizes[j] - 1`` fresh inputs, gate 1 takes ``fanin_sizes[0]`` inputs."""
    gates = []
    nxt = 1
    for j, size in enumerate(fanin_sizes, start=1):
        fresh = size if j == 1 else size - 1
        fanins = list(range(nxt, nxt + fresh))
        nxt += fresh
        if j > 1:
            fanins.append(n + j - 1)
        gates.append(fanins)
    if nxt != n + 1:
        raise ValueError(f"fan-in sizes {list(fanin_sizes)} use {nxt - 1} inputs, expected {n}")
    return XorCircuit(n, tuple(gates))


_TOKEN = re.compile(r"([xg])(\d+)$")


def dumps_circuit(c: XorCircuit) -> str:
    lines = [f"xor-circuit n={c.n} g={len(c.gates)}"]
    for fanins in c.gates:
        lines.append(" ".join(f"x{v}" if v <= c.n else f"g{v - c.n}" for v in sorted(fanins)))
    lines.append(f"output g{len(c.gates)}")
    return "\n".join(lines) + "\n"


def loads_circuit(text: str) -> XorCircuit:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("xor-circuit"):
        raise ValueError("missing 'xor-circuit n=<n> g=<gates>' header")
    fields = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    try:
        n, g = int(fields["n"]), int(fields["g"])
    except (KeyError, ValueError):
        raise ValueError(f"bad header: {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != g + 1:
        raise ValueError(f"expected {g} gate lines and an output line, got {len(body)} lines")
    gates = []
    for lineno, line in enumerate(body[:-1], start=2):
        fanins = []
        for tok in line.split():
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"line {lineno}: bad fan-in token {tok!r}")
            idx = int(m.group(2))
            if idx < 1 or (m.group(1) == "x" and idx > n):
                raise ValueError(f"line {lineno}: fan-in {tok!r} out of range")
            fanins.append(idx if m.group(1) == "x" else n + idx)
        gates.append(fanins)
    out = body[-1].split()
    if len(out) != 2 or out[0] != "output" or out[1] != f"g{g}":
        raise ValueError(f"output line must be 'output g{g}', got {body[-1]!r}")
    return XorCircuit(n, tuple(gates))
