"""Depth-3 OR-of-CNF structures and their conversions to and from encodings.

Branch ``j`` of an expansion corresponds to the guess assignment whose
integer encoding is ``j`` (variable ``n + 1`` is bit 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import _bits
from .boolfn import ArityError, BoolFn
from .cnf import Cnf, Encoding, eval_cnf, make_clause, sorted_clauses

EXPANSION_MAX_S = 20


@dataclass(frozen=True)
class Sigma3Formula:
    """OR of CNFs with no shared clause gates."""

    n: int
    branches: tuple

    def __post_init__(self):
        branches = tuple(self.branches)
        for b in branches:
            if b.n_vars != self.n:
                raise ArityError(f"branch over {b.n_vars} vars, expected {self.n}")
        object.__setattr__(self, "branches", branches)

    @property
    def t(self) -> int:
        return len(self.branches)

    @property
    def r(self) -> int:
        return sum(b.size for b in self.branches)

    @property
    def size(self) -> int:
        """Gate count excluding the output OR."""
        return self.t + self.r

    def table(self) -> int:
        out = 0
        for b in self.branches:
            out |= b.table()
        return out

    def function(self) -> BoolFn:
        return BoolFn(self.n, self.table())

    def evaluate(self, x: int) -> int:
        return int(any(eval_cnf(b, x) for b in self.branches))


@dataclass(frozen=True)
class Sigma3Circuit:
    """OR of CNFs whose clauses are drawn from a shared pool."""

    n: int
    pool: tuple
    branches: tuple

    def __post_init__(self):
        pool = tuple(make_clause(c) for c in self.pool)
        if len(set(pool)) != len(pool):
            raise ValueError("clause pool has duplicates")
        for c in pool:
            if any(abs(x) > self.n for x in c):
                raise ArityError(f"pool clause {sorted(c)} exceeds n={self.n}")
        branches = tuple(frozenset(b) for b in self.branches)
        for b in branches:
            if any(not 0 <= i < len(pool) for i in b):
                raise IndexError(f"branch references missing pool entries: {sorted(b)}")
        object.__setattr__(self, "pool", pool)
        object.__setattr__(self, "branches", branches)

    @property
    def t(self) -> int:
        return len(self.branches)

    @property
    def r(self) -> int:
        return len(self.pool)

    @property
    def size(self) -> int:
        return self.t + self.r

    def branch_cnf(self, j: int) -> Cnf:
        return Cnf(self.n, frozenset(self.pool[i] for i in self.branches[j]))

    def to_formula(self) -> Sigma3Formula:
        return Sigma3Formula(self.n, tuple(self.branch_cnf(j) for j in range(self.t)))

    def table(self) -> int:
        return self.to_formula().table()

    def function(self) -> BoolFn:
        return BoolFn(self.n, self.table())


def _check_s(E: Encoding) -> None:
    if E.s > EXPANSION_MAX_S:
        raise ArityError(f"expansion materializes 2^s branches; s={E.s} exceeds {EXPANSION_MAX_S}")


def _reduce(E: Encoding, c: frozenset, y: int):
    """``None`` if guess assignment ``y`` satisfies ``c``, else ``c`` without guess literals."""
    out = []
    for x in c:
        v = abs(x)
        if v > E.n:
            if ((y >> (v - E.n - 1)) & 1) == (x > 0):
                return None
        else:
            out.append(x)
    return frozenset(out)


def branch(E: Encoding, j: int) -> Cnf:
    """The CNF ``F_j`` obtained by fixing the guess variables to ``j``."""
    if not 0 <= j < (1 << E.s):
        raise IndexError(f"branch {j} out of range for s={E.s}")
    out = set()
    for c in E.clauses:
        r = _reduce(E, c, j)
        if r is not None:
            out.add(r)
    return Cnf(E.n, frozenset(out))


def expand_formula(E: Encoding) -> Sigma3Formula:
    _check_s(E)
    return Sigma3Formula(E.n, tuple(branch(E, j) for j in range(1 << E.s)))


def reduced_clause(E: Encoding, c: frozenset) -> frozenset:
    return frozenset(x for x in c if abs(x) <= E.n)


def expand_circuit(E: Encoding) -> Sigma3Circuit:
    _check_s(E)
    pool: list = []
    index: dict = {}
    ordered = sorted_clauses(E.clauses)
    for c in ordered:
        r = reduced_clause(E, c)
        if r not in index:
            index[r] = len(pool)
            pool.append(r)
    branches = []
    for j in range(1 << E.s):
        branches.append(frozenset(index[reduced_clause(E, c)] for c in ordered
                                  if _reduce(E, c, j) is not None))
    return Sigma3Circuit(E.n, tuple(pool), tuple(branches))


def guard(n: int, s: int, j: int) -> frozenset:
    """Guess literals falsified exactly by guess assignment ``j``."""
    return frozenset(-(n + 1 + b) if (j >> b) & 1 else n + 1 + b for b in range(s))


def formula_to_encoding(phi: Sigma3Formula) -> Encoding:
    """Guard branch ``i`` with the literals falsified by assignment ``i``.

    When ``t`` is not a power of two, the surplus assignments ``t..2^s-1``
    reuse the last branch, so the size exceeds ``r`` by
    ``(2^s - t) * size(last branch)``.
    """
    t = phi.t
    if t < 1:
        raise ValueError("sigma3 formula has no branches")
    s = (t - 1).bit_length()
    clauses = set()
    for j in range(1 << s):
        g = guard(phi.n, s, j)
        for c in phi.branches[min(j, t - 1)].clauses:
            clauses.add(c | g)
    return Encoding(phi.n, s, Cnf(phi.n + s, frozenset(clauses)))


def circuit_to_encoding(C: Sigma3Circuit) -> Encoding:
    if C.t < 1:
        raise ValueError("sigma3 circuit has no branches")
    return formula_to_encoding(C.to_formula())


def _clause_line(c) -> str:
    return " ".join(str(x) for x in sorted(c, key=lambda x: (abs(x), x < 0))) + (" 0" if c else "0")


def _parse_clause(line: str, lineno: int) -> frozenset:
    try:
        nums = [int(tok) for tok in line.split()]
    except ValueError:
        raise ValueError(f"line {lineno}: non-integer token in {line!r}") from None
    if not nums or nums[-1] != 0 or 0 in nums[:-1]:
        raise ValueError(f"line {lineno}: clause must end with a single 0")
    return make_clause(nums[:-1])


def _header(line: str, kind: str) -> dict:
    parts = line.split()
    if not parts or parts[0] != kind:
        raise ValueError(f"expected '{kind}' header, got {line!r}")
    return {k: int(v) for k, v in (tok.split("=", 1) for tok in parts[1:])}


def dumps_formula(phi: Sigma3Formula) -> str:
    lines = [f"sigma3 n={phi.n} t={phi.t}"]
    for j, b in enumerate(phi.branches):
        if j:
            lines.append("---")
        lines += [_clause_line(c) for c in b]
    return "\n".join(lines) + "\n"


def loads_formula(text: str) -> Sigma3Formula:
    lines = text.splitlines()
    head = _header(lines[0] if lines else "", "sigma3")
    n, t = head["n"], head["t"]
    branches: list[list] = [[]]
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("c "):
            continue
        if line == "---":
            branches.append([])
        else:
            branches[-1].append(_parse_clause(line, lineno))
    if len(branches) != t:
        raise ValueError(f"header says t={t}, found {len(branches)} branches")
    return Sigma3Formula(n, tuple(Cnf(n, frozenset(b)) for b in branches))


def dumps_circuit(C: Sigma3Circuit) -> str:
    lines = [f"sigma3-circuit n={C.n} t={C.t} r={C.r}"]
    lines += [_clause_line(c) for c in C.pool]
    lines += ["b " + " ".join(str(i) for i in sorted(b)) if b else "b" for b in C.branches]
    return "\n".join(lines) + "\n"


def loads_circuit(text: str) -> Sigma3Circuit:
    lines = text.splitlines()
    head = _header(lines[0] if lines else "", "sigma3-circuit")
    n, t, r = head["n"], head["t"], head["r"]
    pool, branches = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("c "):
            continue
        if line == "b" or line.startswith("b "):
            branches.append([int(tok) for tok in line.split()[1:]])
        elif branches:
            raise ValueError(f"line {lineno}: pool clause after branch lines")
        else:
            pool.append(_parse_clause(line, lineno))
    if len(pool) != r or len(branches) != t:
        raise ValueError(f"header says r={r} t={t}, found r={len(pool)} t={len(branches)}")
    return Sigma3Circuit(n, tuple(pool), tuple(branches))


def loads(text: str):
    """Parse either sigma3 text variant."""
    first = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if first == "sigma3-circuit":
        return loads_circuit(text)
    return loads_formula(text)


def dumps(obj) -> str:
    if isinstance(obj, Sigma3Circuit):
        return dumps_circuit(obj)
    return dumps_formula(obj)


def branch_tables(E: Encoding) -> list[int]:
    """Bit tables of every branch ``F_j`` over the ``n`` inputs."""
    joint = E.cnf.table()
    block = _bits.full_mask(E.n)
    return [(joint >> (j << E.n)) & block for j in range(1 << E.s)]
