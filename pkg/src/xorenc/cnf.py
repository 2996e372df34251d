"""CNF data model: literals, clauses, CNFs and encodings with auxiliary variables.

Literals are DIMACS-style signed ints (``3`` is ``x_3``, ``-3`` its negation).
A clause is a ``frozenset`` of literals; a CNF is a set of clauses.  In an
:class:`Encoding` variables ``1..n`` are the inputs and ``n+1..n+s`` the
non-deterministic (guess) variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import _bits
from ._bits import MAX_VARS
from .boolfn import ArityError, AssignmentLike, BoolFn, as_index

Clause = frozenset


class ClauseError(ValueError):
    """A clause violates the set-of-literals convention."""


def lit(var: int, negated: bool = False) -> int:
    if var < 1:
        raise ClauseError(f"variable index must be >= 1, got {var}")
    return -var if negated else var


def make_clause(lits: Iterable[int] = ()) -> frozenset[int]:
    """Build a clause, rejecting zero literals and complementary pairs."""
    c = frozenset(lits)
    for x in c:
        if not isinstance(x, int) or x == 0:
            raise ClauseError(f"invalid literal {x!r}")
        if -x in c:
            raise ClauseError(f"clause contains complementary pair {abs(x)}/-{abs(x)}")
    return c


def normalize_clause(lits: Iterable[int]) -> Optional[frozenset[int]]:
    """Like :func:`make_clause` but returns ``None`` for a tautology."""
    lits = list(lits)
    try:
        return make_clause(lits)
    except ClauseError:
        if any(not isinstance(x, int) or x == 0 for x in lits):
            raise
        return None


def clause_key(c: Iterable[int]) -> tuple:
    """Sort key: by sorted variable index, positive before negative."""
    return tuple(sorted((abs(x), x < 0) for x in c))


def sorted_clauses(clauses: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    return sorted(clauses, key=lambda c: (len(c), clause_key(c)))


def format_clause(c: Iterable[int]) -> str:
    if not c:
        return "()"
    return "(" + " v ".join(("~" if x < 0 else "") + f"v{abs(x)}" for x in sorted(c, key=abs)) + ")"


@dataclass(frozen=True)
class Cnf:
    n_vars: int
    clauses: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not 0 <= self.n_vars:
            raise ArityError(f"negative variable count {self.n_vars}")
        cls = frozenset(make_clause(c) for c in self.clauses)
        for c in cls:
            for x in c:
                if abs(x) > self.n_vars:
                    raise ArityError(f"literal {x} exceeds n_vars={self.n_vars}")
        object.__setattr__(self, "clauses", cls)

    @property
    def size(self) -> int:
        return len(self.clauses)

    @property
    def width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(sorted_clauses(self.clauses))

    def table(self) -> int:
        """Bit table over all ``2^n_vars`` assignments."""
        if self.n_vars > MAX_VARS:
            raise ArityError(f"{self.n_vars} variables exceeds cap {MAX_VARS}")
        return _bits.cnf_table(self.n_vars, self.clauses)

    def __str__(self) -> str:
        return " & ".join(format_clause(c) for c in self) or "TRUE"


@dataclass(frozen=True)
class Encoding:
    n: int
    s: int
    cnf: Cnf

    def __post_init__(self):
        if self.n < 1 or self.s < 0:
            raise ArityError(f"bad encoding shape n={self.n} s={self.s}")
        if self.cnf.n_vars != self.n + self.s:
            raise ArityError(f"cnf has {self.cnf.n_vars} vars, expected n+s={self.n + self.s}")

    @classmethod
    def build(cls, n: int, s: int, clauses: Iterable[Iterable[int]]) -> "Encoding":
        return cls(n, s, Cnf(n + s, frozenset(make_clause(c) for c in clauses)))

    @property
    def m(self) -> int:
        return self.cnf.size

    @property
    def k(self) -> int:
        return self.cnf.width

    @property
    def clauses(self) -> frozenset:
        return self.cnf.clauses

    def is_nondet(self, var: int) -> bool:
        return self.n < var <= self.n + self.s

    def encoded_table(self) -> int:
        """Table of ``x -> OR_y F(x, y)`` over the ``n`` inputs."""
        return _bits.project_high(self.cnf.table(), self.n + self.s, self.s)

    def function(self) -> BoolFn:
        return BoolFn(self.n, self.encoded_table())


def eval_cnf(F: Cnf, a: AssignmentLike) -> int:
    bits = as_index(a, F.n_vars)
    for c in F.clauses:
        for x in c:
            if ((bits >> (abs(x) - 1)) & 1) == (x > 0):
                break
        else:
            return 0
    return 1


def computes(F: Cnf, f: BoolFn) -> bool:
    if F.n_vars != f.n:
        raise ArityError(f"cnf has {F.n_vars} vars, function has arity {f.n}")
    return F.table() == f.table


def encodes(E: Encoding, f: BoolFn) -> bool:
    if E.n != f.n:
        raise ArityError(f"encoding has n={E.n}, function has arity {f.n}")
    return E.encoded_table() == f.table


def restrict(F: Cnf, var: int, val: int) -> Cnf:
    """Fix ``var := val``; numbering is kept and ``var`` becomes vacuous."""
    if not 1 <= var <= F.n_vars:
        raise ArityError(f"variable {var} out of range 1..{F.n_vars}")
    true_lit = var if val else -var
    out = set()
    for c in F.clauses:
        if true_lit in c:
            continue
        out.add(c - {-true_lit})
    return Cnf(F.n_vars, frozenset(out))


def restrict_encoding(E: Encoding, var: int, val: int) -> Encoding:
    return Encoding(E.n, E.s, restrict(E.cnf, var, val))


def flip_variable_signs(E: Encoding, i: int) -> Encoding:
    """Negate every occurrence of input ``i``; encodes ``f`` with input ``i`` complemented."""
    if not 1 <= i <= E.n:
        raise ArityError(f"deterministic variable {i} out of range 1..{E.n}")
    return Encoding(E.n, E.s, _flip(E.cnf, i))


def _flip(F: Cnf, var: int) -> Cnf:
    return Cnf(F.n_vars, frozenset(frozenset(-x if abs(x) == var else x for x in c) for c in F.clauses))


def resolve_out(E: Encoding, j: int) -> Encoding:
    """Eliminate non-deterministic variable ``j`` (global index) by resolution.

    Tautological resolvents are dropped.  The variable stays in the numbering
    as a vacuous variable.
    """
    if not E.is_nondet(j):
        raise ArityError(f"variable {j} is not non-deterministic (range {E.n + 1}..{E.n + E.s})")
    pos = [c for c in E.clauses if j in c]
    neg = [c for c in E.clauses if -j in c]
    rest = {c for c in E.clauses if j not in c and -j not in c}
    for c1 in pos:
        for c0 in neg:
            r = normalize_clause((c0 | c1) - {j, -j})
            if r is not None:
                rest.add(r)
    return Encoding(E.n, E.s, Cnf(E.cnf.n_vars, frozenset(rest)))


def literal_profile(E: Encoding) -> dict[int, tuple[int, int]]:
    """Map every variable to ``(positive count, negative count)``."""
    prof = {v: [0, 0] for v in range(1, E.n + E.s + 1)}
    for c in E.clauses:
        for x in c:
            prof[abs(x)][x < 0] += 1
    return {v: (p, q) for v, (p, q) in prof.items()}


def reduce_pure_nondet(E: Encoding) -> Encoding:
    """Assign pure non-deterministic literals true until none is left."""
    while True:
        prof = literal_profile(E)
        for v in range(E.n + 1, E.n + E.s + 1):
            p, q = prof[v]
            if (p == 0) != (q == 0):
                E = restrict_encoding(E, v, 1 if p else 0)
                break
        else:
            return E
