"""DIMACS CNF reading and writing for encodings.

The writer emits a ``c enc n=<n> s=<s>`` comment so that the split between
input and guess variables survives a round trip.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .cnf import ClauseError, Cnf, Encoding, make_clause, sorted_clauses


class DimacsError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class HeaderError(DimacsError):
    pass


class CountMismatchError(DimacsError):
    pass


class LiteralRangeError(DimacsError):
    pass


class TerminatorError(DimacsError):
    pass


class ComplementaryPairError(DimacsError):
    pass


@dataclass
class DimacsDocument:
    n_vars: int
    n_clauses: int
    clauses: list = field(default_factory=list)
    annotations: dict = field(default_factory=dict)
    clause_lines: list = field(default_factory=list, repr=False)

    @classmethod
    def from_encoding(cls, E: Encoding) -> "DimacsDocument":
        clauses = [tuple(_lit_order(c)) for c in sorted_clauses(E.clauses)]
        return cls(E.n + E.s, len(clauses), clauses, {"n": E.n, "s": E.s})

    @classmethod
    def from_clauses(cls, n_vars: int, clauses) -> "DimacsDocument":
        clauses = [tuple(c) for c in clauses]
        return cls(n_vars, len(clauses), clauses)

    def dumps(self) -> str:
        out = []
        if "n" in self.annotations:
            out.append(f"c enc n={self.annotations['n']} s={self.annotations.get('s', 0)}")
        out.append(f"p cnf {self.n_vars} {self.n_clauses}")
        for c in self.clauses:
            out.append(" ".join(str(x) for x in c) + (" 0" if c else "0"))
        return "\n".join(out) + "\n"

    def to_encoding(self) -> Encoding:
        n = self.annotations.get("n", self.n_vars)
        s = self.annotations.get("s", self.n_vars - n)
        if n + s != self.n_vars:
            raise HeaderError(f"annotation n={n} s={s} disagrees with {self.n_vars} variables")
        if n < 1:
            raise HeaderError("encoding needs at least one input variable")
        clauses = []
        for i, c in enumerate(self.clauses):
            try:
                clauses.append(make_clause(c))
            except ClauseError as exc:
                line = self.clause_lines[i] if i < len(self.clause_lines) else None
                raise ComplementaryPairError(str(exc), line) from None
        return Encoding(n, s, Cnf(self.n_vars, frozenset(clauses)))


def _lit_order(c):
    return sorted(c, key=lambda x: (abs(x), x < 0))


def write_dimacs(E: Encoding) -> str:
    return DimacsDocument.from_encoding(E).dumps()


def read_document(text: str) -> DimacsDocument:
    header = None
    annotations: dict = {}
    clauses: list = []
    clause_lines: list = []
    current: list = []
    start_line = None
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line == "%":
            continue
        if line.startswith("c"):
            parts = line.split()
            if len(parts) >= 2 and parts[0] == "c" and parts[1] == "enc":
                try:
                    annotations.update({k: int(v) for k, v in (t.split("=", 1) for t in parts[2:])})
                except ValueError:
                    raise HeaderError(f"bad enc annotation {line!r}", lineno) from None
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise HeaderError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise HeaderError(f"malformed problem line {line!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise HeaderError(f"malformed problem line {line!r}", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise HeaderError("negative counts in problem line", lineno)
            continue
        if header is None:
            raise HeaderError("clause data before problem line", lineno)
        for tok in line.split():
            try:
                x = int(tok)
            except ValueError:
                raise DimacsError(f"non-integer token {tok!r}", lineno) from None
            if x == 0:
                clauses.append(tuple(current))
                clause_lines.append(start_line if start_line is not None else lineno)
                current, start_line = [], None
                continue
            if abs(x) > header[0]:
                raise LiteralRangeError(f"literal {x} exceeds {header[0]} variables", lineno)
            if start_line is None:
                start_line = lineno
            current.append(x)
    if header is None:
        raise HeaderError("missing problem line", lineno or None)
    if current:
        raise TerminatorError("last clause is not terminated by 0", lineno)
    if len(clauses) != header[1]:
        raise CountMismatchError(f"header declares {header[1]} clauses, body has {len(clauses)}", lineno)
    return DimacsDocument(header[0], header[1], clauses, annotations, clause_lines)


def parse_dimacs(text: str) -> Encoding:
    return read_document(text).to_encoding()


def as_document(obj: Union[DimacsDocument, Encoding, Cnf]) -> DimacsDocument:
    if isinstance(obj, DimacsDocument):
        return obj
    if isinstance(obj, Encoding):
        return DimacsDocument.from_encoding(obj)
    return DimacsDocument.from_clauses(obj.n_vars, [_lit_order(c) for c in sorted_clauses(obj.clauses)])
