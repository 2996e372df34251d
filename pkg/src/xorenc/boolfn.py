"""Boolean functions as truth tables, and the parity oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from . import _bits
from ._bits import MAX_VARS


class ArityError(ValueError):
    """Raised when an arity is out of range or two arities disagree."""


@dataclass(frozen=True)
class Assignment:
    """A point of ``{0,1}^n``; variable ``i`` is bit ``i - 1`` of ``bits``."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise ArityError(f"negative arity {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ArityError(f"assignment {self.bits} out of range for n={self.n}")

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "Assignment":
        """Build from ``(x_1, ..., x_n)``."""
        values = list(values)
        bits = 0
        for i, v in enumerate(values):
            if v not in (0, 1, True, False):
                raise ValueError(f"bit value {v!r} is not 0/1")
            bits |= int(v) << i
        return cls(len(values), bits)

    @classmethod
    def from_string(cls, text: str) -> "Assignment":
        """Parse ``"1000"`` as ``x_1=1, x_2=0, x_3=0, x_4=0``."""
        return cls.from_values(int(ch) for ch in text.strip())

    def values(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def value(self, var: int) -> int:
        return (self.bits >> (var - 1)) & 1

    def flip(self, var: int) -> "Assignment":
        if not 1 <= var <= self.n:
            raise ArityError(f"variable {var} out of range 1..{self.n}")
        return Assignment(self.n, self.bits ^ (1 << (var - 1)))

    def concat(self, other: "Assignment") -> "Assignment":
        """``self || other``: ``other``'s variables follow ours."""
        return Assignment(self.n + other.n, self.bits | (other.bits << self.n))

    def __index__(self) -> int:
        return self.bits

    def __str__(self) -> str:
        return "".join(str(v) for v in self.values())


AssignmentLike = Union[Assignment, int]


def as_index(x: AssignmentLike, n: int) -> int:
    """Check ``x`` against arity ``n`` and return its integer index."""
    if isinstance(x, Assignment):
        if x.n != n:
            raise ArityError(f"assignment has n={x.n}, expected {n}")
        return x.bits
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"expected Assignment or int, got {type(x).__name__}")
    if not 0 <= x < (1 << n):
        raise ArityError(f"assignment index {x} out of range for n={n}")
    return x


@dataclass(frozen=True)
class BoolFn:
    """``f: {0,1}^n -> {0,1}`` stored as a ``2^n``-bit table."""

    n: int
    table: int

    def __post_init__(self):
        check_arity(self.n)
        if not 0 <= self.table <= _bits.full_mask(self.n):
            raise ValueError("table has bits beyond 2^n entries")

    @classmethod
    def from_callable(cls, n: int, func) -> "BoolFn":
        check_arity(n)
        table = 0
        for a in range(1 << n):
            if func(Assignment(n, a)):
                table |= 1 << a
        return cls(n, table)

    @classmethod
    def constant(cls, n: int, value: int) -> "BoolFn":
        check_arity(n)
        return cls(n, _bits.full_mask(n) if value else 0)

    @classmethod
    def variable(cls, n: int, var: int) -> "BoolFn":
        check_arity(n)
        if not 1 <= var <= n:
            raise ArityError(f"variable {var} out of range 1..{n}")
        return cls(n, _bits.var_mask(n, var))

    def __invert__(self) -> "BoolFn":
        return BoolFn(self.n, self.table ^ _bits.full_mask(self.n))

    def __call__(self, x: AssignmentLike) -> int:
        return eval_fn(self, x)

    def flip_input(self, var: int) -> "BoolFn":
        """``x -> f(x with input var complemented)``."""
        if not 1 <= var <= self.n:
            raise ArityError(f"variable {var} out of range 1..{self.n}")
        return BoolFn(self.n, _bits.flip_var(self.table, self.n, var))

    def ones(self) -> list[int]:
        return list(_bits.iter_ones(self.table))

    def zeros(self) -> list[int]:
        return list(_bits.iter_ones(self.table ^ _bits.full_mask(self.n)))

    def count_ones(self) -> int:
        return _bits.popcount(self.table)


def check_arity(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_VARS:
        raise ArityError(f"arity must be in 1..{MAX_VARS}, got {n!r}")


def parity_fn(n: int) -> BoolFn:
    """``PAR_n``: 1 on odd-weight inputs."""
    check_arity(n)
    table = 0b10
    for k in range(1, n):
        size = 1 << k
        table |= (table ^ ((1 << size) - 1)) << size
    return BoolFn(n, table)


def eval_fn(f: BoolFn, x: AssignmentLike) -> int:
    return (f.table >> as_index(x, f.n)) & 1


def is_fully_sensitive(f: BoolFn) -> bool:
    """True iff flipping any single input bit always flips ``f``."""
    for var in range(1, f.n + 1):
        if _bits.flip_var(f.table, f.n, var) != f.table ^ _bits.full_mask(f.n):
            return False
    return True


def dumps(f: BoolFn) -> str:
    body = "".join("1" if (f.table >> a) & 1 else "0" for a in range(1 << f.n))
    return f"fn n={f.n}\n{body}\n"


def loads(text: str) -> BoolFn:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("fn "):
        raise ValueError("missing 'fn n=<n>' header")
    fields = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    if "n" not in fields:
        raise ValueError("header lacks n=<n>")
    n = int(fields["n"])
    check_arity(n)
    body = "".join(lines[1:])
    if len(body) != 1 << n:
        raise ValueError(f"expected {1 << n} table entries, found {len(body)}")
    table = 0
    for a, ch in enumerate(body):
        if ch == "1":
            table |= 1 << a
        elif ch != "0":
            raise ValueError(f"bad table character {ch!r} at entry {a}")
    return BoolFn(n, table)
