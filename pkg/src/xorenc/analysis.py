"""Isolated assignments, critical clauses and weights, plus the bound formulas.

Counts are compared with powers of two exactly (``c <= 2^(p/q)`` iff
``c^q <= 2^p``).  Only bounds mixing irrational factors are compared in the
log domain, guarded by :data:`GUARD_BAND`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import _bits
from .boolfn import ArityError, Assignment, AssignmentLike, BoolFn, as_index, is_fully_sensitive
from .cnf import Cnf, Encoding, clause_key, encodes, eval_cnf
from .sigma3 import branch, branch_tables

GUARD_BAND = 2.0 ** -40

Rational = Union[int, Fraction]


class NoCriticalClause(ValueError):
    pass


class NotAccepted(ValueError):
    pass


class GuardBandError(ArithmeticError):
    """A log-domain comparison landed too close to call."""


def at_most_pow2(count: int, exponent: Rational) -> bool:
    """Exact test of ``count <= 2**exponent`` for rational ``exponent``."""
    if count <= 0:
        return True
    e = Fraction(exponent)
    p, q = e.numerator, e.denominator
    if p >= 0:
        return count ** q <= 1 << p
    return (count ** q) << -p <= 1


def log2_le(lhs: float, rhs: float) -> bool:
    """``lhs <= rhs`` for log2 values; raises inside the guard band."""
    if abs(lhs - rhs) < GUARD_BAND:
        raise GuardBandError(f"log2 comparison within guard band: {lhs!r} vs {rhs!r}")
    return lhs < rhs


def _plain(F: Cnf) -> None:
    if F.n_vars < 1 or F.n_vars > _bits.MAX_VARS:
        raise ArityError(f"plain CNF needs 1..{_bits.MAX_VARS} variables, has {F.n_vars}")


def isolated_table(F: Cnf) -> int:
    _plain(F)
    table = F.table()
    iso = table
    for v in range(1, F.n_vars + 1):
        iso &= ~_bits.flip_var(table, F.n_vars, v)
    return iso


def isolated_satisfying(F: Cnf) -> list[Assignment]:
    return [Assignment(F.n_vars, a) for a in _bits.iter_ones(isolated_table(F))]


def _is_critical(c: frozenset, x: int, i: int) -> bool:
    """True iff the only literal of ``c`` true at ``x`` is on variable ``i``."""
    hit = None
    for lit in c:
        if ((x >> (abs(lit) - 1)) & 1) == (lit > 0):
            if hit is not None:
                return False
            hit = lit
    return hit is not None and abs(hit) == i


def critical_clause(F: Cnf, x: AssignmentLike, i: int) -> frozenset:
    """Shortest clause critical for ``(x, i)``; ties go to the least :func:`clause_key`."""
    xi = as_index(x, F.n_vars)
    if not 1 <= i <= F.n_vars:
        raise ArityError(f"variable {i} out of range 1..{F.n_vars}")
    cands = [c for c in F.clauses if _is_critical(c, xi, i)]
    if not cands:
        raise NoCriticalClause(f"no clause is critical for x={xi:0{F.n_vars}b}, i={i}")
    return min(cands, key=lambda c: (len(c), clause_key(c)))


def critical_lengths(F: Cnf) -> dict[int, dict[int, int]]:
    """For each variable ``i``, map length ``l`` to the table of points whose
    shortest critical clause for ``i`` has length ``l``."""
    _plain(F)
    N = F.n_vars
    full = _bits.full_mask(N)
    covered = {i: 0 for i in range(1, N + 1)}
    out: dict[int, dict[int, int]] = {i: {} for i in range(1, N + 1)}
    falsify = {}
    for c in sorted(F.clauses, key=len):
        if not c:
            continue
        for x in c:
            if x not in falsify:
                falsify[x] = _bits.literal_mask(N, -x)
        for x in c:
            region = full ^ falsify[x]
            for z in c:
                if z != x:
                    region &= falsify[z]
            i = abs(x)
            new = region & ~covered[i]
            if new:
                out[i][len(c)] = out[i].get(len(c), 0) | new
                covered[i] |= new
    return out


def _histogram(profile: dict[int, dict[int, int]], x: int) -> Optional[dict[int, int]]:
    hist: dict[int, int] = {}
    for i, by_len in profile.items():
        for l, mask in by_len.items():
            if (mask >> x) & 1:
                hist[l] = hist.get(l, 0) + 1
                break
        else:
            return None
    return hist


def weight_of(hist: dict[int, int]) -> Fraction:
    return sum((Fraction(c, l) for l, c in hist.items()), Fraction(0))


def t_value(hist: dict[int, int], n: int) -> Fraction:
    return sum((Fraction(c, n) * Fraction(2 ** l, l) for l, c in hist.items()), Fraction(0))


def g(l: Rational) -> float:
    """``2^l / l``."""
    return 2.0 ** float(l) / float(l)


def plain_weights(F: Cnf) -> dict[int, Fraction]:
    """Weight of every isolated satisfying assignment, keyed by index."""
    iso = isolated_table(F)
    profile = critical_lengths(F)
    out = {}
    for x in _bits.iter_ones(iso):
        hist = _histogram(profile, x)
        out[x] = weight_of(hist)
    return out


@dataclass(frozen=True)
class WeightReport:
    x: Assignment
    branch: int
    lengths: dict = field(hash=False)
    weight: Fraction
    t_value: Fraction

    def __post_init__(self):
        n = self.x.n
        if sum(self.lengths.values()) != n:
            raise ValueError("length histogram does not cover all n coordinates")
        if self.weight != weight_of(self.lengths) or self.t_value != t_value(self.lengths, n):
            raise ValueError("weight or T inconsistent with histogram")

    def format(self) -> str:
        hist = " ".join(f"N{l}={c}" for l, c in sorted(self.lengths.items()))
        return f"x={self.x} branch={self.branch} {hist} w={self.weight} T={self.t_value}"


def first_branch(E: Encoding, x: AssignmentLike) -> int:
    xi = as_index(x, E.n)
    for j in range(1 << E.s):
        if eval_cnf(E.cnf, xi | (j << E.n)):
            return j
    raise NotAccepted(f"x={Assignment(E.n, xi)} is not accepted by the encoding")


def critical_clause_enc(E: Encoding, x: AssignmentLike, i: int) -> tuple[int, frozenset]:
    j = first_branch(E, x)
    return j, critical_clause(branch(E, j), as_index(x, E.n), i)


def weight_report(E: Encoding, x: AssignmentLike) -> WeightReport:
    xi = as_index(x, E.n)
    j = first_branch(E, xi)
    Fj = branch(E, j)
    hist: dict[int, int] = {}
    for i in range(1, E.n + 1):
        l = len(critical_clause(Fj, xi, i))
        hist[l] = hist.get(l, 0) + 1
    return WeightReport(Assignment(E.n, xi), j, hist, weight_of(hist), t_value(hist, E.n))


def weight_reports(E: Encoding, xs=None) -> list[WeightReport]:
    """Bulk :func:`weight_report` over ``xs`` (default: all accepted inputs)."""
    tables = branch_tables(E)
    accepted = 0
    for tb in tables:
        accepted |= tb
    if xs is None:
        xs = list(_bits.iter_ones(accepted))
    profiles: dict[int, dict] = {}
    out = []
    for x in xs:
        xi = as_index(x, E.n)
        j = next((j for j, tb in enumerate(tables) if (tb >> xi) & 1), None)
        if j is None:
            raise NotAccepted(f"x={Assignment(E.n, xi)} is not accepted by the encoding")
        if j not in profiles:
            profiles[j] = critical_lengths(branch(E, j))
        hist = _histogram(profiles[j], xi)
        if hist is None:
            raise NoCriticalClause(f"branch {j} lacks a critical clause at x={Assignment(E.n, xi)}")
        out.append(WeightReport(Assignment(E.n, xi), j, hist, weight_of(hist), t_value(hist, E.n)))
    return out


def partition_heavy_light(E: Encoding, f: BoolFn, eps: Rational):
    """Split ``f^-1(1)`` at weight threshold ``s + 1 + eps``; returns ``(H, L)``."""
    if not encodes(E, f):
        raise ValueError("encoding does not encode f")
    if not is_fully_sensitive(f):
        raise ValueError("f is not fully sensitive")
    threshold = E.s + 1 + Fraction(eps)
    H, L = [], []
    for rep in weight_reports(E, f.ones()):
        (H if rep.weight >= threshold else L).append(rep.x)
    return H, L


def heavy_light_check(E: Encoding, f: BoolFn, eps: Rational) -> dict:
    """The size claims on the heavy and light parts, checked exactly."""
    H, L = partition_heavy_light(E, f, eps)
    n, s = E.n, E.s
    eps = Fraction(eps)
    heavy_exp = s + (n - s - 1 - eps)
    total = f.count_ones()
    # |L| >= (1 - 2^-eps) 2^(n-1)  <=>  2^(n-1) - |L| <= 2^(n-1-eps)
    return {
        "H": len(H),
        "L": len(L),
        "heavy_bound": 2.0 ** float(heavy_exp),
        "light_bound": (1 - 2.0 ** -float(eps)) * 2.0 ** (n - 1),
        "heavy_pass": at_most_pow2(len(H), heavy_exp),
        "light_pass": at_most_pow2((1 << (n - 1)) - len(L), n - 1 - eps) and len(H) + len(L) == total,
    }


def check_isolated_bound(F: Cnf, k: int):
    """``(count, 2^(n - n/k), count <= bound)`` for a ``k``-CNF."""
    if k < 1:
        raise ValueError(f"width bound must be >= 1, got {k}")
    if F.width > k:
        raise ValueError(f"cnf has width {F.width} > k={k}")
    n = F.n_vars
    count = _bits.popcount(isolated_table(F))
    exponent = n - Fraction(n, k)
    return count, 2.0 ** float(exponent), at_most_pow2(count, exponent)


def check_weight_bound(F: Cnf, mu: Rational, weights: Optional[dict] = None):
    """``(count, 2^(n - mu), pass)``: isolated assignments of weight >= mu."""
    mu = Fraction(mu)
    if weights is None:
        weights = plain_weights(F)
    count = sum(1 for w in weights.values() if w >= mu)
    exponent = F.n_vars - mu
    return count, 2.0 ** float(exponent), at_most_pow2(count, exponent)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    s: int
    epsilon: Fraction
    lower_m_limited: Optional[float]
    lower_k: Fraction
    lower_m_unlimited: int
    upper_m_limited: float
    upper_m_construction: int
    upper_k: Fraction
    upper_k_construction: int
    upper_m_unlimited: int
    applies: dict = field(hash=False)

    def format(self) -> str:
        lines = [
            f"n = {self.n}",
            f"s = {self.s}",
            f"epsilon = {self.epsilon}",
            "lower_m_limited = " + ("n/a" if self.lower_m_limited is None else repr(self.lower_m_limited)),
            f"lower_k = {self.lower_k}",
            f"lower_m_unlimited = {self.lower_m_unlimited}",
            f"upper_m_limited = {self.upper_m_limited!r}",
            f"upper_m_construction = {self.upper_m_construction}",
            f"upper_k = {self.upper_k}",
            f"upper_k_construction = {self.upper_k_construction}",
            f"upper_m_unlimited = {self.upper_m_unlimited}",
        ]
        lines += [f"applies.{k} = {str(v).lower()}" for k, v in sorted(self.applies.items())]
        return "\n".join(lines) + "\n"


def side_condition(n: int, s: int, eps: Rational) -> bool:
    """``s <= n ln 2 - 1 - eps``."""
    return s <= n * math.log(2) - 1 - float(eps)


def lower_m_limited_log2(n: int, s: int, eps: Rational) -> float:
    """log2 of ``(1/2 - 2^-(eps+1)) (s+1+eps) 2^(n/(s+1+eps))``."""
    eps = float(eps)
    denom = s + 1 + eps
    return math.log2(0.5 - 2.0 ** -(eps + 1)) + math.log2(denom) + n / denom


def lower_m_limited(n: int, s: int, eps: Rational) -> float:
    return 2.0 ** lower_m_limited_log2(n, s, eps)


def _eps(n: int, eps) -> Fraction:
    eps = Fraction(1, n) if eps is None else Fraction(eps)
    if eps <= 0:
        raise ValueError(f"epsilon must be positive, got {eps}")
    return eps


def bounds_report(n: int, s: int, eps: Optional[Rational] = None) -> BoundsReport:
    if n < 1 or s < 0:
        raise ValueError(f"need n >= 1 and s >= 0, got n={n} s={s}")
    eps = _eps(n, eps)
    lim = side_condition(n, s, eps)
    block = -(-n // (s + 1))
    return BoundsReport(
        n=n,
        s=s,
        epsilon=eps,
        lower_m_limited=lower_m_limited(n, s, eps) if lim else None,
        lower_k=Fraction(n, s + 1),
        lower_m_unlimited=max(0, 3 * n - 9),
        upper_m_limited=4 * (s + 1) * 2.0 ** (n / (s + 1)),
        upper_m_construction=(s + 1) * 2 ** (block + 1),
        upper_k=3 + Fraction(n, s + 1),
        upper_k_construction=2 + block,
        upper_m_unlimited=4 * n,
        applies={
            "lower_m_limited": lim,
            "upper_limited": s + 1 <= n,
            "upper_m_unlimited": s >= n - 1,
        },
    )


def check_sm_bound(E: Encoding, eps: Optional[Rational] = None) -> Optional[bool]:
    """``m >= lower_m_limited``; ``None`` when the side condition fails."""
    eps = _eps(E.n, eps)
    if not side_condition(E.n, E.s, eps):
        return None
    if E.m == 0:
        return False
    return log2_le(lower_m_limited_log2(E.n, E.s, eps), math.log2(E.m))


def check_width_bound(E: Encoding) -> bool:
    """``k >= n/(s+1)``, i.e. ``2^s >= 2^(n/k - 1)``, exactly."""
    return E.k * (E.s + 1) >= E.n


def implied_sigma3_bound(n: int, t: int, circuit: bool = False, eps: Optional[Rational] = None) -> float:
    """Size lower bound for a depth-3 formula (or circuit) with ``t`` ANDs."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    eps = _eps(n, eps)
    s = (t - 1).bit_length()
    lb = lower_m_limited(n, s, eps) if side_condition(n, s, eps) else 0.0
    if circuit:
        return t + lb / (2 * t)
    return t + lb


def min_implied_sigma3_bound(n: int, circuit: bool = False, eps: Optional[Rational] = None):
    """``(t, value)`` minimizing :func:`implied_sigma3_bound` over all ``t``."""
    best = None
    for s in range(0, n + 1):
        lo = 1 if s == 0 else (1 << (s - 1)) + 1
        hi = 1 << s
        cands = {lo, hi}
        if circuit:
            e = _eps(n, eps)
            lb = lower_m_limited(n, s, e) if side_condition(n, s, e) else 0.0
            star = math.sqrt(lb / 2)
            for t in (math.floor(star), math.ceil(star)):
                if lo <= t <= hi:
                    cands.add(t)
        for t in sorted(cands):
            v = implied_sigma3_bound(n, t, circuit, eps)
            if best is None or v < best[1]:
                best = (t, v)
    return best
