"""Seeded random instances for property suites."""

from __future__ import annotations

import math
import random

from .cnf import Cnf, Encoding
from .generators import XorCircuit


def random_clause(rng: random.Random, nvars: int, width: int) -> frozenset:
    vs = rng.sample(range(1, nvars + 1), width)
    return frozenset(v if rng.random() < 0.5 else -v for v in vs)


def random_kcnf(rng: random.Random, n: int, k: int, m: int) -> Cnf:
    return Cnf(n, frozenset(random_clause(rng, n, rng.randint(1, min(k, n))) for _ in range(m)))


def random_encoding(rng: random.Random, n: int, s: int, m: int, max_width: int | None = None) -> Encoding:
    N = n + s
    w = N if max_width is None else min(max_width, N)
    return Encoding(n, s, Cnf(N, frozenset(random_clause(rng, N, rng.randint(1, w)) for _ in range(m))))


def random_xor_circuit(rng: random.Random, n: int, gates: int) -> XorCircuit:
    out = []
    for j in range(1, gates + 1):
        pool = list(range(1, n + j))
        out.append(rng.sample(pool, rng.randint(1, min(len(pool), 4))))
    return XorCircuit(n, tuple(out))


def one_t_instance(rng: random.Random, n: int, s: int, t: int, extra: int, positive_once: bool = True) -> Encoding:
    """Encoding where guess variable ``n + 1`` occurs once with one sign and
    ``t`` times with the other."""
    N = n + s
    y = n + 1
    others = [v for v in range(1, N + 1) if v != y]

    def body():
        w = rng.randint(0, min(3, len(others)))
        vs = rng.sample(others, w)
        return [v if rng.random() < 0.5 else -v for v in vs]

    bodies = sum(math.comb(len(others), w) * 2 ** w for w in range(min(3, len(others)) + 1))
    if t > bodies or extra > bodies - 1:
        raise ValueError(f"only {bodies} distinct clause bodies available for t={t}, extra={extra}")
    once, many = (y, -y) if positive_once else (-y, y)
    clauses = {frozenset(body() + [once])}
    while len(clauses) < 1 + t:
        clauses.add(frozenset(body() + [many]))
    while len(clauses) < 1 + t + extra:
        c = frozenset(body())
        if c:
            clauses.add(c)
    return Encoding(n, s, Cnf(N, frozenset(clauses)))
