"""Exhaustive and counterexample-guided search for small CNF encodings.

Exhaustive mode enumerates clause sets in increasing order of candidate
index, orderly-generation style: a node is expanded only if its sorted index
tuple is lexicographically least among its images under the guess-variable
symmetry group (permutations and sign flips of ``y_1..y_s``).  Canonical
sets are closed under removing their largest element, so pruning
non-canonical prefixes loses no orbit.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

from . import _bits
from .boolfn import BoolFn
from .cnf import Cnf, Encoding, clause_key, encodes, eval_cnf
from .sigma3 import expand_formula

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_VARS = 16
EXHAUSTIVE_MAX_M = 8
GROUP_LIMIT = 5000


class SearchLimitError(ValueError):
    pass


class SearchVerificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    f: BoolFn
    s: int
    m_max: int
    k_max: int
    mode: str = "exhaustive"
    canonicalize: bool = True
    max_nodes: Optional[int] = None
    solver: Optional[str] = None
    max_iterations: int = 100
    workers: int = 1

    def __post_init__(self):
        if self.mode not in ("exhaustive", "cegar"):
            raise SearchLimitError(f"unknown mode {self.mode!r}")
        if self.s < 0 or self.m_max < 0 or self.k_max < 0:
            raise SearchLimitError("s, m_max and k_max must be nonnegative")
        if self.mode == "exhaustive":
            if self.f.n + self.s > EXHAUSTIVE_MAX_VARS:
                raise SearchLimitError(f"n + s = {self.f.n + self.s} exceeds {EXHAUSTIVE_MAX_VARS}")
            if self.m_max > EXHAUSTIVE_MAX_M:
                raise SearchLimitError(f"m_max = {self.m_max} exceeds {EXHAUSTIVE_MAX_M}")

    @property
    def n(self) -> int:
        return self.f.n


@dataclass
class SearchResult:
    config: SearchConfig
    found: Optional[Encoding]
    nodes_explored: int
    exhausted: bool

    @property
    def status(self) -> str:
        if self.found is not None:
            return "found"
        return "none" if self.exhausted else "inconclusive"

    def format(self) -> str:
        cfg = self.config
        lines = [
            f"search n={cfg.n} s={cfg.s} m_max={cfg.m_max} k_max={cfg.k_max} "
            f"mode={cfg.mode} canonicalize={str(cfg.canonicalize).lower()}",
            f"status = {self.status}",
            f"exhausted = {str(self.exhausted).lower()}",
            f"nodes_explored = {self.nodes_explored}",
        ]
        if self.found is not None:
            lines.append(f"found m={self.found.m} k={self.found.k}")
            lines += ["  " + " ".join(str(x) for x in sorted(c, key=abs)) + " 0"
                      for c in sorted(self.found.clauses, key=lambda c: (len(c), clause_key(c)))]
        elif self.exhausted:
            lines.append(f"certificate: no encoding with m <= {cfg.m_max}, k <= {cfg.k_max}, "
                         f"s = {cfg.s} (guess variables capped at s)")
        return "\n".join(lines) + "\n"


def _candidate_clauses(n: int, s: int, k_max: int):
    """All clauses over ``n + s`` variables of width <= ``k_max``."""
    N = n + s
    out = []
    for w in range(0, min(k_max, N) + 1):
        for vs in itertools.combinations(range(1, N + 1), w):
            for signs in itertools.product((1, -1), repeat=w):
                out.append(frozenset(v * sg for v, sg in zip(vs, signs)))
    out.sort(key=lambda c: (len(c), clause_key(c)))
    return out


def _group(n: int, s: int):
    """Guess-variable symmetries as literal maps (identity excluded).

    Falls back to sign flips only when the full group is too large; any
    subgroup keeps the enumeration complete.
    """
    perms = list(itertools.permutations(range(s))) if math.factorial(s) * 2 ** s <= GROUP_LIMIT else [tuple(range(s))]
    flips = range(1 << s) if 2 ** s <= GROUP_LIMIT else [0]
    maps = []
    for perm in perms:
        for fl in flips:
            if fl == 0 and perm == tuple(range(s)):
                continue
            m = {}
            for b in range(s):
                v = n + 1 + b
                w = n + 1 + perm[b]
                sign = -1 if (fl >> b) & 1 else 1
                m[v] = w * sign
                m[-v] = -w * sign
            maps.append(m)
    return maps


class _Context:
    def __init__(self, cfg: SearchConfig, care: Optional[int] = None):
        self.cfg = cfg
        n, s = cfg.n, cfg.s
        self.n, self.s, self.N = n, s, n + s
        xfull = _bits.full_mask(n)
        care = xfull if care is None else care
        self.care = care
        self.target = cfg.f.table & care
        joint_zero = 0
        for j in range(1 << s):
            joint_zero |= (care & ~cfg.f.table & xfull) << (j << n)
        self.joint_zero = joint_zero
        full = _bits.full_mask(self.N)
        cands, tables = [], []
        for c in _candidate_clauses(n, s, cfg.k_max):
            tb = _bits.clause_table(self.N, c)
            if self._proj(tb) & self.target != self.target:
                continue
            cands.append(c)
            tables.append(tb)
        self.cands, self.tables = cands, tables
        self.suffix_block = [0] * (len(cands) + 1)
        for i in range(len(cands) - 1, -1, -1):
            self.suffix_block[i] = self.suffix_block[i + 1] | (full ^ tables[i])
        self.perm_maps = []
        if cfg.canonicalize and s:
            index = {c: i for i, c in enumerate(cands)}
            for lm in _group(n, s):
                self.perm_maps.append([index[frozenset(lm.get(x, x) for x in c)] for c in cands])
        self.full = full
        self.nodes = 0

    def _proj(self, table: int) -> int:
        return _bits.project_high(table, self.N, self.s) & self.care

    def canonical(self, chosen: list) -> bool:
        for pm in self.perm_maps:
            if sorted(pm[i] for i in chosen) < chosen:
                return False
        return True

    def accepts(self, table: int) -> bool:
        return self._proj(table) == self.target

    def run(self, tops=None):
        """DFS from the root; ``tops`` restricts the first chosen index.

        Returns ``(found index tuple or None, budget_hit)``.
        """
        limit = self.cfg.max_nodes
        m_max = self.cfg.m_max
        cands = len(self.cands)
        stack_hit = [False]

        def dfs(chosen: list, table: int, start: int):
            self.nodes += 1
            if limit is not None and self.nodes > limit:
                stack_hit[0] = True
                return None
            if self.accepts(table):
                return list(chosen)
            if len(chosen) == m_max:
                return None
            if (table & self.joint_zero) & ~self.suffix_block[start]:
                return None
            last = len(chosen) + 1 == m_max
            rng = range(start, cands) if tops is None or chosen else [i for i in tops if i >= start]
            for i in rng:
                child = table & self.tables[i]
                if self._proj(child) & self.target != self.target:
                    continue
                chosen.append(i)
                if last:
                    self.nodes += 1
                    if self.accepts(child):
                        return list(chosen)
                elif self.perm_maps == [] or self.canonical(chosen):
                    res = dfs(chosen, child, i + 1)
                    if res is not None or stack_hit[0]:
                        chosen.pop()
                        return res
                chosen.pop()
            return None

        if tops is not None and not tops:
            return None, False
        found = dfs([], self.full, 0)
        return found, stack_hit[0]

    def encoding(self, idx) -> Encoding:
        return Encoding(self.n, self.s, Cnf(self.N, frozenset(self.cands[i] for i in idx)))


def verify_independent(E: Encoding, f: BoolFn) -> bool:
    """Pointwise check through the expansion, without bit tables."""
    phi = expand_formula(E)
    return all(phi.evaluate(x) == ((f.table >> x) & 1) for x in range(1 << f.n))


def _worker(args):
    cfg, tops = args
    ctx = _Context(cfg)
    found, hit = ctx.run(tops)
    return found, ctx.nodes, hit


def _exhaustive(cfg: SearchConfig) -> SearchResult:
    ctx = _Context(cfg)
    if cfg.workers > 1 and cfg.m_max >= 1:
        # root node is handled here; subtrees are striped by first clause
        if ctx.accepts(ctx.full):
            return _finish(cfg, ctx.encoding([]), 1, True)
        stripes = [list(range(w, len(ctx.cands), cfg.workers)) for w in range(cfg.workers)]
        per = None if cfg.max_nodes is None else max(1, cfg.max_nodes // cfg.workers)
        wcfg = replace(cfg, max_nodes=per)
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_worker, [(wcfg, st) for st in stripes]))
        nodes = 1 + sum(r[1] - 1 for r in results)
        hits = any(r[2] for r in results)
        founds = [r[0] for r in results if r[0] is not None]
        if founds:
            return _finish(cfg, ctx.encoding(min(founds)), nodes, not hits)
        return SearchResult(cfg, None, nodes, not hits)
    found, hit = ctx.run()
    if found is not None:
        return _finish(cfg, ctx.encoding(found), ctx.nodes, not hit)
    return SearchResult(cfg, None, ctx.nodes, not hit)


def _finish(cfg: SearchConfig, E: Encoding, nodes: int, exhausted: bool) -> SearchResult:
    if not (encodes(E, cfg.f) and verify_independent(E, cfg.f)):
        raise SearchVerificationError("search produced an encoding that fails verification")
    return SearchResult(cfg, E, nodes, exhausted)


def find_encoding(cfg: SearchConfig) -> SearchResult:
    if cfg.mode == "exhaustive":
        return _exhaustive(cfg)
    return _cegar(cfg)


def _differing_point(E: Encoding, f: BoolFn, care: int) -> int:
    diff = (E.encoded_table() ^ f.table) & ~care & _bits.full_mask(f.n)
    if not diff:
        diff = E.encoded_table() ^ f.table
    return (diff & -diff).bit_length() - 1


def _cegar(cfg: SearchConfig) -> SearchResult:
    """Alternate synthesis on a sample of inputs with full verification.

    Candidates come from the external solver when ``cfg.solver`` is set,
    otherwise from the orderly enumerator restricted to the sample.  An
    unsatisfiable sample ends the loop without an exhaustion certificate.
    """
    f = cfg.f
    care = 0
    nodes = 0
    for it in range(cfg.max_iterations):
        if cfg.solver:
            cand = _synthesize_sat(cfg, care)
            nodes += 1
        else:
            ctx = _Context(replace(cfg, mode="exhaustive"), care)
            idx, _ = ctx.run()
            nodes += ctx.nodes
            cand = None if idx is None else ctx.encoding(idx)
        if cand is None:
            log.info("cegar: sample of %d points refutes m <= %d", care.bit_count(), cfg.m_max)
            return SearchResult(cfg, None, nodes, False)
        if encodes(cand, f):
            return _finish(cfg, cand, nodes, False)
        x = _differing_point(cand, f, care)
        log.debug("cegar iteration %d: counterexample x=%d", it, x)
        care |= 1 << x
    return SearchResult(cfg, None, nodes, False)


def _synthesize_sat(cfg: SearchConfig, care: int) -> Optional[Encoding]:
    """Ask the external solver for ``<= m_max`` clauses matching ``f`` on ``care``."""
    from .dimacs import DimacsDocument
    from .solver import solve_external

    n, s, m = cfg.n, cfg.s, cfg.m_max
    N = n + s
    counter = itertools.count(1)
    P = [[next(counter) for _ in range(N)] for _ in range(m)]
    Q = [[next(counter) for _ in range(N)] for _ in range(m)]
    D = [next(counter) for _ in range(m)]
    clauses = []
    for j in range(m):
        for v in range(N):
            clauses.append((-P[j][v], -Q[j][v]))
        if cfg.k_max < N:
            clauses += _at_most_k(P[j] + Q[j], cfg.k_max, counter)
    for x in _bits.iter_ones(care):
        xv = [(x >> v) & 1 for v in range(n)]
        if (cfg.f.table >> x) & 1:
            Y = [next(counter) for _ in range(s)]
            for j in range(m):
                body = [D[j]]
                body += [P[j][v] if xv[v] else Q[j][v] for v in range(n)]
                for b in range(s):
                    up, un = next(counter), next(counter)
                    clauses += [(-up, P[j][n + b]), (-up, Y[b]), (-un, Q[j][n + b]), (-un, -Y[b])]
                    body += [up, un]
                clauses.append(tuple(body))
        else:
            for y in range(1 << s):
                a = x | (y << n)
                zs = []
                for j in range(m):
                    z = next(counter)
                    zs.append(z)
                    clauses.append((-z, -D[j]))
                    for v in range(N):
                        clauses.append((-z, -(P[j][v] if (a >> v) & 1 else Q[j][v])))
                clauses.append(tuple(zs))
    nvars = next(counter) - 1
    res = solve_external(DimacsDocument.from_clauses(nvars, clauses), cfg.solver)
    if not res.sat:
        return None
    val = res.model.value
    out = set()
    for j in range(m):
        if val(D[j]):
            continue
        out.add(frozenset([v + 1 for v in range(N) if val(P[j][v])] +
                          [-(v + 1) for v in range(N) if val(Q[j][v])]))
    return Encoding(n, s, Cnf(N, frozenset(out)))


def _at_most_k(xs: list, k: int, counter) -> list:
    """Sequential-counter encoding of ``sum(xs) <= k``."""
    if k == 0:
        return [(-x,) for x in xs]
    L = len(xs)
    R = [[next(counter) for _ in range(k)] for _ in range(L - 1)]
    out = [(-xs[0], R[0][0])]
    out += [(-R[0][c],) for c in range(1, k)]
    for i in range(1, L - 1):
        out.append((-xs[i], R[i][0]))
        out.append((-R[i - 1][0], R[i][0]))
        for c in range(1, k):
            out.append((-xs[i], -R[i - 1][c - 1], R[i][c]))
            out.append((-R[i - 1][c], R[i][c]))
        out.append((-xs[i], -R[i - 1][k - 1]))
    out.append((-xs[L - 1], -R[L - 2][k - 1]))
    return out


@dataclass
class MinClauses:
    value: Optional[int]
    at_least: Optional[int]
    certificates: list = field(default_factory=list)

    @property
    def inconclusive(self) -> bool:
        return self.value is None and self.at_least is None

    def format(self) -> str:
        if self.value is not None:
            return f"min_clauses = {self.value}"
        if self.at_least is not None:
            return f"min_clauses >= {self.at_least}"
        return "min_clauses = inconclusive"


def min_clauses(f: BoolFn, s: int, k_max: int, m_ceiling: int, **kw) -> MinClauses:
    """Smallest clause count of an encoding of ``f`` with ``s`` guesses and width ``<= k_max``."""
    certs = []
    for m in range(0, m_ceiling + 1):
        res = find_encoding(SearchConfig(f, s, m, k_max, **kw))
        certs.append(res)
        if res.found is not None:
            return MinClauses(res.found.m, None, certs)
        if not res.exhausted:
            return MinClauses(None, None, certs)
    return MinClauses(None, m_ceiling + 1, certs)


def brute_force_exists(f: BoolFn, s: int, m_max: int, k_max: int) -> bool:
    """Unpruned, unsymmetrized existence check for micro instances."""
    n = f.n
    cands = _candidate_clauses(n, s, k_max)
    N = n + s
    for m in range(m_max + 1):
        for combo in itertools.combinations(cands, m):
            if _bits.project_high(_bits.cnf_table(N, combo), N, s) == f.table:
                return True
    return False

