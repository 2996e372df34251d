"""Run an external DIMACS SAT solver and parse its verdict and model."""

from __future__ import annotations

import os
import shutil
import subprocess
import tempfile
from dataclasses import dataclass
from typing import Optional

from . import _bits
from .boolfn import Assignment
from .dimacs import DimacsDocument, as_document

SOLVER_ENV = "XORENC_SAT_SOLVER"
CROSS_CHECK_MAX_VARS = 20


class SolverError(RuntimeError):
    pass


class SolverConfigError(SolverError):
    pass


class SolverOutputError(SolverError):
    pass


class SolverIntegrationError(SolverError):
    """The solver's answer contradicts an internal check."""


@dataclass(frozen=True)
class SolveResult:
    sat: bool
    model: Optional[Assignment] = None


def resolve_solver(solver_path: Optional[str] = None) -> str:
    path = solver_path or os.environ.get(SOLVER_ENV, "")
    if not path:
        raise SolverConfigError(f"no solver configured: pass a solver path or set {SOLVER_ENV}")
    found = shutil.which(path) if os.sep not in path else (path if os.access(path, os.X_OK) else None)
    if not found:
        raise SolverConfigError(f"solver {path!r} not found or not executable")
    return found


def parse_output(text: str, n_vars: int) -> SolveResult:
    verdict = None
    lits = []
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "s":
            status = " ".join(parts[1:])
            if status == "SATISFIABLE":
                verdict = True
            elif status == "UNSATISFIABLE":
                verdict = False
            else:
                raise SolverOutputError(f"unknown status line {line!r}")
        elif parts[0] == "v":
            try:
                lits += [int(tok) for tok in parts[1:]]
            except ValueError:
                raise SolverOutputError(f"bad model line {line!r}") from None
    if verdict is None:
        raise SolverOutputError("solver printed no 's' status line")
    if not verdict:
        return SolveResult(False)
    bits = 0
    for x in lits:
        if x > 0:
            if x > n_vars:
                raise SolverOutputError(f"model literal {x} exceeds {n_vars} variables")
            bits |= 1 << (x - 1)
    return SolveResult(True, Assignment(n_vars, bits))


def satisfies(doc: DimacsDocument, model: Assignment) -> bool:
    bits = model.bits
    return all(any(((bits >> (abs(x) - 1)) & 1) == (x > 0) for x in c) for c in doc.clauses)


def brute_force_sat(doc: DimacsDocument) -> bool:
    return _bits.cnf_table(doc.n_vars, doc.clauses) != 0


def solve_external(F, solver_path: Optional[str] = None, timeout: Optional[float] = None,
                   cross_check: bool = True) -> SolveResult:
    """Solve ``F`` (a document, encoding or CNF) with an external solver.

    Models are re-checked clause by clause.  Instances with at most
    :data:`CROSS_CHECK_MAX_VARS` variables are also brute-forced and the
    verdicts compared.
    """
    doc = as_document(F)
    exe = resolve_solver(solver_path)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "instance.cnf")
        with open(path, "w") as fh:
            fh.write(doc.dumps())
        try:
            proc = subprocess.run([exe, path], capture_output=True, text=True, timeout=timeout)
        except OSError as exc:
            raise SolverConfigError(f"cannot run solver {exe!r}: {exc}") from exc
    result = parse_output(proc.stdout, doc.n_vars)
    if result.sat and not satisfies(doc, result.model):
        raise SolverIntegrationError("solver model does not satisfy the formula")
    if cross_check and doc.n_vars <= CROSS_CHECK_MAX_VARS and brute_force_sat(doc) != result.sat:
        raise SolverIntegrationError(
            f"solver says {'SAT' if result.sat else 'UNSAT'}, brute force disagrees")
    return result
