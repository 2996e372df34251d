import pytest

from xorenc.boolfn import Assignment, parity_fn
from xorenc.cnf import Cnf, Encoding
from xorenc.dimacs import DimacsDocument
from xorenc.generators import canonical_cnf
from xorenc.solver import (
    SOLVER_ENV, SolverConfigError, SolverIntegrationError, SolverOutputError, parse_output,
    resolve_solver, solve_external,
)


def _blocked_par3():
    F = canonical_cnf(parity_fn(3))
    blocks = [frozenset(-v if (x >> (v - 1)) & 1 else v for v in range(1, 4))
              for x in parity_fn(3).ones()]
    return Cnf(3, F.clauses | frozenset(blocks))


def test_sat_with_odd_model(stub_solver):
    res = solve_external(canonical_cnf(parity_fn(3)), stub_solver)
    assert res.sat and res.model.n == 3
    assert bin(res.model.bits).count("1") % 2 == 1


def test_unsat(stub_solver):
    res = solve_external(_blocked_par3(), stub_solver)
    assert not res.sat and res.model is None


def test_encoding_input(stub_solver):
    E = Encoding.build(2, 1, [(1, 3), (-3, 2)])
    assert solve_external(E, stub_solver).sat


def test_env_variable(stub_solver, monkeypatch):
    monkeypatch.setenv(SOLVER_ENV, stub_solver)
    assert resolve_solver() == stub_solver
    assert solve_external(canonical_cnf(parity_fn(2))).sat


def test_flag_overrides_env(stub_solver, monkeypatch):
    monkeypatch.setenv(SOLVER_ENV, "/nonexistent/solver")
    assert resolve_solver(stub_solver) == stub_solver


def test_no_solver_configured():
    with pytest.raises(SolverConfigError):
        solve_external(canonical_cnf(parity_fn(3)))
    with pytest.raises(SolverConfigError):
        solve_external(canonical_cnf(parity_fn(3)), "")


def test_missing_solver_binary(tmp_path):
    with pytest.raises(SolverConfigError):
        resolve_solver(str(tmp_path / "nope"))
    with pytest.raises(SolverConfigError):
        resolve_solver("definitely-not-a-solver-binary-xyz")


def test_lying_solver_flagged(lying_solver):
    with pytest.raises(SolverIntegrationError):
        solve_external(_blocked_par3(), lying_solver)
    with pytest.raises(SolverIntegrationError):
        solve_external(canonical_cnf(parity_fn(3)), lying_solver)


def test_lying_without_cross_check_still_checks_models(lying_solver):
    # claimed SAT on an UNSAT formula: model check catches it
    with pytest.raises(SolverIntegrationError):
        solve_external(_blocked_par3(), lying_solver, cross_check=False)
    # claimed UNSAT is accepted when cross checking is off
    assert not solve_external(canonical_cnf(parity_fn(3)), lying_solver, cross_check=False).sat


def test_parse_output():
    res = parse_output("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 3)
    assert res.sat and res.model == Assignment(3, 0b101)
    assert not parse_output("s UNSATISFIABLE\n", 3).sat
    for bad in ("", "s UNKNOWN\n", "s SATISFIABLE\nv 1 x 0\n", "s SATISFIABLE\nv 4 0\n"):
        with pytest.raises(SolverOutputError):
            parse_output(bad, 3)


def test_solver_garbage_output(tmp_path):
    script = tmp_path / "garbage"
    script.write_text("#!/bin/sh\necho hello\n")
    script.chmod(0o755)
    with pytest.raises(SolverOutputError):
        solve_external(DimacsDocument.from_clauses(1, [(1,)]), str(script))
