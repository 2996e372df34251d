import random

import pytest

from xorenc.boolfn import parity_fn
from xorenc.cnf import Cnf, Encoding
from xorenc.dimacs import (
    ComplementaryPairError, CountMismatchError, DimacsDocument, DimacsError, HeaderError,
    LiteralRangeError, TerminatorError, parse_dimacs, read_document, write_dimacs,
)
from xorenc.fixtures import corrected_toy_encoding, printed_toy_encoding
from xorenc.generators import block_parity_encoding, canonical_cnf, chain_circuit, tseitin
from xorenc.random_instances import random_encoding


def test_write_toy():
    text = write_dimacs(corrected_toy_encoding())
    lines = text.splitlines()
    assert lines[0] == "c enc n=4 s=2"
    assert lines[1] == "p cnf 6 10"
    assert len(lines) == 12
    assert lines[2:4] == ["4 6 0", "-4 -6 0"]


def test_write_small_cases():
    assert write_dimacs(Encoding.build(1, 0, [(1,)])) == "c enc n=1 s=0\np cnf 1 1\n1 0\n"
    assert write_dimacs(Encoding(2, 0, Cnf(2))) == "c enc n=2 s=0\np cnf 2 0\n"
    assert write_dimacs(Encoding.build(1, 0, [()])) == "c enc n=1 s=0\np cnf 1 1\n0\n"


def test_write_is_stable():
    E = block_parity_encoding(7, 2)
    assert write_dimacs(E) == write_dimacs(Encoding.build(7, 2, list(E.clauses)[::-1]))


def _fixture_corpus(seed):
    yield corrected_toy_encoding()
    yield printed_toy_encoding()
    for n in range(1, 8):
        yield Encoding(n, 0, canonical_cnf(parity_fn(n)))
        for s in range(0, min(n - 1, 4) + 1):
            yield block_parity_encoding(n, s)
    yield tseitin(chain_circuit(12, [4, 5, 5]), False)
    rng = random.Random(seed + 4)
    for _ in range(50):
        yield random_encoding(rng, rng.randint(1, 6), rng.randint(0, 3), rng.randint(0, 10))


def test_roundtrip_corpus(seed):
    for E in _fixture_corpus(seed):
        text = write_dimacs(E)
        assert parse_dimacs(text) == E
        assert write_dimacs(parse_dimacs(text)) == text


def test_parse_without_annotation_means_s0():
    E = parse_dimacs("p cnf 3 2\n1 -2 0\n3 0\n")
    assert (E.n, E.s, E.m) == (3, 0, 2)


def test_parse_clause_across_lines_and_comments():
    E = parse_dimacs("c hello\np cnf 3 2\n1 -2\n3 0 -1\n0\n%\n")
    assert E.clauses == {frozenset({1, -2, 3}), frozenset({-1})}


@pytest.mark.parametrize("text, exc, line", [
    ("p cnf 2 1\n1 -1 0\n", ComplementaryPairError, 2),
    ("p cnf 2 3\n1 0\n2 0\n", CountMismatchError, 3),
    ("p cnf 2 1\n1 3 0\n", LiteralRangeError, 2),
    ("p cnf 2 1\n1 2\n", TerminatorError, 2),
    ("1 2 0\n", HeaderError, 1),
    ("p dnf 2 1\n1 0\n", HeaderError, 1),
    ("p cnf 2\n1 0\n", HeaderError, 1),
    ("p cnf 2 1\np cnf 2 1\n1 0\n", HeaderError, 2),
    ("c only a comment\n", HeaderError, 1),
    ("p cnf 2 1\n1 x 0\n", DimacsError, 2),
    ("c enc n=3 s=1\np cnf 2 1\n1 0\n", HeaderError, None),
    ("c enc n=a\np cnf 2 1\n1 0\n", HeaderError, 1),
])
def test_parse_errors(text, exc, line):
    with pytest.raises(exc) as info:
        parse_dimacs(text)
    assert info.value.line == line
    if line is not None:
        assert str(info.value).startswith(f"line {line}:")


def test_error_classes_are_distinct():
    classes = {ComplementaryPairError, CountMismatchError, LiteralRangeError, TerminatorError, HeaderError}
    assert len(classes) == 5
    assert all(issubclass(c, DimacsError) for c in classes)


def test_document_from_clauses():
    doc = DimacsDocument.from_clauses(3, [(1, 2), (-3,)])
    assert doc.dumps() == "p cnf 3 2\n1 2 0\n-3 0\n"
    assert read_document(doc.dumps()).clauses == [(1, 2), (-3,)]
