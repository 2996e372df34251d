"""Corpus of parity encodings shared by the acceptance suite."""

from xorenc.boolfn import parity_fn
from xorenc.cnf import Encoding
from xorenc.fixtures import corrected_toy_encoding
from xorenc.generators import block_parity_encoding, canonical_cnf, chain_circuit, tseitin
from xorenc.search import SearchConfig, find_encoding
from xorenc.sigma3 import circuit_to_encoding, expand_circuit, expand_formula, formula_to_encoding

GRID = [(n, s) for n in range(1, 11) for s in range(0, min(n - 1, 4) + 1)]


def grid_encodings():
    return [((n, s), block_parity_encoding(n, s)) for n, s in GRID]


def generated():
    out = [(f"block n={n} s={s}", E) for (n, s), E in grid_encodings()]
    out += [(f"canonical n={n}", Encoding(n, 0, canonical_cnf(parity_fn(n)))) for n in range(1, 11)]
    out.append(("toy corrected", corrected_toy_encoding()))
    for sizes in ([4, 5, 5], [2, 2], [3, 3, 3], [2, 2, 2, 2, 2]):
        c = chain_circuit(sum(sizes) - len(sizes) + 1, sizes)
        out.append((f"tseitin {sizes}", tseitin(c, True)))
        out.append((f"tseitin {sizes} unit", tseitin(c, False)))
    return out


def converted():
    out = []
    for (n, s), E in grid_encodings():
        if n > 8:
            continue
        out.append((f"formula n={n} s={s}", formula_to_encoding(expand_formula(E))))
        out.append((f"circuit n={n} s={s}", circuit_to_encoding(expand_circuit(E))))
    return out


def search_found():
    out = []
    for n, s, m, k in ((1, 0, 1, 1), (2, 0, 2, 2), (2, 1, 2, 3), (3, 0, 4, 3), (3, 1, 4, 3)):
        res = find_encoding(SearchConfig(parity_fn(n), s, m, k))
        assert res.found is not None, (n, s, m, k)
        out.append((f"search n={n} s={s} m<={m}", res.found))
    res = find_encoding(SearchConfig(parity_fn(3), 0, 4, 3, mode="cegar"))
    assert res.found is not None
    out.append(("cegar n=3", res.found))
    return out


def parity_corpus():
    return generated() + converted() + search_found()
