from __future__ import annotations

import pytest

from smoothloc.catalog import boolean, chain, product
from smoothloc.corpus import is_isomorphic
from smoothloc.errors import FormatError
from smoothloc.formats import (
    MorphismSpec,
    emit_lattice,
    emit_morphism,
    parse_dot,
    parse_lattice,
    parse_morphism,
    to_dot,
)

C3_TEXT = """lattice C3
elements 3
labels 0 a 1
covers
0 1
1 2
end
"""


def test_parse_emit_round_trip():
    P = parse_lattice(C3_TEXT)
    assert P.n == 3 and P.labels == ("0", "a", "1")
    assert emit_lattice(P) == C3_TEXT


def test_comments_and_blank_lines():
    text = "# a chain\nlattice C2\n\nelements 2  # two\ncovers\n0 1\nend\n"
    assert parse_lattice(text).n == 2


@pytest.mark.parametrize(
    "text",
    [
        "elements 2\ncovers\n0 1\nend\n",
        "lattice X\nelements 2\ncovers\n0 5\nend\n",
        "lattice X\nelements 2\ncovers\n0 1\n",
        "lattice X\nelements 2\nlabels a\ncovers\n0 1\nend\n",
        "lattice X\nelements 2\ncovers\n0 1\nend\nextra\n",
        "lattice X\nelements two\ncovers\nend\n",
    ],
)
def test_malformed_lattices(text):
    with pytest.raises(FormatError):
        parse_lattice(text)


@pytest.mark.parametrize("L", [chain(4), boolean(3), product(chain(3), chain(3))], ids=lambda L: L.name)
def test_dot_round_trip(L):
    back = parse_dot(to_dot(L.poset))
    assert back.n == L.n
    assert back.labels == L.poset.labels
    assert is_isomorphic(back, L.poset)


def test_dot_shape():
    dot = to_dot(chain(3).poset)
    assert dot.count("->") == 2
    assert 'n1 [label="a"];' in dot


def test_dot_rejects_other_statements():
    with pytest.raises(FormatError):
        parse_dot('digraph "x" {\n  n0 [shape=box];\n}\n')


def test_morphism_round_trip():
    spec = MorphismSpec("f", "C4", "C3", ((0, 0), (1, 1), (2, 1), (3, 2)))
    assert parse_morphism(emit_morphism(spec)) == spec


@pytest.mark.parametrize(
    "text",
    [
        "map 0 0\n",
        "morphism f from A\nmap 0 0\n",
        "morphism f from A to B\nmap 0 0\nmap 0 1\n",
        "morphism f from A to B\nmap x 0\n",
    ],
)
def test_malformed_morphisms(text):
    with pytest.raises(FormatError):
        parse_morphism(text)
