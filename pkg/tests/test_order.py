from __future__ import annotations

import numpy as np
import pytest

import oracles
from smoothloc.catalog import boolean, chain, downset_lattice, m3, pentagon, product
from smoothloc.errors import NotALatticeError, NotAPosetError, NotDistributiveError
from smoothloc.order import (
    FinitePoset,
    build_frame,
    heyting,
    join_irreducibles,
    lattice_homs,
    pseudocomplement,
    verify_heyting_laws,
)

SMALL = [chain(2), chain(3), chain(4), boolean(2), boolean(3), product(chain(3), chain(2))]


@pytest.mark.parametrize("L", SMALL, ids=lambda L: L.name)
def test_arrow_matches_scan(L):
    # [DERIVED] arrow = max{c | c ∧ a ≤ b}
    for a in range(L.n):
        for b in range(L.n):
            assert heyting(L, a, b) == oracles.arrow(L, a, b)


@pytest.mark.parametrize("L", SMALL, ids=lambda L: L.name)
def test_meet_join_tables_match_scan(L):
    for x in range(L.n):
        for y in range(L.n):
            assert L.meet[x, y] == oracles.meet_of(L, [x, y])
            assert L.join[x, y] == oracles.join_of(L, [x, y])


def test_c3_arrows():
    # [DERIVED] 0 < a < 1: a → 0 = 0 and 1 → a = a
    L = chain(3)
    assert heyting(L, 1, 0) == 0
    assert heyting(L, 2, 1) == 1


def test_two_element_arrows():
    # [TRIVIAL] in 2 every x → y is y or 1
    L = chain(2)
    assert all(heyting(L, x, y) in (y, L.top) for x in range(2) for y in range(2))


def test_top_arrow_and_bottom_arrow():
    # [TRIVIAL] 1 → a = a and 0 → x = 1
    for L in SMALL:
        for a in range(L.n):
            assert heyting(L, L.top, a) == a
            assert heyting(L, L.bottom, a) == L.top


def test_c4_b_arrow_a():
    # [DERIVED] chain arrow: x → y = 1 if x ≤ y else y
    assert heyting(chain(4), 2, 1) == 1


def test_pseudocomplements():
    # [DERIVED] in 2², p* = q; in C4, a* = 0; 0* = 1 everywhere
    assert pseudocomplement(boolean(2), 1) == 2
    assert pseudocomplement(chain(4), 1) == 0
    for L in SMALL:
        assert pseudocomplement(L, L.bottom) == L.top


@pytest.mark.parametrize("L", [chain(2), chain(3), boolean(2), chain(5)], ids=lambda L: L.name)
def test_heyting_laws_pass(L):
    # [DERIVED] all twelve rules hold on small frames
    laws = verify_heyting_laws(L)
    assert sorted(laws) == sorted(f"H{i}" for i in range(1, 13))
    assert all(laws.values())


def test_pentagon_rejected_with_triple():
    # [TRIVIAL] N5 is not distributive
    with pytest.raises(NotDistributiveError) as exc:
        build_frame(pentagon())
    x, y, z = exc.value.witness
    P = pentagon()
    lhs = oracles.meet_of(P, [x, oracles.join_of(P, [y, z])])
    rhs = oracles.join_of(P, [oracles.meet_of(P, [x, y]), oracles.meet_of(P, [x, z])])
    assert lhs != rhs


def test_m3_rejected():
    with pytest.raises(NotDistributiveError):
        build_frame(m3())


def test_not_a_poset():
    leq = np.array([[1, 1], [1, 1]], dtype=bool)
    with pytest.raises(NotAPosetError):
        FinitePoset(leq)


def test_not_a_lattice():
    # two maximal elements: no top
    P = FinitePoset.from_covers(3, [(0, 1), (0, 2)])
    with pytest.raises(NotALatticeError):
        build_frame(P)


def test_join_irreducibles_of_downset_lattice():
    # Birkhoff: JI(D(P)) has exactly |P| elements
    P = FinitePoset.from_covers(3, [(0, 1), (0, 2)], name="V")
    L = downset_lattice(P)
    assert len(join_irreducibles(L)) == 3


PAIRS = [(A, B) for A in SMALL for B in SMALL if B.n ** (A.n - 2) <= 5000]


@pytest.mark.parametrize("A,B", PAIRS, ids=lambda L: L.name)
def test_lattice_homs_match_brute_force(A, B):
    # [DERIVED] exhaustive scan over all maps
    assert sorted(lattice_homs(A, B)) == oracles.frame_maps(A, B)
    assert sorted(lattice_homs(A, B, require_top=False)) == oracles.frame_maps(A, B, require_top=False)


def test_lattice_homs_constraints():
    A, B = boolean(2), chain(3)
    assert sorted(lattice_homs(A, B)) == [(0, 0, 2, 2), (0, 2, 0, 2)]
    assert list(lattice_homs(A, B, fixed={1: 2})) == [(0, 2, 0, 2)]
    assert list(lattice_homs(A, B, allowed={1: [1]})) == []


def test_boolean_endomaps_count():
    # [DERIVED] frame maps 2^k → 2^k correspond to functions k → k
    assert len(list(lattice_homs(boolean(3), boolean(3)))) == 27
    assert len(list(lattice_homs(boolean(2), boolean(2)))) == 4
