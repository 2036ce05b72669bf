from __future__ import annotations

import pytest

import oracles
from smoothloc.bits import bits
from smoothloc.catalog import boolean, chain, product
from smoothloc.sublocales import (
    Sublocale,
    closed,
    closed_joins,
    closure,
    enumerate_sublocales,
    is_locally_closed,
    is_sublocale,
    is_subfit,
    locally_closed,
    locally_closed_pairs,
    nu,
    open_,
    open_meets,
    smooth_sublocales,
    supplement,
    zero_dim_decomposition,
    zero_dim_recompose,
)

SMALL = [chain(2), chain(3), chain(4), boolean(2), boolean(3), product(chain(3), chain(2))]
C3, C4 = chain(3), chain(4)


def carrier(*ids) -> int:
    return oracles.mask(ids)


@pytest.mark.parametrize("L", SMALL, ids=lambda L: L.name)
def test_enumeration_matches_definition(L):
    # [DERIVED] subset scan with meets and arrows recomputed from the order
    got = {frozenset(bits(c)) for c in enumerate_sublocales(L).carriers}
    assert got == set(oracles.sublocales(L))


def test_is_sublocale_examples():
    assert is_sublocale(C3, carrier(0, 2))  # [DERIVED] o(a)
    assert is_sublocale(C3, carrier(2))  # [TRIVIAL] O
    assert not is_sublocale(C3, carrier(0, 1))  # [TRIVIAL] no top


def test_counts():
    # [DERIVED] C3 has {1}, {a,1}, {0,1}, L; [TRIVIAL] 2 has two
    assert sorted(enumerate_sublocales(C3).carriers) == sorted([carrier(2), carrier(1, 2), carrier(0, 2), carrier(0, 1, 2)])
    assert len(enumerate_sublocales(chain(2))) == 2
    # regression constant
    assert len(enumerate_sublocales(C4)) == 8


def test_closed_and_open():
    for L in SMALL:
        assert closed(L, L.bottom).carrier == L.all
        assert open_(L, L.bottom).carrier == 1 << L.top
    assert open_(C3, 1).carrier == carrier(0, 2)


@pytest.mark.parametrize("L", SMALL, ids=lambda L: L.name)
def test_closed_joins_identity(L):
    # [PAPER] c(a) ∨ c(b) = c(a ∧ b)
    SL = enumerate_sublocales(L)
    for a in range(L.n):
        for b in range(L.n):
            j = SL.join[SL.index[L.up[a]], SL.index[L.up[b]]]
            assert SL.carriers[j] == L.up[L.meet[a, b]]


@pytest.mark.parametrize("L", SMALL, ids=lambda L: L.name)
def test_nu_against_scan(L):
    SL = enumerate_sublocales(L)
    for S in SL:
        for a in range(L.n):
            assert nu(S, a) == oracles.nu(L, set(S), a)
    for a in range(L.n):
        for x in range(L.n):
            assert nu(closed(L, a), x) == L.join[a, x]  # [DERIVED]
            for b in range(L.n):
                # [PAPER] ν of c(a) ∩ o(b) is b → (a ∨ x)
                assert nu(locally_closed(L, a, b), x) == L.arrow[b, L.join[a, x]]
        assert nu(Sublocale(L, L.all), a) == a  # [TRIVIAL]


def test_closure_examples():
    assert closure(open_(C3, 1)).carrier == C3.all  # [DERIVED] ⋀{0,1} = 0
    assert closure(Sublocale(C3, 1 << C3.top)).carrier == 1 << C3.top
    for a in range(C4.n):
        assert closure(closed(C4, a)).carrier == C4.up[a]


@pytest.mark.parametrize("L", [C3, C4, boolean(2)], ids=lambda L: L.name)
def test_supplement_against_scan(L):
    SL = enumerate_sublocales(L)
    subs = [frozenset(bits(c)) for c in SL.carriers]
    for S in SL:
        assert frozenset(supplement(SL, S)) == oracles.supplement(L, subs, frozenset(S))
    for a in range(L.n):
        # [PAPER] the supplement of c(a) is o(a)
        assert supplement(SL, closed(L, a)).carrier == open_(L, a).carrier
    assert supplement(SL, Sublocale(L, L.all)).carrier == 1 << L.top


def test_supplement_c4_example():
    # [DERIVED] supplement of c(b) ∨ o(a) is c(a) ∩ o(b)
    SL = enumerate_sublocales(C4)
    S = closed(C4, 2) | open_(C4, 1)
    assert supplement(SL, S).carrier == locally_closed(C4, 1, 2).carrier


def test_smooth_sublocales():
    # [DERIVED] C3 → all 4, C4 → 8 including a non-locally-closed one; [TRIVIAL] 2 → {O, L}
    assert len(smooth_sublocales(C3)) == 4
    sb = smooth_sublocales(C4)
    assert len(sb) == 8
    S = closed(C4, 2) | open_(C4, 1)
    assert S.carrier in sb.carriers and not is_locally_closed(S)
    assert set(smooth_sublocales(chain(2)).carriers) == {1 << 1, 3}


def test_closed_joins_c3():
    # [DERIVED] S_c(C3) = {O, c(a), L}; o(a) is missing
    sc = closed_joins(C3)
    assert sorted(sc.carriers) == sorted([carrier(2), carrier(1, 2), carrier(0, 1, 2)])
    assert open_(C3, 1).carrier not in sc.carriers
    assert set(closed_joins(chain(2)).carriers) == {2, 3}
    assert set(sc.carriers) != set(smooth_sublocales(C3).carriers)


def test_open_meets_are_meet_closed():
    for L in SMALL:
        so = open_meets(L)
        for s in so.carriers:
            for t in so.carriers:
                assert s & t in so.carriers


@pytest.mark.parametrize("L", SMALL, ids=lambda L: L.name)
def test_locally_closed_against_pair_scan(L):
    for S in enumerate_sublocales(L):
        v = is_locally_closed(S)
        pairs = locally_closed_pairs(S)
        assert bool(v) == bool(pairs)
        if v:
            assert tuple(v.witness) in pairs


def test_locally_closed_examples():
    assert tuple(is_locally_closed(open_(C3, 1)).witness) == (0, 1)  # [TRIVIAL] o(a) = c(0) ∩ o(a)
    assert tuple(is_locally_closed(Sublocale(C3, 1 << 2)).witness) == (2, 2)  # O, canonical (1,1)


@pytest.mark.parametrize("L", [C3, C4, boolean(2)], ids=lambda L: L.name)
def test_zero_dim_recompose(L):
    SL = enumerate_sublocales(L)
    for S in SL:
        assert zero_dim_recompose(L, zero_dim_decomposition(S, SL), SL).carrier == S.carrier
    assert (0, 1) in zero_dim_decomposition(closed(C4, 1))  # c(x) = o(0) ∨ c(x)


def test_subfit():
    # [DERIVED] C3 is not subfit; 2 and 2² are
    assert not is_subfit(C3)
    assert is_subfit(chain(2))
    assert is_subfit(boolean(2))
