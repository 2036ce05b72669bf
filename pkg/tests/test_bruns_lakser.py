from __future__ import annotations

from itertools import combinations

import pytest

import oracles
from smoothloc.bits import bits
from smoothloc.bruns_lakser import (
    JoinHom,
    JoinSemilattice,
    admissible_closure,
    admissible_closure_bruteforce,
    candidate_lifts,
    enumerate_AU,
    enumerate_AU_bruteforce,
    is_admissible_family,
    is_admissible_morphism,
    lift_AU,
    meet_exists,
    up_embed,
)
from smoothloc.catalog import boolean, chain, product
from smoothloc.checks import diamond_to_chain
from smoothloc.errors import NotAdmissibleError, NotAMorphismError, NotASemilatticeError
from smoothloc.lc import lc_elements
from smoothloc.order import FinitePoset

V = JoinSemilattice(FinitePoset.from_covers(3, [(0, 2), (1, 2)], labels=["x", "y", "T"], name="V"))


def semis():
    out = [JoinSemilattice.from_frame(L) for L in (chain(2), chain(3), boolean(2), product(chain(3), chain(2)))]
    out += [lc_elements(chain(3)), lc_elements(chain(4)), V]
    return out


SEMIS = semis()


def test_rejects_non_semilattice():
    P = FinitePoset.from_covers(3, [(0, 1), (0, 2)])
    with pytest.raises(NotASemilatticeError):
        JoinSemilattice(P)


@pytest.mark.parametrize("S", SEMIS, ids=lambda S: S.name)
def test_meets_and_admissibility_match_scan(S):
    for k in range(1, min(S.n, 4) + 1):
        for F in combinations(range(S.n), k):
            assert meet_exists(S, F) == oracles.meet_of(S.poset, F)
            assert bool(is_admissible_family(S, F)) == oracles.admissible(S, F)


@pytest.mark.parametrize("S", SEMIS, ids=lambda S: S.name)
def test_closure_matches_scan(S):
    for U in map(frozenset, oracles.upper_sets(S)):
        got = admissible_closure(S, oracles.mask(U))
        assert set(bits(got)) == oracles.admissible_closure(S, U)
        assert got == admissible_closure_bruteforce(S, oracles.mask(U), cap=S.n)


@pytest.mark.parametrize("S", SEMIS, ids=lambda S: S.name)
def test_AU_matches_scan(S):
    want = sorted(oracles.mask(U) for U in oracles.admissible_upper_sets(S))
    assert sorted(enumerate_AU(S).elements) == want
    assert sorted(enumerate_AU_bruteforce(S)) == want
    assert enumerate_AU(S).verify_frame_law()


def test_lc_c4_closure_example():
    # [DERIVED] {(b,1), (a,b)} is admissible with meet (a,1), which one step adds;
    # {(b,1), (0,a)} is not, so its upper set is already closed
    LC = lc_elements(chain(4))
    U = LC.up[LC.index[(2, 3)]] | LC.up[LC.index[(1, 2)]]
    assert admissible_closure(LC, U) == U | (1 << LC.index[(1, 3)])
    W = LC.up[LC.index[(2, 3)]] | LC.up[LC.index[(0, 1)]]
    assert admissible_closure(LC, W) == W
    assert not is_admissible_family(LC, [LC.index[(2, 3)], LC.index[(0, 1)]])


def test_AU_counts():
    # [DERIVED] LC(C3) → 4, LC(C4) → 8; [TRIVIAL] the 2-chain → 2
    assert len(enumerate_AU(lc_elements(chain(3)))) == 4
    assert len(enumerate_AU(lc_elements(chain(4)))) == 8
    assert len(enumerate_AU(JoinSemilattice.from_frame(chain(2)))) == 2
    # [DERIVED] V has no meet of x, y: {x, y, T} is admissible
    assert len(enumerate_AU(V)) == 4


@pytest.mark.parametrize("S", SEMIS, ids=lambda S: S.name)
def test_up_embed_is_principal_and_reverses_order(S):
    A = enumerate_AU(S)
    for x in range(S.n):
        assert up_embed(S, x) in A.index
        for y in range(S.n):
            assert S.le(x, y) == (up_embed(S, y) & ~up_embed(S, x) == 0)
            # joins in S become intersections
            assert up_embed(S, S.j[x][y]) == up_embed(S, x) & up_embed(S, y)


def test_diamond_counterexample():
    f = diamond_to_chain()
    v = is_admissible_morphism(f)
    assert not v and v.witness[1] == "meet-not-preserved"
    with pytest.raises(NotAdmissibleError) as exc:
        lift_AU(f)
    assert exc.value.mode == "meet-not-preserved"
    assert set(exc.value.witness) >= {1, 2}
    assert candidate_lifts(f) == []


@pytest.mark.parametrize("S", SEMIS, ids=lambda S: S.name)
def test_identity_lift(S):
    lift = lift_AU(JoinHom(S, S, list(range(S.n))))
    assert lift.table == tuple(range(len(lift.dom)))
    assert lift.preserves_top


def test_lift_of_lc_image_map():
    # LC(f) for the frame map C3 → C4 with a ↦ b
    from smoothloc.lifts import FrameMorphism, lc_hom

    f = FrameMorphism(chain(3), chain(4), [0, 2, 3])
    h = lc_hom(f)
    lift = lift_AU(h)
    assert lift.preserves_top
    assert [lift.table] == candidate_lifts(h)
    for x in range(h.dom.n):
        assert lift(h.dom.up[x]) == h.cod.up[h(x)]


def test_lift_may_miss_the_top():
    # [DERIVED] 2 → C3 with 0 ↦ a: AU of the domain's top goes to ↑a
    f = JoinHom(JoinSemilattice.from_frame(chain(2)), JoinSemilattice.from_frame(chain(3)), [1, 2])
    lift = lift_AU(f)
    assert not lift.preserves_top
    assert lift(0b11) == 0b110
    assert candidate_lifts(f) == [lift.table]
    assert candidate_lifts(f, require_top=True) == []


def test_join_hom_validation():
    S = JoinSemilattice.from_frame(boolean(2))
    T = JoinSemilattice.from_frame(chain(2))
    with pytest.raises(NotAMorphismError):
        JoinHom(S, T, [0, 0, 0, 0])  # top not preserved
    with pytest.raises(NotAMorphismError):
        JoinHom(S, T, [0, 0, 0, 1, 1])
