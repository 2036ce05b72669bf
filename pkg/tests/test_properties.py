"""Property tests on random distributive lattices, families and maps."""

from __future__ import annotations

from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from smoothloc.bits import bits
from smoothloc.bruns_lakser import admissible_closure, enumerate_AU, is_admissible_family
from smoothloc.catalog import downset_lattice
from smoothloc.corpus import gen_semilattices
from smoothloc.correspondence import build_iso, correspondence
from smoothloc.lc import is_locally_exact, lc_elements, lc_meet, nu_supp_formula, nu_supp_oracle
from smoothloc.lifts import FrameMorphism, check_WDb, sb_lift_candidates
from smoothloc.order import FinitePoset, lattice_homs, verify_heyting_laws
from smoothloc.sublocales import enumerate_sublocales, smooth_sublocales

SEMIS = gen_semilattices(5)


@st.composite
def frames(draw, max_points: int = 4):
    """Down-set lattice of a random poset given by pairs i < j."""
    n = draw(st.integers(1, max_points))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return downset_lattice(FinitePoset.from_covers(n, rel))


@given(frames())
def test_heyting_laws(L):
    assert all(verify_heyting_laws(L).values())
    for a in range(L.n):
        for b in range(L.n):
            assert L.arrow[a, b] == oracles.arrow(L, a, b)


@given(frames(max_points=3))
def test_sublocales_match_scan(L):
    got = {frozenset(bits(c)) for c in enumerate_sublocales(L).carriers}
    assert got == set(oracles.sublocales(L))


@given(frames())
def test_completion_isomorphisms(L):
    for flavor in ("smooth", "closed"):
        corr = correspondence(L, flavor)
        assert len(build_iso(corr)) == len(enumerate_AU(corr.index))
    assert len(smooth_sublocales(L)) == len(enumerate_AU(lc_elements(L)))


@given(frames(), st.data())
def test_random_families(L, data):
    pairs = lc_elements(L).pairs
    fam = data.draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=4, unique=True))
    assert nu_supp_formula(L, fam) == nu_supp_oracle(L, fam)
    assert lc_meet(L, fam).admissible == bool(is_locally_exact(L, fam))


@given(st.sampled_from(SEMIS), st.data())
def test_closure_of_random_upper_set(S, data):
    gens = data.draw(st.lists(st.integers(0, S.n - 1), min_size=1, max_size=3))
    U = 0
    for x in gens:
        U |= S.up[x]
    got = admissible_closure(S, U)
    assert set(bits(got)) == oracles.admissible_closure(S, frozenset(bits(U)))
    assert admissible_closure(S, got) == got
    assert bool(is_admissible_family(S, gens)) == oracles.admissible(S, gens)


@given(frames(max_points=3), frames(max_points=3), st.data())
def test_random_frame_maps_lift_exactly_once(L, M, data):
    homs = list(lattice_homs(L, M))
    assume(homs)
    f = FrameMorphism(L, M, data.draw(st.sampled_from(homs)))
    assert len(sb_lift_candidates(f)) == (1 if check_WDb(f) else 0)
