from __future__ import annotations

from collections import Counter
from itertools import combinations

import numpy as np
import pytest

import oracles
from smoothloc.bruns_lakser import JoinSemilattice
from smoothloc.catalog import boolean, chain, product
from smoothloc.checks import suite_jobs
from smoothloc.corpus import (
    CorpusSpec,
    Deduper,
    canonical_key,
    distributive_frames,
    enumerate_posets,
    fixture_frame,
    gen_frames,
    gen_join_homs,
    gen_morphisms,
    gen_semilattices,
    is_isomorphic,
    join_hom_array,
    run_suite,
    strip_timing,
    topology_frames,
    write_manifest,
)
from smoothloc.errors import NotDistributiveError, SpecTooLargeError
from smoothloc.order import FinitePoset

SMALL = CorpusSpec(max_frame_size=4, max_semilattice_size=4, topology_points=2, morphism_frame_size=4)


def test_semilattice_counts():
    # [DERIVED] adding a bottom gives every lattice with one more element:
    # 1, 1, 2, 5, 15, 53 lattices with 2..7 elements
    counts = Counter(S.n for S in gen_semilattices(6))
    assert counts == {1: 1, 2: 1, 3: 2, 4: 5, 5: 15, 6: 53}


def test_distributive_counts():
    # [DERIVED] distributive lattices with 2..8 elements: 1, 1, 2, 3, 5, 8, 15
    counts = Counter(P.n for P in distributive_frames(8))
    assert counts == {2: 1, 3: 1, 4: 2, 5: 3, 6: 5, 7: 8, 8: 15}


def test_poset_counts():
    # [DERIVED] unlabeled posets with 1..4 points: 1, 2, 5, 16
    assert Counter(P.n for P in enumerate_posets(4)) == {1: 1, 2: 2, 3: 5, 4: 16}


def test_two_point_topologies():
    # [DERIVED] indiscrete → 2, discrete → 2², Sierpiński → C3
    frames = topology_frames(2)
    assert sorted(P.n for P in frames) == [2, 3, 4]


def test_small_frames():
    frames = gen_frames(SMALL)
    names = [L.name for L in frames]
    assert names[:3] == ["C2", "C3", "C4"]
    assert "2^2" in names
    assert len(frames) == 4  # [DERIVED] the distributive lattices with 2..4 elements


def test_no_isomorphic_pair():
    frames = gen_frames(CorpusSpec(morphism_frame_size=6))
    assert len({canonical_key(L.poset) for L in frames}) == len(frames)
    for A, B in combinations([L for L in frames if L.n <= 5], 2):
        assert not is_isomorphic(A.poset, B.poset)


def test_isomorphism_detects_relabeling():
    L = product(chain(3), chain(2))
    perm = [5, 3, 1, 4, 2, 0]
    leq = np.empty_like(L.leq)
    for i in range(L.n):
        for k in range(L.n):
            leq[perm[i], perm[k]] = L.leq[i, k]
    Q = FinitePoset(leq)
    assert is_isomorphic(L.poset, Q)
    assert not is_isomorphic(L.poset, chain(6).poset)
    d = Deduper()
    assert d.add(L.poset) and not d.add(Q)


def test_spec_limits():
    with pytest.raises(SpecTooLargeError):
        gen_frames(CorpusSpec(max_frame_size=99))
    with pytest.raises(SpecTooLargeError):
        gen_frames(CorpusSpec(max_semilattice_size=99))


def test_morphism_counts():
    # [TRIVIAL] 2 → 2 is the identity; [DERIVED] C3 → 2 sends a to 0 or 1
    assert [f.f for f in gen_morphisms(chain(2), chain(2))] == [[0, 1]]
    assert sorted(f.f for f in gen_morphisms(chain(3), chain(2))) == [[0, 0, 1], [0, 1, 1]]
    for A, B in [(chain(3), boolean(2)), (boolean(2), chain(4)), (chain(4), chain(3))]:
        assert sorted(tuple(f.f) for f in gen_morphisms(A, B)) == oracles.frame_maps(A, B)


SEMIS = [S for S in gen_semilattices(4)]


@pytest.mark.parametrize("S", SEMIS, ids=lambda S: S.name)
def test_join_homs_match_scan(S):
    for T in SEMIS:
        want = oracles.join_homs(S, T)
        assert sorted(gen_join_homs(S, T)) == want
        assert sorted(map(tuple, join_hom_array(S, T).tolist())) == want


def test_join_hom_array_larger_pairs():
    sl = gen_semilattices(5)
    S, T = sl[-1], sl[-3]
    assert sorted(map(tuple, join_hom_array(S, T).tolist())) == sorted(gen_join_homs(S, T))


def test_run_suite_is_deterministic(tmp_path):
    jobs = suite_jobs(SMALL)
    a = run_suite(jobs, out=tmp_path / "a.jsonl")
    b = run_suite(jobs)
    assert strip_timing(a) == strip_timing(b)
    assert len((tmp_path / "a.jsonl").read_text().splitlines()) == len(a)
    assert all(r["status"] in ("pass", "finite-trivial") for r in a)


def test_corrupted_fixture_fails():
    text = "lattice N5\nelements 5\ncovers\n0 1\n1 2\n0 3\n2 4\n3 4\nend\n"
    with pytest.raises(NotDistributiveError):
        fixture_frame("N5", text)
    spec = CorpusSpec(**{**SMALL.__dict__, "extra_fixtures": (("N5", text),)})
    recs = run_suite([j for j in suite_jobs(spec) if j[0] == "N5"])
    assert recs and all(r["status"] == "fail" for r in recs)
    assert recs[0]["witness"]["error"] == "NotDistributiveError"


def test_manifest(tmp_path):
    frames = gen_frames(SMALL)
    path = tmp_path / "corpus.manifest"
    write_manifest(path, frames, [JoinSemilattice.from_frame(chain(2))])
    lines = path.read_text().splitlines()
    assert len(lines) == len(frames) + 1
    kind, name, n, digest = lines[0].split()
    assert (kind, name, n, len(digest)) == ("frame", "C2", "2", 64)
