"""Deterministic generation of frames, join-semilattices and morphisms, and suite runs."""

from __future__ import annotations

import hashlib
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product as cartesian
from pathlib import Path
from typing import Callable, Iterable, Iterator

import networkx as nx
import numpy as np

from .bits import bits, popcount
from .bruns_lakser import JoinHom, JoinSemilattice
from .catalog import boolean, chain, downset_lattice, downsets, product
from .errors import LatticeError, SpecTooLargeError
from .formats import emit_lattice, parse_lattice
from .lifts import FrameMorphism
from .order import FiniteFrame, FinitePoset, build_frame, lattice_homs
from .reports import FAIL, dumps, jsonable

__all__ = [
    "CorpusSpec",
    "canonical_key",
    "is_isomorphic",
    "Deduper",
    "enumerate_posets",
    "enumerate_preorders",
    "topology_frames",
    "distributive_frames",
    "gen_frames",
    "gen_semilattices",
    "gen_join_homs",
    "join_hom_array",
    "gen_morphisms",
    "corpus_morphisms",
    "corpus_join_homs",
    "run_suite",
    "write_manifest",
]

# a CorpusSpec above these sizes is refused: subset scans become infeasible
FRAME_LIMIT = 12
SEMILATTICE_LIMIT = 8
TOPOLOGY_LIMIT = 4


@dataclass(frozen=True)
class CorpusSpec:
    max_frame_size: int = 8
    max_semilattice_size: int = 6
    topology_points: int = 4
    morphism_frame_size: int = 6
    seed: int = 0
    chains: bool = True
    booleans: bool = True
    products: bool = True
    topologies: bool = True
    distributive: bool = True
    exhaustive_cap: int = 12
    max_family_size: int = 4
    samples: int = 256
    extra_fixtures: tuple[tuple[str, str], ...] = field(default=())

    def validate(self) -> None:
        if self.max_frame_size > FRAME_LIMIT:
            raise SpecTooLargeError(f"max_frame_size {self.max_frame_size} > {FRAME_LIMIT}")
        if self.max_semilattice_size > SEMILATTICE_LIMIT:
            raise SpecTooLargeError(f"max_semilattice_size {self.max_semilattice_size} > {SEMILATTICE_LIMIT}")
        if self.topology_points > TOPOLOGY_LIMIT:
            raise SpecTooLargeError(f"topology_points {self.topology_points} > {TOPOLOGY_LIMIT}")
        if self.morphism_frame_size > self.max_frame_size and self.morphism_frame_size > 2 ** self.topology_points:
            raise SpecTooLargeError("morphism_frame_size exceeds every generated frame size")

    @property
    def sweep(self) -> dict:
        return dict(exhaustive_cap=self.exhaustive_cap, max_size=self.max_family_size, samples=self.samples, seed=self.seed)


# isomorphism ----------------------------------------------------------------


def _refined_classes(P: FinitePoset, rounds: int = 3) -> list[tuple]:
    """Per-element invariant: down/up sizes refined by neighbour invariants."""
    inv = [(popcount(P.down[i]), popcount(P.up[i])) for i in range(P.n)]
    for _ in range(rounds):
        inv = [
            (
                inv[i],
                tuple(sorted(inv[j] for j in bits(P.down[i]) if j != i)),
                tuple(sorted(inv[j] for j in bits(P.up[i]) if j != i)),
            )
            for i in range(P.n)
        ]
        # compress to keep the tuples small
        table = {v: k for k, v in enumerate(sorted(set(inv)))}
        inv = [(table[v],) for v in inv]
    return inv


def canonical_key(P: FinitePoset, perm_budget: int = 40320) -> tuple:
    """Isomorphism-invariant key for a poset.

    Elements are grouped by a refined invariant and the classes ordered
    canonically; within that frame the lexicographically least adjacency
    matrix over class-respecting relabelings is used when the number of such
    relabelings is at most ``perm_budget``. Otherwise the key is only the
    invariant signature, so equal keys need confirming with
    :func:`is_isomorphic`.
    """
    inv = _refined_classes(P)
    classes: dict[tuple, list[int]] = {}
    for i, v in enumerate(inv):
        classes.setdefault(v, []).append(i)
    order = sorted(classes)
    signature = tuple((v, len(classes[v])) for v in order)
    count = math.prod(math.factorial(len(classes[v])) for v in order)
    if count > perm_budget:
        return (P.n, signature, None)
    leq = P.leq
    best = None
    for choice in cartesian(*(permutations(classes[v]) for v in order)):
        perm = [i for block in choice for i in block]
        word = leq[np.ix_(perm, perm)].tobytes()
        if best is None or word < best:
            best = word
    return (P.n, signature, best)


def is_isomorphic(P: FinitePoset, Q: FinitePoset) -> bool:
    """Exact order-isomorphism test via networkx on the cover digraphs."""
    if P.n != Q.n:
        return False
    G = nx.DiGraph()
    G.add_nodes_from(range(P.n))
    G.add_edges_from(P.covers)
    H = nx.DiGraph()
    H.add_nodes_from(range(Q.n))
    H.add_edges_from(Q.covers)
    return nx.is_isomorphic(G, H)


class Deduper:
    """Keeps the first representative of each isomorphism class."""

    def __init__(self):
        self.buckets: dict[tuple, list[FinitePoset]] = {}

    def add(self, P: FinitePoset) -> bool:
        """True when P is new (and records it)."""
        key = canonical_key(P)
        bucket = self.buckets.setdefault(key, [])
        if any(is_isomorphic(P, Q) for Q in bucket):
            return False
        bucket.append(P)
        return True


# posets, preorders, topologies ------------------------------------------------


def _poset_from_down(down: list[int], name: str = "") -> FinitePoset:
    n = len(down)
    leq = np.array([[(down[j] >> i) & 1 == 1 for j in range(n)] for i in range(n)], dtype=bool)
    return FinitePoset(leq, name=name)


def enumerate_posets(max_points: int, max_downsets: int | None = None) -> list[FinitePoset]:
    """All posets up to isomorphism with at most ``max_points`` points.

    Built by repeatedly adding a new maximal element above a down-set; with
    ``max_downsets`` the search is pruned to posets with at most that many
    down-sets (adding a maximal element never decreases the count).
    """
    out: list[FinitePoset] = []
    level = [[]]
    for n in range(1, max_points + 1):
        nxt = []
        dedup = Deduper()
        for down in level:
            P = _poset_from_down(down) if down else None
            below_choices = downsets(P) if P is not None else [0]
            for d in below_choices:
                new = down + [d | (1 << len(down))]
                Q = _poset_from_down(new)
                if max_downsets is not None and len(downsets(Q)) > max_downsets:
                    continue
                if dedup.add(Q):
                    nxt.append(new)
        out.extend(_poset_from_down(d, name=f"P{n}_{k}") for k, d in enumerate(nxt))
        level = nxt
    return out


def enumerate_preorders(points: int) -> Iterator[np.ndarray]:
    """Every reflexive, transitive relation on ``points`` labelled points."""
    off = [(i, j) for i in range(points) for j in range(points) if i != j]
    for mask in range(1 << len(off)):
        R = np.eye(points, dtype=bool)
        for k, (i, j) in enumerate(off):
            if (mask >> k) & 1:
                R[i, j] = True
        two_step = (R.astype(np.int64) @ R.astype(np.int64)) > 0
        if not (two_step & ~R).any():
            yield R


def _opens_of(R: np.ndarray) -> FinitePoset:
    """Open sets of the specialization topology of a preorder: the up-closed sets."""
    n = len(R)
    opens = []
    for m in range(1 << n):
        if all(not ((m >> i) & 1) or all((m >> j) & 1 for j in range(n) if R[i, j]) for i in range(n)):
            opens.append(m)
    opens.sort(key=lambda m: (popcount(m), m))
    leq = np.array([[a & ~b == 0 for b in opens] for a in opens], dtype=bool)
    return FinitePoset(leq)


def topology_frames(points: int) -> list[FinitePoset]:
    """Open-set lattices of all topologies on 1..``points`` points, deduplicated."""
    dedup = Deduper()
    out = []
    for p in range(1, points + 1):
        for R in enumerate_preorders(p):
            P = _opens_of(R)
            if dedup.add(P):
                out.append(P)
    return out


def distributive_frames(max_size: int) -> list[FinitePoset]:
    """Every distributive lattice with 2..``max_size`` elements, as down-set lattices of posets."""
    out = []
    for P in enumerate_posets(max_size - 1, max_downsets=max_size):
        out.append(downset_lattice(P).poset)
    return out


# frames ------------------------------------------------------------------------


def _name_by_size(prefix: str, P: FinitePoset, counters: dict) -> str:
    k = counters.get(P.n, 0)
    counters[P.n] = k + 1
    return f"{prefix}{P.n}_{k}"


def gen_frames(spec: CorpusSpec = CorpusSpec()) -> list[FiniteFrame]:
    """Frames in a fixed order: chains, Boolean algebras, products, topologies,
    remaining distributive lattices. No two are isomorphic; the first name wins."""
    spec.validate()
    dedup = Deduper()
    out: list[FiniteFrame] = []

    def emit(L: FiniteFrame) -> None:
        if L.n >= 2 and dedup.add(L.poset):
            out.append(L)

    if spec.chains:
        for n in range(2, spec.max_frame_size + 1):
            emit(chain(n))
    if spec.booleans:
        k = 1
        while 2**k <= spec.max_frame_size:
            emit(boolean(k))
            k += 1
    if spec.products:
        base = list(out)
        for i, A in enumerate(base):
            for B in base[i:]:
                if A.n * B.n <= spec.max_frame_size:
                    emit(product(A, B))
    if spec.topologies:
        counters: dict = {}
        for P in topology_frames(spec.topology_points):
            if dedup.add(P):
                out.append(build_frame(P.relabel(name=_name_by_size("T", P, counters))))
    if spec.distributive:
        counters = {}
        for P in distributive_frames(spec.max_frame_size):
            if dedup.add(P):
                out.append(build_frame(P.relabel(name=_name_by_size("D", P, counters))))
    return out


# semilattices and maps -------------------------------------------------------------


def gen_semilattices(max_size: int) -> list[JoinSemilattice]:
    """Every finite join-semilattice with 1..``max_size`` elements up to isomorphism.

    Built from the one-point semilattice by adding a new minimal element whose
    strict up-set U is chosen so that U ∩ ↑y has a least element for every y.
    Ids are assigned top first, so the top is id 0.
    """
    out: list[JoinSemilattice] = []
    level = [[1]]  # up-sets as bitsets, element i has bit i
    for n in range(1, max_size + 1):
        if n > 1:
            nxt = []
            dedup = Deduper()
            for ups in level:
                m = len(ups)
                for U in _upper_sets_of(ups):
                    if all(_has_least(ups, U & ups[y]) for y in range(m)):
                        new = ups + [U | (1 << m)]
                        if dedup.add(_poset_from_up(new)):
                            nxt.append(new)
            level = nxt
        out.extend(JoinSemilattice(_poset_from_up(u, name=f"J{n}_{k}")) for k, u in enumerate(level))
    return out


def _poset_from_up(ups: list[int], name: str = "") -> FinitePoset:
    n = len(ups)
    leq = np.array([[(ups[i] >> j) & 1 == 1 for j in range(n)] for i in range(n)], dtype=bool)
    return FinitePoset(leq, name=name)


def _upper_sets_of(ups: list[int]) -> list[int]:
    n = len(ups)
    out = []
    for m in range(1, 1 << n):
        if all(ups[i] & ~m == 0 for i in bits(m)):
            out.append(m)
    return out


def _has_least(ups: list[int], S: int) -> bool:
    return any(ups[i] == S for i in bits(S))


def gen_join_homs(S: JoinSemilattice, T: JoinSemilattice) -> Iterator[tuple[int, ...]]:
    """Every map S → T preserving binary joins and the top, by backtracking."""
    order = sorted(range(S.n), key=lambda x: (popcount(S.up[x]), x))
    f = [-1] * S.n

    def consistent(x: int) -> bool:
        for y in range(S.n):
            if f[y] < 0:
                continue
            z = S.j[x][y]
            if f[z] >= 0 and f[z] != T.j[f[x]][f[y]]:
                return False
        return True

    def rec(k: int):
        if k == S.n:
            yield tuple(f)
            return
        x = order[k]
        choices = [T.top] if x == S.top else range(T.n)
        for v in choices:
            f[x] = v
            if consistent(x):
                yield from rec(k + 1)
        f[x] = -1

    yield from rec(0)


def join_hom_array(S: JoinSemilattice, T: JoinSemilattice) -> np.ndarray:
    """Every join- and top-preserving map S → T as rows of an (h, |S|) array.

    Same set as :func:`gen_join_homs`, built column by column with numpy.
    Elements are assigned from the top down, so each x ∨ y is fixed before x.
    """
    order = sorted(range(S.n), key=lambda x: (popcount(S.up[x]), x))
    pos = {x: k for k, x in enumerate(order)}
    P = np.zeros((1, 0), dtype=np.int64)
    for k, x in enumerate(order):
        values = np.array([T.top] if x == S.top else range(T.n), dtype=np.int64)
        P = np.hstack([np.repeat(P, len(values), axis=0), np.tile(values, len(P))[:, None]])
        keep = np.ones(len(P), dtype=bool)
        for y in order[: k + 1]:
            z = S.j[x][y]
            keep &= P[:, pos[z]] == T.join[P[:, k], P[:, pos[y]]]
        P = P[keep]
    out = np.empty_like(P)
    out[:, order] = P
    return out[np.lexsort(out.T[::-1])] if len(out) else out.reshape(0, S.n)


def gen_morphisms(L: FiniteFrame, M: FiniteFrame) -> Iterator[FrameMorphism]:
    """Every frame map L → M (exhaustive via join-irreducibles)."""
    for k, h in enumerate(lattice_homs(L, M)):
        yield FrameMorphism(L, M, h, name=f"{L.name}->{M.name}#{k}")


def corpus_morphisms(frames: Iterable[FiniteFrame], max_size: int) -> list[FrameMorphism]:
    small = [L for L in frames if L.n <= max_size]
    return [f for L in small for M in small for f in gen_morphisms(L, M)]


def corpus_join_homs(semilattices: Iterable[JoinSemilattice]) -> list[JoinHom]:
    sl = list(semilattices)
    return [
        JoinHom(S, T, h, name=f"{S.name}->{T.name}#{k}")
        for S in sl
        for T in sl
        for k, h in enumerate(gen_join_homs(S, T))
    ]


# suite -------------------------------------------------------------------------------


def write_manifest(path, frames: Iterable[FiniteFrame], semilattices: Iterable[JoinSemilattice] = ()) -> None:
    """``corpus.manifest``: one line per object with the sha256 of its canonical text."""
    lines = []
    for L in frames:
        text = emit_lattice(L.poset, L.name)
        lines.append(f"frame {L.name} {L.n} {hashlib.sha256(text.encode()).hexdigest()}")
    for S in semilattices:
        text = emit_lattice(S.poset, S.name)
        lines.append(f"semilattice {S.name} {S.n} {hashlib.sha256(text.encode()).hexdigest()}")
    Path(path).write_text("\n".join(lines) + "\n")


def _run_job(job) -> list[dict]:
    obj_id, fn, args = job
    out = []
    start = time.perf_counter()
    try:
        recs = fn(*args)
    except LatticeError as exc:
        recs = [{"check": getattr(fn, "__name__", "check"), "status": FAIL,
                 "witness": jsonable({"error": type(exc).__name__, "message": str(exc), "witness": exc.witness})}]
    millis = round((time.perf_counter() - start) * 1000.0, 3)
    for r in recs:
        out.append({"id": obj_id, "check": r["check"], "status": r["status"], "witness": r["witness"], "millis": millis})
    return out


def run_suite(
    jobs: list[tuple[str, Callable, tuple]],
    out=None,
    workers: int = 1,
) -> list[dict]:
    """Run ``(object id, check function, args)`` jobs; each returns report records.

    Records keep job order regardless of ``workers``. With ``out`` they are
    written as JSON lines with sorted keys.
    """
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_job, jobs))
    else:
        chunks = [_run_job(j) for j in jobs]
    records = [r for chunk in chunks for r in chunk]
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            for r in records:
                fh.write(dumps(r) + "\n")
    return records


def strip_timing(records: Iterable[dict]) -> list[str]:
    """Report lines without the ``millis`` field, for determinism comparisons."""
    return [json.dumps({k: v for k, v in r.items() if k != "millis"}, sort_keys=True) for r in records]


def fixture_frame(name: str, text: str) -> FiniteFrame:
    """Parse and validate an extra fixture; errors propagate as ``LatticeError``."""
    return build_frame(parse_lattice(text).relabel(name=name))
