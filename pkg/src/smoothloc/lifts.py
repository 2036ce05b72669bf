"""Frame morphisms, the well-definedness conditions, and lifts to sublocale collections.

Each well-definedness condition has the shape "a generator sits below (or
above) a combination of generators in the domain, so its image sits below
(or above) the same combination of images in the codomain". Only the pair
(domain combination, codomain combination) matters, so the checks run a
breadth-first search over the reachable pairs. That covers every finite
family without a size cap. Witness families are rebuilt from parent links.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .bits import bits
from .bruns_lakser import (
    JoinHom,
    admissible_closure_batch,
    is_admissible_morphism,
    iter_upper_sets,
    lift_AU,
    sample_upper_sets,
)
from .correspondence import correspondence, iso_table
from .errors import NoLiftError, NotAMorphismError
from .lc import lc_elements, lc_image
from .order import FiniteFrame, Verdict, build_frame, lattice_homs, memo
from .reports import record
from .sublocales import (
    SublocaleLattice,
    enumerate_sublocales,
    locally_closed,
    open_,
    open_carriers,
    smooth_sublocales,
)

__all__ = [
    "FrameMorphism",
    "SbLift",
    "lc_hom",
    "check_WDc",
    "check_WDo",
    "check_WDs",
    "check_WDb",
    "is_strongly_exact_meet",
    "is_locally_exact_morphism",
    "build_sb_lift",
    "sb_lift_candidates",
    "check_s_lift",
    "check_wd_link",
    "identity",
]


class FrameMorphism:
    """A map of finite frames preserving 0, 1, binary meets and binary joins."""

    def __init__(self, dom: FiniteFrame, cod: FiniteFrame, mapping, name: str = ""):
        f = np.asarray(mapping, dtype=np.int64)
        if f.shape != (dom.n,) or (len(f) and (f.min() < 0 or f.max() >= cod.n)):
            raise NotAMorphismError("mapping must send every domain id to a codomain id")
        if f[dom.bottom] != cod.bottom or f[dom.top] != cod.top:
            raise NotAMorphismError("0 or 1 not preserved")
        for table, what in ((dom.meet, cod.meet), (dom.join, cod.join)):
            bad = what[f[:, None], f[None, :]] != f[table]
            if bad.any():
                x, y = map(int, np.argwhere(bad)[0])
                raise NotAMorphismError(f"{dom.label(x)}, {dom.label(y)}: operation not preserved", witness=(x, y))
        self.dom, self.cod, self.map, self.name = dom, cod, f, name
        self.f = f.tolist()

    def __call__(self, x: int) -> int:
        return self.f[x]

    def __repr__(self) -> str:
        return f"FrameMorphism({self.name or '?'}: {self.dom.name} -> {self.cod.name}, {self.f})"


def identity(L: FiniteFrame) -> FrameMorphism:
    return FrameMorphism(L, L, range(L.n), name=f"id_{L.name}")


def lc_hom(f: FrameMorphism) -> JoinHom:
    """LC(f): (a,b) ↦ lc(f(a), f(b)) as a join-semilattice map LC(dom) → LC(cod)."""

    def compute():
        A, B = lc_elements(f.dom), lc_elements(f.cod)
        return JoinHom(A, B, [B.index[lc_image(f, p)] for p in A.pairs], name=f"LC({f.name})")

    return memo(f, "LC", compute)


@dataclass
class _Search:
    """Outcome of a well-definedness search: failing family and target, if any."""

    ok: bool
    family: tuple = ()
    target: object = None
    states: int = 0


def _wd_search(
    dom_lat: SublocaleLattice,
    cod_lat: SublocaleLattice,
    gens: list,
    gen_dom: list[int],
    gen_cod: list[int],
    combine: str,
    targets: list,
    t_dom: list[int],
    t_cod: list[int],
    below: bool,
) -> _Search:
    """BFS over (⊕ gen_dom[F], ⊕ gen_cod[F]) for nonempty families F, ⊕ = join or meet.

    With ``below`` the premise is target ⊆ combination, otherwise
    combination ⊆ target; the conclusion is the same relation in the codomain.
    """
    Dop = dom_lat.join if combine == "join" else dom_lat.meet
    Cop = cod_lat.join if combine == "join" else cod_lat.meet
    Td = np.array(t_dom, dtype=np.int64)
    Tc = np.array(t_cod, dtype=np.int64)
    # distinct generator images, first occurrence kept for witness families
    steps = list({(d, c): (g, d, c) for g, (d, c) in reversed(list(enumerate(zip(gen_dom, gen_cod))))}.values())
    parent: dict[tuple[int, int], tuple | None] = {}
    queue = deque()
    for g, (d, c) in enumerate(zip(gen_dom, gen_cod)):
        s = (d, c)
        if s not in parent:
            parent[s] = (None, g)
            queue.append(s)
    while queue:
        s = queue.popleft()
        d, c = s
        if below:
            premise = dom_lat.leq[Td, d]
            conclusion = cod_lat.leq[Tc, c]
        else:
            premise = dom_lat.leq[d, Td]
            conclusion = cod_lat.leq[c, Tc]
        bad = np.flatnonzero(premise & ~conclusion)
        if len(bad):
            fam = []
            cur = s
            while cur is not None:
                prev, g = parent[cur]
                fam.append(gens[g])
                cur = prev
            return _Search(False, tuple(reversed(fam)), targets[int(bad[0])], len(parent))
        for g, gd, gc in steps:
            t = (int(Dop[d, gd]), int(Cop[c, gc]))
            if t not in parent:
                parent[t] = (s, g)
                queue.append(t)
    return _Search(True, states=len(parent))


def _lattices(f: FrameMorphism):
    return enumerate_sublocales(f.dom), enumerate_sublocales(f.cod)


def _verdict(res: _Search) -> Verdict:
    if res.ok:
        return Verdict(True, {"states": res.states})
    return Verdict(False, {"family": res.family, "target": res.target})


def check_WDc(f: FrameMorphism) -> Verdict:
    """c(x) ⊆ ⋁ c(x_i) implies c(f x) ⊆ ⋁ c(f x_i)."""
    A, B = _lattices(f)
    L, M = f.dom, f.cod
    xs = list(range(L.n))
    gd = [A.index[L.up[x]] for x in xs]
    gc = [B.index[M.up[f(x)]] for x in xs]
    return _verdict(_wd_search(A, B, xs, gd, gc, "join", xs, gd, gc, below=True))


def check_WDo(f: FrameMorphism) -> Verdict:
    """⋂ o(x_i) ⊆ o(x) implies ⋂ o(f x_i) ⊆ o(f x)."""
    A, B = _lattices(f)
    L, M = f.dom, f.cod
    xs = list(range(L.n))
    gd = [A.index[open_(L, x).carrier] for x in xs]
    gc = [B.index[open_(M, f(x)).carrier] for x in xs]
    return _verdict(_wd_search(A, B, xs, gd, gc, "meet", xs, gd, gc, below=False))


def _open_or_closed(SL: SublocaleLattice, L: FiniteFrame, x: int, y: int) -> int:
    return int(SL.join[SL.index[open_(L, x).carrier], SL.index[L.up[y]]])


def check_WDs(f: FrameMorphism) -> Verdict:
    """⋂ (o(x_i) ∨ c(y_i)) ⊆ o(x) ∨ c(y) implies ⋂ (o(f x_i) ∨ c(f y_i)) ⊆ o(f x) ∨ c(f y)."""
    A, B = _lattices(f)
    L, M = f.dom, f.cod
    pairs = [(x, y) for x in range(L.n) for y in range(L.n)]
    gd = [_open_or_closed(A, L, x, y) for x, y in pairs]
    gc = [_open_or_closed(B, M, f(x), f(y)) for x, y in pairs]
    return _verdict(_wd_search(A, B, pairs, gd, gc, "meet", pairs, gd, gc, below=False))


def check_WDb(f: FrameMorphism) -> Verdict:
    """c(x) ∩ o(y) ⊆ ⋁ c(x_i) ∩ o(y_i) implies c(f x) ∩ o(f y) ⊆ ⋁ c(f x_i) ∩ o(f y_i)."""
    return memo(f, "WDb", lambda: _check_WDb(f))


def _check_WDb(f: FrameMorphism) -> Verdict:
    A, B = _lattices(f)
    L, M = f.dom, f.cod
    pairs = [(x, y) for x in range(L.n) for y in range(L.n)]
    gd = [A.index[locally_closed(L, x, y).carrier] for x, y in pairs]
    gc = [B.index[locally_closed(M, f(x), f(y)).carrier] for x, y in pairs]
    return _verdict(_wd_search(A, B, pairs, gd, gc, "join", pairs, gd, gc, below=True))


def is_strongly_exact_meet(L: FiniteFrame, family) -> bool:
    """⋂ o(x_i) = o(⋀ x_i)."""
    fam = list(family)
    if not fam:
        raise ValueError("family must be nonempty")
    opens = open_carriers(L)
    inter = L.all
    for x in fam:
        inter &= opens[x]
    return inter == opens[L.meet_all(fam)]


def is_locally_exact_morphism(f: FrameMorphism, **sweep) -> Verdict:
    """LC(f) is an admissible map of join-semilattices.

    Failing witness: ``(family of LcPair, mode)``.
    """
    v = is_admissible_morphism(lc_hom(f), **sweep)
    if v:
        return v
    ids, mode = v.witness
    LC = lc_elements(f.dom)
    return Verdict(False, (tuple(LC.pairs[i] for i in ids), mode))


def _sb_frame(L: FiniteFrame) -> tuple[FiniteFrame, tuple[int, ...]]:
    """S_b(L) as a FiniteFrame, plus the S(L) index of each of its elements."""

    def compute():
        coll = smooth_sublocales(L)
        return build_frame(coll.poset()), coll.indices

    return memo(L, "S_b-frame", compute)


@dataclass
class SbLift:
    """The lift S_b(dom) → S_b(cod); ``table`` maps S(dom) indices to S(cod) indices."""

    morphism: FrameMorphism
    table: dict[int, int]
    checks: dict[str, bool] = field(default_factory=dict)

    def rows(self) -> list[tuple[str, str]]:
        A, B = _lattices(self.morphism)
        return [(A[s].format(), B[t].format()) for s, t in sorted(self.table.items())]


def build_sb_lift(f: FrameMorphism) -> SbLift:
    """Lift f to S_b, or raise ``NoLiftError`` carrying the WDb-violating family.

    f̄(S) is the join of c(f a) ∩ o(f b) over all c(a) ∩ o(b) ⊆ S. The result
    is verified to be a frame map on S_b, to send o(x) to o(f x), and to agree
    with AU(LC(f)) transported through the completion isomorphisms.
    """
    wd = check_WDb(f)
    if not wd:
        raise NoLiftError("WDb fails", witness=wd.witness)
    L, M = f.dom, f.cod
    A, B = _lattices(f)
    src = smooth_sublocales(L, A)
    dst = set(smooth_sublocales(M, B).indices)
    pairs = [(x, y) for x in range(L.n) for y in range(L.n)]
    gd = np.array([A.index[locally_closed(L, x, y).carrier] for x, y in pairs])
    gc = [B.index[locally_closed(M, f(x), f(y)).carrier] for x, y in pairs]
    table = {}
    for s in src.indices:
        inside = np.flatnonzero(A.leq[gd, s])
        table[s] = B.join_all(gc[k] for k in inside)

    def frame_map() -> bool:
        if any(t not in dst for t in table.values()):
            return False
        if table[A.bottom] != B.bottom or table[A.top] != B.top:
            return False
        for s in src.indices:
            for t in src.indices:
                if table[int(A.meet[s, t])] != B.meet[table[s], table[t]]:
                    return False
                if table[int(A.join[s, t])] != B.join[table[s], table[t]]:
                    return False
        return True

    def square() -> bool:
        return all(
            table[A.index[open_(L, x).carrier]] == B.index[open_(M, f(x)).carrier] for x in range(L.n)
        )

    def transport() -> bool:
        iso_l = iso_table(L, "smooth").forward()
        iso_m = iso_table(M, "smooth").backward()
        au = lift_AU(lc_hom(f))
        return all(iso_m[au(iso_l[s])] == t for s, t in table.items())

    checks = {"frame-map": frame_map(), "square": square(), "transport": transport()}
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise NoLiftError(f"candidate lift fails: {', '.join(failed)}", witness=failed)
    return SbLift(f, table, checks)


def sb_lift_candidates(f: FrameMorphism) -> list[dict[int, int]]:
    """Every frame map S_b(dom) → S_b(cod) with o(x) ↦ o(f x), as S(L)-index tables."""
    L, M = f.dom, f.cod
    A, B = _lattices(f)
    FL, idx_l = _sb_frame(L)
    FM, idx_m = _sb_frame(M)
    pos_l = {s: k for k, s in enumerate(idx_l)}
    pos_m = {s: k for k, s in enumerate(idx_m)}
    fixed = {
        pos_l[A.index[open_(L, x).carrier]]: pos_m[B.index[open_(M, f(x)).carrier]] for x in range(L.n)
    }
    out = []
    for h in lattice_homs(FL, FM, fixed=fixed, require_top=True):
        out.append({idx_l[k]: idx_m[v] for k, v in enumerate(h)})
    return out


def check_s_lift(f: FrameMorphism) -> list[dict]:
    """WDs, then the assignment o(x) ∨ c(y) ↦ o(f x) ∨ c(f y) extended by intersections.

    The extension g(S) = ⋂ {o(f x) ∨ c(f y) | S ⊆ o(x) ∨ c(y)} must agree
    with the assignment on generators, be monotone, and preserve binary
    intersections of generators.
    """
    L, M = f.dom, f.cod
    A, B = _lattices(f)
    name = f.name or f"{L.name}->{M.name}"
    wds = check_WDs(f)
    out = [record(name, "WDs", bool(wds), wds.witness)]
    pairs = [(x, y) for x in range(L.n) for y in range(L.n)]
    gd = np.array([_open_or_closed(A, L, x, y) for x, y in pairs])
    gc = [_open_or_closed(B, M, f(x), f(y)) for x, y in pairs]

    def g(s: int) -> int:
        return B.meet_all(gc[k] for k in np.flatnonzero(A.leq[s, gd]))

    ext = {s: g(s) for s in range(len(A))}
    agrees = next((pairs[k] for k in range(len(pairs)) if ext[int(gd[k])] != gc[k]), None)
    monotone = next(
        ((s, t) for s in range(len(A)) for t in range(len(A)) if A.leq[s, t] and not B.leq[ext[s], ext[t]]),
        None,
    )
    meets = next(
        (
            (pairs[i], pairs[k])
            for i in range(len(pairs))
            for k in range(i, len(pairs))
            if ext[int(A.meet[gd[i], gd[k]])] != B.meet[gc[i], gc[k]]
        ),
        None,
    )
    out.append(record(name, "s-lift-generators", agrees is None, agrees))
    out.append(record(name, "s-lift-monotone", monotone is None, monotone))
    out.append(record(name, "s-lift-meets", meets is None, meets))
    return out


def check_wd_link(L: FiniteFrame, seed: int = 0, limit: int = 20) -> dict:
    """c(x) ∩ o(y) ⊆ ⋁ c(x_i) ∩ o(y_i) ⇔ lc(x, y) ∈ A(⋃ ↑lc(x_i, y_i)).

    Families are swept as upper sets of LC(L) (every union of principal upper
    sets is one): all of them up to ``limit`` elements, else a seeded sample.
    """
    LC = lc_elements(L)
    SL = enumerate_sublocales(L)
    corr = correspondence(L, "smooth")
    uppers = list(iter_upper_sets(LC)) if LC.n <= limit else sample_upper_sets(LC, 256, seed=seed)
    closures = admissible_closure_batch(LC, uppers)
    joins = corr.psi_batch(uppers)
    pairs = [(x, y) for x in range(L.n) for y in range(L.n)]
    lc_ids = np.array([LC.id_of(x, y) for x, y in pairs])
    gens = np.array([SL.index[locally_closed(L, x, y).carrier] for x, y in pairs])
    for U, A, J in zip(uppers, closures, joins.tolist()):
        left = SL.leq[gens, J]
        right = ((A >> lc_ids) & 1).astype(bool)
        bad = np.flatnonzero(left != right)
        if len(bad):
            return record(L.name, "wd-link", False, {"upper": [LC.label(i) for i in bits(U)], "pair": pairs[bad[0]]})
    return record(L.name, "wd-link", True, {"upper_sets": len(uppers)})
