"""Bruns–Lakser completion of a finite join-semilattice.

Families and upper sets are bitsets over semilattice ids. The heavy sweeps
(admissibility of many families at once) are vectorized with ``uint64``
down-set masks, so semilattices here are limited to 64 elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .bits import bits, full, is_subset, popcount, to_mask
from .errors import (
    InconsistencyError,
    NotAdmissibleError,
    NotAMorphismError,
    NotASemilatticeError,
    SizeCapExceededError,
)
from .order import FiniteFrame, FinitePoset, Verdict, build_frame, lattice_homs, memo

__all__ = [
    "JoinSemilattice",
    "JoinHom",
    "AUFrame",
    "AULift",
    "meet_exists",
    "is_admissible_family",
    "admissible_batch",
    "admissible_mask_batch",
    "iter_family_batches",
    "admissible_closure",
    "admissible_closure_batch",
    "admissible_closure_bruteforce",
    "is_admissible_upper_set",
    "iter_upper_sets",
    "all_upper_sets",
    "sample_upper_sets",
    "up_embed",
    "enumerate_AU",
    "enumerate_AU_bruteforce",
    "is_admissible_morphism",
    "au_map",
    "lift_AU",
    "candidate_lifts",
]

MAX_ELEMENTS = 64
EXHAUSTIVE_CAP = 12
MAX_FAMILY_SIZE = 4
SAMPLES = 256


class JoinSemilattice:
    """A finite poset in which every pair has a join (hence a top exists)."""

    def __init__(self, poset: FinitePoset, join=None):
        n = poset.n
        if join is None:
            principal = {s: i for i, s in enumerate(poset.up)}
            join = np.empty((n, n), dtype=np.int64)
            for x in range(n):
                for y in range(x, n):
                    g = principal.get(poset.up[x] & poset.up[y])
                    if g is None:
                        raise NotASemilatticeError(
                            f"{poset.label(x)} and {poset.label(y)} have no join", witness=(x, y)
                        )
                    join[x, y] = join[y, x] = g
        join = np.asarray(join, dtype=np.int64)
        self.poset = poset
        self.n = n
        self.join = join
        self.join.setflags(write=False)
        self.j = join.tolist()
        self.top = next(i for i in range(n) if poset.down[i] == full(n))
        self.up = poset.up
        self.down = poset.down
        if n <= MAX_ELEMENTS:
            self.down_u64 = np.array(self.down, dtype=np.uint64)
            self.up_u64 = np.array(self.up, dtype=np.uint64)
            order = np.argsort(self.down_u64)
            self._sorted_down = self.down_u64[order]
            self._sorted_idx = order

    @classmethod
    def from_frame(cls, L: FiniteFrame) -> "JoinSemilattice":
        return cls(L.poset, L.join)

    leq = property(lambda self: self.poset.leq)
    labels = property(lambda self: self.poset.labels)
    name = property(lambda self: self.poset.name)

    def label(self, i: int) -> str:
        return self.poset.label(i)

    def le(self, a: int, b: int) -> bool:
        return (self.down[b] >> a) & 1 == 1

    def join_all(self, ids) -> int:
        ids = list(bits(ids) if isinstance(ids, int) else ids)
        r = ids[0]
        for x in ids[1:]:
            r = self.j[r][x]
        return r

    def principal_lookup(self, masks: np.ndarray) -> np.ndarray:
        """Element whose down-set equals each mask, or -1."""
        pos = np.searchsorted(self._sorted_down, masks)
        pos = np.minimum(pos, self.n - 1)
        hit = self._sorted_down[pos] == masks
        return np.where(hit, self._sorted_idx[pos], -1)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"JoinSemilattice({self.name or '?'}, n={self.n})"


def _family_mask(F) -> int:
    return F if isinstance(F, int) else to_mask(F)


def meet_exists(S: JoinSemilattice, F) -> int | None:
    """The greatest lower bound of the nonempty family F, or None."""
    low = full(S.n)
    for x in bits(_family_mask(F)):
        low &= S.down[x]
    for g in bits(low):
        if S.down[g] == low:
            return g
    return None


def is_admissible_family(S: JoinSemilattice, F) -> Verdict:
    """F is admissible: ⋀F exists and b ∨ ⋀F = ⋀(b ∨ a) for every b.

    Failing witness: ``"empty"``, ``"no-meet"``, or the offending b. Among
    offending elements, one with b ∨ a = ⊤ for every member (a separating
    element) is preferred; otherwise the smallest id is reported.
    """
    fam = list(bits(_family_mask(F)))
    if not fam:
        return Verdict(False, "empty")
    m = meet_exists(S, fam)
    if m is None:
        return Verdict(False, "no-meet")
    bad = [b for b in range(S.n) if meet_exists(S, [S.j[b][a] for a in fam]) != S.j[b][m]]
    if not bad:
        return Verdict(True, m)
    separating = [b for b in bad if all(S.j[b][a] == S.top for a in fam)]
    return Verdict(False, (separating or bad)[0])


def admissible_batch(S: JoinSemilattice, fams: np.ndarray):
    """Vectorized admissibility for a batch of equal-size families.

    ``fams`` has shape (count, k) of element ids. Returns ``(meets, admissible)``
    where ``meets`` is -1 when no meet exists.
    """
    fams = np.asarray(fams, dtype=np.int64)
    D = S.down_u64
    low = np.bitwise_and.reduce(D[fams], axis=1)
    meets = S.principal_lookup(low)
    has = meets >= 0
    m = np.where(has, meets, 0)
    lowb = np.bitwise_and.reduce(D[S.join[:, fams]], axis=2)
    target = D[S.join[:, m]]
    adm = has & (lowb == target).all(axis=0)
    return meets, adm


def admissible_mask_batch(S: JoinSemilattice, fams):
    """Like :func:`admissible_batch` but families are ``uint64`` bitsets of any size."""
    fams = np.asarray(fams, dtype=np.uint64)
    D = S.down_u64
    everything = np.uint64(full(S.n))
    low = np.full(len(fams), everything, dtype=np.uint64)
    lowb = np.full((S.n, len(fams)), everything, dtype=np.uint64)
    for x in range(S.n):
        sel = ((fams >> np.uint64(x)) & np.uint64(1)).astype(bool)
        if not sel.any():
            continue
        low[sel] &= D[x]
        lowb[:, sel] &= D[S.join[:, x]][:, None]
    meets = S.principal_lookup(low)
    has = (meets >= 0) & (fams != 0)
    m = np.where(has, meets, 0)
    target = D[S.join[:, m]]
    adm = has & (lowb == target).all(axis=0)
    return np.where(fams != 0, meets, -1), adm


def iter_family_batches(
    n: int,
    exhaustive_cap: int = EXHAUSTIVE_CAP,
    max_size: int = MAX_FAMILY_SIZE,
    samples: int = SAMPLES,
    seed: int = 0,
) -> Iterator[np.ndarray]:
    """Nonempty families of ``range(n)`` as arrays of shape (count, k), one per size.

    Exhaustive when ``n <= exhaustive_cap``; otherwise every family of size
    at most ``max_size`` plus ``samples`` seeded random larger families.
    """
    if n <= exhaustive_cap:
        for k in range(1, n + 1):
            yield np.array(list(combinations(range(n), k)), dtype=np.int64)
        return
    for k in range(1, max_size + 1):
        yield np.array(list(combinations(range(n), k)), dtype=np.int64)
    rng = np.random.default_rng(seed)
    by_size: dict[int, set] = {}
    for _ in range(samples):
        k = int(rng.integers(max_size + 1, n + 1))
        by_size.setdefault(k, set()).add(tuple(sorted(rng.choice(n, size=k, replace=False).tolist())))
    for k in sorted(by_size):
        yield np.array(sorted(by_size[k]), dtype=np.int64)


def admissible_closure_batch(S: JoinSemilattice, uppers) -> list[int]:
    """A(U) for each upper set U.

    x ∈ A(U) iff the family U ∩ ↑x is admissible with meet x: any admissible
    F ⊆ U with meet x extends to U ∩ ↑x by adjoining elements above x.
    """
    cache = memo(S, "A-cache", dict)
    uppers = [int(u) for u in uppers]
    todo = list(dict.fromkeys(u for u in uppers if u not in cache))
    if todo:
        U = np.asarray(todo, dtype=np.uint64)
        fams = (U[:, None] & S.up_u64[None, :]).ravel()
        meets, adm = admissible_mask_batch(S, fams)
        ok = (adm & (meets == np.tile(np.arange(S.n), len(U)))).reshape(len(U), S.n)
        weights = np.array([1 << x for x in range(S.n)], dtype=np.uint64)
        closed = (ok.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
        cache.update(zip(todo, (int(c) for c in closed)))
    return [cache[u] for u in uppers]


def admissible_closure(S: JoinSemilattice, U: int) -> int:
    """A(U) = {⋀F | F ⊆ U admissible}: the least admissible upper set containing U."""
    return admissible_closure_batch(S, [U])[0]


def admissible_closure_bruteforce(S: JoinSemilattice, U: int, cap: int = 16) -> int:
    """A(U) straight from the definition, scanning every subfamily of U."""
    members = list(bits(U))
    if len(members) > cap:
        raise SizeCapExceededError(f"|U| = {len(members)} exceeds cap {cap}")
    out = 0
    for k in range(1, len(members) + 1):
        for F in combinations(members, k):
            v = is_admissible_family(S, F)
            if v:
                out |= 1 << v.witness
    return out


def is_admissible_upper_set(S: JoinSemilattice, U: int) -> bool:
    return U != 0 and admissible_closure(S, U) == U


def iter_upper_sets(S: JoinSemilattice) -> Iterator[int]:
    """All nonempty upper sets, by backtracking from the top down."""
    order = sorted(range(S.n), key=lambda x: (popcount(S.up[x]), x))
    n = S.n

    def rec(k: int, chosen: int):
        if k == n:
            if chosen:
                yield chosen
            return
        x = order[k]
        yield from rec(k + 1, chosen)
        if is_subset(S.up[x] & ~(1 << x), chosen):
            yield from rec(k + 1, chosen | (1 << x))

    yield from rec(0, 0)


def all_upper_sets(S: JoinSemilattice, cap: int = 50000) -> list[int]:
    """:func:`iter_upper_sets` as a list, memoized; raises past ``cap`` upper sets."""

    def compute():
        out = []
        for k, U in enumerate(iter_upper_sets(S)):
            if k >= cap:
                raise SizeCapExceededError(f"more than {cap} upper sets")
            out.append(U)
        return out

    return memo(S, ("uppers", cap), compute)


def sample_upper_sets(S: JoinSemilattice, count: int, seed: int = 0) -> list[int]:
    """Every principal upper set plus ``count`` seeded random up-closures."""
    rng = np.random.default_rng(seed)
    out = dict.fromkeys(S.up)
    for _ in range(count):
        pick = rng.random(S.n) < rng.random()
        u = 0
        for x in np.flatnonzero(pick):
            u |= S.up[int(x)]
        if u:
            out[u] = None
    return list(out)


def up_embed(S: JoinSemilattice, x: int) -> int:
    """The principal upper set ↑x."""
    return S.up[x]


class AUFrame:
    """AU(S): the admissible upper sets of S ordered by inclusion.

    ``elements`` are bitsets sorted by (size, mask); index 0 is {⊤}. The
    underlying ``frame`` is validated by :func:`build_frame`, and its joins
    and meets are checked against A(U ∪ V) and U ∩ V.
    """

    def __init__(self, S: JoinSemilattice, elements: Iterable[int]):
        self.semilattice = S
        self.elements = tuple(sorted(set(elements), key=lambda u: (popcount(u), u)))
        self.index = {u: i for i, u in enumerate(self.elements)}
        E = self.elements
        leq = np.array([[is_subset(a, b) for b in E] for a in E], dtype=bool)
        labels = ["{" + ",".join(S.label(x) for x in bits(u)) + "}" for u in E]
        self.frame = build_frame(FinitePoset(leq, labels=labels, name=f"AU({S.name})"))
        for i, a in enumerate(E):
            unions = admissible_closure_batch(S, [a | b for b in E])
            for j, b in enumerate(E):
                if E[self.frame.m[i][j]] != a & b:
                    raise InconsistencyError("AU meet is not intersection", witness=(i, j))
                if E[self.frame.j[i][j]] != unions[j]:
                    raise InconsistencyError("AU join is not A(U ∪ V)", witness=(i, j))

    def __len__(self) -> int:
        return len(self.elements)

    def principal(self, x: int) -> int:
        return self.index[self.semilattice.up[x]]

    def verify_frame_law(self) -> Verdict:
        """U ∩ (V ∨ W) = (U ∩ V) ∨ (U ∩ W) over all triples."""
        J, M = self.frame.join, self.frame.meet
        idx = np.arange(len(self))
        bad = M[idx[:, None, None], J[None, :, :]] != J[M[:, :, None], M[:, None, :]]
        if bad.any():
            return Verdict(False, tuple(int(v) for v in np.argwhere(bad)[0]))
        return Verdict(True)


def enumerate_AU(S: JoinSemilattice, cap: int = MAX_ELEMENTS) -> AUFrame:
    """All admissible upper sets, as the join-closure of the principal ones.

    Every admissible upper set is the join in AU(S) of the principal upper
    sets it contains, so closing {⊤} and the principals under A(U ∪ ↑x)
    reaches all of them. Memoized on ``S``.
    """
    if S.n > cap:
        raise SizeCapExceededError(f"{S.n} elements exceeds cap {cap}", witness=S.n)

    def compute():
        found = {S.up[S.top]}
        found.update(S.up)
        todo = list(found)
        while todo:
            u = todo.pop()
            for v in admissible_closure_batch(S, [u | p for p in S.up]):
                if v not in found:
                    found.add(v)
                    todo.append(v)
        return AUFrame(S, found)

    return memo(S, ("AU", cap), compute)


def enumerate_AU_bruteforce(S: JoinSemilattice) -> list[int]:
    """Admissible upper sets by scanning every upper set against the definition."""
    out = []
    for U in iter_upper_sets(S):
        if admissible_closure_bruteforce(S, U, cap=S.n) == U:
            out.append(U)
    return sorted(out, key=lambda u: (popcount(u), u))


class JoinHom:
    """A map of join-semilattices preserving binary joins and the top."""

    def __init__(self, dom: JoinSemilattice, cod: JoinSemilattice, mapping, name: str = ""):
        f = np.asarray(mapping, dtype=np.int64)
        if f.shape != (dom.n,) or f.min() < 0 or f.max() >= cod.n:
            raise NotAMorphismError("mapping does not send dom ids to cod ids")
        if f[dom.top] != cod.top:
            raise NotAMorphismError("top is not preserved", witness=(dom.top,))
        bad = cod.join[f[:, None], f[None, :]] != f[dom.join]
        if bad.any():
            x, y = map(int, np.argwhere(bad)[0])
            raise NotAMorphismError(f"join of {x}, {y} not preserved", witness=(x, y))
        self.dom, self.cod, self.map, self.name = dom, cod, f, name
        self.f = f.tolist()

    def __call__(self, x: int) -> int:
        return self.f[x]

    def __repr__(self) -> str:
        return f"JoinHom({self.name or '?'}: {self.dom.name} -> {self.cod.name}, {self.f})"


def _admissible_families(S: JoinSemilattice, **sweep):
    """Admissible families of S with their meets, memoized per sweep parameters."""
    key = ("adm", tuple(sorted(sweep.items())))

    def compute():
        out = []
        for fams in iter_family_batches(S.n, **sweep):
            meets, adm = admissible_batch(S, fams)
            out.append((fams[adm], meets[adm]))
        return out

    return memo(S, key, compute)


def _classify(f: JoinHom, family) -> str | None:
    """Failure mode of ``f`` on an admissible family, or None if preserved."""
    image = to_mask(f.f[x] for x in family)
    m = meet_exists(f.cod, image)
    if m is None:
        return "meet-missing"
    if not is_admissible_family(f.cod, image):
        return "meet-not-admissible"
    if m != f.f[meet_exists(f.dom, family)]:
        return "meet-not-preserved"
    return None


def is_admissible_morphism(
    f: JoinHom,
    exhaustive_cap: int = EXHAUSTIVE_CAP,
    max_size: int = MAX_FAMILY_SIZE,
    samples: int = SAMPLES,
    seed: int = 0,
) -> Verdict:
    """f sends admissible families to admissible families and preserves their meets.

    Sweeps the domain's families (exhaustively up to ``exhaustive_cap``
    elements). Failing witness: ``(family, mode)``.
    """
    sweep = dict(exhaustive_cap=exhaustive_cap, max_size=max_size, samples=samples, seed=seed)
    for fams, meets in _admissible_families(f.dom, **sweep):
        if not len(fams):
            continue
        images = f.map[fams]
        cmeets, cadm = admissible_batch(f.cod, images)
        bad = ~cadm | (cmeets != f.map[meets])
        if bad.any():
            fam = tuple(int(x) for x in fams[np.flatnonzero(bad)[0]])
            return Verdict(False, (fam, _classify(f, fam)))
    return Verdict(True)


@dataclass(frozen=True)
class AULift:
    """The map AU(f): AU(dom) → AU(cod) as an index table."""

    hom: JoinHom
    dom: AUFrame
    cod: AUFrame
    table: tuple[int, ...]
    preserves_top: bool

    def __call__(self, U: int) -> int:
        return self.cod.elements[self.table[self.dom.index[U]]]


def au_map(f: JoinHom) -> tuple[int, ...]:
    """U ↦ A(⋃{↑f(x) | x ∈ U}) on AU(dom), as indices into AU(cod)."""
    ad, ac = enumerate_AU(f.dom), enumerate_AU(f.cod)
    images = []
    for U in ad.elements:
        v = 0
        for x in bits(U):
            v |= f.cod.up[f.f[x]]
        images.append(v)
    closed = admissible_closure_batch(f.cod, images)
    return tuple(ac.index[c] for c in closed)


def _wd_violation(f: JoinHom, upper_cap: int = 50000):
    """First (V, x) with x ∈ A(V) but f(x) ∉ A(↑f[V]), over all upper sets V."""
    S, T = f.dom, f.cod
    uppers = all_upper_sets(S, upper_cap)
    images = []
    for V in uppers:
        w = 0
        for x in bits(V):
            w |= T.up[f.f[x]]
        images.append(w)
    AV = admissible_closure_batch(S, uppers)
    AW = admissible_closure_batch(T, images)
    for V, a, b in zip(uppers, AV, AW):
        for x in bits(a):
            if not (b >> f.f[x]) & 1:
                return V, x
    return None


def lift_AU(f: JoinHom) -> AULift:
    """Lift f to AU(dom) → AU(cod), or raise ``NotAdmissibleError``.

    The lift exists iff the well-definedness condition holds for every upper
    set. On failure the witness family is V ∩ ↑x for the violating (V, x),
    classified into a failure mode. The returned lift is verified to preserve
    binary meets and all joins and to extend f along ↑; whether it also
    preserves the top is recorded in ``preserves_top``.
    """
    bad = _wd_violation(f)
    if bad is not None:
        V, x = bad
        fam = tuple(bits(V & f.dom.up[x]))
        mode = _classify(f, fam)
        raise NotAdmissibleError(
            f"well-definedness fails at {f.dom.label(x)}; family {fam} mode {mode}",
            witness=fam,
            mode=mode,
        )
    ad, ac = enumerate_AU(f.dom), enumerate_AU(f.cod)
    table = au_map(f)
    A, B = ad.frame, ac.frame
    for i in range(len(ad)):
        for j in range(len(ad)):
            if table[A.m[i][j]] != B.m[table[i]][table[j]] or table[A.j[i][j]] != B.j[table[i]][table[j]]:
                raise InconsistencyError("AU(f) fails to preserve a binary meet or join", witness=(i, j))
    if table[A.bottom] != B.bottom:
        raise InconsistencyError("AU(f) does not preserve the bottom")
    for x in range(f.dom.n):
        if table[ad.principal(x)] != ac.principal(f.f[x]):
            raise InconsistencyError("AU(f) does not extend f along ↑", witness=x)
    return AULift(f, ad, ac, table, table[A.top] == B.top)


def candidate_lifts(f: JoinHom, require_top: bool = False) -> list[tuple[int, ...]]:
    """Every map AU(dom) → AU(cod) preserving 0, ∧, ∨ and sending ↑x to ↑f(x)."""
    ad, ac = enumerate_AU(f.dom), enumerate_AU(f.cod)
    fixed = {ad.principal(x): ac.principal(f.f[x]) for x in range(f.dom.n)}
    return list(lattice_homs(ad.frame, ac.frame, fixed=fixed, require_top=require_top))
