"""Sublocales of a finite frame: the coframe S(L) and its distinguished parts.

A sublocale is stored as a bitset over frame element ids (its carrier). The
coframe S(L) is materialized once per frame by :func:`enumerate_sublocales`,
with inclusion order, meet, join and supplement tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .bits import bits, is_subset, popcount, to_mask
from .errors import InconsistencyError, SizeCapExceededError
from .order import FiniteFrame, FinitePoset, Verdict, build_frame, memo

__all__ = [
    "Sublocale",
    "SublocaleLattice",
    "SubCollection",
    "is_sublocale",
    "meet_closure",
    "join_sublocales",
    "enumerate_sublocales",
    "closed",
    "open_",
    "open_carriers",
    "locally_closed",
    "nu",
    "closure",
    "supplement",
    "smooth_sublocales",
    "closed_joins",
    "open_meets",
    "locally_closed_sublocales",
    "is_locally_closed",
    "locally_closed_pairs",
    "zero_dim_decomposition",
    "zero_dim_recompose",
    "is_subfit",
]

DEFAULT_CAP = 16


@dataclass(frozen=True)
class Sublocale:
    """A sublocale of ``frame``; ``carrier`` is the bitset of its elements."""

    frame: FiniteFrame
    carrier: int

    def __iter__(self) -> Iterator[int]:
        return bits(self.carrier)

    def __contains__(self, x: int) -> bool:
        return (self.carrier >> x) & 1 == 1

    def __len__(self) -> int:
        return popcount(self.carrier)

    def __le__(self, other: "Sublocale") -> bool:
        return is_subset(self.carrier, other.carrier)

    def __and__(self, other: "Sublocale") -> "Sublocale":
        return Sublocale(self.frame, self.carrier & other.carrier)

    def __or__(self, other: "Sublocale") -> "Sublocale":
        return Sublocale(self.frame, join_sublocales(self.frame, [self.carrier, other.carrier]))

    @property
    def infimum(self) -> int:
        """The meet ⋀S of the carrier (S contains top, so this is total)."""
        return self.frame.meet_all(self.carrier)

    def to_list(self) -> list[int]:
        return list(bits(self.carrier))

    def format(self) -> str:
        return "{" + ",".join(self.frame.label(x) for x in self) + "}"

    def __repr__(self) -> str:
        return f"Sublocale({self.format()})"


def _carrier(L: FiniteFrame, subset) -> int:
    if isinstance(subset, Sublocale):
        return subset.carrier
    if isinstance(subset, (int, np.integer)):
        return int(subset)
    return to_mask(subset)


def is_sublocale(L: FiniteFrame, subset) -> bool:
    """True iff ``subset`` is closed under all meets (so contains top) and ``a → s``."""
    c = _carrier(L, subset)
    if not (c >> L.top) & 1:
        return False
    members = list(bits(c))
    m, a = L.m, L.a
    for s in members:
        for t in members:
            if not (c >> m[s][t]) & 1:
                return False
        for x in range(L.n):
            if not (c >> a[x][s]) & 1:
                return False
    return True


def meet_closure(L: FiniteFrame, mask: int) -> int:
    """All meets of subsets of ``mask`` (the empty meet contributes top)."""
    closed_ = mask | (1 << L.top)
    todo = list(bits(closed_))
    m = L.m
    while todo:
        x = todo.pop()
        for y in bits(closed_):
            z = m[x][y]
            if not (closed_ >> z) & 1:
                closed_ |= 1 << z
                todo.append(z)
    return closed_


def join_sublocales(L: FiniteFrame, carriers: Iterable[int]) -> int:
    """Join in S(L) by the explicit formula ``{⋀M | M ⊆ ⋃ S_i}``."""
    u = 0
    for c in carriers:
        u |= c
    return meet_closure(L, u)


def closed(L: FiniteFrame, a: int) -> Sublocale:
    """c(a) = ↑a."""
    return Sublocale(L, L.up[a])


def open_carriers(L: FiniteFrame) -> tuple[int, ...]:
    """Carrier bitsets of o(a) for every a, memoized on the frame."""
    return memo(L, "opens", lambda: tuple(to_mask(row) for row in L.a))


def open_(L: FiniteFrame, a: int) -> Sublocale:
    """o(a) = {a → b | b ∈ L}."""
    return Sublocale(L, open_carriers(L)[a])


def locally_closed(L: FiniteFrame, a: int, b: int) -> Sublocale:
    """c(a) ∩ o(b)."""
    return Sublocale(L, L.up[a] & open_carriers(L)[b])


def nu(S: Sublocale, a: int) -> int:
    """ν_S(a): the least element of S above a."""
    L = S.frame
    return L.meet_all(S.carrier & L.up[a])


def closure(S: Sublocale) -> Sublocale:
    """The closure c(⋀S)."""
    return closed(S.frame, S.infimum)


class SublocaleLattice:
    """The coframe S(L) with inclusion order and operation tables.

    ``carriers`` are sorted by (size, bitset), so index 0 is O = {1} and the
    last index is L itself.
    """

    def __init__(self, frame: FiniteFrame, carriers: Iterable[int]):
        self.frame = frame
        self.carriers = tuple(sorted((int(c) for c in carriers), key=lambda c: (popcount(c), c)))
        self.index = {c: i for i, c in enumerate(self.carriers)}
        C = np.array(self.carriers, dtype=np.int64)
        self._C = C
        m = len(C)
        self.leq = (C[:, None] & ~C[None, :]) == 0
        self.meet = np.array(
            [[self.index[a & b] for b in self.carriers] for a in self.carriers], dtype=np.int64
        )
        self.join = np.empty((m, m), dtype=np.int64)
        for i in range(m):
            self.join[i] = self.smallest_containing_batch(C[i] | C)
        self.bottom = 0
        self.top = m - 1
        self.supp = np.empty(m, dtype=np.int64)
        for i in range(m):
            partners = C[self.join[i] == self.top]
            self.supp[i] = self.index[int(np.bitwise_and.reduce(partners))]
        for arr in (self.leq, self.meet, self.join, self.supp):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.carriers)

    def __getitem__(self, i: int) -> Sublocale:
        return Sublocale(self.frame, self.carriers[i])

    def __iter__(self) -> Iterator[Sublocale]:
        return (Sublocale(self.frame, c) for c in self.carriers)

    def index_of(self, S) -> int:
        return self.index[_carrier(self.frame, S)]

    def smallest_containing_batch(self, masks) -> np.ndarray:
        """Index of the least sublocale containing each bitset in ``masks``."""
        u = np.asarray(masks, dtype=np.int64)
        contains = (self._C[None, :] & u[:, None]) == u[:, None]
        return contains.argmax(axis=1)

    def smallest_containing(self, mask: int) -> int:
        return int(self.smallest_containing_batch([mask])[0])

    def join_all(self, indices) -> int:
        r = self.bottom
        for i in indices:
            r = int(self.join[r, i])
        return r

    def meet_all(self, indices) -> int:
        r = self.top
        for i in indices:
            r = int(self.meet[r, i])
        return r

    def poset(self, name: str | None = None) -> FinitePoset:
        labels = [self[i].format() for i in range(len(self))]
        return FinitePoset(self.leq, labels=labels, name=name or f"S({self.frame.name})")

    def verify_join_formula(self) -> Verdict:
        """Check every binary join against ``{⋀M | M ⊆ S ∪ T}``."""
        L = self.frame
        for i, a in enumerate(self.carriers):
            for j in range(i, len(self)):
                b = self.carriers[j]
                if self.carriers[self.join[i, j]] != join_sublocales(L, (a, b)):
                    return Verdict(False, (i, j))
        return Verdict(True)

    def verify_coframe_law(self) -> Verdict:
        """S ∨ (T ∩ U) = (S ∨ T) ∩ (S ∨ U) for all triples (finite case of the coframe law)."""
        J, M = self.join, self.meet
        m = len(self)
        idx = np.arange(m)
        lhs = J[idx[:, None, None], M[None, :, :]]
        rhs = M[J[:, :, None], J[:, None, :]]
        bad = lhs != rhs
        if bad.any():
            return Verdict(False, tuple(int(v) for v in np.argwhere(bad)[0]))
        return Verdict(True)


def enumerate_sublocales(L: FiniteFrame, cap: int = DEFAULT_CAP) -> SublocaleLattice:
    """All sublocales of ``L`` by a vectorized scan over subsets containing top.

    Raises ``SizeCapExceededError`` when ``L`` has more than ``cap`` elements.
    The result is memoized on the frame.
    """
    if L.n > cap:
        raise SizeCapExceededError(f"{L.n} elements exceeds the subset-scan cap {cap}", witness=L.n)

    def compute():
        n = L.n
        # every subset that contains top: insert the top bit into all (n-1)-bit patterns
        low = np.arange(1 << (n - 1), dtype=np.int64)
        t = L.top
        cand = ((low >> t) << (t + 1)) | (low & ((1 << t) - 1)) | (1 << t)
        ok = np.ones(len(cand), dtype=bool)
        has = [((cand >> x) & 1).astype(bool) for x in range(n)]
        m, a = L.m, L.a
        for s in range(n):
            for u in range(s + 1, n):
                w = m[s][u]
                if w != s and w != u:
                    ok &= ~(has[s] & has[u] & ~has[w])
            for x in range(n):
                w = a[x][s]
                if w != s:
                    ok &= ~has[s] | has[w]
        return SublocaleLattice(L, cand[ok].tolist())

    return memo(L, ("S", cap), compute)


def _lattice(L: FiniteFrame, SL: SublocaleLattice | None) -> SublocaleLattice:
    return SL if SL is not None else enumerate_sublocales(L)


def supplement(SL: SublocaleLattice, S) -> Sublocale:
    """S^#: the least T with S ∨ T = L (co-pseudocomplement in the coframe S(L))."""
    return SL[int(SL.supp[SL.index_of(S)])]


class SubCollection:
    """A sub-collection of S(L) (e.g. S_b, S_c, S_o), ordered by inclusion."""

    def __init__(self, lattice: SublocaleLattice, indices: Iterable[int], name: str):
        self.lattice = lattice
        self.indices = tuple(sorted(set(int(i) for i in indices)))
        self.name = name
        self.position = {i: k for k, i in enumerate(self.indices)}

    @property
    def frame(self) -> FiniteFrame:
        return self.lattice.frame

    @property
    def carriers(self) -> tuple[int, ...]:
        return tuple(self.lattice.carriers[i] for i in self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[Sublocale]:
        return (self.lattice[i] for i in self.indices)

    def __contains__(self, S) -> bool:
        c = _carrier(self.frame, S)
        return self.lattice.index.get(c, -1) in self.position

    @property
    def leq(self) -> np.ndarray:
        ix = np.array(self.indices)
        return self.lattice.leq[np.ix_(ix, ix)]

    def poset(self) -> FinitePoset:
        labels = [self.lattice[i].format() for i in self.indices]
        return FinitePoset(self.leq, labels=labels, name=f"{self.name}({self.frame.name})")

    def is_boolean(self) -> Verdict:
        """Bounded, distributive, and every element complemented within the collection."""
        try:
            F = build_frame(self.poset())
        except Exception as exc:  # not a distributive lattice
            return Verdict(False, str(exc))
        for x in range(F.n):
            if not any(F.m[x][y] == F.bottom and F.j[x][y] == F.top for y in range(F.n)):
                return Verdict(False, self.indices[x])
        return Verdict(True)

    def is_frame(self) -> Verdict:
        try:
            build_frame(self.poset())
        except Exception as exc:
            return Verdict(False, str(exc))
        return Verdict(True)


def _join_closure(SL: SublocaleLattice, gens: Iterable[int]) -> set[int]:
    out = {SL.bottom}
    todo = [SL.bottom]
    gens = sorted(set(gens))
    while todo:
        x = todo.pop()
        for g in gens:
            y = int(SL.join[x, g])
            if y not in out:
                out.add(y)
                todo.append(y)
    return out


def _meet_closure_idx(SL: SublocaleLattice, gens: Iterable[int]) -> set[int]:
    out = {SL.top}
    todo = [SL.top]
    gens = sorted(set(gens))
    while todo:
        x = todo.pop()
        for g in gens:
            y = int(SL.meet[x, g])
            if y not in out:
                out.add(y)
                todo.append(y)
    return out


def locally_closed_sublocales(L: FiniteFrame, SL: SublocaleLattice | None = None) -> SubCollection:
    SL = _lattice(L, SL)
    idx = {SL.index[locally_closed(L, a, b).carrier] for a in range(L.n) for b in range(L.n)}
    return SubCollection(SL, idx, "S_lc")


def smooth_sublocales(L: FiniteFrame, SL: SublocaleLattice | None = None) -> SubCollection:
    """S_b(L): sublocales fixed by double supplement.

    Cross-checked against the join-closure of the locally closed sublocales and
    required to be a Boolean algebra; a mismatch raises ``InconsistencyError``.
    """
    SL = _lattice(L, SL)

    def compute():
        supp = SL.supp
        fixed = {i for i in range(len(SL)) if supp[supp[i]] == i}
        joins = _join_closure(SL, locally_closed_sublocales(L, SL).indices)
        if fixed != joins:
            raise InconsistencyError("S^## = S disagrees with joins of locally closed", witness=sorted(fixed ^ joins))
        coll = SubCollection(SL, fixed, "S_b")
        verdict = coll.is_boolean()
        if not verdict:
            raise InconsistencyError("S_b(L) is not Boolean", witness=verdict.witness)
        return coll

    return memo(SL, "S_b", compute)


def closed_joins(L: FiniteFrame, SL: SublocaleLattice | None = None) -> SubCollection:
    """S_c(L): all joins of closed sublocales (the empty join is O)."""
    SL = _lattice(L, SL)
    gens = [SL.index[L.up[a]] for a in range(L.n)]
    return memo(SL, "S_c", lambda: SubCollection(SL, _join_closure(SL, gens), "S_c"))


def open_meets(L: FiniteFrame, SL: SublocaleLattice | None = None) -> SubCollection:
    """S_o(L): all intersections of open sublocales (the empty intersection is L)."""
    SL = _lattice(L, SL)
    gens = [SL.index[open_(L, a).carrier] for a in range(L.n)]
    return memo(SL, "S_o", lambda: SubCollection(SL, _meet_closure_idx(SL, gens), "S_o"))


def is_locally_closed(S: Sublocale, SL: SublocaleLattice | None = None) -> Verdict:
    """Decide whether S = c(a) ∩ o(b) for some a, b.

    Uses the canonical candidate (⋀S, ν_{S^#}(⋀S)); on success the witness
    is that canonical pair.
    """
    L = S.frame
    SL = _lattice(L, SL)
    m = S.infimum
    v = nu(supplement(SL, S), m)
    if S.carrier == locally_closed(L, m, v).carrier:
        return Verdict(True, (m, v))
    return Verdict(False, (m, v))


def locally_closed_pairs(S: Sublocale) -> list[tuple[int, int]]:
    """Brute force: every (a, b) with S = c(a) ∩ o(b)."""
    L = S.frame
    opens = [to_mask(L.a[b]) for b in range(L.n)]
    return [
        (a, b) for a in range(L.n) for b in range(L.n) if L.up[a] & opens[b] == S.carrier
    ]


def _open_or_closed(SL: SublocaleLattice, a: int, b: int) -> int:
    L = SL.frame
    return SL.carriers[SL.join[SL.index[open_(L, a).carrier], SL.index[L.up[b]]]]


def zero_dim_decomposition(S: Sublocale, SL: SublocaleLattice | None = None) -> tuple[tuple[int, int], ...]:
    """Every pair (a, b) with S ⊆ o(a) ∨ c(b).

    Their intersection recovers S (see :func:`zero_dim_recompose`). For S = L
    the list contains only pairs with o(a) ∨ c(b) = L.
    """
    L = S.frame
    SL = _lattice(L, SL)
    return tuple(
        (a, b)
        for a in range(L.n)
        for b in range(L.n)
        if is_subset(S.carrier, _open_or_closed(SL, a, b))
    )


def zero_dim_recompose(L: FiniteFrame, pairs, SL: SublocaleLattice | None = None) -> Sublocale:
    """⋂ o(a) ∨ c(b) over ``pairs`` (the empty intersection is L)."""
    SL = _lattice(L, SL)
    c = L.all
    for a, b in pairs:
        c &= _open_or_closed(SL, a, b)
    return Sublocale(L, c)


def is_subfit(L: FiniteFrame) -> Verdict:
    """a ≰ b implies some c has a ∨ c = 1 ≠ b ∨ c. Witness: the failing (a, b)."""
    j, top = L.j, L.top
    for a in range(L.n):
        for b in range(L.n):
            if L.le(a, b):
                continue
            if not any(j[a][c] == top and j[b][c] != top for c in range(L.n)):
                return Verdict(False, (a, b))
    return Verdict(True)
