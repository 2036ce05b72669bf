"""Finite posets and finite frames (finite distributive lattices with Heyting arrow).

Elements are dense integer ids ``0..n-1``. Order relations are stored as
read-only boolean matrices; operation tables as read-only integer matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Sequence

import numpy as np

from .bits import bits, full, to_mask
from .errors import NotALatticeError, NotAPosetError, NotDistributiveError

__all__ = [
    "Verdict",
    "FinitePoset",
    "FiniteFrame",
    "build_frame",
    "heyting",
    "pseudocomplement",
    "verify_heyting_laws",
    "subset_fold",
    "memo",
    "join_irreducibles",
    "lattice_homs",
    "lattice_hom_array",
]


@dataclass(frozen=True)
class Verdict:
    """A boolean outcome carrying a witness (counterexample or certificate)."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


def memo(obj, key, compute):
    """Per-object memo for derived structures of immutable objects."""
    cache = obj.__dict__.setdefault("_memo", {})
    if key not in cache:
        cache[key] = compute()
    return cache[key]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _transitive_closure(rel: np.ndarray) -> np.ndarray:
    r = rel.copy()
    for k in range(r.shape[0]):
        r |= r[:, k : k + 1] & r[k : k + 1, :]
    return r


class FinitePoset:
    """A finite partial order on ``range(n)``.

    ``leq[i, j]`` is True iff ``i <= j``. ``down[j]`` and ``up[i]`` are the
    principal down/up sets as bitsets.
    """

    def __init__(self, leq, labels: Sequence[str] | None = None, name: str = ""):
        leq = np.array(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise NotAPosetError(f"order matrix must be square, got {leq.shape}")
        n = leq.shape[0]
        if n == 0:
            raise NotAPosetError("poset must be nonempty")
        if not leq.diagonal().all():
            i = int(np.flatnonzero(~leq.diagonal())[0])
            raise NotAPosetError("relation is not reflexive", witness=(i,))
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise NotAPosetError("relation is not antisymmetric", witness=(i, j))
        comp = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
        if (comp & ~leq).any():
            i, j = map(int, np.argwhere(comp & ~leq)[0])
            raise NotAPosetError("relation is not transitive", witness=(i, j))
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise NotAPosetError(f"expected {n} labels, got {len(labels)}")
        self.n = n
        self.leq = _readonly(leq)
        self.labels = labels
        self.name = name
        self.down = tuple(to_mask(np.flatnonzero(leq[:, j])) for j in range(n))
        self.up = tuple(to_mask(np.flatnonzero(leq[i, :])) for i in range(n))

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]], labels=None, name=""):
        """Build from cover pairs ``(i, j)`` meaning ``i`` is covered by ``j``."""
        rel = np.eye(n, dtype=bool)
        for i, j in covers:
            if not (0 <= i < n and 0 <= j < n):
                raise NotAPosetError(f"cover ({i}, {j}) out of range for {n} elements")
            rel[i, j] = True
        return cls(_transitive_closure(rel), labels=labels, name=name)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        return tuple(sorted((int(i), int(j)) for i, j in np.argwhere(lt & ~between)))

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def relabel(self, labels=None, name=None) -> "FinitePoset":
        return FinitePoset(self.leq, labels=labels, name=self.name if name is None else name)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FinitePoset({self.name or '?'}, n={self.n})"


class FiniteFrame:
    """A finite frame: bounded distributive lattice with Heyting arrow tables.

    Build instances with :func:`build_frame`; the constructor trusts its input.
    """

    def __init__(self, poset: FinitePoset, bottom: int, top: int, meet, join, arrow):
        self.poset = poset
        self.bottom = bottom
        self.top = top
        self.meet = _readonly(np.asarray(meet, dtype=np.int64))
        self.join = _readonly(np.asarray(join, dtype=np.int64))
        self.arrow = _readonly(np.asarray(arrow, dtype=np.int64))
        # nested lists are much faster than numpy for scalar lookups
        self.m = self.meet.tolist()
        self.j = self.join.tolist()
        self.a = self.arrow.tolist()

    n = property(lambda self: self.poset.n)
    leq = property(lambda self: self.poset.leq)
    up = property(lambda self: self.poset.up)
    down = property(lambda self: self.poset.down)
    labels = property(lambda self: self.poset.labels)
    name = property(lambda self: self.poset.name)

    @property
    def all(self) -> int:
        return full(self.n)

    def le(self, a: int, b: int) -> bool:
        return (self.poset.down[b] >> a) & 1 == 1

    def label(self, i: int) -> str:
        return self.poset.label(i)

    def meet_all(self, ids) -> int:
        """Meet of a bitset or iterable of ids; the empty meet is top."""
        it = bits(ids) if isinstance(ids, int) else ids
        r = self.top
        m = self.m
        for x in it:
            r = m[r][x]
        return r

    def join_all(self, ids) -> int:
        """Join of a bitset or iterable of ids; the empty join is bottom."""
        it = bits(ids) if isinstance(ids, int) else ids
        r = self.bottom
        j = self.j
        for x in it:
            r = j[r][x]
        return r

    def heyting(self, a: int, b: int) -> int:
        return self.a[a][b]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FiniteFrame({self.name or '?'}, n={self.n})"


def _pair_table(poset: FinitePoset, which: str) -> np.ndarray:
    n = poset.n
    sets = poset.down if which == "meet" else poset.up
    principal = {s: i for i, s in enumerate(sets)}
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(x, n):
            g = principal.get(sets[x] & sets[y])
            if g is None:
                raise NotALatticeError(
                    f"elements {poset.label(x)} and {poset.label(y)} have no {which}",
                    witness=(x, y),
                )
            table[x, y] = table[y, x] = g
    return table


def build_frame(poset: FinitePoset | FiniteFrame) -> FiniteFrame:
    """Validate a finite poset as a frame and populate its tables.

    Raises ``NotALatticeError`` if some pair lacks a meet or join and
    ``NotDistributiveError`` (with a witness triple) if distributivity fails.
    """
    if isinstance(poset, FiniteFrame):
        poset = poset.poset
    n = poset.n
    meet = _pair_table(poset, "meet")
    join = _pair_table(poset, "join")
    everything = full(n)
    bottom = next(i for i in range(n) if poset.up[i] == everything)
    top = next(i for i in range(n) if poset.down[i] == everything)

    idx = np.arange(n)
    lhs = meet[idx[:, None, None], join[None, :, :]]
    rhs = join[meet[:, :, None], meet[:, None, :]]
    bad = lhs != rhs
    if bad.any():
        x, y, z = map(int, np.argwhere(bad)[0])
        raise NotDistributiveError(
            f"x∧(y∨z) != (x∧y)∨(x∧z) at x={poset.label(x)}, y={poset.label(y)}, z={poset.label(z)}",
            witness=(x, y, z),
        )

    leq = poset.leq
    arrow = np.empty((n, n), dtype=np.int64)
    jl = join.tolist()
    for a in range(n):
        col = meet[:, a]
        for b in range(n):
            cands = np.flatnonzero(leq[col, b])
            r = bottom
            for c in cands:
                r = jl[r][c]
            arrow[a, b] = r
    return FiniteFrame(poset, bottom, top, meet, join, arrow)


def heyting(L: FiniteFrame, a: int, b: int) -> int:
    """The Heyting arrow ``a → b``: the largest c with ``c ∧ a ≤ b``."""
    return L.a[a][b]


def pseudocomplement(L: FiniteFrame, a: int) -> int:
    return L.a[a][L.bottom]


def subset_fold(table: np.ndarray, values: np.ndarray, identity: int) -> np.ndarray:
    """Fold a binary operation over every subset of ``values``.

    Entry ``mask`` of the result is the fold over ``{values[k] | bit k of mask}``.
    """
    out = np.empty(1 << len(values), dtype=np.int64)
    out[0] = identity
    for k, v in enumerate(values):
        lo = 1 << k
        out[lo : 2 * lo] = table[out[:lo], v]
    return out


def _first(mask: np.ndarray):
    if mask.any():
        return tuple(int(v) for v in np.argwhere(mask)[0])
    return None


def verify_heyting_laws(L: FiniteFrame) -> dict[str, Verdict]:
    """Check the Heyting rules H1..H12 exhaustively.

    Returns ``{"H1": Verdict, ...}``; a failing verdict carries the first
    offending tuple of element ids (for H11/H12: ``(subset_mask, b)``).
    """
    A, M, J, LE = L.arrow, L.meet, L.join, L.leq
    n, top = L.n, L.top
    I = np.arange(n)
    a2, b2 = I[:, None], I[None, :]
    a3, b3, c3 = I[:, None, None], I[None, :, None], I[None, None, :]
    fails = {
        "H1": _first(A[top, I] != I),
        "H2": _first(LE != (A == top)),
        "H3": _first(~LE[a2, A[b2, a2]]),
        "H4": _first(A != A[a2, M]),
        "H5": _first(M[a2, A] != M),
        "H6": _first((M[a3, b3] == M[a3, c3]) != (A[a3, b3] == A[a3, c3])),
        "H7": _first(
            (A[M[a3, b3], c3] != A[a3, A[b3, c3]]) | (A[a3, A[b3, c3]] != A[b3, A[a3, c3]])
        ),
        "H8": _first(M[J, A[b2, a2]] != a2),
        "H9": _first(~LE[a2, A[A, b2]]),
        "H10": _first(A[A[A, b2], b2] != A),
    }
    joins = subset_fold(J, I, L.bottom)
    meets = subset_fold(M, I, top)
    h11 = h12 = None
    for b in range(n):
        if h11 is None:
            bad = A[joins, b] != subset_fold(M, A[:, b], top)
            if bad.any():
                h11 = (int(np.flatnonzero(bad)[0]), b)
        if h12 is None:
            bad = A[b, meets] != subset_fold(M, A[b, :], top)
            if bad.any():
                h12 = (int(np.flatnonzero(bad)[0]), b)
    fails["H11"] = h11
    fails["H12"] = h12
    return {k: Verdict(v is None, v) for k, v in fails.items()}


def join_irreducibles(L: FiniteFrame) -> list[int]:
    """Join-irreducible elements (exactly one lower cover), smallest down-sets first."""
    lower_covers = [0] * L.n
    for _, j in L.poset.covers:
        lower_covers[j] += 1
    jis = [x for x in range(L.n) if lower_covers[x] == 1]
    return sorted(jis, key=lambda x: (L.down[x].bit_count(), x))


def lattice_homs(
    A: FiniteFrame,
    B: FiniteFrame,
    fixed: dict[int, int] | None = None,
    require_top: bool = True,
    allowed: dict[int, Iterable[int]] | None = None,
):
    """Enumerate maps A → B preserving 0, binary meets and binary joins.

    With ``require_top`` the top must also be preserved (a frame morphism).
    ``fixed`` prescribes images of some elements and ``allowed`` restricts
    them to given sets. Each map is a tuple of ids.

    A map into a finite distributive lattice is fixed by its values on the
    join-irreducibles; join preservation is automatic for monotone
    assignments and meet preservation reduces to pairs of irreducibles.
    """
    for row in lattice_hom_array(A, B, fixed, require_top, allowed).tolist():
        yield tuple(row)


def lattice_hom_array(
    A: FiniteFrame,
    B: FiniteFrame,
    fixed: dict[int, int] | None = None,
    require_top: bool = True,
    allowed: dict[int, Iterable[int]] | None = None,
) -> np.ndarray:
    """:func:`lattice_homs` as an (h, |A|) array, built one irreducible at a time."""
    allow = {e: frozenset(v) for e, v in (allowed or {}).items()}
    for e, v in (fixed or {}).items():
        allow[e] = allow.get(e, frozenset([v])) & {v}
    jis = join_irreducibles(A)
    k = len(jis)
    below = [[i for i in range(k) if A.le(jis[i], x)] for x in range(A.n)]
    # constraints are checked as soon as every irreducible below them is assigned
    due: list[list[int]] = [[] for _ in range(k + 1)]
    for e in allow:
        due[max(below[e]) + 1 if below[e] else 0].append(e)
    J, M = B.join, B.meet

    def value(P: np.ndarray, x: int) -> np.ndarray:
        r = np.full(len(P), B.bottom, dtype=np.int64)
        for i in below[x]:
            r = J[r, P[:, i]]
        return r

    def admit(P: np.ndarray, d: int) -> np.ndarray:
        for e in due[d]:
            P = P[np.isin(value(P, e), sorted(allow[e]))]
        return P

    P = admit(np.zeros((1, 0), dtype=np.int64), 0)
    for d, j in enumerate(jis):
        choices = np.array(sorted(allow[j]) if j in allow else range(B.n), dtype=np.int64)
        P = np.hstack([np.repeat(P, len(choices), axis=0), np.tile(choices, len(P))[:, None]])
        y = P[:, d]
        floor = np.full(len(P), B.bottom, dtype=np.int64)
        for i in below[j]:
            if i != d:
                floor = J[floor, P[:, i]]
        keep = B.leq[floor, y]
        for i in range(d):
            keep &= M[y, P[:, i]] == value(P, A.m[j][jis[i]])
        P = admit(P[keep], d + 1)
    out = np.stack([value(P, x) for x in range(A.n)], axis=1) if A.n else P
    if require_top:
        out = out[out[:, A.top] == B.top]
    return out
