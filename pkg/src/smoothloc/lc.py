"""The join-semilattice LC(L) of canonical pairs of locally closed sublocales."""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from .bits import to_mask
from .bruns_lakser import JoinSemilattice, is_admissible_family, meet_exists
from .errors import InconsistencyError, NoMeetError, NotLocallyClosedError
from .order import FiniteFrame, FinitePoset, Verdict, memo
from .sublocales import (
    Sublocale,
    SublocaleLattice,
    enumerate_sublocales,
    is_locally_closed,
    locally_closed,
    locally_closed_sublocales,
    nu,
    supplement,
)

__all__ = [
    "LcPair",
    "LcSemilattice",
    "LcMeet",
    "lc_normalize",
    "is_canonical",
    "lc_elements",
    "canonical_rep",
    "family_sublocale",
    "nu_supp_formula",
    "nu_supp_oracle",
    "is_locally_exact",
    "lc_meet_formula",
    "lc_meet",
    "lc_image",
]


class LcPair(NamedTuple):
    a: int
    b: int

    def format(self, L: FiniteFrame) -> str:
        return f"({L.label(self.a)},{L.label(self.b)})"


def lc_normalize(L: FiniteFrame, a: int, b: int) -> LcPair:
    """lc(a, b) = (b → a, (b → a) ∨ b): the canonical pair of c(a) ∩ o(b)."""
    c = L.a[b][a]
    return LcPair(c, L.j[c][b])


def is_canonical(L: FiniteFrame, a: int, b: int) -> bool:
    return L.le(a, b) and L.a[b][a] == a


class LcSemilattice(JoinSemilattice):
    """LC(L) ordered by (x,y) ⊑ (a,b) iff x ≤ a and b ≤ a ∨ y.

    Pairs are sorted by (a, b). The join table comes from the order and is
    checked against lc(x ∨ u, y ∧ v).
    """

    def __init__(self, L: FiniteFrame):
        pairs = [LcPair(a, b) for a in range(L.n) for b in range(L.n) if is_canonical(L, a, b)]
        le = L.le
        leq = np.array(
            [[le(x, a) and le(b, L.j[a][y]) for (a, b) in pairs] for (x, y) in pairs], dtype=bool
        )
        labels = [p.format(L) for p in pairs]
        super().__init__(FinitePoset(leq, labels=labels, name=f"LC({L.name})"))
        self.frame = L
        self.pairs = tuple(pairs)
        self.index = {p: i for i, p in enumerate(pairs)}
        for i, (x, y) in enumerate(pairs):
            for k, (u, v) in enumerate(pairs):
                if self.pairs[self.j[i][k]] != lc_normalize(L, L.j[x][u], L.m[y][v]):
                    raise InconsistencyError("LC join disagrees with lc(x ∨ u, y ∧ v)", witness=(i, k))
        self.carriers = tuple(locally_closed(L, a, b).carrier for a, b in pairs)

    def pair(self, i: int) -> LcPair:
        return self.pairs[i]

    def id_of(self, a: int, b: int) -> int:
        """Id of the canonical pair representing c(a) ∩ o(b)."""
        return self.index[lc_normalize(self.frame, a, b)]

    def sublocale(self, i: int) -> Sublocale:
        return Sublocale(self.frame, self.carriers[i])

    def verify_anti_isomorphism(self, SL: SublocaleLattice | None = None) -> Verdict:
        """(a,b) ↦ c(a) ∩ o(b) is a bijection onto the locally closed sublocales,
        reverses order both ways, and sends ⊔ to ∩."""
        L = self.frame
        SL = SL or enumerate_sublocales(L)
        lcs = {SL.carriers[i] for i in locally_closed_sublocales(L, SL).indices}
        C = self.carriers
        if len(set(C)) != len(C):
            return Verdict(False, "not injective")
        if set(C) != lcs:
            return Verdict(False, "not onto the locally closed sublocales")
        for i in range(self.n):
            for k in range(self.n):
                if bool(self.leq[i, k]) != (C[k] & ~C[i] == 0):
                    return Verdict(False, ("order", i, k))
                if C[self.j[i][k]] != C[i] & C[k]:
                    return Verdict(False, ("join", i, k))
        return Verdict(True)

    def __repr__(self) -> str:
        return f"LcSemilattice({self.frame.name}, n={self.n})"


def lc_elements(L: FiniteFrame) -> LcSemilattice:
    """LC(L), memoized on the frame."""
    return memo(L, "LC", lambda: LcSemilattice(L))


def canonical_rep(S: Sublocale, SL: SublocaleLattice | None = None) -> LcPair:
    """(⋀S, ν_{S#}(⋀S)) for a locally closed S; raises ``NotLocallyClosedError`` otherwise."""
    v = is_locally_closed(S, SL)
    if not v:
        raise NotLocallyClosedError(f"{S.format()} is not locally closed", witness=v.witness)
    return LcPair(*v.witness)


def _pairs(family: Iterable) -> list[LcPair]:
    out = sorted({LcPair(int(a), int(b)) for a, b in family})
    if not out:
        raise ValueError("family must be nonempty")
    return out


def family_sublocale(L: FiniteFrame, family, SL: SublocaleLattice | None = None) -> Sublocale:
    """⋁ c(a_i) ∩ o(b_i) in S(L)."""
    SL = SL or enumerate_sublocales(L)
    idx = [SL.index[locally_closed(L, a, b).carrier] for a, b in _pairs(family)]
    return SL[SL.join_all(idx)]


def nu_supp_formula(L: FiniteFrame, family) -> int:
    """⋀_x [ (⋀_i (b_i → (x ∨ a_i))) → (x ∨ ⋀_j (b_j → a_j)) ], evaluated literally."""
    fam = _pairs(family)
    a, j, m = L.a, L.j, L.m
    inf = L.meet_all(a[bj][aj] for aj, bj in fam)
    out = L.top
    for x in range(L.n):
        lhs = L.meet_all(a[bi][j[x][ai]] for ai, bi in fam)
        out = m[out][a[lhs][j[x][inf]]]
    return out


def nu_supp_oracle(L: FiniteFrame, family, SL: SublocaleLattice | None = None) -> int:
    """ν_{S#}(⋀S) for S = ⋁ c(a_i) ∩ o(b_i), through the sublocale lattice."""
    SL = SL or enumerate_sublocales(L)
    S = family_sublocale(L, family, SL)
    return nu(supplement(SL, S), S.infimum)


def is_locally_exact(L: FiniteFrame, family, SL: SublocaleLattice | None = None) -> Verdict:
    """Whether ⋁ c(a_i) ∩ o(b_i) is locally closed.

    Decided twice: by the sublocale test and by b_i ≤ ν ∨ a_i for all i with
    ν from the closed formula. Disagreement raises ``InconsistencyError``.
    Witness: the canonical pair of the join, or the first pair failing the
    inequality.
    """
    fam = _pairs(family)
    SL = SL or enumerate_sublocales(L)
    direct = is_locally_closed(family_sublocale(L, fam, SL), SL)
    v = nu_supp_formula(L, fam)
    failing = [p for p in fam if not L.le(p.b, L.j[v][p.a])]
    if bool(direct) == bool(failing):
        raise InconsistencyError(
            "sublocale test and inequality criterion disagree", witness=(fam, direct.witness, failing)
        )
    if direct:
        return Verdict(True, LcPair(*direct.witness))
    return Verdict(False, failing[0])


def lc_meet_formula(L: FiniteFrame, family) -> LcPair:
    """(⋀a_i, ⋀_x [(⋀_i (b_i → (x ∨ a_i))) → (x ∨ ⋀_j a_j)])."""
    fam = _pairs(family)
    a, j, m = L.a, L.j, L.m
    inf = L.meet_all(p.a for p in fam)
    second = L.top
    for x in range(L.n):
        lhs = L.meet_all(a[bi][j[x][ai]] for ai, bi in fam)
        second = m[second][a[lhs][j[x][inf]]]
    return LcPair(inf, second)


class LcMeet(NamedTuple):
    meet: LcPair
    admissible: bool
    witness: object


def lc_meet(L: FiniteFrame, family, SL: SublocaleLattice | None = None) -> LcMeet:
    """Greatest lower bound in LC(L) by scan, with its admissibility verdict.

    On locally exact families the result is cross-checked against
    :func:`lc_meet_formula`. The witness of a non-admissible meet is a pair
    w where w ⊔ ⊓F differs from ⊓(w ⊔ F).
    """
    fam = _pairs(family)
    LC = lc_elements(L)
    ids = to_mask(LC.index[p] for p in fam)
    g = meet_exists(LC, ids)
    if g is None:
        raise NoMeetError("family has no greatest lower bound in LC(L)", witness=fam)
    verdict = is_admissible_family(LC, ids)
    meet = LC.pairs[g]
    if is_locally_exact(L, fam, SL) and lc_meet_formula(L, fam) != meet:
        raise InconsistencyError("meet formula disagrees with the scanned meet", witness=fam)
    witness = None if verdict else LC.pairs[verdict.witness]
    return LcMeet(meet, bool(verdict), witness)


def lc_image(f, p) -> LcPair:
    """LC(f)(a, b) = lc(f(a), f(b)) in the codomain of the frame map ``f``."""
    a, b = p
    return lc_normalize(f.cod, f(a), f(b))
