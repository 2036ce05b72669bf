"""The maps φ and ψ between sublocales and upper sets, and the completion isomorphisms.

Two flavors share one implementation:

* ``smooth``: index semilattice LC(L), generators c(a) ∩ o(b), collection S_b(L);
* ``closed``: index semilattice L itself, generators c(a), collection S_c(L).

φ(S) = {x | gen(x) ⊆ S} and ψ(U) = ⋁ {gen(x) | x ∈ U}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bruns_lakser import (
    JoinSemilattice,
    admissible_batch,
    admissible_closure_batch,
    enumerate_AU,
    iter_family_batches,
    iter_upper_sets,
    sample_upper_sets,
)
from .errors import IsoFailure
from .lc import lc_elements
from .order import FiniteFrame, memo
from .reports import record
from .sublocales import closed_joins, enumerate_sublocales, smooth_sublocales

__all__ = [
    "Correspondence",
    "correspondence",
    "iso_table",
    "IsoTable",
    "frame_semilattice",
    "index_upper_sets",
    "phi",
    "psi",
    "verify_adjunction",
    "verify_fixpoints",
    "build_iso",
    "exact_iff_closed_check",
    "psi_detection_check",
]

EXHAUSTIVE_UPPER = 20
SAMPLED_UPPER = 256


def frame_semilattice(L: FiniteFrame) -> JoinSemilattice:
    """L viewed as a join-semilattice, memoized on the frame."""
    return memo(L, "as-semilattice", lambda: JoinSemilattice.from_frame(L))


class Correspondence:
    def __init__(self, frame: FiniteFrame, flavor: str = "smooth"):
        if flavor not in ("smooth", "closed"):
            raise ValueError(f"unknown flavor {flavor!r}")
        self.frame = frame
        self.flavor = flavor
        self.lattice = SL = enumerate_sublocales(frame)
        if flavor == "smooth":
            self.index = lc_elements(frame)
            gen_carriers = self.index.carriers
            self.collection = smooth_sublocales(frame, SL)
        else:
            self.index = frame_semilattice(frame)
            gen_carriers = frame.up
            self.collection = closed_joins(frame, SL)
        self.gens = np.array([SL.index[c] for c in gen_carriers], dtype=np.int64)
        self._gen_carriers = np.array(gen_carriers, dtype=np.int64)
        self._carriers = np.array(SL.carriers, dtype=np.int64)
        self._weights = np.array([1 << x for x in range(self.index.n)], dtype=np.uint64)

    @property
    def name(self) -> str:
        return self.frame.name

    def phi_batch(self, sublocale_ids) -> np.ndarray:
        """φ for sublocale indices into S(L); results are ``uint64`` upper-set bitsets."""
        C = self._carriers[np.asarray(sublocale_ids, dtype=np.int64)]
        inside = (self._gen_carriers[None, :] & ~C[:, None]) == 0
        return (inside.astype(np.uint64) * self._weights[None, :]).sum(axis=1, dtype=np.uint64)

    def psi_batch(self, uppers) -> np.ndarray:
        """ψ for upper-set bitsets; results are sublocale indices into S(L)."""
        U = np.asarray([int(u) for u in uppers], dtype=np.uint64)
        J = self.lattice.join
        out = np.full(len(U), self.lattice.bottom, dtype=np.int64)
        for x in range(self.index.n):
            sel = ((U >> np.uint64(x)) & np.uint64(1)).astype(bool)
            out[sel] = J[out[sel], self.gens[x]]
        return out

    def phi(self, S) -> int:
        return int(self.phi_batch([self.lattice.index_of(S)])[0])

    def psi(self, U: int) -> int:
        return int(self.psi_batch([U])[0])


def correspondence(L: FiniteFrame, flavor: str = "smooth") -> Correspondence:
    """Memoized :class:`Correspondence` for a frame."""
    return memo(L, ("corr", flavor), lambda: Correspondence(L, flavor))


def iso_table(L: FiniteFrame, flavor: str = "smooth") -> "IsoTable":
    """Memoized :func:`build_iso` for a frame."""
    return memo(L, ("iso", flavor), lambda: build_iso(correspondence(L, flavor)))


def phi(corr: Correspondence, S) -> int:
    """φ(S) as a bitset over the index semilattice."""
    return corr.phi(S)


def psi(corr: Correspondence, U: int):
    """ψ(U) as a Sublocale."""
    return corr.lattice[corr.psi(U)]


def index_upper_sets(corr: Correspondence, seed: int = 0, limit: int = EXHAUSTIVE_UPPER) -> tuple[list[int], bool]:
    """Upper sets of the index: all of them when it has at most ``limit`` elements,
    otherwise every principal one plus seeded random samples. Second value: exhaustive?"""
    S = corr.index
    if S.n <= limit:
        return list(iter_upper_sets(S)), True
    return sample_upper_sets(S, SAMPLED_UPPER, seed=seed), False


def verify_adjunction(corr: Correspondence, seed: int = 0) -> dict:
    """ψ(U) ⊆ S ⇔ U ⊆ φ(S) for every sublocale S and every (swept) upper set U."""
    uppers, exhaustive = index_upper_sets(corr, seed)
    U = np.array(uppers, dtype=np.uint64)
    ps = corr.psi_batch(uppers)
    ph = corr.phi_batch(np.arange(len(corr.lattice)))
    left = corr.lattice.leq[ps]  # [u, s]: ψ(U) ⊆ S
    right = (U[:, None] & ~ph[None, :]) == 0
    bad = np.argwhere(left != right)
    witness = None if not len(bad) else {"upper": int(U[bad[0][0]]), "sublocale": int(bad[0][1])}
    return record(corr.name, f"adjunction-{corr.flavor}", not len(bad), witness or {"exhaustive": exhaustive})


def verify_fixpoints(corr: Correspondence, seed: int = 0) -> list[dict]:
    """φψ(U) = A(U) for every upper set, and φψ(U) = U exactly when U is admissible;
    plus ψφ = id on the collection."""
    S = corr.index
    uppers, exhaustive = index_upper_sets(corr, seed)
    closures = admissible_closure_batch(S, uppers)
    round_trip = corr.phi_batch(corr.psi_batch(uppers)).tolist()
    mismatch = [u for u, a, r in zip(uppers, closures, round_trip) if a != r]
    fix_bad = [u for u, a, r in zip(uppers, closures, round_trip) if (r == u) != (a == u)]
    coll = list(corr.collection.indices)
    back = corr.psi_batch(corr.phi_batch(coll)).tolist()
    not_id = [i for i, j in zip(coll, back) if i != j]
    info = {"upper_sets": len(uppers), "exhaustive": exhaustive}
    return [
        record(corr.name, f"phipsi-equals-A-{corr.flavor}", not mismatch, mismatch[:1] or info),
        record(corr.name, f"fixpoints-admissible-{corr.flavor}", not fix_bad, fix_bad[:1] or info),
        record(corr.name, f"psiphi-identity-{corr.flavor}", not not_id, not_id[:1] or None),
    ]


@dataclass(frozen=True)
class IsoTable:
    """Mutually inverse order-isomorphism between a sublocale collection and AU(index).

    ``pairs`` lists (sublocale index into S(L), admissible upper set bitset),
    sorted by the sublocale side.
    """

    flavor: str
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def forward(self) -> dict[int, int]:
        return dict(self.pairs)

    def backward(self) -> dict[int, int]:
        return {u: s for s, u in self.pairs}


def build_iso(corr: Correspondence) -> IsoTable:
    """Restrict φ/ψ to the collection and AU(index) and verify an order-isomorphism.

    Raises ``IsoFailure`` with a witness on any defect.
    """
    SL = corr.lattice
    au = enumerate_AU(corr.index)
    coll = list(corr.collection.indices)
    images = [int(u) for u in corr.phi_batch(coll)]
    if len(coll) != len(au):
        raise IsoFailure(f"|collection| = {len(coll)} but |AU| = {len(au)}", witness=(len(coll), len(au)))
    missing = set(images) - set(au.elements)
    if missing:
        raise IsoFailure("φ leaves the admissible upper sets", witness=min(missing))
    if len(set(images)) != len(images):
        raise IsoFailure("φ is not injective on the collection")
    back = corr.psi_batch(au.elements).tolist()
    fwd = dict(zip(coll, images))
    for u, s in zip(au.elements, back):
        if fwd.get(s) != u:
            raise IsoFailure("ψ is not inverse to φ", witness=u)
    for s in coll:
        for t in coll:
            if bool(SL.leq[s, t]) != (fwd[s] & ~fwd[t] == 0):
                raise IsoFailure("order not preserved and reflected", witness=(s, t))
    for x in range(corr.index.n):
        if fwd.get(int(corr.gens[x])) != corr.index.up[x]:
            raise IsoFailure("generator not sent to its principal upper set", witness=x)
    return IsoTable(corr.flavor, tuple(sorted(fwd.items())))


def exact_iff_closed_check(L: FiniteFrame, seed: int = 0) -> dict:
    """Exactness of a family of elements ⇔ ⋁ c(a_i) is closed, over the family sweep.

    At finite scale every family is exact, so a clean sweep is reported as
    ``finite-trivial``.
    """
    S = frame_semilattice(L)
    SL = enumerate_sublocales(L)
    closed_ids = {SL.index[L.up[a]] for a in range(L.n)}
    gens = np.array([SL.index[L.up[a]] for a in range(L.n)], dtype=np.int64)
    exact_all = True
    checked = 0
    for fams in iter_family_batches(L.n, seed=seed):
        _, adm = admissible_batch(S, fams)
        joined = gens[fams[:, 0]]
        for k in range(1, fams.shape[1]):
            joined = SL.join[joined, gens[fams[:, k]]]
        is_closed = np.isin(joined, list(closed_ids))
        bad = np.flatnonzero(adm != is_closed)
        if len(bad):
            return record(L.name, "exact-iff-closed", False, [int(v) for v in fams[bad[0]]])
        exact_all &= bool(adm.all())
        checked += len(fams)
    return record(L.name, "exact-iff-closed", True, {"families": checked}, trivial=exact_all)


def psi_detection_check(L: FiniteFrame, seed: int = 0) -> list[dict]:
    """For the embedding (a,b) ↦ c(a) ∩ o(b) of LC(L) into S(L): a meet is
    admissible iff the embedding sends it to the join of the images. Also
    certifies the hypotheses: generators are complemented, and every
    sublocale is an intersection of sets ψ(u) ∨ ψ(v)* (with * the complement)."""
    SL = enumerate_sublocales(L)
    LC = lc_elements(L)
    gens = np.array([SL.index[c] for c in LC.carriers], dtype=np.int64)
    out = []

    comp = {}
    uncomplemented = None
    for x, g in enumerate(gens.tolist()):
        s = int(SL.supp[g])
        if SL.meet[g, s] != SL.bottom:
            uncomplemented = x
            break
        comp[x] = s
    out.append(record(L.name, "lc-generators-complemented", uncomplemented is None, uncomplemented))

    if uncomplemented is None:
        blocks = {int(SL.join[gens[u], comp[v]]) for u in range(LC.n) for v in range(LC.n)}
        C = SL.carriers
        bad = None
        for i, c in enumerate(C):
            acc = L.all
            for b in blocks:
                if c & ~C[b] == 0:
                    acc &= C[b]
            if acc != c:
                bad = i
                break
        out.append(record(L.name, "sublocales-cut-by-generators", bad is None, bad))

    mismatch = None
    checked = 0
    for fams in iter_family_batches(LC.n, seed=seed):
        meets, adm = admissible_batch(LC, fams)
        has = meets >= 0
        joined = gens[fams[:, 0]]
        for k in range(1, fams.shape[1]):
            joined = SL.join[joined, gens[fams[:, k]]]
        image = gens[np.where(has, meets, 0)]
        turns = image == joined
        bad = np.flatnonzero(has & (adm != turns))
        checked += int(has.sum())
        if len(bad):
            mismatch = [LC.pairs[int(v)] for v in fams[bad[0]]]
            break
    out.append(record(L.name, "psi-detects-admissible", mismatch is None, mismatch or {"families": checked}))
    return out
