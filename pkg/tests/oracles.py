"""Brute-force reference implementations used as test oracles.

Each works straight from a definition by scanning elements or subsets, and
uses nothing from the library beyond the order relation of its inputs.
"""

from __future__ import annotations

from itertools import combinations, product


def le(L, x, y) -> bool:
    return bool(L.leq[x, y])


def meet_of(P, xs) -> int | None:
    """Greatest lower bound by scanning all lower bounds (None if absent)."""
    lows = [g for g in range(P.n) if all(P.leq[g, x] for x in xs)]
    tops = [g for g in lows if all(P.leq[h, g] for h in lows)]
    return tops[0] if tops else None


def join_of(P, xs) -> int | None:
    ups = [g for g in range(P.n) if all(P.leq[x, g] for x in xs)]
    least = [g for g in ups if all(P.leq[g, h] for h in ups)]
    return least[0] if least else None


def arrow(L, a, b) -> int:
    """max{c | c ∧ a ≤ b}."""
    cands = [c for c in range(L.n) if le(L, meet_of(L, [c, a]), b)]
    return join_of(L, cands)


def is_sublocale(L, subset) -> bool:
    """Closed under meets of every subfamily (empty meet = top) and under x → (−)."""
    S = set(subset)
    if L.top not in S:
        return False
    for k in range(2, len(S) + 1):
        for F in combinations(sorted(S), k):
            if meet_of(L, F) not in S:
                return False
    return all(arrow(L, x, s) in S for x in range(L.n) for s in S)


def sublocales(L) -> list[frozenset]:
    others = [x for x in range(L.n) if x != L.top]
    out = []
    for k in range(len(others) + 1):
        for extra in combinations(others, k):
            S = frozenset(extra) | {L.top}
            if is_sublocale(L, S):
                out.append(S)
    return out


def nu(L, S, a) -> int:
    """Least element of S above a."""
    return meet_of(L, [s for s in S if le(L, a, s)])


def sublocale_join(L, sublocs, S, T) -> frozenset:
    """Least sublocale containing S ∪ T, by scanning the list of all sublocales."""
    sup = [U for U in sublocs if S <= U and T <= U]
    return min(sup, key=len)


def supplement(L, sublocs, S) -> frozenset:
    """Least T with S ∨ T = L."""
    whole = frozenset(range(L.n))
    cands = [T for T in sublocs if sublocale_join(L, sublocs, S, T) == whole]
    least = [T for T in cands if all(T <= U for U in cands)]
    assert len(least) == 1
    return least[0]


def frame_maps(A, B, require_top=True) -> list[tuple]:
    """All maps preserving 0, binary meets and joins (and 1 if required)."""
    ma, ja = tables(A)
    mb, jb = tables(B)
    pairs = [(x, y) for x in range(A.n) for y in range(x + 1, A.n)]
    out = []
    for f in product(range(B.n), repeat=A.n):
        if f[A.bottom] != B.bottom or (require_top and f[A.top] != B.top):
            continue
        if all(f[ma[x][y]] == mb[f[x]][f[y]] and f[ja[x][y]] == jb[f[x]][f[y]] for x, y in pairs):
            out.append(f)
    return out


def tables(P) -> tuple[list, list]:
    """Meet and join tables by lower/upper-bound scans."""
    meet = [[meet_of(P, [x, y]) for y in range(P.n)] for x in range(P.n)]
    join = [[join_of(P, [x, y]) for y in range(P.n)] for x in range(P.n)]
    return meet, join


def join_homs(S, T) -> list[tuple]:
    """All maps preserving binary joins and the top."""
    _, js = tables(S.poset)
    _, jt = tables(T.poset)
    out = []
    for f in product(range(T.n), repeat=S.n):
        if f[S.top] != T.top:
            continue
        if all(f[js[x][y]] == jt[f[x]][f[y]] for x in range(S.n) for y in range(x + 1, S.n)):
            out.append(f)
    return out


def admissible(S, F) -> bool:
    """Meet exists and b ∨ ⋀F = ⋀(b ∨ a) for every b, by lower-bound scans."""
    m = meet_of(S.poset, F)
    if m is None:
        return False
    _, join = tables(S.poset)
    return all(meet_of(S.poset, [join[b][a] for a in F]) == join[b][m] for b in range(S.n))


def upper_sets(S) -> list[frozenset]:
    out = []
    for k in range(1, S.n + 1):
        for U in combinations(range(S.n), k):
            U = frozenset(U)
            if all(y in U for x in U for y in range(S.n) if S.poset.leq[x, y]):
                out.append(U)
    return out


def admissible_closure(S, U) -> frozenset:
    """{⋀F | F ⊆ U admissible}."""
    out = set()
    for k in range(1, len(U) + 1):
        for F in combinations(sorted(U), k):
            if admissible(S, F):
                out.add(meet_of(S.poset, F))
    return frozenset(out)


def admissible_upper_sets(S) -> list[frozenset]:
    return [U for U in upper_sets(S) if admissible_closure(S, U) == U]


def mask(xs) -> int:
    m = 0
    for x in xs:
        m |= 1 << x
    return m
