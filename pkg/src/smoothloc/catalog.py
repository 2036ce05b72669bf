"""Named finite frames and lattice constructions used throughout the tests and corpus."""

from __future__ import annotations

import string

import numpy as np

from .bits import bits, popcount
from .order import FiniteFrame, FinitePoset, build_frame


def _chain_labels(n: int) -> list[str]:
    if n == 1:
        return ["0"]
    return ["0", *string.ascii_lowercase[: n - 2], "1"]


def chain_poset(n: int, name: str | None = None) -> FinitePoset:
    return FinitePoset(
        np.triu(np.ones((n, n), dtype=bool)), labels=_chain_labels(n), name=name or f"C{n}"
    )


def chain(n: int, name: str | None = None) -> FiniteFrame:
    """The n-element chain ``0 < a < b < ... < 1``."""
    return build_frame(chain_poset(n, name))


def boolean(k: int, name: str | None = None) -> FiniteFrame:
    """The Boolean algebra ``2^k``; element id = atom bitmask, atoms named p, q, r, ..."""
    size = 1 << k
    atoms = "pqrstuvw"[:k] if k <= 8 else None
    labels = []
    for m in range(size):
        if m == 0:
            labels.append("0")
        elif m == size - 1:
            labels.append("1")
        else:
            labels.append("".join(atoms[i] for i in bits(m)) if atoms else str(m))
    leq = np.array([[a & ~b == 0 for b in range(size)] for a in range(size)])
    return build_frame(FinitePoset(leq, labels=labels, name=name or (f"2^{k}" if k > 1 else "C2")))


def diamond() -> FiniteFrame:
    """The four-element Boolean algebra ``0 < p, q < 1``."""
    return boolean(2)


def pentagon() -> FinitePoset:
    """N5: ``0 < a < b < 1`` and ``0 < c < 1``. Not distributive."""
    return FinitePoset.from_covers(
        5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], labels=["0", "a", "b", "c", "1"], name="N5"
    )


def m3() -> FinitePoset:
    """M3: three atoms under a common top. Not distributive."""
    return FinitePoset.from_covers(
        5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], labels=["0", "x", "y", "z", "1"], name="M3"
    )


def downsets(poset: FinitePoset) -> list[int]:
    """All down-closed subsets of ``poset`` as bitsets, sorted by (size, mask)."""
    n = poset.n
    order = sorted(range(n), key=lambda i: popcount(poset.down[i]))
    out = []

    def rec(k, chosen):
        if k == n:
            out.append(chosen)
            return
        x = order[k]
        rec(k + 1, chosen)
        below = poset.down[x] & ~(1 << x)
        if below & ~chosen == 0:
            rec(k + 1, chosen | (1 << x))

    rec(0, 0)
    return sorted(out, key=lambda m: (popcount(m), m))


def downset_lattice(poset: FinitePoset, name: str | None = None) -> FiniteFrame:
    """The frame of down-sets of a finite poset (Birkhoff duality)."""
    ds = downsets(poset)
    last = len(ds) - 1
    labels = []
    for i, m in enumerate(ds):
        if i == 0:
            labels.append("0")
        elif i == last:
            labels.append("1")
        else:
            labels.append("".join(poset.label(x) for x in bits(m)))
    if len(set(labels)) != len(labels):
        labels = None
    arr = np.array(ds, dtype=object)
    leq = np.array([[a & ~b == 0 for b in arr] for a in arr], dtype=bool)
    return build_frame(FinitePoset(leq, labels=labels, name=name or f"D({poset.name})"))


def product(L: FiniteFrame, M: FiniteFrame, name: str | None = None) -> FiniteFrame:
    """Cartesian product with the componentwise order; id of (x, y) is ``x*|M| + y``."""
    n, m = L.n, M.n
    leq = (L.leq[:, None, :, None] & M.leq[None, :, None, :]).reshape(n * m, n * m)
    labels = [f"({L.label(x)},{M.label(y)})" for x in range(n) for y in range(m)]
    return build_frame(FinitePoset(leq, labels=labels, name=name or f"{L.name}x{M.name}"))


def named_frame(name: str) -> FiniteFrame:
    """Resolve built-in names: ``C<n>``, ``2`` (= C2), ``2^<k>``, ``diamond``."""
    if name == "2":
        return chain(2)
    if name == "diamond":
        return diamond()
    if name.startswith("C") and name[1:].isdigit():
        return chain(int(name[1:]))
    if name.startswith("2^") and name[2:].isdigit():
        return boolean(int(name[2:]))
    raise KeyError(name)
