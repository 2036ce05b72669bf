"""Bitset helpers. Sets of element ids are plain Python ints."""

from __future__ import annotations

from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(ids: Iterable[int]) -> int:
    mask = 0
    for i in ids:
        mask |= 1 << int(i)
    return mask


def popcount(mask: int) -> int:
    return mask.bit_count()


def full(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0
