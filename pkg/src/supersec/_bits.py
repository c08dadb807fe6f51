"""Bitmask helpers. Subsets of the ground set are ints internally; bit i is element i."""
from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .errors import DomainError


def to_mask(elements: Iterable[int], n: int) -> int:
    mask = 0
    for u in elements:
        u = int(u)
        if u < 0 or u >= n:
            raise DomainError(f"element {u} outside ground set of size {n}")
        mask |= 1 << u
    return mask


def check_element(u: int, n: int) -> int:
    u = int(u)
    if u < 0 or u >= n:
        raise DomainError(f"element {u} outside ground set of size {n}")
    return u


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def bits_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


@lru_cache(maxsize=65536)
def lex_subsets(elements: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All subsets of ``elements`` as (sorted tuple, mask), in lexicographic tuple order."""
    elements = tuple(sorted(elements))
    out = []
    for r in range(len(elements) + 1):
        for combo in combinations(elements, r):
            m = 0
            for u in combo:
                m |= 1 << u
            out.append((combo, m))
    out.sort(key=lambda pair: pair[0])
    return tuple(out)


def ceil_log2(x: float) -> int:
    """Exact ceil(log2(x)) for x >= 1 (integers handled without floating point)."""
    if x < 1:
        raise ValueError(f"ceil_log2 needs x >= 1, got {x}")
    if float(x).is_integer():
        return (int(x) - 1).bit_length()
    return math.ceil(math.log2(x))
