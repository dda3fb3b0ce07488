"""Index gymnastics for wedge monomials (shared by forms and polyvectors)."""
from __future__ import annotations

__all__ = ["insert_index", "merge_indices", "remove_index", "subsets"]


def insert_index(i: int, idx: tuple):
    """Wedge a single index onto the front of a sorted index tuple.

    Returns ``(sign, new_tuple)`` or ``None`` when the index repeats.
    """
    pos = 0
    for k, j in enumerate(idx):
        if j == i:
            return None
        if j < i:
            pos = k + 1
    return ((-1) ** pos, idx[:pos] + (i,) + idx[pos:])


def merge_indices(a: tuple, b: tuple):
    """Sign and merged tuple for (e_a1^...^e_ap)^(e_b1^...^e_bq).

    Both inputs are strictly increasing.  Each element of ``b`` crosses the
    elements of ``a`` greater than it, so the sign is (-1)^#{(x,y): x>y}.
    """
    if not a:
        return (1, b)
    if not b:
        return (1, a)
    aset = set(a)
    inv = 0
    for y in b:
        if y in aset:
            return None
        inv += sum(1 for x in a if x > y)
    merged = tuple(sorted(a + b))
    return ((-1) ** inv, merged)


def remove_index(idx: tuple, k: int):
    """Drop position k; sign for commuting that leg to the front."""
    return ((-1) ** k, idx[:k] + idx[k + 1:])


def subsets(seq, size):
    from itertools import combinations

    return combinations(seq, size)
