"""Vectorized generator-image search shared by hom enumeration and isomorphism search.

A map from a finite module-like structure (addition table plus a left action of a
finite acting ring) is determined by the images of a generating set. Generators
are added one at a time; at each step the span grows to ``span + A*g`` and every
candidate image is kept only if the induced values are consistent. A partial map
that survives every step is a homomorphism on the whole span.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np

from .config import BudgetExceeded

_CHUNK_CELLS = 1 << 22


def grow_span(add: np.ndarray, act: np.ndarray, span: np.ndarray, gen: int) -> np.ndarray:
    """Sorted elements of ``span + A*gen``."""
    return np.unique(add[span[:, None], act[:, gen][None, :]])


def closure(add: np.ndarray, act: np.ndarray, gens: Sequence[int]) -> np.ndarray:
    span = np.zeros(1, dtype=np.int64)
    for g in gens:
        span = grow_span(add, act, span, int(g))
    return span


def greedy_generators(add: np.ndarray, act: np.ndarray, start: Sequence[int] = ()) -> list[int]:
    """Extend ``start`` by repeatedly adding the least element outside the span."""
    gens = [int(g) for g in start]
    span = closure(add, act, gens)
    n = add.shape[0]
    while span.size < n:
        inside = np.zeros(n, dtype=bool)
        inside[span] = True
        g = int(np.argmin(inside))
        gens.append(g)
        span = grow_span(add, act, span, g)
    return gens


def projected_count(choices: Sequence[Sequence[int]]) -> int:
    total = 1
    for c in choices:
        total *= len(c)
    return total


Prune = Callable[[np.ndarray, np.ndarray], np.ndarray]


def extend_maps(
    src_add: np.ndarray,
    src_act: np.ndarray,
    tgt_add: np.ndarray,
    tgt_act: np.ndarray,
    gens: Sequence[int],
    choices: Sequence[Sequence[int]],
    prune: Optional[Prune] = None,
    budget: Optional[int] = None,
) -> np.ndarray:
    """Every consistent map with ``gens[i] -> one of choices[i]``.

    Returns an array of shape (count, |src|); entries outside the span of
    ``gens`` are -1. ``src_act`` and ``tgt_act`` are indexed [scalar, element]
    and must share the acting ring. ``prune(maps, span)`` may reject partial
    maps after each step.
    """
    if budget is not None:
        projected = projected_count(choices)
        if projected > budget:
            raise BudgetExceeded(
                f"search would visit {projected} candidates, budget is {budget}"
            )
    n = src_add.shape[0]
    maps = np.full((1, n), -1, dtype=np.int64)
    maps[0, 0] = 0
    span = np.zeros(1, dtype=np.int64)
    for g, cand in zip(gens, choices):
        cand = np.asarray(cand, dtype=np.int64)
        if maps.shape[0] == 0 or cand.size == 0:
            return np.zeros((0, n), dtype=np.int64)
        g = int(g)
        new_elems = src_add[span[:, None], src_act[:, g][None, :]].ravel()
        uniq, first, inverse = np.unique(new_elems, return_index=True, return_inverse=True)
        inverse = inverse.ravel()
        right = tgt_act[:, cand].T  # (C, |A|)
        per_partial = cand.size * new_elems.size
        step = max(1, _CHUNK_CELLS // max(per_partial, 1))
        kept = []
        for lo in range(0, maps.shape[0], step):
            chunk = maps[lo : lo + step]
            left = chunk[:, span]  # (P, |span|)
            vals = tgt_add[left[:, None, :, None], right[None, :, None, :]]
            vals = vals.reshape(chunk.shape[0], cand.size, -1)
            canon = vals[:, :, first]
            ok = (vals == canon[:, :, inverse]).all(axis=-1)
            p_idx, c_idx = np.nonzero(ok)
            if p_idx.size == 0:
                continue
            out = chunk[p_idx].copy()
            out[:, uniq] = canon[p_idx, c_idx]
            kept.append(out)
        maps = np.concatenate(kept) if kept else np.zeros((0, n), dtype=np.int64)
        span = uniq
        if prune is not None and maps.shape[0]:
            maps = maps[prune(maps, span)]
    return maps


def sort_rows(maps: np.ndarray) -> np.ndarray:
    """Rows in lexicographic order of their tables."""
    if maps.shape[0] <= 1:
        return maps
    order = np.lexsort(maps.T[::-1])
    return maps[order]


def injective_rows(maps: np.ndarray, span: np.ndarray) -> np.ndarray:
    vals = np.sort(maps[:, span], axis=1)
    if vals.shape[1] < 2:
        return np.ones(maps.shape[0], dtype=bool)
    return (vals[:, 1:] != vals[:, :-1]).all(axis=1)
