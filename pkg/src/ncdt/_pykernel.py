"""Pure-Python order-ideal counter (fallback for the compiled kernel).

The search generates each order ideal exactly once by adding elements in
increasing index order, where the index order is a linear extension of the
poset.  The *frontier* at a node is the sorted list of addable elements
larger than the last one added; after adding ``s`` it becomes the untried
tail of the old frontier merged with the children of ``s`` whose last
missing parent was ``s``.  No visited-set is needed.
"""

from __future__ import annotations

from typing import Sequence


def count_from(
    parent_count: Sequence[int],
    child_ptr: Sequence[int],
    child_idx: Sequence[int],
    colour: Sequence[int],
    members: Sequence[int],
    frontier: Sequence[int],
    max_size: int,
    counts,
) -> None:
    n = len(parent_count)
    W = max_size + 1
    if n == 0:
        counts[0] += 1
        return
    need = list(parent_count)
    children = [tuple(child_idx[child_ptr[i]:child_ptr[i + 1]]) for i in range(n)]
    w = [0, 0]
    for s in members:
        w[colour[s]] += 1
        for c in children[s]:
            need[c] -= 1
    counts[w[0] * W + w[1]] += 1

    def rec(front: list[int], size: int) -> None:
        if size >= max_size:
            return
        for i, s in enumerate(front):
            col = colour[s]
            w[col] += 1
            enabled = []
            for c in children[s]:
                need[c] -= 1
                if need[c] == 0:
                    enabled.append(c)
            counts[w[0] * W + w[1]] += 1
            tail = front[i + 1:]
            if enabled:
                tail = sorted(tail + enabled)
            rec(tail, size + 1)
            for c in children[s]:
                need[c] += 1
            w[col] -= 1

    rec(list(frontier), len(members))
