"""Finite posets given by a parent relation, and enumeration of their
up-closed subsets.

An ideal here is a finite set closed under taking parents (for pyramids:
every stone's supporting stones; for boxes: every box with a smaller
coordinate).  Elements are indexed in a fixed total order that must be a
linear extension: every parent comes before its children.

The counting search has two interchangeable backends, the compiled
``_ckernel`` and the pure-Python ``_pykernel``.  The compiled one is used
when it imports, unless ``NCDT_BACKEND=python`` is set.
"""

from __future__ import annotations

import os
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

BACKENDS = ("python",) + (("cython",) if _ckernel is not None else ())


def default_backend() -> str:
    wanted = os.environ.get("NCDT_BACKEND", "").strip().lower()
    if wanted == "python" or _ckernel is None:
        return "python"
    return "cython"


@dataclass(frozen=True)
class IndexedPoset:
    elements: tuple
    parents: tuple[tuple[int, ...], ...]
    children: tuple[tuple[int, ...], ...]
    colour: tuple[int, ...]

    @classmethod
    def build(
        cls,
        elements: Iterable[Hashable],
        parents_of: Callable[[Hashable], Sequence[Hashable]],
        colour_of: Callable[[Hashable], int] = lambda e: 0,
    ) -> IndexedPoset:
        elems = tuple(elements)
        index = {e: i for i, e in enumerate(elems)}
        parents = []
        children: list[list[int]] = [[] for _ in elems]
        for i, e in enumerate(elems):
            ps = []
            for p in parents_of(e):
                if p not in index:
                    raise ValueError(f"parent {p!r} of {e!r} is not in the poset")
                j = index[p]
                if j >= i:
                    raise ValueError("element order is not a linear extension")
                ps.append(j)
                children[j].append(i)
            parents.append(tuple(ps))
        colours = tuple(int(colour_of(e)) for e in elems)
        if any(c not in (0, 1) for c in colours):
            raise ValueError("colours must be 0 or 1")
        return cls(elems, tuple(parents), tuple(tuple(sorted(c)) for c in children), colours)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(i for i, ps in enumerate(self.parents) if not ps)

    def is_ideal(self, members: Iterable[int]) -> bool:
        s = set(members)
        return all(p in s for m in s for p in self.parents[m])

    def _arrays(self):
        parent_count = array("i", (len(p) for p in self.parents))
        child_ptr = array("i", [0])
        child_idx = array("i")
        for ch in self.children:
            child_idx.extend(ch)
            child_ptr.append(len(child_idx))
        return parent_count, child_ptr, child_idx, array("i", self.colour)


def enumerate_ideals(poset: IndexedPoset, max_size: int) -> Iterator[tuple[int, ...]]:
    """Yield every ideal with at most ``max_size`` elements exactly once.

    Each ideal comes out as the increasing tuple of its element indices, in
    depth-first preorder, so the output order is deterministic and the
    ideals of size ``<= N`` appear in the same relative order for any larger
    bound.
    """
    if max_size < 0:
        raise ValueError("max_size must be non-negative")
    need = [len(p) for p in poset.parents]
    children = poset.children
    chosen: list[int] = []

    def rec(front: list[int]) -> Iterator[tuple[int, ...]]:
        yield tuple(chosen)
        if len(chosen) >= max_size:
            return
        for i, s in enumerate(front):
            enabled = []
            for c in children[s]:
                need[c] -= 1
                if need[c] == 0:
                    enabled.append(c)
            chosen.append(s)
            tail = front[i + 1:]
            if enabled:
                tail = sorted(tail + enabled)
            yield from rec(tail)
            chosen.pop()
            for c in children[s]:
                need[c] += 1

    yield from rec(list(poset.roots))


def _prefix_states(poset: IndexedPoset, depth: int, max_size: int):
    """Split the search tree at ``depth``: return the ideals strictly above
    that depth (counted directly) and the subtree roots at that depth as
    ``(members, frontier)`` pairs."""
    need = [len(p) for p in poset.parents]
    shallow: list[tuple[int, ...]] = []
    states = []
    chosen: list[int] = []

    def rec(front: list[int]):
        if len(chosen) == depth or len(chosen) >= max_size:
            states.append((tuple(chosen), tuple(front)))
            return
        shallow.append(tuple(chosen))
        for i, s in enumerate(front):
            enabled = []
            for c in poset.children[s]:
                need[c] -= 1
                if need[c] == 0:
                    enabled.append(c)
            chosen.append(s)
            tail = front[i + 1:]
            if enabled:
                tail = sorted(tail + enabled)
            rec(tail)
            chosen.pop()
            for c in poset.children[s]:
                need[c] += 1

    rec(list(poset.roots))
    return shallow, states


def count_ideals(
    poset: IndexedPoset,
    max_size: int,
    *,
    backend: str | None = None,
    threads: int = 1,
) -> dict[tuple[int, int], int]:
    """Number of ideals of each colour weight ``(w0, w1)`` with at most
    ``max_size`` elements.

    With ``threads > 1`` the tree is split into prefix subtrees that are
    counted concurrently and summed; the result does not depend on the
    schedule.
    """
    if max_size < 0:
        raise ValueError("max_size must be non-negative")
    backend = backend or default_backend()
    if backend == "cython":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not available")
        kernel = _ckernel.count_from
    elif backend == "python":
        kernel = _pykernel.count_from
    else:
        raise ValueError(f"unknown backend {backend!r}")

    W = max_size + 1
    pc, cp, ci, col = poset._arrays()

    def run(members, frontier):
        counts = array("q", bytes(8 * W * W))
        kernel(pc, cp, ci, col, array("i", members), array("i", frontier), max_size, counts)
        return counts

    if threads <= 1:
        total = run((), poset.roots)
    else:
        shallow, states = _prefix_states(poset, 2, max_size)
        total = array("q", bytes(8 * W * W))
        for members in shallow:
            w0 = sum(1 for m in members if col[m] == 0)
            total[w0 * W + len(members) - w0] += 1
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(lambda st: run(*st), states):
                for i, v in enumerate(part):
                    total[i] += v
    return {(i // W, i % W): v for i, v in enumerate(total) if v}
