"""Pyramid partitions of length ``n`` and plane partitions.

Stones are addressed algebraically: the stone ``(layer, p, q)`` stands for
the class of paths of length ``layer`` out of vertex 0 of the conifold
quiver that use ``p`` copies of ``a1`` and ``q`` copies of ``b1``.  Even
layers are grey (label 0), odd layers black (label 1).  For length ``n``

* layer ``2k`` holds the grey stones ``0 <= p <= k+n-1, 0 <= q <= k``;
* layer ``2k+1`` holds the black stones ``0 <= p <= k+n, 0 <= q <= k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .poset import IndexedPoset, count_ideals, enumerate_ideals
from .series import BiSeries


class Stone(NamedTuple):
    layer: int
    p: int
    q: int

    @property
    def colour(self) -> int:
        """0 for grey (even layer), 1 for black (odd layer)."""
        return self.layer % 2

    def __str__(self) -> str:
        return f"{self.layer} {self.p} {self.q}"


APEX = Stone(0, 0, 0)


def layer_bounds(layer: int, n: int = 1) -> tuple[int, int]:
    """Largest allowed ``p`` and ``q`` on ``layer``."""
    if layer < 0:
        raise ValueError("layer must be non-negative")
    k = layer // 2
    if layer % 2 == 0:
        return k + n - 1, k
    return k + n, k


def layer_size(layer: int, n: int = 1) -> int:
    pmax, qmax = layer_bounds(layer, n)
    return (pmax + 1) * (qmax + 1)


def is_valid(s: Stone, n: int = 1) -> bool:
    if s.layer < 0 or s.p < 0 or s.q < 0:
        return False
    pmax, qmax = layer_bounds(s.layer, n)
    return s.p <= pmax and s.q <= qmax


def layer_stones(layer: int, n: int = 1) -> list[Stone]:
    pmax, qmax = layer_bounds(layer, n)
    return [Stone(layer, p, q) for p in range(pmax + 1) for q in range(qmax + 1)]


def parents(s: Stone, n: int = 1) -> list[Stone]:
    """The stones directly above ``s`` that must be present whenever ``s``
    is.

    A black stone ``(2k+1; p, q)`` rests on the grey stones ``(2k; p-1, q)``
    and ``(2k; p, q)``; a grey stone ``(2k+2; p, q)`` rests on the black
    stones ``(2k+1; p, q-1)`` and ``(2k+1; p, q)``.  Either may fall off the
    edge of the layer above.
    """
    if not is_valid(s, n):
        raise ValueError(f"{tuple(s)} is not a stone of the length-{n} pyramid")
    layer, p, q = s
    if layer == 0:
        return []
    above = layer - 1
    if layer % 2 == 1:
        cands = [Stone(above, p - 1, q), Stone(above, p, q)]
    else:
        cands = [Stone(above, p, q - 1), Stone(above, p, q)]
    return [c for c in cands if is_valid(c, n)]


def pyramid_poset(n: int, max_layer: int) -> IndexedPoset:
    """All stones on layers ``0..max_layer`` in canonical order."""
    stones = [s for layer in range(max_layer + 1) for s in layer_stones(layer, n)]
    return IndexedPoset.build(stones, lambda s: parents(s, n), lambda s: s.colour)


@dataclass(frozen=True)
class PyramidPartition:
    """A finite up-closed set of stones of the length-``n`` pyramid."""

    stones: frozenset
    n: int = 1
    wt0: int = field(init=False)
    wt1: int = field(init=False)

    def __post_init__(self):
        stones = frozenset(Stone(*s) for s in self.stones)
        for s in stones:
            if not is_valid(s, self.n):
                raise ValueError(f"{tuple(s)} is not a stone of the length-{self.n} pyramid")
            for p in parents(s, self.n):
                if p not in stones:
                    raise ValueError(f"stone {tuple(s)} is present but its parent {tuple(p)} is not")
        object.__setattr__(self, "stones", stones)
        w1 = sum(s.colour for s in stones)
        object.__setattr__(self, "wt0", len(stones) - w1)
        object.__setattr__(self, "wt1", w1)

    def __len__(self) -> int:
        return len(self.stones)

    def __iter__(self) -> Iterator[Stone]:
        return iter(self.sorted())

    def __contains__(self, s) -> bool:
        return s in self.stones

    @property
    def weight(self) -> tuple[int, int]:
        return self.wt0, self.wt1

    def sorted(self) -> list[Stone]:
        return sorted(self.stones)

    def removable(self) -> list[Stone]:
        """Stones whose removal leaves a pyramid partition."""
        out = []
        for s in self.sorted():
            if not any(s in parents(t, self.n) for t in self.stones):
                out.append(s)
        return out

    def to_lines(self) -> str:
        return "".join(f"{s}\n" for s in self.sorted())

    @classmethod
    def from_lines(cls, text: str, n: int = 1) -> PyramidPartition:
        stones = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 'layer p q', got {line!r}")
            stones.append(Stone(*(int(x) for x in parts)))
        if len(set(stones)) != len(stones):
            raise ValueError("duplicate stone in partition file")
        return cls(frozenset(stones), n)


def enumerate_partitions(n: int, max_stones: int) -> Iterator[PyramidPartition]:
    """Every length-``n`` pyramid partition with at most ``max_stones``
    stones, each exactly once, in deterministic order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    poset = pyramid_poset(n, max(max_stones - 1, 0))
    for idx in enumerate_ideals(poset, max_stones):
        yield PyramidPartition(frozenset(poset.elements[i] for i in idx), n)


def zA_enumerated(
    n: int, max_total_weight: int, *, backend: str | None = None, threads: int = 1
) -> BiSeries:
    """``sum_pi (-1)^wt1 q0^wt0 q1^wt1`` over length-``n`` pyramid
    partitions, complete through total degree ``max_total_weight``.

    The total degree of a partition is its number of stones, so the stone
    bound and the weight bound coincide.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    N = max_total_weight
    # a stone on layer L needs a chain of L+1 stones above and including it
    poset = pyramid_poset(n, max(N - 1, 0))
    counts = count_ideals(poset, N, backend=backend, threads=threads)
    return BiSeries({(a, b): (-1) ** b * c for (a, b), c in counts.items()}, N)


class Box(NamedTuple):
    i: int
    j: int
    k: int


def box_parents(b: Box) -> list[Box]:
    i, j, k = b
    out = []
    if i:
        out.append(Box(i - 1, j, k))
    if j:
        out.append(Box(i, j - 1, k))
    if k:
        out.append(Box(i, j, k - 1))
    return out


def box_poset(max_n: int) -> IndexedPoset:
    """Boxes that can occur in a plane partition of size ``<= max_n``."""
    boxes = [
        Box(i, j, k)
        for i in range(max_n)
        for j in range(max_n)
        for k in range(max_n)
        if (i + 1) * (j + 1) * (k + 1) <= max_n
    ]
    boxes.sort(key=lambda b: (b.i + b.j + b.k, b))
    return IndexedPoset.build(boxes, box_parents)


def plane_partition_counts(max_n: int, *, backend: str | None = None) -> list[int]:
    counts = count_ideals(box_poset(max_n), max_n, backend=backend)
    return [counts.get((d, 0), 0) for d in range(max_n + 1)]


def plane_partitions_enumerated(max_n: int, *, backend: str | None = None) -> BiSeries:
    """``sum_alpha (-q)^|alpha|`` over plane partitions, through degree
    ``max_n``, as a series in ``q0``."""
    if max_n < 0:
        raise ValueError("max_n must be non-negative")
    counts = plane_partition_counts(max_n, backend=backend)
    return BiSeries({(d, 0): (-1) ** d * c for d, c in enumerate(counts)}, max_n)

