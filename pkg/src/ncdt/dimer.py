"""Pyramid partitions as dimer configurations on the square lattice.

Conventions
-----------
Lattice vertices are integer points.  ``(x, y, "H")`` is the edge from
``(x, y)`` to ``(x + 1, y)`` and ``(x, y, "V")`` the edge from ``(x, y)`` to
``(x, y + 1)``.  The face ``(x, y)`` is the unit square whose lower-left
corner is ``(x, y)``.

Adding a stone flips the face under it: the two parallel matched edges on
its boundary are swapped for the perpendicular pair.  The baseline
configuration ``F_n`` (the image of the empty partition) is four frozen
brick-wall regions: horizontal dimers above and below the pyramid,
vertical dimers to its left and right.  A configuration is stored as its
finite symmetric difference with ``F_n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .pyramid import PyramidPartition, Stone, is_valid, parents

Edge = tuple[int, int, str]
Face = tuple[int, int]
Window = tuple[int, int, int, int]  # xmin, xmax, ymin, ymax (vertices)


def face_of(s: Stone) -> Face:
    """Face under a stone.

    Grey ``(2k; p, q)`` sits over ``(2p - k, 2q - k)`` and black
    ``(2k+1; p, q)`` over ``(2p - 1 - k, 2q - k)``.  Within a layer this is
    injective, and a stone shares its face with the stone four layers below
    (``p`` and ``q`` both one larger).
    """
    layer, p, q = s
    k = layer // 2
    if layer % 2 == 0:
        return (2 * p - k, 2 * q - k)
    return (2 * p - 1 - k, 2 * q - k)


def column(face: Face, n: int = 1) -> Iterator[Stone]:
    """Stones over ``face`` from the top down (infinite)."""
    x, y = face
    grey = (x + y) % 2 == 0
    k = x % 2 if grey else y % 2
    limit = abs(x) + abs(y) + 2 * n + 4
    while True:
        if grey:
            s = Stone(2 * k, (x + k) // 2, (y + k) // 2)
        else:
            s = Stone(2 * k + 1, (x + 1 + k) // 2, (y + k) // 2)
        if is_valid(s, n):
            yield s
        elif k > limit:
            raise AssertionError(f"no stone lies over face {face}")
        k += 2


def in_baseline(edge: Edge, n: int = 1) -> bool:
    """Membership of an edge in the empty-room configuration ``F_n``."""
    x, y, o = edge
    if o == "H":
        if y >= 1:
            return -y + 1 <= x <= y - 1 + 2 * (n - 1) and (x - y - 1) % 2 == 0
        return y <= x <= -y + 2 * (n - 1) and (x - y) % 2 == 0
    if o == "V":
        if x <= -1:
            return abs(y) <= -1 - x and (y + x - 1) % 2 == 0
        if x >= 2 * n:
            return abs(y) <= x - 2 * n and (y - x) % 2 == 0
        return False
    raise ValueError(f"edge orientation must be 'H' or 'V', not {o!r}")


def face_edges(face: Face) -> tuple[tuple[Edge, Edge], tuple[Edge, Edge]]:
    """``((bottom, top), (left, right))`` edges of a face."""
    x, y = face
    return ((x, y, "H"), (x, y + 1, "H")), ((x, y, "V"), (x + 1, y, "V"))


def incident_edges(x: int, y: int) -> tuple[Edge, Edge, Edge, Edge]:
    return (x, y, "H"), (x - 1, y, "H"), (x, y, "V"), (x, y - 1, "V")


def validation_window(max_layer: int, n: int = 1) -> Window:
    r = 2 * max_layer + n + 2
    return (-r, r + 2 * n, -r, r + 1)


@dataclass(frozen=True)
class DimerDelta:
    """A dimer configuration given by the edges toggled relative to ``F_n``."""

    n: int
    toggles: frozenset

    def __contains__(self, edge: Edge) -> bool:
        return in_baseline(edge, self.n) != (edge in self.toggles)

    def is_perfect_matching(self, window: Window) -> bool:
        """Every vertex of the window is covered by exactly one edge."""
        xmin, xmax, ymin, ymax = window
        for x in range(xmin, xmax + 1):
            for y in range(ymin, ymax + 1):
                if sum(e in self for e in incident_edges(x, y)) != 1:
                    return False
        return True

    def flippable(self, face: Face) -> bool:
        (b, t), (l, r) = face_edges(face)
        horiz = b in self and t in self
        vert = l in self and r in self
        return horiz != vert

    def flip(self, face: Face) -> DimerDelta:
        if not self.flippable(face):
            raise IllegalFlip(f"face {face} does not carry a parallel pair of dimers")
        (b, t), (l, r) = face_edges(face)
        return DimerDelta(self.n, self.toggles.symmetric_difference({b, t, l, r}))

    def to_lines(self) -> str:
        return "".join(f"{x} {y} {o}\n" for x, y, o in sorted(self.toggles, key=_edge_key))

    @classmethod
    def from_lines(cls, text: str, n: int = 1) -> DimerDelta:
        edges = set()
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            x, y, o = line.split()
            if o not in ("H", "V"):
                raise ValueError(f"bad orientation {o!r}")
            edges.add((int(x), int(y), o))
        return cls(n, frozenset(edges))

    def render(self, window: Window) -> str:
        return render(lambda e: e in self, window)


class IllegalFlip(ValueError):
    """A stone's face was not flippable when the stone was added."""


def _edge_key(e: Edge):
    return (e[1], e[0], e[2])


def baseline(n: int, window: Window) -> set[Edge]:
    """Edges of ``F_n`` with both endpoints inside ``window``."""
    xmin, xmax, ymin, ymax = window
    out = set()
    for x in range(xmin, xmax + 1):
        for y in range(ymin, ymax + 1):
            if x < xmax and in_baseline((x, y, "H"), n):
                out.add((x, y, "H"))
            if y < ymax and in_baseline((x, y, "V"), n):
                out.add((x, y, "V"))
    return out


def _check_order(pi: PyramidPartition, order: Sequence[Stone]) -> None:
    if len(order) != len(pi) or set(order) != set(pi.stones):
        raise ValueError("order must list every stone of the partition exactly once")
    seen: set[Stone] = set()
    for s in order:
        if any(p not in seen for p in parents(s, pi.n)):
            raise ValueError(f"stone {tuple(s)} comes before one of its parents")
        seen.add(s)


def to_dimers(
    pi: PyramidPartition,
    order: Sequence[Stone] | None = None,
    *,
    on_flip: Callable[[DimerDelta], None] | None = None,
) -> DimerDelta:
    """Flip the faces of the stones of ``pi`` in a linear extension of the
    parent order (the canonical sorted order by default).

    Raises :class:`IllegalFlip` if some face is not flippable at its turn,
    which would mean the face map and baseline disagree.
    """
    order = list(order) if order is not None else pi.sorted()
    _check_order(pi, order)
    d = DimerDelta(pi.n, frozenset())
    for s in order:
        d = d.flip(face_of(s))
        if on_flip is not None:
            on_flip(d)
    return d


def _is_black(x: int, y: int) -> bool:
    return (x + y) % 2 == 0


def column_heights(d: DimerDelta) -> dict[Face, int]:
    """Height change of every face relative to ``F_n``, in units of one flip.

    Uses the Thurston height function: crossing an edge with the black
    endpoint on the left changes the height by +1 if the edge is unmatched
    and -3 if matched (opposite signs with black on the right).  Relative to
    the baseline, only toggled edges contribute, each by +-4.  Integrating
    along rows from the far left (where nothing is toggled) gives the
    change at every face.
    """
    rows: dict[int, list[tuple[int, int]]] = {}
    for x, y, o in d.toggles:
        if o != "V":
            continue
        added = (x, y, o) in d
        black_left = _is_black(x, y + 1)
        step = (-1 if added else 1) * (1 if black_left else -1)
        rows.setdefault(y, []).append((x, step))
    heights: dict[Face, int] = {}
    for y, steps in rows.items():
        steps.sort()
        acc = 0
        for i, (x, step) in enumerate(steps):
            acc += step
            nxt = steps[i + 1][0] if i + 1 < len(steps) else x
            for fx in range(x, nxt):
                if acc:
                    heights[(fx, y)] = acc
    return heights


# every stone flip raises the height of its face by one unit
def _stone_count(face: Face, dh: int) -> int:
    return dh


def from_dimers(d: DimerDelta) -> PyramidPartition:
    """Recover the partition whose flips produce ``d``.

    The height change at each face counts the stones stacked over it; the
    partition is the top of each column, checked for up-closure and then
    pushed back through :func:`to_dimers`.  Raises ``ValueError`` if ``d``
    does not come from any partition.
    """
    if not d.toggles:
        return PyramidPartition(frozenset(), d.n)
    xs = [e[0] for e in d.toggles]
    ys = [e[1] for e in d.toggles]
    window = (min(xs) - 1, max(xs) + 2, min(ys) - 1, max(ys) + 2)
    if not d.is_perfect_matching(window):
        raise ValueError("configuration is not a perfect matching")
    stones = []
    for face, dh in column_heights(d).items():
        c = _stone_count(face, dh)
        if c < 0:
            raise ValueError(f"face {face} is below the empty room")
        col = column(face, d.n)
        stones.extend(next(col) for _ in range(c))
    try:
        pi = PyramidPartition(frozenset(stones), d.n)
    except ValueError as exc:
        raise ValueError(f"configuration is not the image of a partition: {exc}") from None
    if to_dimers(pi).toggles != d.toggles:
        raise ValueError("configuration is not the image of a partition")
    return pi


def render(contains: Callable[[Edge], bool], window: Window) -> str:
    """ASCII picture: ``o`` vertices, ``-`` and ``|`` matched edges, top row
    first."""
    xmin, xmax, ymin, ymax = window
    lines = []
    for y in range(ymax, ymin - 1, -1):
        row = ""
        for x in range(xmin, xmax + 1):
            row += "o"
            if x < xmax:
                row += "-" if contains((x, y, "H")) else " "
        lines.append(row.rstrip())
        if y > ymin:
            row = ""
            for x in range(xmin, xmax + 1):
                row += "|" if contains((x, y - 1, "V")) else " "
                if x < xmax:
                    row += " "
            lines.append(row.rstrip())
    return "\n".join(lines) + "\n"


def render_partition(pi: PyramidPartition, window: Window | None = None) -> str:
    if window is None:
        max_layer = max((s.layer for s in pi.stones), default=0)
        window = validation_window(max_layer, pi.n)
    return to_dimers(pi).render(window)


def all_valid(partitions: Iterable[PyramidPartition]) -> bool:
    return all(from_dimers(to_dimers(pi)) == pi for pi in partitions)
