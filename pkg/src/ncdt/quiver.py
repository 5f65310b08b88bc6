"""Quivers with superpotential and their framed representations.

Paths are words of edge names read as products of linear maps, so the word
``("a1", "b1")`` acts as ``a1 . b1``: ``b1`` first.  A word ``w0 w1 ... wL``
is composable when ``tail(w_i) == head(w_{i+1})``; a cycle also has
``tail(wL) == head(w0)``.

Matrices are tuples of row tuples of exact numbers.  The representation
spaces at a fixed point of the torus action are tiny (one basis vector per
stone), so nothing here needs numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .pyramid import APEX, PyramidPartition, Stone

Word = tuple[str, ...]
PathSum = dict[Word, int]
Matrix = tuple[tuple[int, ...], ...]


def _least_rotation(word: Word) -> Word:
    return min(word[i:] + word[:i] for i in range(len(word)))


@dataclass(frozen=True)
class QuiverPresentation:
    """Vertices, edges ``name -> (tail, head)`` and a superpotential stored
    as ``(coefficient, cycle)`` pairs in canonical (least) rotation."""

    vertices: tuple[int, ...]
    edges: Mapping[str, tuple[int, int]]
    superpotential: tuple[tuple[int, Word], ...]

    @classmethod
    def build(cls, vertices, edges, cycles: Iterable[tuple[int, Sequence[str]]]):
        edges = dict(edges)
        for name, (t, h) in edges.items():
            if t not in vertices or h not in vertices:
                raise ValueError(f"edge {name} has an endpoint outside the vertex set")
        collected: dict[Word, int] = {}
        for coeff, word in cycles:
            word = tuple(word)
            if not word:
                raise ValueError("empty cycle in superpotential")
            for e in word:
                if e not in edges:
                    raise ValueError(f"unknown edge {e!r}")
            for left, right in zip(word, word[1:] + word[:1]):
                if edges[left][0] != edges[right][1]:
                    raise ValueError(f"cycle {''.join(word)} is not composable at {left}{right}")
            key = _least_rotation(word)
            collected[key] = collected.get(key, 0) + coeff
        W = tuple(sorted((c, w) for w, c in collected.items() if c))
        return cls(tuple(vertices), edges, tuple(sorted(W, key=lambda t: t[1])))

    def tail(self, e: str) -> int:
        return self.edges[e][0]

    def head(self, e: str) -> int:
        return self.edges[e][1]

    @property
    def edge_order(self) -> tuple[str, ...]:
        return tuple(self.edges)

    def relations(self) -> dict[str, PathSum]:
        return {e: cyclic_derivative(self.superpotential, e) for e in self.edges}


def cyclic_derivative(W: Iterable[tuple[int, Sequence[str]]], e: str) -> PathSum:
    """Rotate each cycle so that an occurrence of ``e`` comes first, drop it,
    and sum over all occurrences."""
    out: PathSum = {}
    for coeff, word in W:
        word = tuple(word)
        for i, letter in enumerate(word):
            if letter == e:
                path = word[i + 1:] + word[:i]
                out[path] = out.get(path, 0) + coeff
    return {p: c for p, c in out.items() if c}


def conifold_algebra() -> QuiverPresentation:
    """Two vertices, ``a1, a2: 0 -> 1``, ``b1, b2: 1 -> 0`` and
    ``W = a1 b1 a2 b2 - a1 b2 a2 b1``."""
    edges = {"a1": (0, 1), "a2": (0, 1), "b1": (1, 0), "b2": (1, 0)}
    return QuiverPresentation.build(
        (0, 1), edges, [(1, ("a1", "b1", "a2", "b2")), (-1, ("a1", "b2", "a2", "b1"))]
    )


def c3_algebra() -> QuiverPresentation:
    """One vertex, three loops and ``W = x1 x2 x3 - x1 x3 x2``."""
    edges = {"x1": (0, 0), "x2": (0, 0), "x3": (0, 0)}
    return QuiverPresentation.build(
        (0,), edges, [(1, ("x1", "x2", "x3")), (-1, ("x1", "x3", "x2"))]
    )


# matrices


def zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def shape(m: Matrix, cols_if_empty: int = 0) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else cols_if_empty)


def matmul(x: Matrix, y: Matrix, inner: int, cols: int) -> Matrix:
    # inner/cols carry shapes through matrices with zero rows
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(inner)) for j in range(cols))
        for i in range(len(x))
    )


def _matadd(x: Matrix, y: Matrix, coeff) -> Matrix:
    return tuple(tuple(a + coeff * b for a, b in zip(rx, ry)) for rx, ry in zip(x, y))


@dataclass(frozen=True)
class ModuleRep:
    """A framed representation: a matrix per edge, shaped
    ``dims[head] x dims[tail]``, and a generator at the base vertex."""

    quiver: QuiverPresentation
    dims: Mapping[int, int]
    matrices: Mapping[str, Matrix]
    base: int
    generator: tuple

    def __post_init__(self):
        for v in self.quiver.vertices:
            if self.dims.get(v, 0) < 0:
                raise ValueError("negative dimension")
        if set(self.matrices) != set(self.quiver.edges):
            raise ValueError("need exactly one matrix per edge")
        for e, m in self.matrices.items():
            rows, cols = self.dim(self.quiver.head(e)), self.dim(self.quiver.tail(e))
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ValueError(f"matrix for {e} must be {rows}x{cols}")
        if len(self.generator) != self.dim(self.base):
            raise ValueError("generator length must equal the dimension at the base vertex")

    def dim(self, v: int) -> int:
        return self.dims.get(v, 0)

    @property
    def dimension_vector(self) -> tuple[int, ...]:
        return tuple(self.dim(v) for v in self.quiver.vertices)

    def evaluate(self, path: Word, start: int) -> Matrix:
        """Matrix of ``path`` as a map out of vertex ``start`` (needed for
        the empty path)."""
        m = identity(self.dim(start))
        cur = start
        for e in reversed(path):
            if self.quiver.tail(e) != cur:
                raise ValueError(f"path {''.join(path)} is not composable")
            nxt = self.quiver.head(e)
            m = matmul(self.matrices[e], m, self.dim(cur), self.dim(start))
            cur = nxt
        return m

    def to_text(self) -> str:
        lines = ["dims " + " ".join(str(d) for d in self.dimension_vector)]
        for e in self.quiver.edge_order:
            m = self.matrices[e]
            rows, cols = self.dim(self.quiver.head(e)), self.dim(self.quiver.tail(e))
            lines.append(f"{e} {rows} {cols}")
            if cols:
                lines.extend(" ".join(str(x) for x in row) for row in m)
        lines.append("generator " + " ".join(str(x) for x in self.generator))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, quiver: QuiverPresentation, base: int = 0) -> ModuleRep:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        it = iter(lines)
        head = next(it).split()
        if head[0] != "dims":
            raise ValueError("first line must start with 'dims'")
        dims = dict(zip(quiver.vertices, (int(x) for x in head[1:])))
        matrices = {}
        for e in quiver.edge_order:
            name, r, c = next(it).split()
            if name != e:
                raise ValueError(f"expected block for edge {e}, found {name}")
            r, c = int(r), int(c)
            rows = [tuple(int(x) for x in next(it).split()) for _ in range(r)] if c else [()] * r
            matrices[e] = tuple(rows)
        gen = next(it).split()
        if gen[0] != "generator":
            raise ValueError("last block must be the generator")
        return cls(quiver, dims, matrices, base, tuple(int(x) for x in gen[1:]))


def _basis(pi: PyramidPartition) -> dict[int, list[Stone]]:
    return {0: [s for s in pi.sorted() if s.colour == 0], 1: [s for s in pi.sorted() if s.colour == 1]}


# where each arrow sends a stone; the image may lie outside the partition
_ARROW_IMAGE = {
    "a1": lambda s: Stone(s.layer + 1, s.p + 1, s.q),
    "a2": lambda s: Stone(s.layer + 1, s.p, s.q),
    "b1": lambda s: Stone(s.layer + 1, s.p, s.q + 1),
    "b2": lambda s: Stone(s.layer + 1, s.p, s.q),
}


def module_from_partition(pi: PyramidPartition) -> ModuleRep:
    """The torus-fixed framed module with one basis vector per stone.

    ``a1``/``a2`` send a grey stone to the black stone below it with ``p``
    raised or kept; ``b1``/``b2`` send a black stone to the grey stone
    below it with ``q`` raised or kept.  Images outside the partition are
    zero.  Only length-1 pyramids have a module interpretation.
    """
    if pi.n != 1:
        raise ValueError("modules are only defined for length-1 pyramid partitions")
    quiver = conifold_algebra()
    basis = _basis(pi)
    index = {v: {s: i for i, s in enumerate(stones)} for v, stones in basis.items()}
    matrices = {}
    for e, (t, h) in quiver.edges.items():
        rows = [[0] * len(basis[t]) for _ in basis[h]]
        for j, s in enumerate(basis[t]):
            img = _ARROW_IMAGE[e](s)
            i = index[h].get(img)
            if i is not None:
                rows[i][j] = 1
        matrices[e] = tuple(tuple(r) for r in rows)
    generator = tuple(int(s == APEX) for s in basis[0])
    return ModuleRep(quiver, {0: pi.wt0, 1: pi.wt1}, matrices, 0, generator)


def check_relations(rep: ModuleRep, alg: QuiverPresentation | None = None) -> bool:
    """True iff every cyclic derivative of the superpotential acts as zero."""
    alg = alg or rep.quiver
    if set(alg.edges) != set(rep.quiver.edges) or any(
        alg.edges[e] != rep.quiver.edges[e] for e in alg.edges
    ):
        raise ValueError("representation and presentation have different quivers")
    for e, rel in alg.relations().items():
        start = alg.head(e)
        rows, cols = rep.dim(alg.tail(e)), rep.dim(start)
        total = zeros(rows, cols)
        for path, c in rel.items():
            m = rep.evaluate(path, start)
            if len(m) != rows:
                raise ValueError(f"relation {e} does not end at vertex {alg.tail(e)}")
            total = _matadd(total, m, c)
        if any(x for row in total for x in row):
            return False
    return True


class _Span:
    """Incrementally grown span of exact vectors (reduced row echelon)."""

    def __init__(self):
        self.rows: list[tuple[int, list[Fraction]]] = []

    def reduce(self, v: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in v]
        for piv, row in self.rows:
            if v[piv]:
                f = v[piv]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, v: Sequence) -> bool:
        r = self.reduce(v)
        piv = next((i for i, x in enumerate(r) if x), None)
        if piv is None:
            return False
        r = [x / r[piv] for x in r]
        new_rows = []
        for p, row in self.rows:
            if row[piv]:
                f = row[piv]
                row = [a - f * b for a, b in zip(row, r)]
            new_rows.append((p, row))
        self.rows = new_rows + [(piv, r)]
        return True

    def __len__(self) -> int:
        return len(self.rows)


def check_cyclic(rep: ModuleRep) -> bool:
    """True iff the generator generates: the smallest family of subspaces
    containing it and stable under every edge map is everything."""
    spans = {v: _Span() for v in rep.quiver.vertices}
    queue: list[tuple[int, tuple]] = []
    if rep.dim(rep.base) and spans[rep.base].add(rep.generator):
        queue.append((rep.base, rep.generator))
    while queue:
        v, vec = queue.pop()
        for e, (t, h) in rep.quiver.edges.items():
            if t != v:
                continue
            m = rep.matrices[e]
            img = tuple(sum(row[j] * vec[j] for j in range(len(vec))) for row in m)
            if spans[h].add(img):
                queue.append((h, img))
    return all(len(spans[v]) == rep.dim(v) for v in rep.quiver.vertices)


@dataclass(frozen=True)
class TangentReport:
    dim_S_matrices: int
    dim_S: int
    hessian_rank: int
    kernel_dim: int
    dim_G: int
    tangent_dim: int
    parity_ok: bool

    def to_text(self) -> str:
        return (
            f"dim_S_matrices={self.dim_S_matrices} dim_S={self.dim_S} "
            f"hessian_rank={self.hessian_rank} kernel_dim={self.kernel_dim} "
            f"dim_G={self.dim_G} tangent_dim={self.tangent_dim} parity_ok={self.parity_ok}\n"
        )


def coordinates(rep: ModuleRep) -> list[tuple[str, int, int]]:
    """Matrix coordinates in a fixed order: edge order, then row-major."""
    out = []
    for e in rep.quiver.edge_order:
        rows, cols = rep.dim(rep.quiver.head(e)), rep.dim(rep.quiver.tail(e))
        out.extend((e, i, j) for i in range(rows) for j in range(cols))
    return out


def _word_product(rep: ModuleRep, word: Word, right_vertex: int) -> Matrix:
    return rep.evaluate(word, right_vertex)


def hessian(rep: ModuleRep) -> list[list[int]]:
    """Hessian of ``w = Tr W`` in the matrix coordinates, at ``rep``.

    For a cycle ``M0 M1 ... M(L-1)`` and positions ``p != r = p + s``,
    ``d^2 Tr / dMp[x,y] dMr[u,v] = P[y,u] * Q[v,x]`` where ``P`` is the
    product strictly between ``p`` and ``r`` and ``Q`` the product strictly
    between ``r`` and ``p`` (going round the cycle).
    """
    coords = coordinates(rep)
    pos = {c: i for i, c in enumerate(coords)}
    size = len(coords)
    H = [[0] * size for _ in range(size)]
    quiver = rep.quiver
    for coeff, word in quiver.superpotential:
        L = len(word)
        for p in range(L):
            for s in range(1, L):
                r = (p + s) % L
                ep, er = word[p], word[r]
                between = tuple(word[(p + i) % L] for i in range(1, s))
                after = tuple(word[(r + i) % L] for i in range(1, L - s))
                # P maps out of head(er) into tail(ep); Q out of head(ep) into tail(er)
                P = _word_product(rep, between, quiver.head(er))
                Q = _word_product(rep, after, quiver.head(ep))
                rows_p, cols_p = rep.dim(quiver.head(ep)), rep.dim(quiver.tail(ep))
                rows_r, cols_r = rep.dim(quiver.head(er)), rep.dim(quiver.tail(er))
                for x in range(rows_p):
                    for y in range(cols_p):
                        i = pos[(ep, x, y)]
                        for u in range(rows_r):
                            pyu = P[y][u]
                            if not pyu:
                                continue
                            for v in range(cols_r):
                                qvx = Q[v][x]
                                if qvx:
                                    H[i][pos[(er, u, v)]] += coeff * pyu * qvx
    return H


def tangent_dimension(rep: ModuleRep, parity_vertex: int = 1) -> TangentReport:
    """Zariski tangent dimension of the moduli space at a fixed point.

    The critical locus of ``w`` has tangent space ``ker(Hessian)``; the
    framing vector adds ``dim`` at the base vertex and the free gauge group
    removes ``sum v_i^2``.
    """
    if not check_relations(rep):
        raise ValueError("representation does not satisfy the relations")
    if not check_cyclic(rep):
        raise ValueError("representation is not cyclic")
    H = hessian(rep)
    if not linalg.is_symmetric(H):
        raise AssertionError("Hessian is not symmetric")
    n_coords = len(H)
    rk = linalg.rank(H) if n_coords else 0
    ker = n_coords - rk
    dim_G = sum(d * d for d in rep.dimension_vector)
    tangent = ker + rep.dim(rep.base) - dim_G
    return TangentReport(
        dim_S_matrices=n_coords,
        dim_S=n_coords + rep.dim(rep.base),
        hessian_rank=rk,
        kernel_dim=ker,
        dim_G=dim_G,
        tangent_dim=tangent,
        parity_ok=(tangent - rep.dim(parity_vertex)) % 2 == 0,
    )
