from fractions import Fraction

import pytest

from ncdt import linalg
from ncdt.pyramid import APEX, PyramidPartition, Stone, enumerate_partitions
from ncdt.quiver import (
    ModuleRep,
    QuiverPresentation,
    c3_algebra,
    check_cyclic,
    check_relations,
    conifold_algebra,
    cyclic_derivative,
    hessian,
    module_from_partition,
    tangent_dimension,
)

from oracles import fraction_rank


def test_c3_derivatives_are_commutators():
    rel = c3_algebra().relations()
    assert rel["x1"] == {("x2", "x3"): 1, ("x3", "x2"): -1}
    assert rel["x2"] == {("x3", "x1"): 1, ("x1", "x3"): -1}
    assert rel["x3"] == {("x1", "x2"): 1, ("x2", "x1"): -1}


def test_conifold_relations():
    alg = conifold_algebra()
    rel = alg.relations()
    assert len(rel) == 4
    assert rel["a1"] == {("b1", "a2", "b2"): 1, ("b2", "a2", "b1"): -1}
    assert rel["b1"] == {("a2", "b2", "a1"): 1, ("a1", "b2", "a2"): -1}
    for e, paths in rel.items():
        for p in paths:
            assert len(p) == 3
            assert alg.head(p[0]) == alg.tail(e) and alg.tail(p[-1]) == alg.head(e)


def test_derivative_of_absent_edge_is_zero():
    assert cyclic_derivative([(1, ("x1", "x2"))], "x3") == {}


def test_rotation_invariance():
    edges = {"a1": (0, 1), "a2": (0, 1), "b1": (1, 0), "b2": (1, 0)}
    word = ("a1", "b1", "a2", "b2")
    for i in range(4):
        rotated = word[i:] + word[:i]
        alg = QuiverPresentation.build((0, 1), edges, [(1, rotated)])
        assert alg.superpotential == ((1, word),)
        assert cyclic_derivative([(1, rotated)], "b1") == cyclic_derivative([(1, word)], "b1")


def test_non_closed_cycle_rejected():
    with pytest.raises(ValueError):
        QuiverPresentation.build((0, 1), {"a": (0, 1)}, [(1, ("a",))])


def test_small_modules():
    apex = module_from_partition(PyramidPartition(frozenset({APEX})))
    assert apex.dimension_vector == (1, 0) and apex.generator == (1,)
    two = module_from_partition(PyramidPartition(frozenset({APEX, Stone(1, 0, 0)})))
    assert two.matrices["a2"] == ((1,),) and two.matrices["a1"] == ((0,),)
    assert two.matrices["b1"] == ((0,),) == two.matrices["b2"]
    assert check_relations(two) and check_cyclic(two)


def test_module_requires_length_one():
    with pytest.raises(ValueError):
        module_from_partition(PyramidPartition(frozenset({APEX}), n=2))


def test_c3_non_commuting_fails_relations():
    alg = c3_algebra()
    shift = ((0, 1), (0, 0))
    diag = ((1, 0), (0, 2))
    rep = ModuleRep(alg, {0: 2}, {"x1": shift, "x2": diag, "x3": ((0, 0), (0, 0))}, 0, (1, 0))
    assert not check_relations(rep)


def test_zero_rep_and_cyclicity():
    alg = conifold_algebra()
    z = ((0,),)
    rep = ModuleRep(alg, {0: 1, 1: 1}, {e: z for e in alg.edges}, 0, (1,))
    assert check_relations(rep)
    assert not check_cyclic(rep)
    lone = ModuleRep(alg, {0: 1, 1: 0}, {e: () if alg.head(e) == 1 else ((),) for e in alg.edges}, 0, (1,))
    assert check_cyclic(lone)


def test_quiver_mismatch_is_an_error():
    rep = module_from_partition(PyramidPartition(frozenset({APEX})))
    with pytest.raises(ValueError):
        check_relations(rep, c3_algebra())


def test_text_round_trip():
    for p in enumerate_partitions(1, 6):
        rep = module_from_partition(p)
        assert ModuleRep.from_text(rep.to_text(), rep.quiver) == rep


def test_modules_are_valid_and_distinct():
    seen = set()
    for p in enumerate_partitions(1, 8):
        rep = module_from_partition(p)
        assert rep.dimension_vector == p.weight
        assert check_relations(rep) and check_cyclic(rep)
        key = rep.to_text()
        assert key not in seen
        seen.add(key)


def test_tangent_examples():
    apex = tangent_dimension(module_from_partition(PyramidPartition(frozenset({APEX}))))
    assert apex.tangent_dim == 0 and apex.parity_ok
    for s in (Stone(1, 0, 0), Stone(1, 1, 0)):
        rep = tangent_dimension(module_from_partition(PyramidPartition(frozenset({APEX, s}))))
        assert rep.dim_S_matrices == 4 and rep.hessian_rank == 0 and rep.tangent_dim == 3


def test_tangent_rejects_invalid():
    alg = conifold_algebra()
    z = ((0,),)
    rep = ModuleRep(alg, {0: 1, 1: 1}, {e: z for e in alg.edges}, 0, (1,))
    with pytest.raises(ValueError):
        tangent_dimension(rep)


def _matmul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]) if y else 0)] for i in range(len(x))]


def _path_value(rep, path, start, replaced=None):
    """Matrix of a path with, optionally, position ``replaced[0]`` swapped
    for the matrix ``replaced[1]``."""
    d = rep.dim(start)
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    for pos in range(len(path) - 1, -1, -1):
        e = path[pos]
        mat = replaced[1] if replaced and replaced[0] == pos else [list(r) for r in rep.matrices[e]]
        m = _matmul(mat, m) if mat else [[] for _ in range(rep.dim(rep.quiver.head(e)))]
    return m


def relation_jacobian(rep):
    """Derivative of every relation entry in every matrix coordinate,
    computed by replacing one letter at a time with a unit matrix."""
    q = rep.quiver
    coords = [
        (e, i, j)
        for e in q.edge_order
        for i in range(rep.dim(q.head(e)))
        for j in range(rep.dim(q.tail(e)))
    ]
    rows = []
    for f, rel in q.relations().items():
        start = q.head(f)
        nrows, ncols = rep.dim(q.tail(f)), rep.dim(start)
        for x in range(nrows):
            for y in range(ncols):
                row = []
                for e, i, j in coords:
                    unit = [[int((a, b) == (i, j)) for b in range(rep.dim(q.tail(e)))] for a in range(rep.dim(q.head(e)))]
                    total = 0
                    for path, c in rel.items():
                        for pos, letter in enumerate(path):
                            if letter == e:
                                total += c * _path_value(rep, path, start, (pos, unit))[x][y]
                    row.append(total)
                rows.append(row)
    return rows


def test_hessian_rank_matches_linearized_relations():
    checked = 0
    for p in enumerate_partitions(1, 6):
        rep = module_from_partition(p)
        H = hessian(rep)
        if not H:
            continue
        J = relation_jacobian(rep)
        assert linalg.rank(H) == fraction_rank(J) == fraction_rank(H)
        checked += 1
    assert checked > 50


def test_parity_through_ten_stones():
    for p in enumerate_partitions(1, 10):
        rep = tangent_dimension(module_from_partition(p))
        assert rep.parity_ok
        assert (rep.tangent_dim - p.wt1) % 2 == 0
        if p.weight == (1, 1):
            assert rep.tangent_dim == 3
