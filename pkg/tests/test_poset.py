import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncdt import poset
from ncdt.poset import IndexedPoset, count_ideals, enumerate_ideals
from ncdt.pyramid import box_poset, pyramid_poset

from oracles import brute_ideals

backends = pytest.mark.parametrize("backend", poset.BACKENDS)


def test_build_rejects_bad_order():
    with pytest.raises(ValueError):
        IndexedPoset.build([1, 0], lambda e: [0] if e == 1 else [])


def test_build_rejects_unknown_parent():
    with pytest.raises(ValueError):
        IndexedPoset.build([0], lambda e: [5])


def test_cython_available():
    assert "cython" in poset.BACKENDS


def test_env_forces_fallback(monkeypatch):
    monkeypatch.setenv("NCDT_BACKEND", "python")
    assert poset.default_backend() == "python"


@backends
@pytest.mark.parametrize("n,N", [(1, 10), (2, 8)])
def test_counts_agree_with_enumeration(backend, n, N):
    P = pyramid_poset(n, N)
    expect: dict = {}
    for ideal in enumerate_ideals(P, N):
        w1 = sum(P.colour[i] for i in ideal)
        key = (len(ideal) - w1, w1)
        expect[key] = expect.get(key, 0) + 1
    assert count_ideals(P, N, backend=backend) == expect


@pytest.mark.parametrize("threads", [2, 4])
def test_threads_do_not_change_counts(threads):
    P = pyramid_poset(1, 14)
    base = count_ideals(P, 14, threads=1)
    assert count_ideals(P, 14, threads=threads) == base
    assert count_ideals(P, 14, threads=threads, backend="python") == base


def test_unknown_backend():
    with pytest.raises(ValueError):
        count_ideals(pyramid_poset(1, 2), 2, backend="fortran")


def test_box_poset_ideals():
    P = box_poset(6)
    got = {frozenset(P.elements[i] for i in ideal) for ideal in enumerate_ideals(P, 6)}
    assert all(P.is_ideal(P.elements.index(b) for b in s) for s in got)
    assert len(got) == 1 + 1 + 3 + 6 + 13 + 24 + 48


# random posets: a DAG on 0..k-1 with edges only from smaller to larger index
dags = st.integers(1, 9).flatmap(
    lambda k: st.lists(
        st.tuples(st.integers(0, k - 1), st.integers(0, k - 1)).filter(lambda t: t[0] < t[1]),
        max_size=12,
    ).map(lambda edges: (k, sorted(set(edges))))
)


@settings(max_examples=60, deadline=None)
@given(dags, st.integers(0, 9))
def test_random_posets_against_brute_force(dag, max_size):
    k, edges = dag
    par = {i: [a for a, b in edges if b == i] for i in range(k)}
    ch = {i: [b for a, b in edges if a == i] for i in range(k)}
    P = IndexedPoset.build(range(k), lambda e: par[e], lambda e: e % 2)
    emitted = list(enumerate_ideals(P, max_size))
    assert len(emitted) == len(set(emitted))
    assert all(list(t) == sorted(t) for t in emitted)
    brute = brute_ideals(P.roots, lambda e: par[e], lambda e: ch[e], max_size)
    assert {frozenset(t) for t in emitted} == brute
    for backend in poset.BACKENDS:
        counts = count_ideals(P, max_size, backend=backend)
        assert sum(counts.values()) == len(brute)
