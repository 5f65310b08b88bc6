"""One test per acceptance criterion; a PASS/FAIL line for each is printed
in the terminal summary (see conftest.py), or directly when this file is
run as a script."""

import random

import pytest

from ncdt import analysis, dimer
from ncdt.products import macmahon, reduced, zA_product, zX_product
from ncdt.pyramid import enumerate_partitions, parents, plane_partitions_enumerated, zA_enumerated
from ncdt.quiver import check_cyclic, check_relations, module_from_partition, tangent_dimension

from oracles import plane_partition_counts, pyramid_ideals, signed_counts

RESULTS: dict[str, bool] = {}


def record(name, ok, detail=""):
    RESULTS[name] = ok
    print(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}")
    return ok


def mismatches(a, b, keys):
    return [k for k in keys if a[k] != b[k]]


def test_c01_master_oracle():
    N = 12
    enum, prod = zA_enumerated(1, N), zA_product(1, N)
    keys = [(a, b) for a in range(N + 1) for b in range(N + 1 - a)]
    bad = mismatches(enum, prod, keys)
    assert record("1 enumerated Z_A = product, n=1, weight <= 12", not bad, f"{len(keys)} monomials, {len(bad)} mismatches")


def test_c02_generalized_pyramids():
    N = 10
    bad = []
    for n in (2, 3):
        enum, prod = zA_enumerated(n, N), zA_product(n, N)
        bad += mismatches(enum, prod, [(a, b) for a in range(N + 1) for b in range(N + 1 - a)])
    assert record("2 enumerated Z^(n) = product, n=2,3, weight <= 10", not bad, f"{len(bad)} mismatches")


def test_c03_spot_coefficients():
    expected = {(0, 0): 1, (1, 0): 1, (0, 1): 0, (1, 1): -2, (2, 1): -4, (1, 2): 1, (2, 2): 8}
    brute = signed_counts(pyramid_ideals(4))
    enum = zA_enumerated(1, 4)
    ok = all(brute.get(k, 0) == v == enum[k] for k, v in expected.items())
    assert record("3 spot coefficients n=1 (brute force and enumeration)", ok)


def test_c04_plane_partitions():
    counts = plane_partition_counts(10)
    enum = plane_partitions_enumerated(10)
    ok = counts[:7] == [1, 1, 3, 6, 13, 24, 48] and enum == macmahon(True, 10)
    ok = ok and all(enum[(d, 0)] == (-1) ** d * counts[d] for d in range(11))
    assert record("4 plane partitions = M(-q) through degree 10", ok)


def test_c05_factorization():
    D = 8
    lhs = reduced(zA_product(1, 3 * D))
    rhs = reduced(zX_product(D, "X")) * reduced(zX_product(D, "Xplus"))
    keys = [(d, m) for d in range(D + 1) for m in range(-d, d + 1)]
    bad = mismatches(lhs, rhs, keys)
    assert record("5 reduced Z_A = reduced Z_X * reduced Z_X+ through q^8", not bad, f"{len(keys)} coefficients")


@pytest.mark.xfail(
    strict=True,
    reason="the exact log of the product is the negative of the stated closed form",
)
def test_c06_log_expansion_as_stated():
    r9, r10 = analysis.verify_eq9(8, 8), analysis.verify_eq10(8, 8)
    ok = r9.passed and r10.passed
    record(
        "6 log expansion, three-way agreement as stated",
        ok,
        f"closed form {r9.summary()}; Eisenstein form {r10.summary()}",
    )
    assert ok


def test_c06_log_expansion_sign_corrected():
    reports = [
        analysis.verify_eq9(8, 8, sign=-1),
        analysis.verify_eq10(8, 8, sign=-1),
        analysis.closed_forms_agree(8, 8),
        *analysis.consistency_triangle(8, 8).values(),
    ]
    ok = all(r.passed for r in reports)
    assert record("6' log expansion, three-way agreement with log = -sum M(d,k)", ok)


def test_c07_module_correctness():
    seen, ok, total = set(), True, 0
    for pi in enumerate_partitions(1, 10):
        rep = module_from_partition(pi)
        key = rep.to_text()
        ok &= check_relations(rep) and check_cyclic(rep) and key not in seen
        seen.add(key)
        total += 1
    assert record("7 modules satisfy relations, are cyclic and distinct, <= 10 stones", ok, f"{total} partitions")


def test_c08_parity():
    ok, total = True, 0
    for pi in enumerate_partitions(1, 8):
        rep = tangent_dimension(module_from_partition(pi))
        ok &= rep.parity_ok and (rep.tangent_dim - pi.wt1) % 2 == 0
        if pi.weight == (1, 1):
            ok &= rep.tangent_dim == 3
        total += 1
    assert record("8 tangent parity = wt1 mod 2, <= 8 stones; dim 3 at weight (1,1)", ok, f"{total} partitions")


def _linear_extension(pi, rng):
    placed, order, remaining = set(), [], set(pi.stones)
    while remaining:
        ready = sorted(s for s in remaining if all(p in placed for p in parents(s, pi.n)))
        s = rng.choice(ready)
        order.append(s)
        placed.add(s)
        remaining.remove(s)
    return order


def test_c09_dimer_bijection():
    rng = random.Random(20261016)
    seen, ok, total = set(), True, 0
    for pi in enumerate_partitions(1, 8):
        max_layer = max((s.layer for s in pi.stones), default=0)
        window = dimer.validation_window(max_layer)
        states = []
        d = dimer.to_dimers(pi, on_flip=states.append)
        ok &= all(s.is_perfect_matching(window) for s in states)
        ok &= all(dimer.to_dimers(pi, _linear_extension(pi, rng)) == d for _ in range(3))
        ok &= d.toggles not in seen and dimer.from_dimers(d) == pi
        seen.add(d.toggles)
        total += 1
    assert record("9 dimer map: legal flips, valid matchings, order-independent, injective, inverted", ok, f"{total} partitions")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_c") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
