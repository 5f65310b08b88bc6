"""``ncdt`` command line.

Exit codes: 0 success or passing check, 1 failing check, 2 usage error or
unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import analysis, dimer, quiver
from .poset import BACKENDS
from .products import macmahon, zA_product, zX_product
from .pyramid import (
    PyramidPartition,
    enumerate_partitions,
    plane_partitions_enumerated,
    zA_enumerated,
)
from .series import format_coefficient

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _emit_series(series, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(series.to_json(), indent=1) + "\n")
    else:
        out.write(series.to_table())


def _read_partition(path: str, n: int) -> PyramidPartition:
    try:
        with open(path, encoding="utf-8") as fh:
            return PyramidPartition.from_lines(fh.read(), n)
    except (OSError, ValueError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read partition from {path}: {exc}") from None


# enum / product


def cmd_enum(args, out) -> int:
    s = zA_enumerated(args.length, args.max_weight, backend=args.backend, threads=args.threads)
    _emit_series(s, args.format, out)
    return EXIT_OK


def cmd_product(args, out) -> int:
    if args.which == "zA":
        s = zA_product(args.n, args.max_degree)
    else:
        if args.n != 1:
            raise UsageError("--n only applies to zA")
        s = zX_product(args.max_degree, "X" if args.which == "zX" else "Xplus")
    _emit_series(s, args.format, out)
    return EXIT_OK


# verify


def _partition_lines(results, out) -> bool:
    ok = True
    for i, (pi, value, good) in enumerate(results):
        ok &= good
        out.write(f"{i} {pi.wt0} {pi.wt1} {value} {'ok' if good else 'MISMATCH'}\n")
    return ok


def _finish(ok: bool, total: int, bad: int, out) -> int:
    out.write(f"{'PASS' if ok else 'FAIL'} total={total} mismatches={bad}\n")
    return EXIT_OK if ok else EXIT_FAIL


def _report(rep: analysis.VerificationReport, out) -> int:
    out.write(rep.to_text())
    return EXIT_OK if rep.passed else EXIT_FAIL


def check_enum_product(args, out) -> int:
    enum = zA_enumerated(args.length, args.max_weight, backend=args.backend, threads=args.threads)
    prod = zA_product(args.length, args.max_weight)
    rep = analysis.VerificationReport("enum-product")
    N = args.max_weight
    for a in range(N + 1):
        for b in range(N + 1 - a):
            rep.add(a, b, enum[(a, b)], prod[(a, b)])
    return _report(rep, out)


def check_planepartitions(args, out) -> int:
    enum = plane_partitions_enumerated(args.max_degree, backend=args.backend)
    prod = macmahon(True, args.max_degree)
    rep = analysis.VerificationReport("planepartitions")
    for d in range(args.max_degree + 1):
        rep.add(d, 0, enum[(d, 0)], prod[(d, 0)])
    return _report(rep, out)


def check_factorization(args, out) -> int:
    return _report(analysis.factorization_check(args.max_degree), out)


def _sign(args) -> int:
    return -1 if args.sign_corrected else 1


def check_eq9(args, out) -> int:
    return _report(analysis.verify_eq9(args.max_degree, args.t_degree, _sign(args)), out)


def check_eq10(args, out) -> int:
    return _report(analysis.verify_eq10(args.max_degree, args.t_degree, _sign(args)), out)


def _partitions(args):
    return list(enumerate_partitions(args.length, args.max_stones))


def check_parity(args, out) -> int:
    if args.length != 1:
        raise UsageError("parity is implemented for --length 1 only")
    results = []
    for pi in _partitions(args):
        rep = quiver.tangent_dimension(quiver.module_from_partition(pi))
        good = rep.parity_ok and (pi.weight != (1, 1) or rep.tangent_dim == 3)
        results.append((pi, rep.tangent_dim, good))
    ok = _partition_lines(results, out)
    return _finish(ok, len(results), sum(not r[2] for r in results), out)


def check_relations(args, out) -> int:
    if args.length != 1:
        raise UsageError("relations is implemented for --length 1 only")
    results = []
    seen = set()
    for pi in _partitions(args):
        rep = quiver.module_from_partition(pi)
        text = rep.to_text()
        good = quiver.check_relations(rep) and quiver.check_cyclic(rep) and text not in seen
        seen.add(text)
        results.append((pi, len(pi), good))
    ok = _partition_lines(results, out)
    return _finish(ok, len(results), sum(not r[2] for r in results), out)


def _alternate_order(pi: PyramidPartition):
    # another linear extension: by layer, then reversed within the layer
    return sorted(pi.stones, key=lambda s: (s.layer, -s.p, -s.q))


def dimer_ok(pi: PyramidPartition) -> bool:
    max_layer = max((s.layer for s in pi.stones), default=0)
    window = dimer.validation_window(max_layer, pi.n)
    valid = []
    try:
        d = dimer.to_dimers(pi, on_flip=lambda c: valid.append(c.is_perfect_matching(window)))
        d2 = dimer.to_dimers(pi, _alternate_order(pi))
    except dimer.IllegalFlip:
        return False
    return (
        all(valid)
        and d.toggles == d2.toggles
        and len(d.toggles) <= 4 * len(pi)
        and dimer.from_dimers(d) == pi
    )


def check_dimer_roundtrip(args, out) -> int:
    results = []
    seen = set()
    for pi in _partitions(args):
        good = dimer_ok(pi)
        toggles = dimer.to_dimers(pi).toggles if good else None
        good = good and toggles not in seen
        seen.add(toggles)
        results.append((pi, len(toggles or ()), good))
    ok = _partition_lines(results, out)
    return _finish(ok, len(results), sum(not r[2] for r in results), out)


CHECKS: dict[str, Callable] = {
    "enum-product": check_enum_product,
    "factorization": check_factorization,
    "eq9": check_eq9,
    "eq10": check_eq10,
    "parity": check_parity,
    "relations": check_relations,
    "dimer-roundtrip": check_dimer_roundtrip,
    "planepartitions": check_planepartitions,
}


def cmd_verify(args, out) -> int:
    return CHECKS[args.check](args, out)


# single-partition tools


def cmd_module(args, out) -> int:
    if args.length != 1:
        raise UsageError("module is implemented for --length 1 only")
    pi = _read_partition(args.partition_file, 1)
    rep = quiver.module_from_partition(pi)
    out.write(rep.to_text())
    rel, cyc = quiver.check_relations(rep), quiver.check_cyclic(rep)
    out.write(f"relations={'ok' if rel else 'FAIL'} cyclic={'ok' if cyc else 'FAIL'}\n")
    if not (rel and cyc):
        return EXIT_FAIL
    out.write(quiver.tangent_dimension(rep).to_text())
    return EXIT_OK


def cmd_dimer(args, out) -> int:
    if args.partition_file:
        pi = _read_partition(args.partition_file, args.length)
        d = dimer.to_dimers(pi)
        out.write(dimer.render_partition(pi) if args.render else d.to_lines())
        return EXIT_OK
    try:
        with open(args.dimer_file, encoding="utf-8") as fh:
            d = dimer.DimerDelta.from_lines(fh.read(), args.length)
    except (OSError, ValueError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read dimer file {args.dimer_file}: {exc}") from None
    try:
        pi = dimer.from_dimers(d)
    except ValueError as exc:
        out.write(f"not a partition image: {exc}\n")
        return EXIT_FAIL
    out.write(pi.to_lines())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncdt", description="Conifold pyramid partitions and their generating functions.")
    sub = p.add_subparsers(dest="command", required=True)

    def engine(sp):
        sp.add_argument("--threads", type=_pos, default=1)
        sp.add_argument("--backend", choices=BACKENDS, default=None)

    e = sub.add_parser("enum", help="enumerate pyramid partitions")
    e.add_argument("--length", type=_pos, default=1)
    e.add_argument("--max-weight", type=_nonneg, required=True)
    e.add_argument("--format", choices=("table", "json"), default="table")
    engine(e)
    e.set_defaults(func=cmd_enum)

    pr = sub.add_parser("product", help="expand a product formula")
    pr.add_argument("--which", choices=("zA", "zX", "zXplus"), required=True)
    pr.add_argument("--n", type=_pos, default=1)
    pr.add_argument("--max-degree", type=_nonneg, required=True)
    pr.add_argument("--format", choices=("table", "json"), default="table")
    pr.set_defaults(func=cmd_product)

    v = sub.add_parser("verify", help="run one verification")
    v.add_argument("--check", choices=tuple(CHECKS), required=True)
    v.add_argument("--length", type=_pos, default=1)
    v.add_argument("--max-weight", type=_nonneg, default=10)
    v.add_argument("--max-stones", type=_nonneg, default=8)
    v.add_argument("--max-degree", type=_pos, default=8)
    v.add_argument("--t-degree", type=_pos, default=8)
    v.add_argument(
        "--sign-corrected",
        action="store_true",
        help="compare eq9/eq10 against the negated closed form",
    )
    engine(v)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("module", help="module, checks and tangent dimension of one partition")
    m.add_argument("--partition-file", required=True)
    m.add_argument("--length", type=_pos, default=1)
    m.set_defaults(func=cmd_module)

    d = sub.add_parser("dimer", help="dimer configuration of a partition, or its inverse")
    src = d.add_mutually_exclusive_group(required=True)
    src.add_argument("--partition-file")
    src.add_argument("--dimer-file")
    d.add_argument("--length", type=_pos, default=1)
    d.add_argument("--render", action="store_true", help="ASCII picture instead of toggled edges")
    d.set_defaults(func=cmd_dimer)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"ncdt: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
