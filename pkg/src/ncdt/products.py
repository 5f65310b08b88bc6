"""Closed-form infinite products, expanded to a truncation bound.

Every product here is a product of binomials ``(1 + c u)^e`` with ``u`` a
monomial, so it is expanded factor by factor with
:meth:`BiSeries.mul_binomial` / :meth:`QZSeries.mul_binomial`.  A factor is
skipped exactly when its lowest monomial is already above the bound.
"""

from __future__ import annotations

from typing import Union

from .series import BiSeries, QZSeries, substitute_qz


def _msign(k: int) -> int:
    # (1 - (-q)^k) = (1 + _msign(k) q^k)
    return -((-1) ** k)


def macmahon(sign_flip: bool, N: int) -> BiSeries:
    """``M(q) = prod_k (1 - q^k)^(-k)`` in the variable ``q0``, or ``M(-q)``
    when ``sign_flip`` is set."""
    if N < 0:
        raise ValueError("N must be non-negative")
    s = BiSeries.one(N)
    for k in range(1, N + 1):
        c = _msign(k) if sign_flip else -1
        s = s.mul_binomial(k, 0, c, -k)
    return s


def zA_product(n: int, N: int) -> BiSeries:
    """The product side for length-``n`` pyramids, truncated at total
    degree ``N``::

        M(-q0 q1)^2 prod_k (1 + q0^k (-q1)^(k-1))^(k+n-1)
                           (1 + q0^k (-q1)^(k+1))^max(k-n+1, 0)

    ``n = 1`` is the conifold partition function.
    """
    if n < 1:
        raise ValueError("pyramid length n must be >= 1")
    if N < 0:
        raise ValueError("N must be non-negative")
    s = BiSeries.one(N)
    for k in range(1, N // 2 + 1):
        s = s.mul_binomial(k, k, _msign(k), -2 * k)
    for k in range(1, (N + 1) // 2 + 1):
        s = s.mul_binomial(k, k - 1, (-1) ** (k - 1), k + n - 1)
        if 2 * k + 1 <= N:
            s = s.mul_binomial(k, k + 1, (-1) ** (k + 1), max(k - n + 1, 0))
    return s


def macmahon_qz(D: int, power: int = 1) -> QZSeries:
    """``M(-q)^power`` as a z-free QZSeries."""
    s = QZSeries.one(D)
    for k in range(1, D + 1):
        s = s.mul_binomial(k, 0, _msign(k), -k * power)
    return s


def zX_product(N: int, which: str = "X") -> QZSeries:
    """``M(-q)^2 prod_k (1 - (-q)^k z^(+-1))^k`` with ``z`` for the resolved
    conifold ``X`` and ``z^-1`` for its flop ``Xplus``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    if which not in ("X", "Xplus"):
        raise ValueError(f"which must be 'X' or 'Xplus', not {which!r}")
    m = 1 if which == "X" else -1
    s = macmahon_qz(N, 2)
    for k in range(1, N + 1):
        s = s.mul_binomial(k, m, _msign(k), k)
    return s


def zA_qz_product(N: int) -> QZSeries:
    """The conifold product written directly in ``(q, z)``:
    ``M(-q)^2 prod_k (1 - (-q)^k z)^k (1 - (-q)^k z^-1)^k``."""
    s = macmahon_qz(N, 2)
    for k in range(1, N + 1):
        s = s.mul_binomial(k, 1, _msign(k), k)
        s = s.mul_binomial(k, -1, _msign(k), k)
    return s


def reduced(x: Union[BiSeries, QZSeries]) -> QZSeries:
    """Divide out the ``M(-q)^2`` factor, regrading a BiSeries first."""
    if isinstance(x, BiSeries):
        x = substitute_qz(x)
    s = x
    for k in range(1, x.D + 1):
        s = s.mul_binomial(k, 0, _msign(k), 2 * k)
    return s
