"""Exact truncated power series in two variables.

Three flavours live here:

* :class:`BiSeries` -- series in ``(q0, q1)`` truncated by total degree.
* :class:`QZSeries` -- series in ``q`` whose ``q^d`` coefficient is a Laurent
  polynomial in ``z``.
* :class:`QTSeries` -- series in ``(q, t)`` truncated separately in each
  variable, used for the small-``t`` expansion of logarithms.

Coefficients are Python ``int`` or :class:`fractions.Fraction`; nothing is
ever rounded.  All series are immutable: operations return new objects.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

Coefficient = Union[int, Fraction]


def normalize(c) -> Coefficient:
    """Return ``c`` as an int when it is integral, else as a Fraction."""
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def format_coefficient(c: Coefficient) -> str:
    c = normalize(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def parse_coefficient(text: str) -> Coefficient:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return normalize(Fraction(int(num), int(den)))
    return int(text)


def _clean(terms: Mapping) -> dict:
    return {k: normalize(v) for k, v in terms.items() if v != 0}


def _to_rational(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class _Series:
    """Shared machinery: a sparse map from exponent tuples to coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping):
        self._terms = terms

    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms))

    def items(self):
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, key) -> Coefficient:
        return self._terms.get(key, 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self._terms.values())


class BiSeries(_Series):
    """Series in ``q0, q1`` known exactly for every monomial of total degree
    at most ``N``.

    ``terms`` maps ``(a, b)`` to the coefficient of ``q0^a q1^b``; entries
    above the bound are dropped on construction.
    """

    __slots__ = ("N",)

    def __init__(self, terms: Mapping[tuple[int, int], Coefficient], N: int):
        if N < 0:
            raise ValueError("truncation bound must be non-negative")
        for a, b in terms:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in {(a, b)}")
        super().__init__(_clean({k: v for k, v in terms.items() if k[0] + k[1] <= N}))
        self.N = N

    # constructors

    @classmethod
    def zero(cls, N: int) -> BiSeries:
        return cls({}, N)

    @classmethod
    def one(cls, N: int) -> BiSeries:
        return cls({(0, 0): 1}, N)

    @classmethod
    def monomial(cls, a: int, b: int, N: int, coeff: Coefficient = 1) -> BiSeries:
        return cls({(a, b): coeff}, N)

    def truncate(self, N: int) -> BiSeries:
        return BiSeries(self._terms, min(N, self.N))

    # ring structure

    def _common(self, other: BiSeries) -> int:
        if not isinstance(other, BiSeries):
            raise TypeError(f"cannot combine BiSeries with {type(other).__name__}")
        return min(self.N, other.N)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiSeries({(0, 0): other}, self.N)
        N = self._common(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return BiSeries(out, N)

    __radd__ = __add__

    def __neg__(self) -> BiSeries:
        return BiSeries({k: -v for k, v in self._terms.items()}, self.N)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiSeries({k: v * other for k, v in self._terms.items()}, self.N)
        N = self._common(other)
        out: dict = {}
        for (a1, b1), c1 in self._terms.items():
            room = N - a1 - b1
            if room < 0:
                continue
            for (a2, b2), c2 in other._terms.items():
                if a2 + b2 <= room:
                    key = (a1 + a2, b1 + b2)
                    out[key] = out.get(key, 0) + c1 * c2
        return BiSeries(out, N)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BiSeries:
        if e < 0:
            return self.invert_unit() ** (-e)
        result = BiSeries.one(self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        N = min(self.N, other.N)
        return self.truncate(N)._terms == other.truncate(N)._terms

    def __repr__(self) -> str:
        shown = ", ".join(f"{k}: {format_coefficient(v)}" for k, v in self.items()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"BiSeries(N={self.N}, {{{shown}{more}}})"

    def constant(self) -> Coefficient:
        return self[(0, 0)]

    def mul_binomial(self, a: int, b: int, coeff: Coefficient, power: int) -> BiSeries:
        """Multiply by ``(1 + coeff q0^a q1^b) ** power``.

        Positive powers are applied one linear factor at a time; negative
        powers divide by the linear factor via the geometric recurrence.  Both
        cost O(terms) per unit of ``power``, which is what makes the infinite
        products cheap.
        """
        if a + b == 0:
            raise ValueError("binomial factor needs a non-constant monomial")
        if a + b > self.N or power == 0:
            return self
        terms = dict(self._terms)
        N = self.N
        for _ in range(abs(power)):
            if power > 0:
                # descending order: each target is read before it is updated
                for (x, y) in sorted(terms, reverse=True):
                    if x + y + a + b <= N:
                        key = (x + a, y + b)
                        terms[key] = terms.get(key, 0) + coeff * terms[(x, y)]
            else:
                out: dict = {}
                for deg in range(N + 1):
                    for x in range(deg + 1):
                        y = deg - x
                        v = terms.get((x, y), 0)
                        if x >= a and y >= b:
                            v -= coeff * out.get((x - a, y - b), 0)
                        if v:
                            out[(x, y)] = v
                terms = out
        return BiSeries(terms, N)

    def invert_unit(self) -> BiSeries:
        c0 = self.constant()
        if c0 == 0:
            raise ZeroDivisionError("constant term is zero; series is not a unit")
        if self.is_integral() and c0 not in (1, -1):
            raise ValueError(f"constant term {c0} is not a unit over the integers")
        inv0 = c0 if c0 in (1, -1) else 1 / _to_rational(c0)
        N = self.N
        rest = [(k, v) for k, v in self._terms.items() if k != (0, 0)]
        out: dict = {(0, 0): normalize(inv0)}
        for deg in range(1, N + 1):
            for x in range(deg + 1):
                y = deg - x
                s = 0
                for (a, b), c in rest:
                    if a <= x and b <= y:
                        s += c * out.get((x - a, y - b), 0)
                if s:
                    out[(x, y)] = normalize(-s * inv0)
        return BiSeries(out, N)

    def euler(self) -> BiSeries:
        """Apply the total-degree Euler operator ``q0 d/dq0 + q1 d/dq1``."""
        return BiSeries({(a, b): (a + b) * c for (a, b), c in self._terms.items()}, self.N)

    def _inverse_euler(self) -> BiSeries:
        if self.constant() != 0:
            raise ValueError("inverse Euler operator needs a zero constant term")
        return BiSeries(
            {(a, b): Fraction(c) / (a + b) for (a, b), c in self._terms.items()}, self.N
        )

    def log(self) -> BiSeries:
        if self.constant() != 1:
            raise ValueError("log needs constant term 1")
        return (self.euler() * self.invert_unit())._inverse_euler()

    def exp(self) -> BiSeries:
        if self.constant() != 0:
            raise ValueError("exp needs constant term 0")
        # E(f) = E(g) f, solved degree by degree
        eg = self.euler()
        out: dict = {(0, 0): 1}
        for deg in range(1, self.N + 1):
            for x in range(deg + 1):
                y = deg - x
                s = 0
                for (a, b), c in eg._terms.items():
                    if a <= x and b <= y:
                        s += c * out.get((x - a, y - b), 0)
                if s:
                    out[(x, y)] = Fraction(s) / deg
        return BiSeries(out, self.N)

    def map_coefficients(self, f: Callable[[int, int, Coefficient], Coefficient]) -> BiSeries:
        return BiSeries({(a, b): f(a, b, c) for (a, b), c in self._terms.items()}, self.N)

    # serialization

    def to_table(self) -> str:
        return "".join(f"{a} {b} {format_coefficient(c)}\n" for (a, b), c in self.items())

    @classmethod
    def from_table(cls, text: str, N: int) -> BiSeries:
        terms = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            a, b, v = line.split()
            terms[(int(a), int(b))] = parse_coefficient(v)
        return cls(terms, N)

    def to_json(self) -> dict:
        return {
            "variables": ["q0", "q1"],
            "truncation": self.N,
            "coefficients": [
                {"exp": [a, b], "value": format_coefficient(c)} for (a, b), c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> BiSeries:
        if list(data.get("variables", [])) != ["q0", "q1"]:
            raise ValueError("expected variables ['q0', 'q1']")
        terms = {}
        for entry in data["coefficients"]:
            a, b = entry["exp"]
            terms[(int(a), int(b))] = parse_coefficient(str(entry["value"]))
        return cls(terms, int(data["truncation"]))


class QZSeries(_Series):
    """Series in ``q`` with Laurent-polynomial coefficients in ``z``.

    ``terms`` maps ``(d, m)`` to the coefficient of ``q^d z^m``; rows are
    known for ``0 <= d <= D`` and must satisfy ``|m| <= d``.
    """

    __slots__ = ("D",)

    def __init__(self, terms: Mapping[tuple[int, int], Coefficient], D: int):
        if D < 0:
            raise ValueError("truncation bound must be non-negative")
        kept = {}
        for (d, m), v in terms.items():
            if d < 0:
                raise ValueError("negative q-degree")
            if d > D:
                continue
            if abs(m) > d and v != 0:
                raise ValueError(f"q^{d} z^{m} lies outside the Laurent window [-{d}, {d}]")
            kept[(d, m)] = v
        super().__init__(_clean(kept))
        self.D = D

    @classmethod
    def one(cls, D: int) -> QZSeries:
        return cls({(0, 0): 1}, D)

    def truncate(self, D: int) -> QZSeries:
        return QZSeries(self._terms, min(D, self.D))

    def row(self, d: int) -> dict[int, Coefficient]:
        """The Laurent polynomial in ``z`` multiplying ``q^d``."""
        return {m: v for (dd, m), v in self._terms.items() if dd == d}

    def _common(self, other) -> int:
        if not isinstance(other, QZSeries):
            raise TypeError(f"cannot combine QZSeries with {type(other).__name__}")
        return min(self.D, other.D)

    def __add__(self, other):
        D = self._common(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return QZSeries(out, D)

    def __neg__(self):
        return QZSeries({k: -v for k, v in self._terms.items()}, self.D)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QZSeries({k: v * other for k, v in self._terms.items()}, self.D)
        D = self._common(other)
        out: dict = {}
        for (d1, m1), c1 in self._terms.items():
            for (d2, m2), c2 in other._terms.items():
                if d1 + d2 <= D:
                    key = (d1 + d2, m1 + m2)
                    out[key] = out.get(key, 0) + c1 * c2
        return QZSeries(out, D)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, QZSeries):
            return NotImplemented
        D = min(self.D, other.D)
        return self.truncate(D)._terms == other.truncate(D)._terms

    def __repr__(self) -> str:
        return f"QZSeries(D={self.D}, {len(self)} terms)"

    def mul_binomial(self, d: int, m: int, coeff: Coefficient, power: int) -> QZSeries:
        """Multiply by ``(1 + coeff q^d z^m) ** power`` (``d >= 1``)."""
        if d < 1 or abs(m) > d:
            raise ValueError(f"factor q^{d} z^{m} is outside the Laurent window")
        if d > self.D or power == 0:
            return self
        terms = dict(self._terms)
        D = self.D
        for _ in range(abs(power)):
            if power > 0:
                for (x, y) in sorted(terms, reverse=True):
                    if x + d <= D:
                        key = (x + d, y + m)
                        terms[key] = terms.get(key, 0) + coeff * terms[(x, y)]
            else:
                out: dict = {}
                for (x, y) in sorted(set(terms) | _shifted_keys(terms, d, m, D)):
                    v = terms.get((x, y), 0)
                    v -= coeff * out.get((x - d, y - m), 0)
                    if v:
                        out[(x, y)] = v
                terms = out
        return QZSeries(terms, D)

    def invert_unit(self) -> QZSeries:
        c0 = self[(0, 0)]
        if c0 == 0:
            raise ZeroDivisionError("constant term is zero; series is not a unit")
        inv0 = c0 if c0 in (1, -1) else 1 / _to_rational(c0)
        rest = [(k, v) for k, v in self._terms.items() if k != (0, 0)]
        out: dict = {(0, 0): normalize(inv0)}
        for d in range(1, self.D + 1):
            for m in range(-d, d + 1):
                s = 0
                for (a, b), c in rest:
                    if a <= d:
                        s += c * out.get((d - a, m - b), 0)
                if s:
                    out[(d, m)] = normalize(-s * inv0)
        return QZSeries(out, self.D)

    def to_table(self) -> str:
        return "".join(f"{d} {m} {format_coefficient(c)}\n" for (d, m), c in self.items())

    @classmethod
    def from_table(cls, text: str, D: int) -> QZSeries:
        terms = {}
        for line in text.splitlines():
            if line.strip():
                d, m, v = line.split()
                terms[(int(d), int(m))] = parse_coefficient(v)
        return cls(terms, D)

    def to_json(self) -> dict:
        return {
            "variables": ["q", "z"],
            "truncation": self.D,
            "coefficients": [
                {"exp": [d, m], "value": format_coefficient(c)} for (d, m), c in self.items()
            ],
        }


def _shifted_keys(terms, d, m, D) -> set:
    # every key reachable from an existing key by repeated (d, m) shifts
    keys = set()
    for (x, y) in terms:
        j = 1
        while x + j * d <= D:
            keys.add((x + j * d, y + j * m))
            j += 1
    return keys


class QTSeries(_Series):
    """Series in ``q, t`` with rational coefficients, known for
    ``q``-degree at most ``D`` and ``t``-degree at most ``T``."""

    __slots__ = ("D", "T")

    def __init__(self, terms: Mapping[tuple[int, int], Coefficient], D: int, T: int):
        if D < 0 or T < 0:
            raise ValueError("truncation bounds must be non-negative")
        super().__init__(
            _clean({k: v for k, v in terms.items() if k[0] <= D and k[1] <= T})
        )
        self.D = D
        self.T = T

    def _common(self, other) -> tuple[int, int]:
        if not isinstance(other, QTSeries):
            raise TypeError(f"cannot combine QTSeries with {type(other).__name__}")
        return min(self.D, other.D), min(self.T, other.T)

    def truncate(self, D: int, T: int) -> QTSeries:
        return QTSeries(self._terms, min(D, self.D), min(T, self.T))

    def __add__(self, other):
        D, T = self._common(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return QTSeries(out, D, T)

    def __neg__(self):
        return QTSeries({k: -v for k, v in self._terms.items()}, self.D, self.T)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QTSeries({k: v * other for k, v in self._terms.items()}, self.D, self.T)
        D, T = self._common(other)
        out: dict = {}
        for (d1, j1), c1 in self._terms.items():
            for (d2, j2), c2 in other._terms.items():
                if d1 + d2 <= D and j1 + j2 <= T:
                    key = (d1 + d2, j1 + j2)
                    out[key] = out.get(key, 0) + c1 * c2
        return QTSeries(out, D, T)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, QTSeries):
            return NotImplemented
        D, T = self._common(other)
        return self.truncate(D, T)._terms == other.truncate(D, T)._terms

    def __repr__(self) -> str:
        return f"QTSeries(D={self.D}, T={self.T}, {len(self)} terms)"

    def _q_row(self, d: int) -> dict[int, Coefficient]:
        return {j: v for (dd, j), v in self._terms.items() if dd == d}

    def log(self) -> QTSeries:
        """Formal logarithm, graded by ``q``-degree.

        The ``q^0`` part must be exactly 1, so that the Euler operator in
        ``q`` alone determines the logarithm.
        """
        if self._q_row(0) != {0: 1}:
            raise ValueError("log needs the q^0 part to be exactly 1")
        D, T = self.D, self.T
        f = {d: self._q_row(d) for d in range(D + 1)}
        log_rows: dict[int, dict[int, Fraction]] = {}
        for d in range(1, D + 1):
            # d L_d = d F_d - sum_{i<d} i L_i F_{d-i}
            acc: dict[int, Fraction] = {j: Fraction(d * v) for j, v in f[d].items()}
            for i in range(1, d):
                for j1, v1 in log_rows[i].items():
                    for j2, v2 in f[d - i].items():
                        if j1 + j2 <= T:
                            acc[j1 + j2] = acc.get(j1 + j2, 0) - i * v1 * v2
            log_rows[d] = {j: v / d for j, v in acc.items() if v}
        return QTSeries(
            {(d, j): v for d, row in log_rows.items() for j, v in row.items()}, D, T
        )

    def to_table(self) -> str:
        return "".join(f"{d} {j} {format_coefficient(c)}\n" for (d, j), c in self.items())


def substitute_qz(x: BiSeries) -> QZSeries:
    """Regrade ``q0^a q1^b`` to ``q^a z^(b-a)`` (that is ``q = q0 q1``,
    ``z = q1``).

    A row ``q^d`` is complete on the window ``[-d, d]`` only when every
    monomial with ``a = d, b <= 2d`` is known, so the result keeps
    ``d <= N // 3``.
    """
    D = x.N // 3
    return QZSeries({(a, b - a): c for (a, b), c in x._terms.items() if a <= D}, D)


def _exp_poly(m: int, T: int) -> dict[int, Fraction]:
    # truncated e^{-m t}
    return {j: Fraction((-m) ** j, math.factorial(j)) for j in range(T + 1) if m or j == 0}


def substitute_t(x: QZSeries, T: int) -> QTSeries:
    """Substitute ``z = e^{-t}``, truncating each exponential at ``t^T``."""
    out: dict = {}
    cache: dict[int, dict[int, Fraction]] = {}
    for (d, m), c in x._terms.items():
        poly = cache.setdefault(m, _exp_poly(m, T))
        for j, v in poly.items():
            out[(d, j)] = out.get((d, j), 0) + c * v
    return QTSeries(out, x.D, T)


def laurent_to_qt(poly: Mapping[int, Coefficient], T: int) -> dict[int, Fraction]:
    """Substitute ``z = e^{-t}`` into a single Laurent polynomial."""
    out: dict[int, Fraction] = {}
    for m, c in poly.items():
        for j, v in _exp_poly(m, T).items():
            out[j] = out.get(j, 0) + c * v
    return {j: v for j, v in out.items() if v}


def univariate(coeffs: Iterable[Coefficient], N: int) -> BiSeries:
    """BiSeries in ``q0`` alone from a coefficient list."""
    return BiSeries({(i, 0): c for i, c in enumerate(coeffs)}, N)
