"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as coefficient vectors of a polynomial in ``zeta_N``
reduced modulo ``zeta_N**N - 1``.  That representation is not unique, so
equality and zero tests reduce modulo the N-th cyclotomic polynomial.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

__all__ = ["Cyclotomic", "cyclotomic_polynomial", "parse_cyclotomic", "zeta"]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a, b):
    """Divide polynomials given low-degree-first; ``b`` must be nonzero."""
    a = [Fraction(x) for x in a]
    b = _poly_trim(b)
    if len(a) < len(b):
        return [], _poly_trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _poly_trim(q), _poly_trim(a[: len(b) - 1])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(int(c) for c in num)


def _poly_inverse_mod(a, m):
    """Inverse of ``a`` modulo the irreducible polynomial ``m`` over Q."""
    r0, r1 = [Fraction(x) for x in m], _poly_divmod(a, m)[1]
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        qs = _poly_mul(q, s1)
        n = max(len(s0), len(qs))
        s0, s1 = s1, _poly_trim(
            [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)]
        )
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = r0[0]
    return [x / c for x in s0]


class Cyclotomic:
    """An element of Q(zeta_N), immutable."""

    __slots__ = ("conductor", "coeffs", "_reduced")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, conductor: int, coeffs=None):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        vec = [Fraction(0)] * conductor
        for i, c in enumerate(coeffs or ()):
            vec[i % conductor] += Fraction(c)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", tuple(vec))
        object.__setattr__(self, "_reduced", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    # construction -------------------------------------------------------
    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        return cls(1, [Fraction(q)])

    @classmethod
    def root(cls, n: int, e: int = 1) -> "Cyclotomic":
        vec = [0] * n
        vec[e % n] = 1
        return cls(n, vec)

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Rational)):
            return Cyclotomic.rational(x)
        return NotImplemented

    def lift(self, n: int) -> "Cyclotomic":
        """The same number written with conductor ``n`` (a multiple of ours)."""
        if n % self.conductor:
            raise ValueError(f"{n} is not a multiple of {self.conductor}")
        step = n // self.conductor
        vec = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            vec[i * step] = c
        return Cyclotomic(n, vec)

    def _common(self, other):
        n = _lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n), n

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, n = self._common(other)
        return Cyclotomic(n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, n = self._common(other)
        out = [Fraction(0)] * n
        nz = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in nz:
                    out[(i + j) % n] += x * y
        return Cyclotomic(n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic.rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def reduced(self) -> tuple[Fraction, ...]:
        """Canonical coefficients modulo Phi_N (length phi(N), padded)."""
        if self._reduced is None:
            phi = cyclotomic_polynomial(self.conductor)
            rem = _poly_divmod(self.coeffs, phi)[1]
            deg = len(phi) - 1
            object.__setattr__(self, "_reduced", tuple(rem) + (Fraction(0),) * (deg - len(rem)))
        return self._reduced

    def is_zero(self) -> bool:
        if not any(self.coeffs):
            return True
        return not any(self.reduced())

    def __bool__(self):
        return not self.is_zero()

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        phi = cyclotomic_polynomial(self.conductor)
        return Cyclotomic(self.conductor, _poly_inverse_mod(list(self.coeffs), list(phi)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    def to_rational(self):
        """Return a Fraction if this element is rational, else None."""
        red = self.reduced()
        if any(red[1:]):
            return None
        return red[0] if red else Fraction(0)

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {format_cyclotomic(self)!r})"

    def __str__(self):
        return format_cyclotomic(self)


def zeta(n: int, e: int = 1) -> Cyclotomic:
    return Cyclotomic.root(n, e)


def format_cyclotomic(x: Cyclotomic) -> str:
    q = x.to_rational()
    if q is not None:
        return str(q)
    terms = []
    for e, c in enumerate(x.coeffs):
        if not c:
            continue
        mon = "" if e == 0 else f"z({x.conductor})^{e}"
        if not mon:
            terms.append(str(c))
        elif c == 1:
            terms.append(mon)
        elif c == -1:
            terms.append("-" + mon)
        else:
            terms.append(f"{c}*{mon}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


_TERM = re.compile(
    r"""^(?P<coef>\d+(?:/\d+)?)?\s*\*?\s*
        (?:(?:z|zeta|ζ)\((?P<n>\d+)\)(?:\^(?P<e>-?\d+))?)?$""",
    re.X,
)


def parse_cyclotomic(text) -> Cyclotomic:
    """Parse literals such as ``"-1"``, ``"1/2"``, ``"z(8)^3"``, ``"1 - 2*z(5)^2"``."""
    if isinstance(text, Cyclotomic):
        return text
    if isinstance(text, int):
        return Cyclotomic.rational(text)
    s = str(text).replace(" ", "")
    if not s:
        raise ValueError("empty cyclotomic literal")
    total = Cyclotomic.rational(0)
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        m = _TERM.match(body)
        if not m or (m.group("coef") is None and m.group("n") is None):
            raise ValueError(f"bad cyclotomic term {body!r} in {text!r}")
        term = Cyclotomic.rational(Fraction(m.group("coef") or 1))
        if m.group("n"):
            term = term * zeta(int(m.group("n")), int(m.group("e") or 1))
        total = total - term if sign == "-" else total + term
    if "".join(sign + body for sign, body in re.findall(r"([+-]?)([^+-]+)", s)) != s:
        raise ValueError(f"bad cyclotomic literal {text!r}")
    return total
