"""
Exact polynomials in q with integer coefficients and nonnegative exponents.

>>> p = PolyQ([1, 1])
>>> str(p.shift(2))
'q^2 + q^3'
>>> str(p - p)
'0'
>>> PolyQ.parse("1 + q + 2*q^3")
PolyQ('1 + q + 2*q^3')
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Mapping

__all__ = ["PolyQ", "ZERO", "ONE", "Q", "NEG_INF"]

# degree of the zero polynomial
NEG_INF = -math.inf


class PolyQ:
    """
    Immutable polynomial stored as the coefficient tuple (c0, c1, ..., cd)
    with cd != 0; the zero polynomial is the empty tuple.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable[int] | Mapping[int, int] = ()):
        if isinstance(coeffs, Mapping):
            if any(e < 0 for e in coeffs):
                raise ValueError("negative exponent")
            size = max(coeffs, default=-1) + 1
            c = [0] * size
            for e, v in coeffs.items():
                c[e] += int(v)
        else:
            c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)
        self._hash = None

    @classmethod
    def _raw(cls, c: tuple[int, ...]) -> "PolyQ":
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "PolyQ":
        if e < 0:
            raise ValueError(f"negative exponent {e}")
        return cls([0] * e + [c])

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    def terms(self) -> dict[int, int]:
        """Exponent -> nonzero coefficient."""
        return {e: c for e, c in enumerate(self._c) if c}

    def degree(self) -> int | float:
        return len(self._c) - 1 if self._c else NEG_INF

    def coefficient(self, e: int) -> int:
        return self._c[e] if 0 <= e < len(self._c) else 0

    def eval_at_one(self) -> int:
        return sum(self._c)

    def __call__(self, q: int) -> int:
        total = 0
        for c in reversed(self._c):
            total = total * q + c
        return total

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyQ):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._c)
        return self._hash

    def __add__(self, other: "PolyQ | int") -> "PolyQ":
        other = _coerce(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        return PolyQ([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self) -> "PolyQ":
        return PolyQ._raw(tuple(-c for c in self._c))

    def __sub__(self, other: "PolyQ | int") -> "PolyQ":
        return self + (-_coerce(other))

    def __rsub__(self, other: "PolyQ | int") -> "PolyQ":
        return _coerce(other) - self

    def __mul__(self, other: "PolyQ | int") -> "PolyQ":
        if isinstance(other, int):
            return self.scale(other)
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyQ(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "PolyQ":
        """Multiply by q^k."""
        if k < 0:
            raise ValueError(f"negative shift {k}")
        if not self._c:
            return self
        return PolyQ._raw((0,) * k + self._c)

    def scale(self, c: int) -> "PolyQ":
        return PolyQ([c * x for x in self._c])

    def truncate(self, max_degree: int) -> "PolyQ":
        """Drop all terms of degree > max_degree."""
        return PolyQ(self._c[:max(max_degree + 1, 0)])

    def is_unimodal_symmetric_prefix(self) -> bool:
        """
        Coefficients weakly increase then weakly decrease over exponents
        0..degree. A diagnostic only; KL polynomials such as 1 + q^3 fail it.
        """
        c = self._c
        i = 1
        while i < len(c) and c[i] >= c[i - 1]:
            i += 1
        while i < len(c) and c[i] <= c[i - 1]:
            i += 1
        return i >= len(c)

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, c in enumerate(self._c):
            if not c:
                continue
            if e == 0:
                mono = str(abs(c))
            else:
                base = "q" if e == 1 else f"q^{e}"
                mono = base if abs(c) == 1 else f"{abs(c)}*{base}"
            if not parts:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(("+ " if c > 0 else "- ") + mono)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"PolyQ({str(self)!r})"

    _TERM = re.compile(r"^(?:(\d+)\*?)?(q(?:\^(\d+))?)?$")

    @classmethod
    def parse(cls, text: str) -> "PolyQ":
        """Inverse of `str`."""
        s = text.replace(" ", "")
        if s == "0":
            return ZERO
        if not s:
            raise ValueError("empty polynomial")
        tokens = re.findall(r"[+-]?[^+-]+", s)
        coeffs: dict[int, int] = {}
        for tok in tokens:
            sign = -1 if tok.startswith("-") else 1
            m = cls._TERM.match(tok.lstrip("+-"))
            if not m or not (m.group(1) or m.group(2)):
                raise ValueError(f"bad term {tok!r} in {text!r}")
            c = int(m.group(1)) if m.group(1) else 1
            e = 0 if not m.group(2) else int(m.group(3) or 1)
            coeffs[e] = coeffs.get(e, 0) + sign * c
        return cls(coeffs)


def _coerce(x: "PolyQ | int") -> PolyQ:
    if isinstance(x, PolyQ):
        return x
    if isinstance(x, int):
        return PolyQ((x,))
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


ZERO = PolyQ()
ONE = PolyQ([1])
Q = PolyQ([0, 1])
