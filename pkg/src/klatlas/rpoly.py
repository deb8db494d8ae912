"""
Independent route to P_{u,w} through R-polynomials.

R_{u,w} follows its own recursion on a right descent s of w:
R_{u,w} = R_{us,ws} if us < u, else (q - 1) R_{u,ws} + q R_{us,ws}.
P is then the unique solution of

    q^{l(w)-l(u)} P_{u,w}(1/q) - P_{u,w}(q) = sum_{u < y <= w} R_{u,y} P_{y,w}

with deg P_{u,w} <= (l(w) - l(u) - 1)/2, i.e. P_{u,w} is minus the low-degree
part of the right-hand side. Bruhat order is decided by rank matrices.
Nothing here shares code with `klengine`.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .permcore import bruhat_leq, length
from .polyq import ONE, ZERO, PolyQ

__all__ = ["RPolyOracle"]

_Q_MINUS_1 = PolyQ([-1, 1])


class RPolyOracle:
    """Every P_{u,w} of S_n, computed by the R-polynomial route. Meant for n <= 5."""

    def __init__(self, n: int):
        self.n = n
        self.perms = sorted(permutations(range(1, n + 1)), key=lambda p: (length(p), p))
        self.len = {p: length(p) for p in self.perms}
        self.below = {w: [u for u in self.perms if bruhat_leq(u, w)] for w in self.perms}
        self._leq = {w: set(us) for w, us in self.below.items()}
        self._P: dict[tuple, dict[tuple, PolyQ]] = {}

    def leq(self, u, w) -> bool:
        return tuple(u) in self._leq[tuple(w)]

    def r_poly(self, u, w) -> PolyQ:
        return self._r(tuple(u), tuple(w))

    @lru_cache(maxsize=None)
    def _r(self, u, w) -> PolyQ:
        if u == w:
            return ONE
        if not self.leq(u, w):
            return ZERO
        i = next(k for k in range(len(w) - 1) if w[k] > w[k + 1])
        ws = _sw(w, i)
        us = _sw(u, i)
        if u[i] > u[i + 1]:
            return self._r(us, ws)
        return _Q_MINUS_1 * self._r(u, ws) + self._r(us, ws).shift(1)

    def kl_column(self, w) -> dict[tuple, PolyQ]:
        w = tuple(w)
        col = self._P.get(w)
        if col is not None:
            return col
        col = {w: ONE}
        lw = self.len[w]
        for u in sorted(self.below[w], key=lambda p: -self.len[p]):
            if u == w:
                continue
            rhs = ZERO
            for y, py in col.items():
                if y != u and self.leq(u, y):
                    rhs = rhs + self._r(u, y) * py
            col[u] = -rhs.truncate((lw - self.len[u] - 1) // 2)
        self._P[w] = col
        return col

    def kl_poly(self, u, w) -> PolyQ:
        return self.kl_column(w).get(tuple(u), ZERO)


def _sw(x, i):
    x = list(x)
    x[i], x[i + 1] = x[i + 1], x[i]
    return tuple(x)
