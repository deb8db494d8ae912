"""
Combinatorics behind the resolutions used for P_{id,w} = 1 + q^h.

Covexillary hosts: the coessential set in its total order, with the
non-inclusion entries marked. Hosts containing 3412: the distinguished
3412 embedding a < b < c < d of minimum height, then minimum amplitude, and
the quantities derived from it (alpha', delta', kappa, v, sigma, u, M, N),
plus the region checks that a single-component singular locus forces.

>>> d = cortez_data(parse_perm("817396254"))
>>> d.alpha_prime, d.delta_prime, d.kappa, str(d.v)
(8, 4, 5, '514398276')
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .patterns import avoids, iter_embeddings
from .permcore import (
    CoessEntry, Permutation, PermutationError, coessential_set, compose, inverse,
    longest_in_parabolic, parse_perm, rank,  # noqa: F401  (parse_perm: doctest)
)

__all__ = [
    "MinEmbedding", "CortezData", "CovexReport", "is_covexillary", "min_3412_embedding",
    "min_height", "cortez_data", "REGION_IDS", "onecompempty_regions", "check_onecompempty",
    "MNReport", "check_MNempty", "covex_report", "exceptional_R_region", "sigma_cycle",
    "exceptional_R_graph_points", "rv_expected", "rv_violations",
]

P3412 = (3, 4, 1, 2)


def is_covexillary(w: Sequence[int]) -> bool:
    return avoids(w, P3412)


@dataclass(frozen=True)
class MinEmbedding:
    a: int
    b: int
    c: int
    d: int
    alpha: int
    beta: int
    gamma: int
    delta: int

    @property
    def height(self) -> int:
        return self.alpha - self.delta

    @property
    def amplitude(self) -> int:
        return self.beta - self.gamma


def min_3412_embedding(w: Sequence[int]) -> MinEmbedding | None:
    """
    The 3412 embedding minimizing (height, amplitude), ties going to the
    lexicographically least positions; None when w avoids 3412.
    """
    best = None
    for Z in iter_embeddings(P3412, w):
        a, b, c, d = Z
        key = (w[a - 1] - w[d - 1], w[b - 1] - w[c - 1], Z)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    a, b, c, d = best[2]
    return MinEmbedding(a, b, c, d, w[a - 1], w[b - 1], w[c - 1], w[d - 1])


def min_height(w: Sequence[int]) -> int:
    """Minimum height of a 3412 embedding, 1 if there is none."""
    e = min_3412_embedding(w)
    return 1 if e is None else e.height


def sigma_cycle(n: int, gamma: int, delta: int, alpha: int) -> Permutation:
    """
    t_h ... t_1 with t_1 = (gamma, delta+1) and t_i = (delta+i-1, delta+i):
    delta+1 -> gamma, delta+i -> delta+i-1, alpha -> ... , gamma -> alpha.
    """
    word = list(range(1, n + 1))
    word[gamma - 1] = alpha
    word[delta] = gamma
    for x in range(delta + 2, alpha + 1):
        word[x - 1] = x - 1
    return Permutation(word)


@dataclass(frozen=True)
class CortezData:
    emb: MinEmbedding
    alpha_prime: int
    delta_prime: int
    a_prime: int
    d_prime: int
    kappa: int
    I: frozenset[int]
    J: frozenset[int]
    v: Permutation
    sigma: Permutation
    u: Permutation
    M: int
    N: int

    @property
    def h(self) -> int:
        return self.emb.height


def cortez_data(w: Sequence[int]) -> CortezData:
    e = min_3412_embedding(w)
    if e is None:
        raise PermutationError(f"{Permutation(w)} is covexillary (avoids 3412)")
    n = len(w)
    winv = inverse(w)
    ap = e.alpha
    while ap < n and winv[ap] < winv[ap - 1]:
        ap += 1
    dp = e.delta
    while dp > 1 and winv[dp - 2] > winv[dp - 1]:
        dp -= 1
    kappa = dp + ap - e.alpha
    I = frozenset(range(dp, ap))
    J = I - {kappa}
    v = compose(longest_in_parabolic(n, J), compose(longest_in_parabolic(n, I), w))
    sigma = sigma_cycle(n, e.gamma, e.delta, e.alpha)
    u = compose(sigma, w)
    M = max([p for p in range(1, e.c) if w[p - 1] < dp] + [e.a])
    N = max(p for p in range(1, n + 1) if w[p - 1] < dp)
    return CortezData(e, ap, dp, winv[ap - 1], winv[dp - 1], kappa, I, J, v, sigma, u, M, N)


REGION_IDS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii")


def onecompempty_regions(w: Sequence[int], data: CortezData | None = None) -> dict[str, list[int]]:
    """Graph points (as positions) inside each of the twelve regions."""
    cd = data or cortez_data(w)
    e = cd.emb
    a, b, c, d = e.a, e.b, e.c, e.d
    al, be, ga, de = e.alpha, e.beta, e.gamma, e.delta
    ap, dp = cd.alpha_prime, cd.delta_prime
    n = len(w)
    tests = {
        "i": lambda p, x: p < a and x > be,
        "ii": lambda p, x: p < a and ap < x < be,
        "iii": lambda p, x: a < p < b and al < x < be,
        "iv": lambda p, x: b < p < c and al < x < be,
        "v": lambda p, x: b < p < c and be < x,
        "vi": lambda p, x: p < b and dp < x < al,
        "vii": lambda p, x: p > d and x < ga,
        "viii": lambda p, x: p > d and ga < x < dp,
        "ix": lambda p, x: c < p < d and ga < x < de,
        "x": lambda p, x: b < p < c and ga < x < de,
        "xi": lambda p, x: b < p < c and x < ga,
        "xii": lambda p, x: p > c and de < x < ap,
    }
    return {rid: [p for p in range(1, n + 1) if f(p, w[p - 1])] for rid, f in tests.items()}


def check_onecompempty(w: Sequence[int]) -> list[str]:
    """Identifiers of the twelve regions that contain a graph point."""
    return [rid for rid, pts in onecompempty_regions(w).items() if pts]


@dataclass(frozen=True)
class MNReport:
    M: int
    N: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_MNempty(w: Sequence[int]) -> MNReport:
    """a <= M < b, c <= N < d, and the two regions beside M and N empty."""
    cd = cortez_data(w)
    e = cd.emb
    M, N, ap = cd.M, cd.N, cd.alpha_prime
    bad = []
    if not e.a <= M < e.b:
        bad.append("i")
    if any(w[p - 1] > ap for p in range(e.a + 1, M)):
        bad.append("ii")
    if not e.c <= N < e.d:
        bad.append("iii")
    if any(w[p - 1] > ap for p in range(e.c + 1, N)):
        bad.append("iv")
    return MNReport(M, N, tuple(bad))


@dataclass(frozen=True)
class CovexReport:
    entries: tuple[CoessEntry, ...]
    non_inclusion_indices: tuple[int, ...]  # 1-based positions in `entries`

    def r_before(self, i: int) -> int:
        """r_{i-1}, with r_0 = 0."""
        return self.entries[i - 2].r if i > 1 else 0


def covex_report(w: Sequence[int]) -> CovexReport:
    if not is_covexillary(w):
        raise PermutationError(f"{Permutation(w)} contains 3412")
    entries = tuple(sorted(coessential_set(w), key=lambda e: (e.p, e.q)))
    for e1, e2 in zip(entries, entries[1:]):
        if e2.q < e1.q:
            raise ArithmeticError(f"coessential set of {Permutation(w)} is not totally ordered")
    return CovexReport(entries, tuple(i for i, e in enumerate(entries, 1) if not e.inclusion))


def exceptional_R_region(w: Sequence[int]) -> set[tuple[int, int]]:
    """
    Cells (p, q) where r_u exceeds r_w, for u = sigma w. Each factor t_i
    of sigma raises the rank by one on the rectangle
    [w^{-1}(delta+i), c) x [q_lo, delta+i) with q_lo = gamma for i = 1 and
    delta+i-1 otherwise.
    """
    cd = cortez_data(w)
    e = cd.emb
    if e.height <= 1:
        raise PermutationError(f"{Permutation(w)} has minimum height 1; the region needs h > 1")
    winv = inverse(w)
    cells = set()
    for i in range(1, e.height + 1):
        lo_q = e.gamma if i == 1 else e.delta + i - 1
        for p in range(winv[e.delta + i - 1], e.c):
            for q in range(lo_q, e.delta + i):
                cells.add((p, q))
    return cells


def exceptional_R_graph_points(w: Sequence[int]) -> list[int]:
    """
    Positions p with (p, w(p)) in R, other than the points with
    delta < w(p) < alpha: those sit on the corner of the rectangle their own
    transposition creates, so the cell convention always counts them.
    """
    e = min_3412_embedding(w)
    R = exceptional_R_region(w)
    return [p for p in range(1, len(w) + 1)
            if (p, w[p - 1]) in R and not e.delta < w[p - 1] < e.alpha]


def rv_expected(w: Sequence[int], i: int, data: CortezData | None = None) -> int:
    """The predicted r_v(i, kappa), written in terms of r_w(i, alpha')."""
    cd = data or cortez_data(w)
    al = cd.emb.alpha
    winv = inverse(w)
    pos = lambda x: winv[x - 1] if x >= 1 else len(w) + 1  # noqa: E731
    rw = rank(w, i, cd.alpha_prime)
    if i >= cd.d_prime:
        return rw - cd.alpha_prime + cd.kappa
    if i < pos(al - 1):
        return rw
    j = 1
    while not pos(al - j) <= i < pos(al - j - 1):
        j += 1
    return rw - j


def rv_violations(w: Sequence[int]) -> list[int]:
    """Rows i where r_v(i, kappa) differs from its prediction."""
    cd = cortez_data(w)
    return [i for i in range(1, len(w) + 1) if rank(cd.v, i, cd.kappa) != rv_expected(w, i, cd)]
