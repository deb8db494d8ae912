"""
Permutations of `{1, ..., n}` in one-line notation, with length, rank
matrices, Bruhat order, parabolic longest elements and coessential sets.

Positions and values are 1-based everywhere; `w[i - 1]` is w(i).

>>> w = parse_perm("4231")
>>> length(w), rank(w, 2, 2), sorted(descents(w))
(5, 1, [1, 3])
>>> bruhat_leq(parse_perm("2143"), w)
True
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

__all__ = [
    "Permutation", "CoessEntry", "PermutationError",
    "parse_perm", "identity", "all_perms", "length", "inverse", "compose",
    "apply", "descents", "rank", "rank_matrix", "bruhat_leq",
    "longest_in_parabolic", "coessential_set", "down_set", "upper_covers",
    "lower_covers", "transposition_mult",
]


class PermutationError(ValueError):
    """Raised for malformed permutation literals or out-of-range arguments."""


class Permutation(tuple):
    """
    An immutable permutation word. Equality and hashing are those of the
    underlying tuple, so a `Permutation` and a plain tuple with the same
    entries compare equal.
    """

    __slots__ = ()

    def __new__(cls, word: Iterable[int] = ()):
        word = tuple(word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise PermutationError(f"not a permutation of 1..{len(word)}: {word}")
        return super().__new__(cls, word)

    @classmethod
    def _trusted(cls, word: Iterable[int]) -> "Permutation":
        # skips the bijection check; for words built by this package
        return super().__new__(cls, word)

    @property
    def n(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"Permutation({format_perm(self)})"

    def __str__(self) -> str:
        return format_perm(self)


def format_perm(w: Sequence[int]) -> str:
    """Compact digits for n <= 9, comma separated otherwise."""
    if len(w) <= 9:
        return "".join(map(str, w))
    return ",".join(map(str, w))


def parse_perm(text: str | Sequence[int]) -> Permutation:
    """
    Parse "8,1,7,3,9,6,2,5,4" or the compact form "817396254" (n <= 9 only).

    >>> parse_perm("3,1,2")
    Permutation(312)
    >>> parse_perm("312") == parse_perm([3, 1, 2])
    True
    """
    if not isinstance(text, str):
        return Permutation(text)
    s = text.strip()
    if not s:
        raise PermutationError("empty permutation literal")
    if "," in s:
        parts = s.split(",")
        word = []
        for pos, part in enumerate(parts, 1):
            part = part.strip()
            if not part.isdigit():
                raise PermutationError(f"entry {pos} of {text!r} is not a positive integer: {part!r}")
            word.append(int(part))
    else:
        for pos, ch in enumerate(s, 1):
            if not ch.isdigit() or ch == "0":
                raise PermutationError(f"character {pos} of {text!r} is not a digit 1-9: {ch!r}")
        word = [int(ch) for ch in s]
        if len(word) > 9:
            raise PermutationError(f"compact literal {text!r} has n > 9; use commas")
    return Permutation(word)


def identity(n: int) -> Permutation:
    return Permutation._trusted(range(1, n + 1))


def all_perms(n: int) -> list[Permutation]:
    """All of S_n in lexicographic order."""
    return [Permutation._trusted(p) for p in permutations(range(1, n + 1))]


def length(w: Sequence[int]) -> int:
    """Number of inversions."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def inverse(w: Sequence[int]) -> Permutation:
    inv = [0] * len(w)
    for i, x in enumerate(w, 1):
        inv[x - 1] = i
    return Permutation._trusted(inv)


def compose(a: Sequence[int], b: Sequence[int]) -> Permutation:
    """(a∘b)(i) = a(b(i)). Left multiplication by a acts on values of b."""
    if len(a) != len(b):
        raise PermutationError(f"size mismatch: {len(a)} vs {len(b)}")
    return Permutation._trusted(a[x - 1] for x in b)


def apply(w: Sequence[int], i: int) -> int:
    if not 1 <= i <= len(w):
        raise PermutationError(f"position {i} outside 1..{len(w)}")
    return w[i - 1]


def descents(w: Sequence[int]) -> set[int]:
    return {i for i in range(1, len(w)) if w[i - 1] > w[i]}


def rank(w: Sequence[int], p: int, q: int) -> int:
    """r_w(p, q): graph points (i, w(i)) with i <= p and w(i) <= q."""
    n = len(w)
    if not (1 <= p <= n and 1 <= q <= n):
        raise PermutationError(f"({p}, {q}) outside 1..{n}")
    return sum(1 for x in w[:p] if x <= q)


def rank_matrix(w: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """r[p-1][q-1] = r_w(p, q)."""
    n = len(w)
    rows = []
    row = [0] * n
    for x in w:
        for q in range(x - 1, n):
            row[q] += 1
        rows.append(tuple(row))
    return tuple(rows)


def bruhat_leq(u: Sequence[int], w: Sequence[int]) -> bool:
    """u <= w iff r_u(p, q) >= r_w(p, q) everywhere."""
    if len(u) != len(w):
        raise PermutationError(f"size mismatch: {len(u)} vs {len(w)}")
    n = len(u)
    ru = [0] * n
    rw = [0] * n
    for p in range(n):
        for q in range(u[p] - 1, n):
            ru[q] += 1
        for q in range(w[p] - 1, n):
            rw[q] += 1
        for q in range(n):
            if ru[q] < rw[q]:
                return False
    return True


def transposition_mult(w: Sequence[int], i: int, j: int) -> Permutation:
    """w∘t_{ij}: swap the entries at positions i and j."""
    word = list(w)
    word[i - 1], word[j - 1] = word[j - 1], word[i - 1]
    return Permutation._trusted(word)


def lower_covers(w: Sequence[int]) -> list[Permutation]:
    """Elements w∘t with length exactly length(w) - 1."""
    n = len(w)
    out = []
    for i in range(n):
        wi = w[i]
        # swap i<j with w(i)>w(j) and no value strictly between in positions i..j
        lo = 0
        for j in range(i + 1, n):
            wj = w[j]
            if lo < wj < wi:
                word = list(w)
                word[i], word[j] = wj, wi
                out.append(Permutation._trusted(word))
                lo = wj
    return out


def upper_covers(w: Sequence[int]) -> list[Permutation]:
    """Elements w∘t with length exactly length(w) + 1."""
    n = len(w)
    out = []
    for i in range(n):
        wi = w[i]
        hi = n + 1
        for j in range(i + 1, n):
            wj = w[j]
            if wi < wj < hi:
                word = list(w)
                word[i], word[j] = wj, wi
                out.append(Permutation._trusted(word))
                hi = wj
    return out


def down_set(w: Sequence[int]) -> set[Permutation]:
    """
    The Bruhat lower interval [id, w], by breadth-first closure under
    length-decreasing transposition moves.

    >>> len(down_set(parse_perm("321")))
    6
    """
    start = Permutation._trusted(w)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in lower_covers(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def longest_in_parabolic(n: int, gens: Iterable[int]) -> Permutation:
    """
    Longest element of the parabolic subgroup generated by s_i, i in `gens`:
    each maximal run s_a, ..., s_{b-1} reverses the block a..b.

    >>> longest_in_parabolic(4, {1, 2, 3})
    Permutation(4321)
    >>> longest_in_parabolic(5, {1, 3, 4})
    Permutation(21543)
    """
    gens = set(gens)
    if any(not 1 <= g < n for g in gens):
        raise PermutationError(f"generators must lie in 1..{n - 1}: {sorted(gens)}")
    word = list(range(1, n + 1))
    i = 1
    while i < n:
        if i in gens:
            j = i
            while j in gens:
                j += 1
            word[i - 1:j] = reversed(word[i - 1:j])
            i = j
        else:
            i += 1
    return Permutation._trusted(word)


@dataclass(frozen=True)
class CoessEntry:
    p: int
    q: int
    r: int
    inclusion: bool


def coessential_set(w: Sequence[int]) -> list[CoessEntry]:
    """
    Fulton's coessential set: (p, q) with w(p) <= q < w(p+1) and
    w^{-1}(q) <= p < w^{-1}(q+1). Sorted by (p, q), which for a covexillary
    w is the componentwise total order.

    >>> [(e.p, e.q, e.r, e.inclusion) for e in coessential_set(parse_perm("4231"))]
    [(2, 2, 1, False)]
    >>> [(e.p, e.q, e.r) for e in coessential_set(parse_perm("3412"))]
    [(1, 3, 1), (3, 1, 1)]
    """
    n = len(w)
    winv = inverse(w)
    out = []
    for p in range(1, n):
        if w[p - 1] > w[p]:
            continue
        for q in range(w[p - 1], w[p]):
            if winv[q - 1] <= p < winv[q]:
                r = rank(w, p, q)
                out.append(CoessEntry(p, q, r, r == min(p, q)))
    return out
